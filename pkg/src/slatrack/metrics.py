"""Service-desk performance metrics computed from an event log.

Call-handling rates (abandonment, answer speed, time service factor,
first-call resolution), per-request turn-around time, and outage figures
(mean recovery time, uptime percentage).  Zero-denominator metrics come
back as None so callers can tell "no data" from "perfect".
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from datetime import datetime, timedelta
from enum import Enum
from typing import Optional

from .dates import as_datetime, format_date, parse_date
from .errors import ValidationError
from .model import Request, Status


class EventKind(str, Enum):
    CALL_OFFERED = "CallOffered"
    CALL_ANSWERED = "CallAnswered"
    CALL_ABANDONED = "CallAbandoned"
    CASE_RESOLVED = "CaseResolved"
    CALLBACK_OCCURRED = "CallbackOccurred"
    OUTAGE_START = "OutageStart"
    OUTAGE_END = "OutageEnd"


@dataclass(frozen=True)
class DeskEvent:
    kind: EventKind
    at: datetime
    case_id: Optional[str] = None
    answer_delay_s: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind is EventKind.CALL_ANSWERED:
            if self.answer_delay_s is None or self.answer_delay_s < 0:
                raise ValidationError("CallAnswered needs a non-negative answer_delay_s")
        elif self.answer_delay_s is not None:
            raise ValidationError(f"{self.kind.value} must not carry an answer delay")


@dataclass(frozen=True)
class MetricsReport:
    aba_pct: Optional[float] = None
    asa_s: Optional[float] = None
    tsf_pct: Optional[float] = None
    fcr_pct: Optional[float] = None
    mttr: Optional[timedelta] = None
    uptime_pct: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "aba_pct": self.aba_pct,
            "asa_s": self.asa_s,
            "tsf_pct": self.tsf_pct,
            "fcr_pct": self.fcr_pct,
            "mttr_s": self.mttr.total_seconds() if self.mttr is not None else None,
            "uptime_pct": self.uptime_pct,
        }


def aba(events: list[DeskEvent]) -> Optional[float]:
    """Abandonment rate: share of offered calls dropped before answer."""
    offered = sum(1 for e in events if e.kind is EventKind.CALL_OFFERED)
    if offered == 0:
        return None
    abandoned = sum(1 for e in events if e.kind is EventKind.CALL_ABANDONED)
    return abandoned / offered * 100.0


def asa(events: list[DeskEvent]) -> Optional[float]:
    """Average speed to answer, in seconds."""
    delays = [e.answer_delay_s for e in events if e.kind is EventKind.CALL_ANSWERED]
    if not delays:
        return None
    return sum(delays) / len(delays)


def tsf(events: list[DeskEvent], threshold_s: float) -> Optional[float]:
    """Share of answered calls picked up within the threshold (inclusive)."""
    if threshold_s <= 0:
        raise ValidationError("tsf threshold must be positive")
    delays = [e.answer_delay_s for e in events if e.kind is EventKind.CALL_ANSWERED]
    if not delays:
        return None
    within = sum(1 for d in delays if d <= threshold_s)
    return within / len(delays) * 100.0


def fcr(events: list[DeskEvent]) -> Optional[float]:
    """Share of resolved cases that never saw a callback.

    Cases are matched by case_id; resolution events without one cannot be
    attributed to a case and are ignored.
    """
    resolved = {e.case_id for e in events if e.kind is EventKind.CASE_RESOLVED and e.case_id}
    if not resolved:
        return None
    called_back = {e.case_id for e in events if e.kind is EventKind.CALLBACK_OCCURRED}
    clean = len(resolved - called_back)
    return clean / len(resolved) * 100.0


def tat(request: Request) -> Optional[timedelta]:
    """Turn-around time of a finished request; None while it is open."""
    if request.status is not Status.COMPLETED:
        return None
    assert request.completion is not None
    return as_datetime(request.completion) - as_datetime(request.creation)


def pair_outages(events: list[DeskEvent]) -> tuple[list[tuple[datetime, datetime]], Optional[datetime]]:
    """Chronological (start, end) outage pairs plus a still-open start, if any.

    Rejects nested starts and ends without a start, naming the offenders.
    """
    pairs = []
    open_start: Optional[datetime] = None
    bad = []
    timeline = sorted(
        (e for e in events if e.kind in (EventKind.OUTAGE_START, EventKind.OUTAGE_END)),
        key=lambda e: e.at,
    )
    for event in timeline:
        if event.kind is EventKind.OUTAGE_START:
            if open_start is not None:
                bad.append(f"nested OutageStart at {format_date(event.at)}")
            else:
                open_start = event.at
        else:
            if open_start is None:
                bad.append(f"OutageEnd without start at {format_date(event.at)}")
            else:
                pairs.append((open_start, event.at))
                open_start = None
    if bad:
        raise ValidationError("malformed outage events: " + "; ".join(bad))
    return pairs, open_start


def mttr_and_uptime(
    events: list[DeskEvent],
    window_start: datetime,
    window_end: datetime,
) -> tuple[Optional[timedelta], float]:
    """Mean recovery time over completed outages touching the window, and
    the percentage of the window spent up.

    An outage still open at window_end counts as down through window_end.
    """
    if window_end <= window_start:
        raise ValidationError("window_end must be after window_start")
    pairs, open_start = pair_outages(events)
    window = window_end - window_start

    in_window = [(s, e) for s, e in pairs if e > window_start and s < window_end]
    mttr = None
    if in_window:
        total = sum(((e - s) for s, e in in_window), timedelta())
        mttr = total / len(in_window)

    down = timedelta()
    intervals = list(in_window)
    if open_start is not None and open_start < window_end:
        intervals.append((open_start, window_end))
    for start, end in intervals:
        down += min(end, window_end) - max(start, window_start)
    uptime_pct = max(0.0, min(100.0, (window - down) / window * 100.0))
    return mttr, uptime_pct


def compute_metrics(
    events: list[DeskEvent],
    tsf_threshold_s: float = 20.0,
    window: Optional[tuple[datetime, datetime]] = None,
) -> MetricsReport:
    """Full report over a log; the outage window defaults to the log's span."""
    if window is None:
        window = _log_span(events)
    if window is None:
        mttr = None
        uptime = 100.0
    else:
        mttr, uptime = mttr_and_uptime(events, window[0], window[1])
    return MetricsReport(
        aba_pct=aba(events),
        asa_s=asa(events),
        tsf_pct=tsf(events, tsf_threshold_s),
        fcr_pct=fcr(events),
        mttr=mttr,
        uptime_pct=uptime,
    )


def _log_span(events: list[DeskEvent]) -> Optional[tuple[datetime, datetime]]:
    if not events:
        return None
    lo = min(e.at for e in events)
    hi = max(e.at for e in events)
    if hi <= lo:
        return None
    return lo, hi


EVENTS_HEADER = ["kind", "at", "case_id", "answer_delay_s"]


def parse_events_csv(text: str) -> list[DeskEvent]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ValidationError("event log is empty") from None
    if [h.strip() for h in header] != EVENTS_HEADER:
        raise ValidationError(f"unexpected event log header: {header!r}")
    events = []
    for lineno, record in enumerate(reader, start=2):
        if not record:
            continue
        try:
            kind_s, at_s, case_id, delay_s = record
        except ValueError:
            raise ValidationError(f"line {lineno}: expected 4 columns") from None
        try:
            kind = EventKind(kind_s.strip())
        except ValueError:
            raise ValidationError(f"line {lineno}: unknown event kind {kind_s!r}") from None
        events.append(DeskEvent(
            kind=kind,
            at=as_datetime(parse_date(at_s)),
            case_id=case_id.strip() or None,
            answer_delay_s=float(delay_s) if delay_s.strip() else None,
        ))
    return events


def events_to_csv(events: list[DeskEvent]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(EVENTS_HEADER)
    for e in events:
        delay = "" if e.answer_delay_s is None else str(float(e.answer_delay_s))
        writer.writerow([e.kind.value, format_date(e.at), e.case_id or "", delay])
    return buf.getvalue()
