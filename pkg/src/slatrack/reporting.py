"""Overview and detailed report building plus the CSV/settings file outputs.

The detailed view is one row per request with its due date, signed due-in
countdown, and breach classification for the snapshot date.  The overview
aggregates the detailed view into one row per SLA-bearing priority with an
issue-type pivot.  Both serialize to deterministic CSV.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import Optional

from .dates import DateLike, date_part, format_date, parse_date
from .errors import ValidationError
from .fileio import atomic_write_text
from .model import (
    SLA_PRIORITIES,
    BreachState,
    Priority,
    PriorityMatrix,
    Request,
    Status,
    WorkCalendar,
    breach_state,
    compute_due_date,
    due_in,
)

DETAILED_HEADER = [
    "Issue ID", "Creation Date", "Issue Type", "Priority", "Subject",
    "Status", "Completion Date", "Due In? (Days)", "Due Date",
]

DEFAULT_OVERVIEW_NAME = "out_file.csv"
DEFAULT_DETAILED_NAME = "out_file_detailed.csv"
SETTINGS_NAME = "settings.txt"

MISSED_STATES = {BreachState.BREACHED, BreachState.COMPLETED_LATE}


@dataclass(frozen=True)
class DetailedRow:
    """One request with its computed SLA columns."""

    issue_id: str
    creation: DateLike
    issue_type: str
    priority: Priority
    subject: str
    status: Status
    completion: Optional[DateLike]
    assignee: Optional[str]
    due_date: Optional[date]
    due_in_days: Optional[int]
    breach: BreachState

    def __post_init__(self) -> None:
        if (self.due_date is None) != (self.breach is BreachState.EXEMPT):
            raise ValidationError(f"{self.issue_id}: due columns are empty exactly for exempt rows")
        if (self.due_in_days is None) != (self.due_date is None):
            raise ValidationError(f"{self.issue_id}: due date and due-in go together")

    def to_dict(self) -> dict:
        return {
            "issue_id": self.issue_id,
            "creation": format_date(self.creation),
            "issue_type": self.issue_type,
            "priority": self.priority.value,
            "subject": self.subject,
            "status": self.status.value,
            "completion": format_date(self.completion) if self.completion else None,
            "assignee": self.assignee,
            "due_date": self.due_date.isoformat() if self.due_date else None,
            "due_in_days": self.due_in_days,
            "breach": self.breach.value,
        }


@dataclass(frozen=True)
class OverviewRow:
    """Aggregate counts for one priority."""

    priority: Priority
    all_open: int
    per_issue_type: dict = field(default_factory=dict)
    due_today: int = 0
    sla_missed: int = 0

    def __post_init__(self) -> None:
        if self.priority is Priority.PLANNED:
            raise ValidationError("the overview never carries a Planned row")
        if min(self.all_open, self.due_today, self.sla_missed, 0) < 0:
            raise ValidationError("overview counts must be non-negative")
        if self.all_open != sum(self.per_issue_type.values()):
            raise ValidationError("all_open must equal the issue-type pivot total")
        if self.due_today > self.all_open:
            raise ValidationError("due_today cannot exceed the open count")

    def to_dict(self) -> dict:
        return {
            "priority": self.priority.value,
            "all_open": self.all_open,
            "per_issue_type": dict(sorted(self.per_issue_type.items())),
            "due_today": self.due_today,
            "sla_missed": self.sla_missed,
        }


@dataclass(frozen=True)
class SettingsFile:
    """Names the output folder and the two report files inside it."""

    output_dir: Path
    overview_name: str = DEFAULT_OVERVIEW_NAME
    detailed_name: str = DEFAULT_DETAILED_NAME

    def __post_init__(self) -> None:
        object.__setattr__(self, "output_dir", Path(self.output_dir))
        for name in (self.overview_name, self.detailed_name):
            if not name or not name.endswith(".csv"):
                raise ValidationError(f"report file name must end in .csv, got {name!r}")


def build_detailed(
    requests: list[Request],
    matrix: PriorityMatrix,
    calendar: WorkCalendar,
    as_of: date,
) -> list[DetailedRow]:
    """One row per request, in input order."""
    rows = []
    for req in requests:
        state = breach_state(req, matrix, calendar, as_of)
        if state is BreachState.EXEMPT:
            due_day, countdown = None, None
        else:
            due = compute_due_date(req.creation, req.priority, matrix, calendar)
            due_day = date_part(due)
            countdown = due_in(due_day, as_of)
        rows.append(DetailedRow(
            issue_id=req.issue_id,
            creation=req.creation,
            issue_type=req.issue_type,
            priority=req.priority,
            subject=req.subject,
            status=req.status,
            completion=req.completion,
            assignee=req.assignee,
            due_date=due_day,
            due_in_days=countdown,
            breach=state,
        ))
    return rows


def build_overview(detailed: list[DetailedRow], as_of: date) -> list[OverviewRow]:
    """Exactly four rows, Critical through Low; exempt rows never contribute."""
    del as_of  # countdowns in `detailed` already encode the snapshot date
    rows = []
    for priority in SLA_PRIORITIES:
        mine = [r for r in detailed if r.priority is priority]
        open_rows = [r for r in mine if r.status is not Status.COMPLETED]
        pivot: dict[str, int] = {}
        for row in open_rows:
            pivot[row.issue_type] = pivot.get(row.issue_type, 0) + 1
        rows.append(OverviewRow(
            priority=priority,
            all_open=len(open_rows),
            per_issue_type=pivot,
            due_today=sum(1 for r in mine if r.breach is BreachState.DUE_TODAY),
            sla_missed=sum(1 for r in mine if r.breach in MISSED_STATES),
        ))
    return rows


def detailed_cells(row: DetailedRow) -> list[str]:
    """One file/table line; exempt rows leave both due cells empty."""
    return [
        row.issue_id,
        format_date(row.creation),
        row.issue_type,
        row.priority.value,
        row.subject,
        row.status.label,
        format_date(row.completion) if row.completion else "",
        "" if row.due_in_days is None else str(row.due_in_days),
        row.due_date.isoformat() if row.due_date else "",
    ]


def detailed_to_csv(rows: list[DetailedRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(DETAILED_HEADER)
    for row in rows:
        writer.writerow(detailed_cells(row))
    return buf.getvalue()


def overview_issue_types(rows: list[OverviewRow]) -> list[str]:
    """Pivot columns: the distinct issue types among open requests, sorted."""
    types = set()
    for row in rows:
        types.update(row.per_issue_type)
    return sorted(types)


def overview_header(types: list[str]) -> list[str]:
    return ["Priority", "All Open Requests", *types, "Requests Due for Today", "SLA Missed?"]


def overview_cells(row: OverviewRow, types: list[str]) -> list[str]:
    return [
        row.priority.value,
        str(row.all_open),
        *(str(row.per_issue_type.get(t, 0)) for t in types),
        str(row.due_today),
        str(row.sla_missed),
    ]


def overview_to_csv(rows: list[OverviewRow]) -> str:
    types = overview_issue_types(rows)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(overview_header(types))
    for row in rows:
        writer.writerow(overview_cells(row, types))
    return buf.getvalue()


def parse_detailed_csv(text: str) -> list[DetailedRow]:
    """Read a detailed CSV back into rows; the breach column is implied.

    Exempt rows have empty due cells; completed rows compare completion
    against the due date; open rows recover their state from the countdown
    sign.  Day-granular by construction, like the file itself.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ValidationError("detailed CSV is empty") from None
    if header != DETAILED_HEADER:
        raise ValidationError(f"unexpected detailed CSV header: {header!r}")
    rows = []
    for record in reader:
        if not record:
            continue
        (issue_id, creation_s, issue_type, priority_s, subject,
         status_s, completion_s, due_in_s, due_s) = record
        priority = Priority.parse(priority_s)
        status = Status.parse(status_s)
        completion = parse_date(completion_s) if completion_s else None
        due_day = date_part(parse_date(due_s)) if due_s else None
        countdown = int(due_in_s) if due_in_s else None
        rows.append(DetailedRow(
            issue_id=issue_id,
            creation=parse_date(creation_s),
            issue_type=issue_type,
            priority=priority,
            subject=subject,
            status=status,
            completion=completion,
            assignee=None,
            due_date=due_day,
            due_in_days=countdown,
            breach=_implied_breach(priority, status, completion, due_day, countdown),
        ))
    return rows


def _implied_breach(
    priority: Priority,
    status: Status,
    completion: Optional[DateLike],
    due_day: Optional[date],
    countdown: Optional[int],
) -> BreachState:
    if priority is Priority.PLANNED:
        return BreachState.EXEMPT
    if status is Status.COMPLETED:
        assert completion is not None and due_day is not None
        if date_part(completion) <= due_day:
            return BreachState.COMPLETED_ON_TIME
        return BreachState.COMPLETED_LATE
    assert countdown is not None
    if countdown == 0:
        return BreachState.DUE_TODAY
    return BreachState.BREACHED if countdown < 0 else BreachState.ON_TRACK


def settings_text(settings: SettingsFile) -> str:
    return (
        f"output_dir={settings.output_dir}\n"
        f"overview_file={settings.overview_name}\n"
        f"detailed_file={settings.detailed_name}\n"
    )


def emit_files(
    overview: list[OverviewRow],
    detailed: list[DetailedRow],
    settings: SettingsFile,
) -> list[Path]:
    """Write the two report CSVs and the settings file; returns the three paths."""
    out_dir = settings.output_dir
    if not out_dir.is_dir():
        raise OSError(f"output directory does not exist: {out_dir}")
    overview_path = out_dir / settings.overview_name
    detailed_path = out_dir / settings.detailed_name
    settings_path = out_dir / SETTINGS_NAME
    atomic_write_text(overview_path, overview_to_csv(overview))
    atomic_write_text(detailed_path, detailed_to_csv(detailed))
    atomic_write_text(settings_path, settings_text(settings))
    return [overview_path, detailed_path, settings_path]
