"""Domain model and SLA arithmetic.

Pure and side-effect free: due-date computation against a configurable
priority matrix, signed due-in countdowns, breach classification for an
as-of date, and request lifecycle transitions.  No I/O happens here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from datetime import date, datetime, timedelta
from enum import Enum
from typing import Mapping, Optional

from .dates import DateLike, as_datetime, date_part
from .errors import ConfigurationError, TransitionError, ValidationError

_ISSUE_ID_RE = re.compile(r"^R?\d+$")


class Priority(str, Enum):
    CRITICAL = "Critical"
    HIGH = "High"
    MEDIUM = "Medium"
    LOW = "Low"
    PLANNED = "Planned"

    @classmethod
    def parse(cls, token: str) -> "Priority":
        for member in cls:
            if member.value.lower() == token.strip().lower():
                return member
        valid = ", ".join(m.value for m in cls)
        raise ValidationError(f"unknown priority {token!r} (expected one of: {valid})")


#: Priorities that carry an SLA clock, in report order.  Planned work is
#: exempt: it sits in long approval cycles and never gets a due date.
SLA_PRIORITIES = (Priority.CRITICAL, Priority.HIGH, Priority.MEDIUM, Priority.LOW)


class Status(str, Enum):
    OPEN = "Open"
    ASSIGNED = "Assigned"
    WORK_IN_PROGRESS = "WorkInProgress"
    COMPLETED = "Completed"

    @property
    def label(self) -> str:
        """Display form used in CSV files and tables."""
        if self is Status.WORK_IN_PROGRESS:
            return "Work In Progress"
        return self.value

    @classmethod
    def parse(cls, token: str) -> "Status":
        key = re.sub(r"[\s_-]+", "", token).lower()
        for member in cls:
            if member.value.lower() == key:
                return member
        valid = ", ".join(m.label for m in cls)
        raise ValidationError(f"unknown status {token!r} (expected one of: {valid})")


class BreachState(str, Enum):
    ON_TRACK = "OnTrack"
    DUE_TODAY = "DueToday"
    BREACHED = "Breached"
    COMPLETED_ON_TIME = "CompletedOnTime"
    COMPLETED_LATE = "CompletedLate"
    EXEMPT = "Exempt"


class DurationUnit(str, Enum):
    DAYS = "days"
    HOURS = "hours"


class CalendarMode(str, Enum):
    CALENDAR_DAYS = "CalendarDays"
    BUSINESS_DAYS = "BusinessDays"


@dataclass(frozen=True)
class SlaDuration:
    """Positive time budget for resolving a request."""

    amount: int
    unit: DurationUnit = DurationUnit.DAYS

    def __post_init__(self) -> None:
        if not isinstance(self.amount, int) or self.amount <= 0:
            raise ValidationError(f"duration must be a positive integer, got {self.amount!r}")

    @classmethod
    def parse(cls, token: str) -> "SlaDuration":
        m = re.match(r"^(\d+)\s*(d|h|days?|hours?)$", token.strip().lower())
        if not m:
            raise ValidationError(f"invalid duration {token!r} (expected e.g. '2d' or '4h')")
        unit = DurationUnit.DAYS if m.group(2).startswith("d") else DurationUnit.HOURS
        return cls(int(m.group(1)), unit)

    def __str__(self) -> str:
        return f"{self.amount}{'d' if self.unit is DurationUnit.DAYS else 'h'}"


@dataclass(frozen=True)
class PriorityMatrix:
    """Maps each SLA-bearing priority to its resolution budget."""

    entries: Mapping[Priority, SlaDuration]
    calendar_mode: CalendarMode = CalendarMode.CALENDAR_DAYS

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", dict(self.entries))
        for priority in SLA_PRIORITIES:
            if priority not in self.entries:
                raise ConfigurationError(f"priority matrix is missing an entry for {priority.value}")
        if Priority.PLANNED in self.entries:
            raise ConfigurationError("Planned is SLA-exempt and must not appear in the matrix")

    def to_dict(self) -> dict:
        return {
            "calendar_mode": self.calendar_mode.value,
            "entries": {
                p.value: {"amount": d.amount, "unit": d.unit.value}
                for p, d in sorted(self.entries.items(), key=lambda kv: SLA_PRIORITIES.index(kv[0]))
            },
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "PriorityMatrix":
        try:
            mode = CalendarMode(data["calendar_mode"])
            entries = {
                Priority.parse(name): SlaDuration(int(spec["amount"]), DurationUnit(spec["unit"]))
                for name, spec in data["entries"].items()
            }
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed priority matrix: {exc}") from exc
        return cls(entries, mode)


def _default_weekdays() -> frozenset:
    return frozenset(range(5))  # Mon..Fri


@dataclass(frozen=True)
class WorkCalendar:
    """Which days count when the SLA clock runs in business days."""

    working_weekdays: frozenset = field(default_factory=_default_weekdays)
    holidays: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "working_weekdays", frozenset(self.working_weekdays))
        object.__setattr__(self, "holidays", frozenset(self.holidays))
        if not self.working_weekdays:
            raise ValidationError("working_weekdays must not be empty")
        if not all(0 <= wd <= 6 for wd in self.working_weekdays):
            raise ValidationError("weekdays must be 0 (Mon) .. 6 (Sun)")

    def is_working_day(self, d: date) -> bool:
        return d.weekday() in self.working_weekdays and d not in self.holidays

    def add_working_days(self, start: date, count: int) -> date:
        """The count-th working day strictly after `start`.

        A start on a weekend or holiday needs no special casing: the next
        working day after it is simply the first one counted.
        """
        d = start
        remaining = count
        while remaining > 0:
            d += timedelta(days=1)
            if self.is_working_day(d):
                remaining -= 1
        return d


DEFAULT_PRIORITY_MATRIX = PriorityMatrix(
    {
        Priority.CRITICAL: SlaDuration(1),
        Priority.HIGH: SlaDuration(2),
        Priority.MEDIUM: SlaDuration(3),
        Priority.LOW: SlaDuration(5),
    }
)

#: Alternate configuration for desks that answer on an hour clock.
HOUR_BASED_MATRIX = PriorityMatrix(
    {
        Priority.CRITICAL: SlaDuration(1, DurationUnit.HOURS),
        Priority.HIGH: SlaDuration(4, DurationUnit.HOURS),
        Priority.MEDIUM: SlaDuration(1, DurationUnit.DAYS),
        Priority.LOW: SlaDuration(3, DurationUnit.DAYS),
    }
)

DEFAULT_CALENDAR = WorkCalendar()


@dataclass(frozen=True)
class Request:
    """One tracked complaint/issue."""

    issue_id: str
    creation: DateLike
    issue_type: str
    priority: Priority
    subject: str = ""
    status: Status = Status.OPEN
    completion: Optional[DateLike] = None
    assignee: Optional[str] = None

    def __post_init__(self) -> None:
        if not _ISSUE_ID_RE.match(self.issue_id):
            raise ValidationError(f"issue id {self.issue_id!r} must be digits with an optional 'R' prefix")
        if not self.issue_type.strip():
            raise ValidationError(f"{self.issue_id}: issue_type must not be empty")
        if (self.completion is not None) != (self.status is Status.COMPLETED):
            raise ValidationError(
                f"{self.issue_id}: completion date is required exactly when status is Completed"
            )
        if self.completion is not None and _before(self.completion, self.creation):
            raise ValidationError(f"{self.issue_id}: completion precedes creation")
        if self.status is Status.ASSIGNED and not self.assignee:
            raise ValidationError(f"{self.issue_id}: an Assigned request needs an assignee")


def _before(a: DateLike, b: DateLike) -> bool:
    # Mixed date/date-time pairs compare on the date part only.
    if isinstance(a, datetime) and isinstance(b, datetime):
        return a < b
    return date_part(a) < date_part(b)


def compute_due_date(
    creation: DateLike,
    priority: Priority,
    matrix: PriorityMatrix,
    calendar: WorkCalendar = DEFAULT_CALENDAR,
) -> Optional[DateLike]:
    """Due date from creation and priority; None for SLA-exempt work.

    Day budgets yield a date: plain calendar addition, or the n-th working
    day strictly after creation.  Hour budgets yield a date-time: wall-clock
    hours, rolled forward to a working day in business-day mode.
    """
    if priority is Priority.PLANNED:
        return None
    duration = matrix.entries.get(priority)
    if duration is None:
        raise ConfigurationError(f"priority matrix has no entry for {priority.value}")
    business = matrix.calendar_mode is CalendarMode.BUSINESS_DAYS
    if duration.unit is DurationUnit.DAYS:
        if business:
            return calendar.add_working_days(date_part(creation), duration.amount)
        return date_part(creation) + timedelta(days=duration.amount)
    due = as_datetime(creation) + timedelta(hours=duration.amount)
    if business:
        while not calendar.is_working_day(due.date()):
            due += timedelta(days=1)
    return due


def due_in(due: DateLike, as_of: DateLike) -> int:
    """Signed whole-day countdown; negative means past due."""
    return (date_part(due) - date_part(as_of)).days


def breach_state(
    request: Request,
    matrix: PriorityMatrix,
    calendar: WorkCalendar = DEFAULT_CALENDAR,
    as_of: Optional[date] = None,
) -> BreachState:
    """Classify a request against its SLA clock as of a snapshot date."""
    if request.priority is Priority.PLANNED:
        return BreachState.EXEMPT
    if as_of is None:
        as_of = date.today()
    due = compute_due_date(request.creation, request.priority, matrix, calendar)
    assert due is not None
    if request.status is Status.COMPLETED:
        assert request.completion is not None
        late = _before(due, request.completion)
        return BreachState.COMPLETED_LATE if late else BreachState.COMPLETED_ON_TIME
    due_day = date_part(due)
    if as_of == due_day:
        return BreachState.DUE_TODAY
    if as_of > due_day:
        return BreachState.BREACHED
    return BreachState.ON_TRACK


_ALLOWED_TRANSITIONS = {
    (Status.OPEN, Status.ASSIGNED),
    (Status.ASSIGNED, Status.WORK_IN_PROGRESS),
    (Status.WORK_IN_PROGRESS, Status.COMPLETED),
}


def transition(
    request: Request,
    new_status: Status,
    at: Optional[DateLike] = None,
    assignee: Optional[str] = None,
) -> Request:
    """Advance a request one lifecycle step, enforcing the transition table."""
    if (request.status, new_status) not in _ALLOWED_TRANSITIONS:
        raise TransitionError(
            f"{request.issue_id}: cannot move from {request.status.label} to {new_status.label}"
        )
    if new_status is Status.ASSIGNED:
        if not assignee:
            raise ValidationError(f"{request.issue_id}: assigning requires an assignee")
        return replace(request, status=new_status, assignee=assignee)
    if new_status is Status.COMPLETED:
        if at is None:
            raise ValidationError(f"{request.issue_id}: completing requires a completion timestamp")
        return replace(request, status=new_status, completion=at)
    return replace(request, status=new_status, assignee=assignee or request.assignee)
