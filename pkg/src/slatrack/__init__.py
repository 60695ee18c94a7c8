"""SLA tracking for service desks.

Computes due dates from a configurable priority matrix, classifies
breaches against an as-of date, emits the overview/detailed report
files, scores desk KPIs, and contrasts deadline-aware with
priority-only dispatch.
"""

from .errors import (
    ConfigurationError,
    NotFoundError,
    SlaTrackError,
    TransitionError,
    ValidationError,
)
from .metrics import DeskEvent, EventKind, MetricsReport, compute_metrics
from .model import (
    DEFAULT_CALENDAR,
    DEFAULT_PRIORITY_MATRIX,
    HOUR_BASED_MATRIX,
    BreachState,
    CalendarMode,
    DurationUnit,
    Priority,
    PriorityMatrix,
    Request,
    SlaDuration,
    Status,
    WorkCalendar,
    breach_state,
    compute_due_date,
    due_in,
    transition,
)
from .reporting import (
    DetailedRow,
    OverviewRow,
    SettingsFile,
    build_detailed,
    build_overview,
    emit_files,
)
from .scheduling import (
    ComparisonSummary,
    Job,
    Policy,
    ScheduleResult,
    compare,
    schedule_edf,
    schedule_priority_only,
)
from .store import RequestStore, import_requests_csv

__version__ = "0.1.0"

__all__ = [
    "BreachState",
    "CalendarMode",
    "ComparisonSummary",
    "ConfigurationError",
    "DEFAULT_CALENDAR",
    "DEFAULT_PRIORITY_MATRIX",
    "DeskEvent",
    "DetailedRow",
    "DurationUnit",
    "EventKind",
    "HOUR_BASED_MATRIX",
    "Job",
    "MetricsReport",
    "NotFoundError",
    "OverviewRow",
    "Policy",
    "Priority",
    "PriorityMatrix",
    "Request",
    "RequestStore",
    "ScheduleResult",
    "SettingsFile",
    "SlaDuration",
    "SlaTrackError",
    "Status",
    "TransitionError",
    "ValidationError",
    "WorkCalendar",
    "breach_state",
    "build_detailed",
    "build_overview",
    "compare",
    "compute_due_date",
    "compute_metrics",
    "due_in",
    "emit_files",
    "import_requests_csv",
    "schedule_edf",
    "schedule_priority_only",
    "transition",
]
