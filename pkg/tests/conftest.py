"""Shared fixtures: the golden request dataset and random generators."""

from __future__ import annotations

import random
from datetime import date, datetime, timedelta

import pytest

from slatrack.metrics import DeskEvent, EventKind
from slatrack.model import Priority, Request, Status

# Golden dataset: the ten-request sheet used across report tests.
# Creation dates span 2014-05-02 .. 2014-05-12; reports snapshot at 2014-05-10.
AS_OF = date(2014, 5, 10)

WATER = "Water Connection Requests"
CONSTRUCTION = "New Construction Permission Request"


def make_sample_requests() -> list[Request]:
    return [
        Request("R1234", date(2014, 5, 12), WATER, Priority.CRITICAL,
                "Water connection in Area Delhi", Status.WORK_IN_PROGRESS),
        Request("R1235", date(2014, 5, 2), CONSTRUCTION, Priority.LOW,
                "Grant construction perm in Okhla", Status.COMPLETED, completion=date(2014, 5, 7)),
        Request("R1236", date(2014, 5, 3), CONSTRUCTION, Priority.MEDIUM,
                "Grant construction perm in Okhla", Status.WORK_IN_PROGRESS),
        Request("R1237", date(2014, 5, 4), WATER, Priority.HIGH,
                "Water connection in Area B/Lane", Status.WORK_IN_PROGRESS),
        Request("R1238", date(2014, 5, 5), WATER, Priority.LOW,
                "Water connection in Area Munirka", Status.WORK_IN_PROGRESS),
        Request("R1239", date(2014, 5, 5), CONSTRUCTION, Priority.CRITICAL,
                "Grant construction perm in Okhla", Status.WORK_IN_PROGRESS),
        Request("R1240", date(2014, 5, 7), CONSTRUCTION, Priority.HIGH,
                "Grant construction perm in Okhla", Status.WORK_IN_PROGRESS),
        Request("R1241", date(2014, 5, 8), CONSTRUCTION, Priority.MEDIUM,
                "Grant construction perm in Okhla", Status.WORK_IN_PROGRESS),
        Request("R1242", date(2014, 5, 9), WATER, Priority.LOW,
                "Water connection in Area Okhla", Status.WORK_IN_PROGRESS),
        Request("R1243", date(2014, 5, 10), WATER, Priority.LOW,
                "Water connection in Area Okhla", Status.WORK_IN_PROGRESS),
    ]


@pytest.fixture
def sample_requests() -> list[Request]:
    return make_sample_requests()


ISSUE_TYPES = [WATER, CONSTRUCTION, "Street Light Repair", "Map Revision", "General Question"]
SUBJECTS = ["Area Delhi", "Area Okhla", "Area Munirka", "Sector 9", "Main road"]


def random_request(rng: random.Random, seq: int, start: date = date(2014, 1, 1)) -> Request:
    """One random but invariant-respecting request."""
    creation = start + timedelta(days=rng.randrange(0, 120))
    priority = rng.choice(list(Priority))
    status = rng.choice([Status.OPEN, Status.WORK_IN_PROGRESS, Status.COMPLETED])
    completion = creation + timedelta(days=rng.randrange(0, 10)) if status is Status.COMPLETED else None
    return Request(
        issue_id=f"R{seq:04d}",
        creation=creation,
        issue_type=rng.choice(ISSUE_TYPES),
        priority=priority,
        subject=rng.choice(SUBJECTS),
        status=status,
        completion=completion,
    )


def random_fixture(rng: random.Random, size: int, start: date = date(2014, 1, 1)) -> list[Request]:
    return [random_request(rng, seq, start) for seq in range(1, size + 1)]


# Release criteria, one line each in the terminal summary.  Keys are the
# test names in test_acceptance.py.
ACCEPTANCE_CRITERIA = {
    "test_default_matrix_day_budgets":
        "fresh system serves the 1/2/3/5-day priority matrix (< 1 s)",
    "test_golden_due_dates":
        "golden due dates reproduced exactly (errata rows excluded)",
    "test_overview_matches_recount_on_randomized_fixtures":
        "overview equals brute-force recount on 100 random fixtures (< 10 s)",
    "test_business_day_due_dates_match_day_walk":
        "business-day due dates match the day-walking oracle (1,000 pairs)",
    "test_scheduler_goldens_and_deadline_feasibility":
        "scheduler goldens and EDF feasibility-optimality (200 job sets)",
    "test_metrics_bounds_and_counting_oracles":
        "desk metrics bounded and equal to counting oracles (1,000 logs)",
    "test_file_determinism_and_import_export_fixed_point":
        "report files byte-deterministic; import/export is a fixed point",
    "test_api_reports_conform_and_4xx_never_mutates":
        "API reports match the library; no 4xx mutates the store",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes = {}
    for reports in terminalreporter.stats.values():
        for report in reports:
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            name = nodeid.split("::")[-1]
            if getattr(report, "outcome", None) == "failed":
                outcomes[name] = "FAIL"
            elif getattr(report, "when", None) == "call" and report.outcome == "passed":
                outcomes.setdefault(name, "PASS")
    if not outcomes:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, label in ACCEPTANCE_CRITERIA.items():
        if name in outcomes:
            terminalreporter.write_line(f"{outcomes[name]}  {label}")


DESK_T0 = datetime(2014, 5, 1, 8, 0)


def desk_minute(minutes: float) -> datetime:
    return DESK_T0 + timedelta(minutes=minutes)


def random_log(rng: random.Random) -> list[DeskEvent]:
    """Well-formed random log: every answered/abandoned call was offered first,
    case outcomes reference real case ids, outages pair up and never nest."""
    events: list[DeskEvent] = []
    minute = 0
    for i in range(rng.randrange(0, 40)):
        minute += rng.randrange(1, 10)
        events.append(DeskEvent(EventKind.CALL_OFFERED, desk_minute(minute)))
        roll = rng.random()
        if roll < 0.6:
            events.append(DeskEvent(EventKind.CALL_ANSWERED, desk_minute(minute), case_id=f"C{i}",
                                    answer_delay_s=rng.uniform(0, 60)))
            if rng.random() < 0.7:
                events.append(DeskEvent(EventKind.CASE_RESOLVED, desk_minute(minute + 1), case_id=f"C{i}"))
            if rng.random() < 0.2:
                events.append(DeskEvent(EventKind.CALLBACK_OCCURRED, desk_minute(minute + 2), case_id=f"C{i}"))
        elif roll < 0.8:
            events.append(DeskEvent(EventKind.CALL_ABANDONED, desk_minute(minute)))
        # else: still ringing when the log ends
    for _ in range(rng.randrange(0, 3)):
        minute += rng.randrange(1, 10)
        start = minute
        minute += rng.randrange(1, 30)
        events.append(DeskEvent(EventKind.OUTAGE_START, desk_minute(start)))
        events.append(DeskEvent(EventKind.OUTAGE_END, desk_minute(minute)))
    return events
