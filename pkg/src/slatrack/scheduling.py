"""Single-machine, non-preemptive dispatch simulator.

Contrasts priority-only dispatch (highest priority first, blind to
deadlines) with earliest-deadline-first.  Jobs run back-to-back from t=0;
a job whose finish time exceeds its deadline misses.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .errors import ValidationError


class Policy(str, Enum):
    PRIORITY_ONLY = "PriorityOnly"
    EDF = "EDF"


@dataclass(frozen=True)
class Job:
    id: str
    duration: float  # hours
    deadline: float  # hours from t=0
    priority: int    # higher = more important

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("job id must not be empty")
        if self.duration <= 0:
            raise ValidationError(f"job {self.id}: duration must be positive")
        if self.deadline <= 0:
            raise ValidationError(f"job {self.id}: deadline must be positive")


@dataclass(frozen=True)
class ScheduleResult:
    policy: Policy
    order: tuple
    finish_times: dict
    missed: frozenset

    def to_dict(self) -> dict:
        return {
            "policy": self.policy.value,
            "order": list(self.order),
            "finish_times": {j: self.finish_times[j] for j in self.order},
            "missed": sorted(self.missed),
        }


def _run(jobs: list[Job], policy: Policy, key: Callable[[Job], tuple]) -> ScheduleResult:
    if not jobs:
        raise ValidationError("cannot schedule an empty job list")
    ids = [j.id for j in jobs]
    if len(set(ids)) != len(ids):
        raise ValidationError("job ids must be unique")
    ordered = sorted(jobs, key=key)
    clock = 0.0
    finishes = {}
    missed = set()
    for job in ordered:
        clock += job.duration
        finishes[job.id] = clock
        if clock > job.deadline:
            missed.add(job.id)
    return ScheduleResult(
        policy=policy,
        order=tuple(j.id for j in ordered),
        finish_times=finishes,
        missed=frozenset(missed),
    )


def schedule_priority_only(jobs: list[Job]) -> ScheduleResult:
    """Dispatch by descending priority; ties by ascending id."""
    return _run(jobs, Policy.PRIORITY_ONLY, lambda j: (-j.priority, j.id))


def schedule_edf(jobs: list[Job]) -> ScheduleResult:
    """Dispatch by ascending deadline; ties by descending priority, then id."""
    return _run(jobs, Policy.EDF, lambda j: (j.deadline, -j.priority, j.id))


@dataclass(frozen=True)
class ComparisonSummary:
    priority_only: ScheduleResult
    edf: ScheduleResult
    missed_counts: dict
    finish_deltas: dict  # id -> EDF finish minus priority-only finish

    def to_dict(self) -> dict:
        return {
            "priority_only": self.priority_only.to_dict(),
            "edf": self.edf.to_dict(),
            "missed_counts": dict(self.missed_counts),
            "finish_deltas": dict(self.finish_deltas),
        }


def compare(jobs: list[Job]) -> ComparisonSummary:
    """Run both policies over the same instance and line up the outcomes."""
    by_priority = schedule_priority_only(jobs)
    by_deadline = schedule_edf(jobs)
    return ComparisonSummary(
        priority_only=by_priority,
        edf=by_deadline,
        missed_counts={
            Policy.PRIORITY_ONLY.value: len(by_priority.missed),
            Policy.EDF.value: len(by_deadline.missed),
        },
        finish_deltas={
            j.id: by_deadline.finish_times[j.id] - by_priority.finish_times[j.id]
            for j in jobs
        },
    )


JOBS_HEADER = ["id", "duration_h", "deadline_h", "priority"]


def parse_jobs_csv(text: str) -> list[Job]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ValidationError("job file is empty") from None
    if [h.strip() for h in header] != JOBS_HEADER:
        raise ValidationError(f"unexpected job file header: {header!r}")
    jobs = []
    for lineno, record in enumerate(reader, start=2):
        if not record:
            continue
        try:
            job_id, duration_s, deadline_s, priority_s = record
            jobs.append(Job(job_id.strip(), float(duration_s), float(deadline_s), int(priority_s)))
        except (ValueError, TypeError) as exc:
            raise ValidationError(f"line {lineno}: {exc}") from None
    return jobs


def comparison_to_csv(summary: ComparisonSummary, jobs: list[Job]) -> str:
    """One row per (policy, job) with its finish time and miss flag."""
    by_id = {j.id: j for j in jobs}
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["policy", "id", "duration_h", "deadline_h", "priority", "finish_h", "missed"])
    for result in (summary.priority_only, summary.edf):
        for job_id in result.order:
            job = by_id[job_id]
            writer.writerow([
                result.policy.value, job_id, f"{job.duration:g}", f"{job.deadline:g}",
                job.priority, f"{result.finish_times[job_id]:g}",
                "yes" if job_id in result.missed else "no",
            ])
    return buf.getvalue()
