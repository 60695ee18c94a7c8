"""Dispatch policies against a brute-force permutation oracle."""

from __future__ import annotations

import itertools
import random

import pytest

from slatrack.errors import ValidationError
from slatrack.scheduling import (
    ComparisonSummary,
    Job,
    Policy,
    compare,
    comparison_to_csv,
    parse_jobs_csv,
    schedule_edf,
    schedule_priority_only,
)

# The two golden instances: one where only the run order decides feasibility,
# and one infeasible under any order (both jobs cannot make their deadlines).
FEASIBLE = [Job("A", 3, 6, 2), Job("B", 2, 2, 1)]
INFEASIBLE = [Job("A", 3, 3, 2), Job("B", 3, 2, 1)]


def missed_for_order(jobs: list[Job]) -> int:
    """Oracle: execute one explicit order and count deadline misses."""
    clock = 0.0
    missed = 0
    for job in jobs:
        clock += job.duration
        if clock > job.deadline:
            missed += 1
    return missed


def min_missed(jobs: list[Job]) -> int:
    """Oracle: exhaustive minimum over every run order."""
    return min(missed_for_order(list(p)) for p in itertools.permutations(jobs))


def random_jobs(rng: random.Random, size: int) -> list[Job]:
    return [
        Job(f"J{i}", rng.randrange(1, 6), rng.randrange(1, 25), rng.randrange(0, 5))
        for i in range(size)
    ]


class TestPriorityOnly:
    def test_higher_priority_runs_first_and_b_misses(self):
        result = schedule_priority_only(INFEASIBLE)
        assert result.order == ("A", "B")
        assert result.finish_times == {"A": 3.0, "B": 6.0}
        assert result.missed == frozenset({"B"})

    def test_single_job_within_deadline(self):
        result = schedule_priority_only([Job("A", 2, 5, 1)])
        assert result.missed == frozenset()

    def test_equal_priority_breaks_ties_by_id(self):
        result = schedule_priority_only([Job("B", 2, 10, 1), Job("A", 3, 10, 1)])
        assert result.order == ("A", "B")
        assert result.finish_times == {"A": 3.0, "B": 5.0}

    def test_empty_list_rejected(self):
        with pytest.raises(ValidationError):
            schedule_priority_only([])


class TestEdf:
    def test_earliest_deadline_first_meets_both(self):
        result = schedule_edf(FEASIBLE)
        assert result.order == ("B", "A")
        assert result.finish_times == {"B": 2.0, "A": 5.0}
        assert result.missed == frozenset()
        # Oracle: of the two orders, only B-first meets all deadlines.
        assert min_missed(FEASIBLE) == 0
        assert missed_for_order(FEASIBLE) == 1  # A-first

    def test_same_instance_under_priority_only_misses(self):
        result = schedule_priority_only(FEASIBLE)
        assert result.order == ("A", "B")
        assert result.missed == frozenset({"B"})

    def test_infeasible_instance_misses_both(self):
        # Exhaustive check: no order saves this instance.
        assert min_missed(INFEASIBLE) == 1
        result = schedule_edf(INFEASIBLE)
        assert result.missed == frozenset({"A", "B"})

    def test_empty_list_rejected(self):
        with pytest.raises(ValidationError):
            schedule_edf([])


class TestCompare:
    def test_feasible_instance_counts(self):
        summary = compare(FEASIBLE)
        assert summary.missed_counts == {"PriorityOnly": 1, "EDF": 0}

    def test_single_job_identical_results(self):
        summary = compare([Job("A", 1, 5, 3)])
        assert summary.priority_only.order == summary.edf.order == ("A",)
        assert summary.missed_counts == {"PriorityOnly": 0, "EDF": 0}
        assert summary.finish_deltas == {"A": 0.0}

    def test_infeasible_instance_counts(self):
        summary = compare(INFEASIBLE)
        assert summary.missed_counts == {"PriorityOnly": 1, "EDF": 2}

    def test_finish_deltas(self):
        summary = compare(FEASIBLE)
        assert summary.finish_deltas == {"A": 2.0, "B": -3.0}


class TestProperties:
    def test_permutation_and_total_duration(self):
        rng = random.Random(41)
        for _ in range(50):
            jobs = random_jobs(rng, rng.randrange(1, 9))
            for result in (schedule_priority_only(jobs), schedule_edf(jobs)):
                assert sorted(result.order) == sorted(j.id for j in jobs)
                last = result.order[-1]
                assert result.finish_times[last] == pytest.approx(sum(j.duration for j in jobs))
                assert result.missed == {
                    j.id for j in jobs if result.finish_times[j.id] > j.deadline}

    def test_determinism(self):
        rng = random.Random(42)
        for _ in range(20):
            jobs = random_jobs(rng, rng.randrange(1, 9))
            shuffled = list(jobs)
            rng.shuffle(shuffled)
            assert schedule_edf(jobs) == schedule_edf(shuffled)
            assert schedule_priority_only(jobs) == schedule_priority_only(shuffled)

    def test_edf_feasibility_optimality(self):
        # Whenever some order meets every deadline, EDF must too.
        rng = random.Random(4242)
        for _ in range(60):
            jobs = random_jobs(rng, rng.randrange(1, 8))
            if min_missed(jobs) == 0:
                assert schedule_edf(jobs).missed == frozenset()

    def test_duplicate_ids_rejected(self):
        with pytest.raises(ValidationError):
            schedule_edf([Job("A", 1, 2, 1), Job("A", 1, 3, 1)])


class TestJobValidationAndCsv:
    def test_positive_fields(self):
        with pytest.raises(ValidationError):
            Job("A", 0, 5, 1)
        with pytest.raises(ValidationError):
            Job("A", 1, 0, 1)
        with pytest.raises(ValidationError):
            Job("", 1, 1, 1)

    def test_parse_jobs(self):
        text = "id,duration_h,deadline_h,priority\nA,3,3,2\nB,3,2,1\n"
        assert parse_jobs_csv(text) == INFEASIBLE

    def test_parse_rejects_bad_header(self):
        with pytest.raises(ValidationError):
            parse_jobs_csv("who,what\n")

    def test_parse_rejects_bad_row(self):
        with pytest.raises(ValidationError, match="line 2"):
            parse_jobs_csv("id,duration_h,deadline_h,priority\nA,spoon,2,1\n")

    def test_comparison_csv(self):
        summary = compare(FEASIBLE)
        lines = comparison_to_csv(summary, FEASIBLE).splitlines()
        assert lines[0] == "policy,id,duration_h,deadline_h,priority,finish_h,missed"
        assert "PriorityOnly,B,2,2,1,5,yes" in lines
        assert "EDF,B,2,2,1,2,no" in lines
