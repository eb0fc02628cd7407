"""Adjoint-orbit reduction, invariants, and coverage verification."""

import math
from fractions import Fraction

import pytest

from liesym.liealg import structure_constants
from liesym.optimal import (
    OptimalSystemError,
    adjoint_orbit_reduce,
    orbit_invariants_check,
    replay,
    separation_failures,
    default_representatives,
    verify_optimal_cover,
)


@pytest.fixture(scope="module")
def algebra(general_fields):
    return structure_constants(general_fields)


class TestReduce:
    def test_pure_tilt_is_case_8(self, algebra):
        trace = adjoint_orbit_reduce([0, 0, 0, 1, 0], algebra)
        assert trace.matched_case == 8
        assert trace.moves == []
        assert trace.scale == 1

    def test_scaling_only_gives_case_9(self, algebra):
        trace = adjoint_orbit_reduce([0, 0, 0, 0, 7], algebra)
        assert trace.matched_case == 9
        assert trace.scale == Fraction(1, 7)
        assert trace.moves == []

    def test_pythagorean_reduction_is_exact(self, algebra):
        trace = adjoint_orbit_reduce([1, 2, 3, 4, 0], algebra)
        assert trace.matched_case == 1
        assert trace.exact
        assert trace.parameters == {"a2": Fraction(2), "a5": Fraction(5)}
        assert list(trace.output) == [1, 2, 0, 0, 5]

    def test_time_leading_reduction(self, algebra):
        trace = adjoint_orbit_reduce([0, 3, 0, 4, 3], algebra)
        assert trace.matched_case == 4
        assert trace.parameters["a5"] == Fraction(5, 3)

    def test_rotation_only_vector(self, algebra):
        trace = adjoint_orbit_reduce([0, 0, 2, 0, 0], algebra)
        # rotates onto the last axis and scales to case 9
        assert trace.matched_case == 9

    def test_irrational_hypotenuse_uses_floats(self, algebra):
        trace = adjoint_orbit_reduce([1, 0, 1, 1, 0], algebra)
        assert trace.matched_case == 1
        assert not trace.exact
        assert abs(float(trace.parameters["a5"]) - math.sqrt(2)) < 1e-9

    def test_zero_vector_rejected(self, algebra):
        with pytest.raises(OptimalSystemError):
            adjoint_orbit_reduce([0, 0, 0, 0, 0], algebra)

    def test_unmatched_is_reported_not_raised(self, algebra):
        reps = [r for r in default_representatives() if r.case_id != 1]
        trace = adjoint_orbit_reduce([1, 2, 3, 4, 0], algebra, reps)
        assert trace.matched_case is None

    def test_negative_leading_coefficient_scales_negatively(self, algebra):
        trace = adjoint_orbit_reduce([-2, 1, 0, 0, 0], algebra)
        assert trace.matched_case == 1
        assert trace.scale == Fraction(-1, 2)
        assert trace.parameters["a2"] == Fraction(-1, 2)


class TestReplay:
    def test_exact_replay(self, algebra):
        trace = adjoint_orbit_reduce([1, 2, 3, 4, 0], algebra)
        assert replay(trace) == list(trace.output)

    def test_float_replay_within_tolerance(self, algebra):
        trace = adjoint_orbit_reduce([2, -1, 1, 1, 3], algebra)
        got = replay(trace)
        assert max(abs(float(a) - float(b)) for a, b in zip(got, trace.output)) < 1e-12


class TestDeterminism:
    def test_identical_traces(self, algebra):
        t1 = adjoint_orbit_reduce([5, -3, 2, 7, 1], algebra)
        t2 = adjoint_orbit_reduce([5, -3, 2, 7, 1], algebra)
        assert t1.as_dict() == t2.as_dict()

    def test_representative_idempotence(self, algebra):
        for rep_vec in ([1, 3, 0, 0, 2], [0, 1, 0, 0, 5], [0, 0, 1, 0, 0],
                        [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]):
            trace = adjoint_orbit_reduce(rep_vec, algebra)
            assert trace.moves == []
            assert trace.scale == 1
            assert list(trace.output) == rep_vec


class TestInvariants:
    def test_default_candidates_invariant(self, algebra):
        report = orbit_invariants_check(algebra)
        assert all(entry["invariant"] for entry in report.values())

    def test_single_coefficient_not_invariant(self, algebra):
        from liesym.symexpr import Sym

        report = orbit_invariants_check(algebra, {"a5": Sym("a5")})
        entry = report["a5"]
        assert not entry["invariant"]
        assert 3 in entry["failing_generators"] or 4 in entry["failing_generators"]


class TestCoverage:
    def test_seeded_cover_is_complete(self, algebra):
        report = verify_optimal_cover(algebra, samples=300, seed=42)
        assert report["matched_total"] == report["valid_total"]
        assert report["unmatched"] == []
        assert report["invariant_drift_max"] < 1e-9
        assert report["replay_error_max"] < 1e-12

    def test_missing_representative_detected(self, algebra):
        reps = [r for r in default_representatives() if r.case_id != 1]
        report = verify_optimal_cover(algebra, reps, samples=120, seed=42)
        assert report["unmatched"]

    def test_separation_failures_within_triples(self):
        pairs = separation_failures(default_representatives())
        assert sorted(pairs) == [
            (1, 2), (1, 3), (2, 3),
            (4, 5), (4, 6), (5, 6),
            (7, 8), (7, 9), (8, 9),
        ]

    def test_determinism(self, algebra):
        r1 = verify_optimal_cover(algebra, samples=100, seed=11)
        r2 = verify_optimal_cover(algebra, samples=100, seed=11)
        assert r1 == r2
