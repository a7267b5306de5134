"""Minimal-point enumeration against brute force, exponent reports, rigidity."""
import math
from fractions import Fraction
from math import isqrt

import pytest

from conic_approx.extremal import extend, seed_triple
from conic_approx.minpoints import (
    RationalTargetError,
    enumerate_minimal,
    estimate_lambda,
    independence_indices,
    integer_multiple_of,
    projective_distance,
    records_from_sequence,
    rigidity_check,
)
from conic_approx.quadform import TernaryQuadraticForm, det3
from conic_approx.targets import ExtremalTarget, RationalTarget, SqrtPairTarget


def decimal_scaled_sqrt(a: int, digits: int) -> int:
    """floor(sqrt(a) * 10**digits), an oracle independent of the dyadic pipeline."""
    return isqrt(a * 10 ** (2 * digits))


def brute_force_records(scaled, xmax, digits):
    """Record scan over a +-2 window of candidate integer pairs per x0.

    `scaled` are floor(xi_j * 10**digits); comparisons carry an explicit margin
    so a wrong decision is impossible for targets that are not near-rational.
    """
    S = 10**digits
    a1, a2 = scaled
    records = []
    best = None
    for x0 in range(1, xmax + 1):
        cands = []
        for d1 in range(-2, 3):
            n1 = (x0 * a1 + S // 2) // S + d1
            for d2 in range(-2, 3):
                n2 = (x0 * a2 + S // 2) // S + d2
                L = max(abs(x0 * a1 - n1 * S), abs(x0 * a2 - n2 * S))
                cands.append((L, n1, n2))
        L, n1, n2 = min(cands)
        assert L > 4 * xmax  # margin: scaled values are off by < xmax ulp
        if best is None or L + 4 * xmax < best:
            best = L
            records.append((x0, n1, n2))
        else:
            assert L > best - 4 * xmax  # no undecided comparisons at this scale
    return records


class TestEnumerateAgainstBruteForce:
    @pytest.mark.parametrize("a,b", [(2, 3), (2, 5), (3, 5)])
    def test_sqrt_targets_xmax_100(self, a, b):
        got = enumerate_minimal(SqrtPairTarget(a, b), 100)
        digits = 30
        want = brute_force_records(
            (decimal_scaled_sqrt(a, digits), decimal_scaled_sqrt(b, digits)), 100, digits
        )
        assert [(r.x[0], r.x[1], r.x[2]) for r in got] == want

    def test_extremal_target_contains_sequence_members(self):
        got = enumerate_minimal(ExtremalTarget(2, 3), 10**4)
        xs = [r.x for r in got]
        seq = extend(seed_triple(2, 3), 3)
        # y_{-1} = (1,0,0) is not a record ((1,1,0) is closer at x0 = 1);
        # all later members within range must appear
        for i in (0, 1):
            assert seq.y(i) in xs

    def test_records_strictly_improving(self):
        got = enumerate_minimal(SqrtPairTarget(2, 3), 2000)
        for r1, r2 in zip(got, got[1:]):
            assert r2.X > r1.X
            assert r2.L.hi < r1.L.lo  # certified strict decrease


class TestRationalTargets:
    def test_rational_point_detected(self):
        with pytest.raises(RationalTargetError) as ei:
            enumerate_minimal(RationalTarget(Fraction(1, 2), Fraction(1, 3)), 10)
        assert ei.value.point == (6, 3, 2)

    def test_square_sqrt_target_is_rational(self):
        with pytest.raises(RationalTargetError):
            enumerate_minimal(SqrtPairTarget(4, 9), 10)

    def test_xmax_validation(self):
        with pytest.raises(ValueError):
            enumerate_minimal(SqrtPairTarget(2, 3), 0)


class TestExponentReport:
    def test_two_records_single_hat(self):
        recs = enumerate_minimal(SqrtPairTarget(2, 3), 3)
        assert len(recs) >= 2
        rep = estimate_lambda(recs[:2])
        assert len(rep.lambda_hats) == 1

    def test_hats_in_unit_interval_for_sqrt_target(self):
        recs = enumerate_minimal(SqrtPairTarget(2, 3), 10**4)
        rep = estimate_lambda(recs)
        for i, h in rep.lambda_hats[2:]:
            assert 0 <= h <= 1.2  # early indices can overshoot; later ones settle
        assert 0 < rep.summary < 1
        assert rep.alpha == pytest.approx((2 * rep.summary - 1) / (1 - rep.summary))
        assert rep.theta == pytest.approx((1 - rep.summary) / rep.summary)

    def test_records_from_sequence_heights(self):
        seq = seed_triple(2, 3)
        recs, next_x = records_from_sequence(seq, ExtremalTarget(2, 3), 10**20)
        assert [r.x for r in recs[:3]] == [(1, 0, 0), (3, 2, 0), (198, 140, 1)]
        assert next_x > recs[-1].X
        rep = estimate_lambda(recs, next_X=next_x)
        assert len(rep.lambda_hats) == len(recs)


class TestIndependence:
    def test_collinear_triple_excluded(self):
        recs = enumerate_minimal(SqrtPairTarget(2, 3), 100)
        fake = [recs[0], recs[0], recs[0]]
        assert independence_indices(fake) == []

    def test_determinant_bound(self):
        recs = enumerate_minimal(SqrtPairTarget(2, 3), 10**4)
        for i in independence_indices(recs):
            d = abs(det3(recs[i - 1].x, recs[i].x, recs[i + 1].x))
            bound = (
                6
                * recs[i + 1].X
                * recs[i].L.hi.as_fraction()
                * recs[i - 1].L.hi.as_fraction()
            )
            assert d <= bound


class TestRigidity:
    def test_insufficient_data(self):
        recs = enumerate_minimal(SqrtPairTarget(2, 3), 50)
        phi = TernaryQuadraticForm(1, -2, -3)
        rep = rigidity_check(phi, recs[:4])
        assert rep.insufficient

    def test_integer_multiple_detection(self):
        assert integer_multiple_of((6, 9, 12), (2, 3, 4)) == 3
        assert integer_multiple_of((6, 9, 13), (2, 3, 4)) is None
        assert integer_multiple_of((3, 3, 4), (2, 3, 4)) is None

    def test_control_target_shows_failures(self):
        recs = enumerate_minimal(SqrtPairTarget(2, 3), 10**5)
        phi = TernaryQuadraticForm(1, -2, -3)
        rep = rigidity_check(phi, recs)
        assert not rep.insufficient
        assert any(not ok for _, ok in rep.checks)


class TestFormValueBand:
    def test_extremal_form_values(self):
        # |phi(x_i)| >= 1 past the first record, and |phi(x_i)| <= C * X_i * L_i
        recs = enumerate_minimal(ExtremalTarget(2, 3), 10**4)
        phi = TernaryQuadraticForm(1, -2, -3)
        for r in recs[1:]:
            v = abs(phi(r.x))
            assert v >= 1
            assert v <= 40 * r.X * r.L.hi.as_fraction() + 10


class TestProjectiveDistance:
    def test_self_distance_zero(self):
        assert projective_distance((2, 3, 5), (2, 3, 5)).contains(0)

    def test_orthonormal_pair(self):
        assert projective_distance((1, 0, 0), (0, 1, 0)).contains(1)

    def test_example(self):
        assert projective_distance((1, 0, 0), (1, 1, 0)).contains(1)

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            projective_distance((0, 0, 0), (1, 2, 3))
