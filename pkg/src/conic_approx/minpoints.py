"""Minimal points (best approximations) to a certified target and exponent reports.

A minimal point realizes a new strict record of L(x) = max(|x0*xi1 - x1|,
|x0*xi2 - x2|) as the first coordinate grows.  For a fixed x0 the best lattice
point is obtained by independent nearest-integer rounding of x0*xi1 and
x0*xi2, so one exact scan over x0 = 1..Xmax enumerates the whole sequence.
The scan runs on scaled-integer enclosures; any undecided comparison restarts
it at doubled precision, so every emitted record is certified.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .numerics import (
    CertifiedReal,
    Dyadic,
    PrecisionCapError,
    precision_cap,
)
from .quadform import TernaryQuadraticForm, Vec3, cross, det3, max_norm, primitive, psi
from .targets import Target

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2


class RationalTargetError(ValueError):
    """The target is a rational point; L vanishes and records are undefined."""

    def __init__(self, point: Vec3):
        super().__init__(f"target is the rational point {point}")
        self.point = point


@dataclass(frozen=True)
class MinimalPointRecord:
    x: Vec3
    X: int
    L: CertifiedReal
    delta: tuple[CertifiedReal, CertifiedReal]


@dataclass(frozen=True)
class ExponentReport:
    lambda_hats: list[tuple[int, float]]
    summary: float
    alpha: float
    theta: float
    independence_set: list[int]
    c_lower: float


@dataclass(frozen=True)
class RigidityReport:
    independence_set: list[int]
    insufficient: bool
    checks: list[tuple[int, bool]]  # (position k in the independence subsequence, passed)
    first_holding: int | None
    form_values: list[int]


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _scaled_bounds(x: CertifiedReal, p: int) -> tuple[int, int]:
    """Integer bounds [lo, hi] with the value inside [lo, hi] * 2**-p."""

    def scale(d: Dyadic, up: bool) -> int:
        shift = d.exp + p
        if shift >= 0:
            return d.man << shift
        m = d.man >> -shift
        if up and d.man & ((1 << -shift) - 1):
            m += 1
        return m

    return scale(x.lo, False), scale(x.hi, True)


def _abs_interval(lo: int, hi: int) -> tuple[int, int]:
    if lo >= 0:
        return lo, hi
    if hi <= 0:
        return -hi, -lo
    return 0, max(-lo, hi)


def _scan(target: Target, xmax: int, p: int):
    """One pass at fixed precision; returns records or None when undecided."""
    e1, e2 = target.enclosure(p)
    a1lo, a1hi = _scaled_bounds(e1, p)
    a2lo, a2hi = _scaled_bounds(e2, p)
    half = 1 << (p - 1)
    records = []
    best: tuple[int, int] | None = None  # scaled (lo, hi) of the current record L
    for x0 in range(1, xmax + 1):
        v1lo, v1hi = x0 * a1lo, x0 * a1hi
        v2lo, v2hi = x0 * a2lo, x0 * a2hi
        n1 = (v1lo + half) >> p
        if ((v1hi + half) >> p) != n1:
            return None
        n2 = (v2lo + half) >> p
        if ((v2hi + half) >> p) != n2:
            return None
        d1 = (v1lo - (n1 << p), v1hi - (n1 << p))
        d2 = (v2lo - (n2 << p), v2hi - (n2 << p))
        e1i = _abs_interval(*d1)
        e2i = _abs_interval(*d2)
        li = (max(e1i[0], e2i[0]), max(e1i[1], e2i[1]))
        if best is None or li[1] < best[0]:
            best = li
            records.append((x0, n1, n2, li, d1, d2))
        elif li[0] < best[1]:
            return None  # overlap with the current record: undecided
    return records, p


def _certified(lo: int, hi: int, p: int) -> CertifiedReal:
    return CertifiedReal(Dyadic.make(lo, -p), Dyadic.make(hi, -p), p)


def enumerate_minimal(
    target: Target, xmax: int, *, bits: int | None = None
) -> list[MinimalPointRecord]:
    """Certified minimal-point records for x0 = 1..xmax."""
    if xmax <= 0:
        raise ValueError("xmax must be positive")
    exact = target.exact_coords()
    if exact is not None:
        return _enumerate_rational(exact, xmax)
    p = bits if bits is not None else max(96, 2 * xmax.bit_length() + 64)
    cap = precision_cap()
    while True:
        out = _scan(target, xmax, p)
        if out is not None:
            raw, p = out
            result = []
            for x0, n1, n2, li, d1, d2 in raw:
                vec = primitive((x0, n1, n2))
                assert vec == (x0, n1, n2), "minimal points are primitive"
                result.append(
                    MinimalPointRecord(
                        x=vec,
                        X=x0,
                        L=_certified(li[0], li[1], p),
                        delta=(
                            -_certified(d1[0], d1[1], p),
                            -_certified(d2[0], d2[1], p),
                        ),
                    )
                )
            return result
        if p >= cap:
            raise PrecisionCapError(f"minimal-point scan undecided at {p} bits")
        p = min(2 * p, cap)


def _enumerate_rational(exact, xmax: int) -> list[MinimalPointRecord]:
    xi1, xi2 = exact
    best: Fraction | None = None
    records = []
    for x0 in range(1, xmax + 1):
        v1, v2 = x0 * xi1, x0 * xi2
        n1, n2 = _nearest(v1), _nearest(v2)
        L = max(abs(v1 - n1), abs(v2 - n2))
        if L == 0:
            raise RationalTargetError((x0, n1, n2))
        if best is None or L < best:
            best = L
            records.append(
                MinimalPointRecord(
                    x=primitive((x0, n1, n2)),
                    X=x0,
                    L=CertifiedReal.from_fraction(L, 96),
                    delta=(
                        CertifiedReal.from_fraction(n1 - v1, 96),
                        CertifiedReal.from_fraction(n2 - v2, 96),
                    ),
                )
            )
    return records


def _nearest(q: Fraction) -> int:
    n = (2 * q + 1) // 2
    if 2 * q == 2 * n - 1 and n % 2:  # half-integer ties round to even
        n -= 1
    return int(n)


# ---------------------------------------------------------------------------
# exponent estimation and structure checks
# ---------------------------------------------------------------------------

def _log_interval(x: CertifiedReal) -> float:
    lo, hi = x.log_bounds()
    return (lo + hi) / 2


def records_from_sequence(seq, target: Target, max_norm_cap: int, bits: int = 512):
    """Exact sequence members restated as minimal-point records, up to a norm cap."""
    from .extremal import extend

    e1, e2 = target.enclosure(bits)
    out = []
    i = -1
    while True:
        extend(seq, i + 1)
        y = seq.y(i)
        if max_norm(y) > max_norm_cap:
            break
        d1 = e1.mul_int(y[0]) - CertifiedReal.from_int(y[1])
        d2 = e2.mul_int(y[0]) - CertifiedReal.from_int(y[2])
        L = d1.abs_().max_with(d2.abs_())
        out.append(MinimalPointRecord(x=y, X=y[0], L=L, delta=(-d1, -d2)))
        i += 1
    # one extra first coordinate so the last record gets a lambda-hat
    next_x = seq.y(i)[0]
    return out, next_x


def estimate_lambda(
    records: list[MinimalPointRecord], next_X: int | None = None
) -> ExponentReport:
    """Exponent estimates lambda_hat_i = -log L_i / log X_{i+1} and summary.

    The summary is the minimum over the last ceil(k/3) estimates (the exponent
    is liminf-flavored and early records are pre-asymptotic).
    """
    if len(records) < 2 and next_X is None:
        raise ValueError("need at least two records")
    hats: list[tuple[int, float]] = []
    for i, rec in enumerate(records):
        if i + 1 < len(records):
            nxt = records[i + 1].X
        elif next_X is not None:
            nxt = next_X
        else:
            break
        hats.append((i, -_log_interval(rec.L) / math.log(nxt)))
    k = len(hats)
    tail = hats[-math.ceil(k / 3):]
    summary = min(h for _, h in tail)
    alpha = (2 * summary - 1) / (1 - summary)
    theta = (1 - summary) / summary
    indep = independence_indices(records)
    c_lower = 0.0
    for i, rec in enumerate(records[:-1]):
        c_lower = max(
            c_lower, math.exp(_log_interval(rec.L) + summary * math.log(records[i + 1].X))
        )
    return ExponentReport(hats, summary, alpha, theta, indep, c_lower)


def independence_indices(records: list[MinimalPointRecord]) -> list[int]:
    """Indices i with det(x_{i-1}, x_i, x_{i+1}) != 0 (exact integer determinant)."""
    out = []
    for i in range(1, len(records) - 1):
        if det3(records[i - 1].x, records[i].x, records[i + 1].x) != 0:
            out.append(i)
    return out


def integer_multiple_of(w, y) -> int | None:
    """k with w == k * y, or None."""
    if any(cross(w, y)):
        return None
    for a, b in zip(w, y):
        if b != 0:
            if a % b:
                return None
            k = a // b
            return k if all(x == k * z for x, z in zip(w, y)) else None
    return None


def rigidity_check(
    phi: TernaryQuadraticForm, records: list[MinimalPointRecord]
) -> RigidityReport:
    """Check that records at consecutive independence indices obey the reflection
    rigidity: psi(y_k, y_{k-2}) is an exact integer multiple of y_{k+1}."""
    indep = independence_indices(records)
    ys = [records[i].x for i in indep]
    form_values = [abs(phi(y)) for y in ys]
    if len(indep) < 4:
        return RigidityReport(indep, True, [], None, form_values)
    checks = []
    first_holding = None
    for k in range(2, len(ys) - 1):
        w = psi(phi, ys[k], ys[k - 2])
        ok = integer_multiple_of(w, ys[k + 1]) is not None
        checks.append((k, ok))
        if ok and first_holding is None:
            first_holding = k
        if not ok:
            first_holding = None
    return RigidityReport(indep, False, checks, first_holding, form_values)


def projective_distance(x, y, precision: int = 64) -> CertifiedReal:
    """dist([x],[y]) = ||x ^ y|| / (||x|| ||y||) for exact rational vectors."""
    if not any(x) or not any(y):
        raise ValueError("zero vector")
    num = max(abs(Fraction(c)) for c in cross(x, y))
    den = max(abs(Fraction(c)) for c in x) * max(abs(Fraction(c)) for c in y)
    return CertifiedReal.from_fraction(num / den, precision)
