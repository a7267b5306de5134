"""Seeded integer sequences on the conic x0^2 - b*x1^2 - c*x2^2 = 1.

From a Pell seed the recurrences

    y_{i+1} = t_i * y_i - y_{i-2},    t_{i+1} = t_i * t_{i-1} - t_{i-2}

produce unit vectors of the form whose projective classes converge, with
golden-ratio growth, to a point (1 : xi1 : xi2) on the conic admitting the
extremal uniform approximation exponent.  Every algebraic identity the
construction relies on is re-checked exactly at runtime while extending.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .numerics import CertifiedReal, PrecisionCapError, precision_cap
from .pell import fundamental_solution, find_seed_pair
from .quadform import (
    TernaryQuadraticForm,
    Vec3,
    cross,
    det3,
    dot,
    max_norm,
    psi,
)
from .arith import is_squarefree


class InvariantViolation(RuntimeError):
    """An exact runtime identity of the construction failed."""

    def __init__(self, identity: str, index: int):
        super().__init__(f"{identity} failed at index {index}")
        self.identity = identity
        self.index = index


class UnsupportedConstruction(ValueError):
    """Seeded construction requires square-free b > 1 and c > 1."""


@dataclass(frozen=True)
class CertifiedVec3:
    """Enclosure of a projective representative (1, xi1, xi2), plus a bound on
    the projective distance from the last sequence member used to the limit."""

    xi1: CertifiedReal
    xi2: CertifiedReal
    tail_bound: CertifiedReal


@dataclass
class ExtremalSequence:
    b: int
    c: int
    seed: tuple[int, int, int, int, int, int]  # (m, n, m', n', r, t)
    form: TernaryQuadraticForm
    ys: list[Vec3] = field(default_factory=list)  # ys[k] holds y_{k-1}
    ts: list[int] = field(default_factory=list)
    det0: int = 0

    def y(self, i: int) -> Vec3:
        return self.ys[i + 1]

    def t(self, i: int) -> int:
        return self.ts[i + 1]

    @property
    def depth(self) -> int:
        """Largest stored index."""
        return len(self.ys) - 2


def _validate_bc(b: int, c: int) -> None:
    for name, v in (("b", b), ("c", c)):
        if v <= 1 or not is_squarefree(v):
            raise UnsupportedConstruction(f"{name}={v} must be a square-free integer > 1")


def seed_triple(b: int, c: int) -> ExtremalSequence:
    """Initial sequence at indices -1, 0, 1 from the Pell data of b and c."""
    _validate_bc(b, c)
    form = TernaryQuadraticForm(1, -b, -c)
    s, sp = find_seed_pair(b)
    rt = fundamental_solution(c)
    m, n, mp, np_, r, t = s.m, s.n, sp.m, sp.n, rt.m, rt.n
    ys: list[Vec3] = [(1, 0, 0), (m, n, 0), (r * mp, r * np_, t)]
    ts = [
        form.bilinear(ys[1], ys[0]),
        form.bilinear(ys[2], ys[1]),
        form.bilinear(ys[2], ys[0]),
    ]
    seq = ExtremalSequence(b, c, (m, n, mp, np_, r, t), form, ys, ts)
    for i in (-1, 0, 1):
        if form(seq.y(i)) != 1:
            raise InvariantViolation("unit value of the form on a seed vector", i)
    if not (0 < ts[0] < ts[1] < ts[2]):
        raise InvariantViolation("strictly increasing seed inner products", 1)
    if not (max_norm(ys[0]) < max_norm(ys[1]) < max_norm(ys[2])):
        raise InvariantViolation("strictly increasing seed norms", 1)
    seq.det0 = det3(ys[2], ys[1], ys[0])
    if seq.det0 == 0:
        raise InvariantViolation("linear independence of the seed triple", 1)
    return seq


def _check_new_index(seq: ExtremalSequence, i: int) -> None:
    """Exact invariants for the freshly appended index i (i >= 2)."""
    form = seq.form
    y_new, y1, y3 = seq.y(i), seq.y(i - 1), seq.y(i - 3)
    if form(y_new) != 1:
        raise InvariantViolation("unit value of the form", i)
    if y_new != psi(form, y1, y3):
        raise InvariantViolation("reflection-operator recurrence", i)
    if seq.t(i - 1) != form.bilinear(y_new, y1):
        raise InvariantViolation("inner-product identity t_i = B(y_{i+1}, y_i)", i - 1)
    if seq.t(i) != form.bilinear(y_new, seq.y(i - 2)):
        raise InvariantViolation("inner-product identity t_{i+1} = B(y_{i+1}, y_{i-1})", i)
    if abs(det3(y_new, y1, seq.y(i - 2))) != abs(seq.det0):
        raise InvariantViolation("constant determinant", i)
    t_prev, t_prev2 = seq.t(i - 1), seq.t(i - 2)
    if not ((t_prev - 1) * t_prev2 < seq.t(i) < t_prev * t_prev2):
        raise InvariantViolation("double inequality on t", i)
    if not (
        (t_prev - 1) * max_norm(y1) < max_norm(y_new) < (t_prev + 1) * max_norm(y1)
    ):
        raise InvariantViolation("double inequality on norms", i)


def extend(seq: ExtremalSequence, upto: int) -> ExtremalSequence:
    """Extend in place through index `upto`, re-checking all identities."""
    while seq.depth < upto:
        i = seq.depth + 1
        t_i_minus_1 = seq.t(i - 1)
        y_new = tuple(
            t_i_minus_1 * a - b for a, b in zip(seq.y(i - 1), seq.y(i - 3))
        )
        t_new = seq.t(i - 1) * seq.t(i - 2) - seq.t(i - 3)
        seq.ys.append(y_new)  # type: ignore[arg-type]
        seq.ts.append(t_new)
        _check_new_index(seq, i)
    return seq


def proj_dist_exact(u, v) -> Fraction:
    """Projective distance ||u ^ v|| / (||u|| ||v||) for exact integer vectors."""
    if not any(u) or not any(v):
        raise ValueError("zero vector")
    return Fraction(max_norm(cross(u, v)), max_norm(u) * max_norm(v))


def tail_bound_from(seq: ExtremalSequence, start: int, slack: Fraction) -> Fraction:
    """Bound on the projective distance from [y_start] to the limit point.

    Uses the quasi-triangle inequality dist([x],[z]) <= dist([x],[y]) + 2 dist([y],[z]):
    summing 2^k * d_k over consecutive-member distances d_k, truncated once the
    running term drops below `slack`; the remainder is majorized geometrically
    after checking d_{k+1} <= d_k / 4 at every step used.
    """
    total = Fraction(0)
    k = 0
    prev: Fraction | None = None
    while True:
        extend(seq, start + k + 1)
        d = proj_dist_exact(seq.y(start + k), seq.y(start + k + 1))
        if prev is not None and d > prev / 4:
            raise InvariantViolation("quartic decay of consecutive distances", start + k)
        term = Fraction(2**k) * d
        total += term
        if term < slack:
            return total + term  # remainder of the series is at most one extra term
        prev = d
        k += 1


def limit_point(seq: ExtremalSequence, target_width: Fraction | float) -> CertifiedVec3:
    """Certified enclosure of the limit (1, xi1, xi2), coordinate widths <= target_width."""
    tw = Fraction(target_width)
    if tw <= 0:
        raise ValueError("target_width must be positive")
    # bits ~ -log2(tw), computed exactly (tw can underflow a float)
    bits = max(64, 8 + (tw.denominator // tw.numerator).bit_length()) if tw < 1 else 64
    if bits > precision_cap():
        raise PrecisionCapError(
            f"target width {float(tw):.3g} needs {bits} bits, cap is {precision_cap()}"
        )
    i = 2
    while True:
        extend(seq, i)
        y = seq.y(i)
        d = tail_bound_from(seq, i, tw / 4)
        # |xi_j - y_j / y_0| <= d * ||y|| / y_0  (representative normalized to first
        # coordinate 1, whose max norm is 1 because b, c > 1 force |xi_j| < 1)
        eps = d * Fraction(max_norm(y), y[0])
        if 2 * eps <= tw / 2:
            xi1 = CertifiedReal.from_endpoints(
                Fraction(y[1], y[0]) - eps, Fraction(y[1], y[0]) + eps, bits
            )
            xi2 = CertifiedReal.from_endpoints(
                Fraction(y[2], y[0]) - eps, Fraction(y[2], y[0]) + eps, bits
            )
            if xi1.width().as_fraction() > tw or xi2.width().as_fraction() > tw:
                raise AssertionError("enclosure construction exceeded target width")
            enclosure = CertifiedVec3(xi1, xi2, CertifiedReal.from_fraction(d, 64))
            _check_on_conic(seq, enclosure)
            return enclosure
        i += 1


def _check_on_conic(seq: ExtremalSequence, xi: CertifiedVec3) -> None:
    one = CertifiedReal.from_int(1)
    val = one - (xi.xi1 * xi.xi1).mul_int(seq.b) - (xi.xi2 * xi.xi2).mul_int(seq.c)
    if not val.contains(0):
        raise InvariantViolation("limit point lies on the conic", seq.depth)


def tails_equal(seq_a: ExtremalSequence, seq_b: ExtremalSequence) -> int | None:
    """Shift a with y'_i = +/- y_{i+a} over the whole overlap, or None if distinct."""
    na, nb = seq_a.depth, seq_b.depth
    for a in range(-(nb + 1), na + 2):
        lo = max(-1, -1 - a)
        hi = min(na - a, nb)
        if hi - lo < 2:
            continue
        if all(
            seq_a.y(i + a) == seq_b.y(i)
            or seq_a.y(i + a) == tuple(-x for x in seq_b.y(i))
            for i in range(lo, hi + 1)
        ):
            return a
    return None


def verify_no_small_relation(seq: ExtremalSequence, coeff_bound: int = 10**6) -> bool:
    """Prove no integer relation u0 + u1*xi1 + u2*xi2 = 0 with |u_i| <= coeff_bound.

    If u were such a relation then |<u, y_i>| <= 2 ||u|| ||y_i ^ Xi|| for every i;
    once the right side is below 1 for three consecutive indices, the integers
    <u, y_i> vanish on a triple spanning the space, forcing u = 0.
    """
    i = 2
    while True:
        extend(seq, i + 2)
        ok = True
        for j in (i, i + 1, i + 2):
            wedge = tail_bound_from(seq, j, Fraction(1, 2**20)) * max_norm(seq.y(j))
            if 2 * coeff_bound * wedge >= 1:
                ok = False
                break
        if ok:
            return True
        i += 1


def growth_ratios(seq: ExtremalSequence) -> list[tuple[int, float]]:
    """(i, log||y_{i+1}|| / log||y_i||) for all stored i >= 1."""
    out = []
    for i in range(1, seq.depth):
        out.append((i, math.log(max_norm(seq.y(i + 1))) / math.log(max_norm(seq.y(i)))))
    return out
