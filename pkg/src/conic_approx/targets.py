"""Approximation targets (1, xi1, xi2) that can be certified at any precision."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Protocol

from .extremal import ExtremalSequence, limit_point, seed_triple
from .numerics import CertifiedReal, interval_sqrt


class Target(Protocol):
    def enclosure(self, bits: int) -> tuple[CertifiedReal, CertifiedReal]:
        """Enclosures of (xi1, xi2) with widths at most 2**-bits."""
        ...

    def exact_coords(self) -> tuple[Fraction, Fraction] | None:
        """Exact values when the target is rational, else None."""
        ...


@dataclass(frozen=True)
class RationalTarget:
    xi1: Fraction
    xi2: Fraction

    def enclosure(self, bits: int) -> tuple[CertifiedReal, CertifiedReal]:
        return (
            CertifiedReal.from_fraction(self.xi1, bits),
            CertifiedReal.from_fraction(self.xi2, bits),
        )

    def exact_coords(self):
        return (self.xi1, self.xi2)


@dataclass(frozen=True)
class SqrtPairTarget:
    """The point (1, sqrt(a), sqrt(b)) for non-negative integers a, b."""

    a: int
    b: int

    def enclosure(self, bits: int) -> tuple[CertifiedReal, CertifiedReal]:
        return (
            interval_sqrt(CertifiedReal.from_int(self.a, bits + 4)),
            interval_sqrt(CertifiedReal.from_int(self.b, bits + 4)),
        )

    def exact_coords(self):
        ra, rb = _exact_sqrt(self.a), _exact_sqrt(self.b)
        if ra is not None and rb is not None:
            return (Fraction(ra), Fraction(rb))
        return None


def _exact_sqrt(n: int) -> int | None:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


@dataclass
class ExtremalTarget:
    """Limit point of the seeded sequence on x0^2 - b*x1^2 - c*x2^2 = 1."""

    b: int
    c: int
    _seq: ExtremalSequence | None = field(default=None, repr=False)

    @property
    def sequence(self) -> ExtremalSequence:
        if self._seq is None:
            self._seq = seed_triple(self.b, self.c)
        return self._seq

    def enclosure(self, bits: int) -> tuple[CertifiedReal, CertifiedReal]:
        enc = limit_point(self.sequence, Fraction(1, 2**bits))
        return enc.xi1, enc.xi2

    def exact_coords(self):
        return None
