"""Elementary integer arithmetic: factorization, square-free parts, quadratic residues.

Everything here uses trial division; inputs are desk-scale (coefficients of
small quadratic forms), so no advanced factoring is needed.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| by trial division. Returns {prime: exponent}."""
    n = abs(n)
    if n <= 1:
        return {}
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write |n| = s**2 * f with f square-free.  Returns (s, f); f carries the sign of n."""
    if n == 0:
        return 1, 0
    sign = 1 if n > 0 else -1
    s = 1
    f = 1
    for p, e in factorize(n).items():
        s *= p ** (e // 2)
        if e % 2:
            f *= p
    return s, sign * f


def is_squarefree(n: int) -> bool:
    return abs(n) == abs(squarefree_decompose(n)[1])


def squarefree_scale(q: Fraction) -> tuple[Fraction, int]:
    """For q > 0 find rational s with q * s**2 equal to a square-free positive integer f.

    Returns (s, f).
    """
    if q <= 0:
        raise ValueError("positive rational required")
    u, v = q.numerator, q.denominator
    w, f = squarefree_decompose(u * v)
    s = Fraction(v, w)
    assert q * s * s == f
    return s, f


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def is_qr_mod_squarefree(a: int, m: int) -> bool:
    """Whether x**2 = a (mod |m|) is solvable, for square-free m (0 counts as a square)."""
    m = abs(m)
    for p in factorize(m):
        if p == 2:
            continue
        if legendre_symbol(a, p) == -1:
            return False
    return True


def vec_gcd(*xs: int) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g
