"""Exact rational utilities: parsing/formatting and Gaussian elimination over Q.

All arithmetic in this module is `fractions.Fraction`; nothing here rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import InvalidInputError


def format_rational(x: Fraction | int) -> str:
    """Render a rational as a decimal-free string: "3", "-1/2"."""
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_rational(s: str | int) -> Fraction:
    """Parse "p/q" or "p" (Fraction accepts both; ints pass through)."""
    if isinstance(s, bool):
        raise InvalidInputError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"not a rational: {s!r}") from exc


def dot(u, v) -> Fraction:
    """Exact dot product of two equal-length rational/integer vectors."""
    if len(u) != len(v):
        raise InvalidInputError(f"dot product of lengths {len(u)} and {len(v)}")
    total = Fraction(0)
    for a, b in zip(u, v):
        total += Fraction(a) * Fraction(b)
    return total


def rank(rows: list[list[int]] | tuple) -> int:
    """Rank over Q of an integer matrix, by exact Gaussian elimination."""
    work = [[Fraction(x) for x in row] for row in rows]
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = 1 / work[r][col]
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col] != 0:
                factor = work[i][col]
                work[i] = [x - factor * y for x, y in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return r


def scale_to_primitive_integers(values) -> tuple[int, ...]:
    """Scale a nonzero rational vector by a positive rational into a primitive integer vector.

    Multiplies by the lcm of denominators, then divides by the gcd of the
    results, preserving direction.
    """
    fracs = [Fraction(v) for v in values]
    lcm = 1
    for f in fracs:
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    ints = [int(f * lcm) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise InvalidInputError("cannot scale the zero vector")
    return tuple(x // g for x in ints)
