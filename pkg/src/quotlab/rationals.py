"""Exact rational scalars in canonical form.

Every scalar in quotlab is a ``fractions.Fraction``: arbitrary precision,
reduced eagerly on construction, with denominator > 0 and zero stored as
0/1.  That makes equality structural and lets rationals serve directly as
sort keys and dict/set keys in the hot enumeration loops.

The module adds the strict text form used by config and report files
("p/q", or "p" when the denominator is 1) and integer-pair helpers that
the kernels use to stay in plain ``int`` arithmetic (same canonical form,
much less overhead than Fraction objects).
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import InputError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^(-?[0-9]+)(?:/([0-9]+))?$")


def normalize(p: int, q: int) -> Fraction:
    """Canonical rational p/q; rejects q = 0."""
    if q == 0:
        raise InputError("zero denominator")
    return Fraction(p, q)


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" (optional leading minus, base-10 digits only)."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise InputError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise InputError("zero denominator")
    return Fraction(num, den)


def format_rational(value: Fraction) -> str:
    """Text form "p/q", or "p" when the denominator is 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def compare(a: Fraction, b: Fraction) -> int:
    """Total order consistent with the reals: -1, 0, or +1."""
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


def as_rational(value) -> Fraction:
    """Coerce int / str / Fraction into a canonical Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational value: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise InputError(f"not a rational value: {value!r}")


def canonical_pair(p: int, q: int) -> tuple[int, int]:
    """Reduced (numerator, positive denominator) pair for p/q.

    Integer-only twin of ``normalize`` used inside kernels; q must be
    nonzero (callers guarantee it).
    """
    if q < 0:
        p, q = -p, -q
    if p == 0:
        return (0, 1)
    g = gcd(p, q)
    return (p // g, q // g)


def scaled_ints(values: Sequence[Fraction]) -> tuple[list[int], int]:
    """Clear denominators: returns (scaled integers, common scale L).

    Each value v maps to the integer v*L, with L the lcm of all
    denominators; the map is injective, so distinctness and ordering of
    the scaled integers mirror the original rationals exactly.
    """
    scale = lcm(*(v.denominator for v in values)) if values else 1
    return [v.numerator * (scale // v.denominator) for v in values], scale


def sorted_distinct(values: Iterable[Fraction]) -> tuple[Fraction, ...]:
    """Sorted tuple of the distinct rationals in ``values``."""
    return tuple(sorted(set(values)))
