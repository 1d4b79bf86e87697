"""Difference-quotient sets, the quadruple histogram, and the exact
verification chain connecting them to the line-family geometry.

The central objects for a bivariate g and a finite set A:

  quotient set      X  = {(g(a1,b1) - g(a2,b2))/(b2 - b1) : b1 != b2}
  histogram         Q(x) = number of quadruples (a1,a2,b1,b2), b1 != b2,
                    whose lines y = b*x - g(a,b) cross at abscissa x
                    (denominator convention b1 - b2, so support(Q) = -X)

Enumeration is organized per ordered slope pair with a precomputed value
table, so g is evaluated only |A|^2 times; within a slope pair only the
distinct column values matter (with multiplicities for the histogram).
Everything is exact integer arithmetic after clearing denominators once.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence

from .errors import DegenerateError, InputError, InternalCheckError
from .lines import build_lines, crossing_weights, vertical_section, DEFAULT_POINT_CAP
from .parallel import chunk_ranges, run_chunks
from .polynomials import Poly, degeneracy_test
from .rationals import scaled_ints
from .sets import GroundSet, SetSpec, generate_set


class QuotientSet:
    """Sorted distinct quotient values, denominator convention b2 - b1."""

    __slots__ = ("values", "_lookup")

    def __init__(self, values: Sequence[Fraction]):
        self.values = tuple(sorted(values))
        self._lookup = frozenset(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def __contains__(self, value) -> bool:
        return value in self._lookup

    def as_set(self) -> frozenset:
        return self._lookup

    def __eq__(self, other) -> bool:
        return isinstance(other, QuotientSet) and self.values == other.values

    def __repr__(self) -> str:
        return f"QuotientSet(size={len(self.values)})"


class QuadrupleHistogram:
    """Exact Q(x) per crossing abscissa; total = |A|^3 (|A| - 1)."""

    __slots__ = ("counts",)

    def __init__(self, counts: dict[Fraction, int]):
        self.counts = dict(sorted(counts.items()))

    @property
    def support(self) -> tuple[Fraction, ...]:
        return tuple(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, x: Fraction) -> int:
        return self.counts.get(x, 0)

    def __len__(self) -> int:
        return len(self.counts)


# -- shared column machinery ----------------------------------------------


def _value_columns(g: Poly, ground: GroundSet):
    """Scaled-integer value columns of the |A| x |A| table g(a, b).

    Returns (slopes, lb, columns, lv) with slopes the scaled elements of
    A (common scale lb) and columns[i] = (values, counts): the distinct
    scaled values {g(a, b_i)} with their multiplicities, sorted.
    """
    elements = ground.values
    slopes, lb = scaled_ints(elements)
    per_column: list[list[tuple[Fraction, int]]] = []
    all_values: list[Fraction] = []
    for b in elements:
        col = Counter(g.evaluate((a, b)) for a in elements)
        items = sorted(col.items())
        per_column.append(items)
        all_values.extend(v for v, _ in items)
    scaled, lv = scaled_ints(all_values)
    columns = []
    pos = 0
    for items in per_column:
        k = len(items)
        columns.append((scaled[pos:pos + k], [c for _, c in items]))
        pos += k
    return slopes, lb, columns, lv


def _fold_scale(lb: int, d0: int) -> tuple[int, int]:
    """Reduce the constant factor lb/d0 to (mul, den) with den > 0."""
    g0 = gcd(lb, d0)
    mul, den = lb // g0, d0 // g0
    if den < 0:
        mul, den = -mul, -den
    return mul, den


def _quotient_chunk(args):
    """Distinct canonical quotient pairs for a chunk of slope pairs."""
    slopes, lb, columns, lv, pairs = args
    out: set[tuple[int, int]] = set()
    _gcd = gcd
    for i, j in pairs:
        # value = (u - v) / (b_j - b_i) for u in column i, v in column j;
        # the reversed slope order yields the same value set.
        mul, den = _fold_scale(lb, (slopes[j] - slopes[i]) * lv)
        ui = columns[i][0]
        vj = columns[j][0]
        diffs: set[int] = set()
        for u in ui:
            diffs.update([u - v for v in vj])
        add = out.add
        for d in diffs:
            p = d * mul
            if p == 0:
                add((0, 1))
            else:
                g1 = _gcd(p, den)
                add((p // g1, den // g1))
    return out


def _histogram_chunk(args):
    """Canonical abscissa -> quadruple count for a chunk of slope pairs."""
    slopes, lb, columns, lv, pairs = args
    out: dict[tuple[int, int], int] = {}
    _gcd = gcd
    for i, j in pairs:
        # abscissa = (u - v) / (b_i - b_j); each unordered slope pair
        # stands for both ordered pairs, which double every count.
        mul, den = _fold_scale(lb, (slopes[i] - slopes[j]) * lv)
        ui, ci = columns[i]
        vj, cj = columns[j]
        plain = all(c == 1 for c in ci) and all(c == 1 for c in cj)
        if plain:
            raw: Counter = Counter()
            for u in ui:
                raw.update([u - v for v in vj])
            weighted = ((d, 2 * c) for d, c in raw.items())
        else:
            acc: dict[int, int] = {}
            for u, cu in zip(ui, ci):
                for v, cv in zip(vj, cj):
                    d = u - v
                    acc[d] = acc.get(d, 0) + cu * cv
            weighted = ((d, 2 * c) for d, c in acc.items())
        for d, w in weighted:
            p = d * mul
            if p == 0:
                key = (0, 1)
            else:
                g1 = _gcd(p, den)
                key = (p // g1, den // g1)
            out[key] = out.get(key, 0) + w
    return out


def _slope_pair_tasks(g: Poly, ground: GroundSet, workers: int):
    slopes, lb, columns, lv = _value_columns(g, ground)
    n = len(slopes)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return [(slopes, lb, columns, lv, pairs[start:stop])
            for start, stop in chunk_ranges(len(pairs), workers)]


def quotient_set(g: Poly, ground: GroundSet, workers: int = 1) -> QuotientSet:
    """All values (g(a1,b1) - g(a2,b2))/(b2 - b1) over quadruples from A
    with b1 != b2, deduplicated.  Empty when |A| < 2."""
    if len(ground) < 2:
        return QuotientSet(())
    tasks = _slope_pair_tasks(g, ground, workers)
    parts = run_chunks(_quotient_chunk, tasks, workers)
    merged: set[tuple[int, int]] = set()
    for part in parts:
        merged |= part
    return QuotientSet(Fraction(p, q) for p, q in merged)


def quadruple_histogram(g: Poly, ground: GroundSet, workers: int = 1) -> QuadrupleHistogram:
    """Exact Q(x); verifies total = |A|^3 (|A| - 1) before returning."""
    n = len(ground)
    if n < 2:
        return QuadrupleHistogram({})
    tasks = _slope_pair_tasks(g, ground, workers)
    parts = run_chunks(_histogram_chunk, tasks, workers)
    merged: dict[tuple[int, int], int] = {}
    for part in parts:
        for key, w in part.items():
            merged[key] = merged.get(key, 0) + w
    total = sum(merged.values())
    if total != n ** 3 * (n - 1):
        raise InternalCheckError(
            f"histogram total {total} != |A|^3(|A|-1) = {n ** 3 * (n - 1)}")
    return QuadrupleHistogram({Fraction(p, q): w for (p, q), w in merged.items()})


# -- the verification chain ------------------------------------------------


@dataclass(frozen=True)
class ChainReport:
    """Every computable link of the growth argument on one instance.

    Exact integers throughout; the ratios are floats derived for display.
    ``links`` records the identities that were checked (a failure raises
    InternalCheckError instead of producing a report).
    """

    size_a: int
    degree: int
    size_x: int
    quadruple_total: int
    squared_multiplicity_total: int
    energy_support: int
    energy_support_excl_zero: int
    zero_in_support: bool
    size_bound_ok: bool
    size_bound_limit: Fraction
    max_line_multiplicity: int
    line_multiplicity_within_degree: bool
    max_point_weight: int
    point_weight_cap: int
    point_weight_within_cap: bool
    energy_bound_ratio: float | None
    energy_bound_ratio_excl_zero: float | None
    inferred_lower_bound: float
    links: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        from .rationals import format_rational
        return {
            "size_a": self.size_a,
            "degree": self.degree,
            "size_x": self.size_x,
            "quadruple_total": self.quadruple_total,
            "squared_multiplicity_total": self.squared_multiplicity_total,
            "energy_support": self.energy_support,
            "energy_support_excl_zero": self.energy_support_excl_zero,
            "zero_in_support": self.zero_in_support,
            "size_bound_ok": self.size_bound_ok,
            "size_bound_limit": format_rational(self.size_bound_limit),
            "max_line_multiplicity": self.max_line_multiplicity,
            "line_multiplicity_within_degree": self.line_multiplicity_within_degree,
            "max_point_weight": self.max_point_weight,
            "point_weight_cap": self.point_weight_cap,
            "point_weight_within_cap": self.point_weight_within_cap,
            "energy_bound_ratio": self.energy_bound_ratio,
            "energy_bound_ratio_excl_zero": self.energy_bound_ratio_excl_zero,
            "inferred_lower_bound": self.inferred_lower_bound,
            "links": dict(self.links),
        }


def verify_chain(g: Poly, ground: GroundSet, workers: int = 1,
                 memory_cap: int | None = DEFAULT_POINT_CAP) -> ChainReport:
    """Compute and cross-verify the full quadruple/energy chain.

    Checks performed exactly (any failure raises InternalCheckError):
      * histogram conservation: sum Q(x) = |A|^3 (|A| - 1);
      * sign bridge: X = -support(Q) elementwise;
      * crossing abscissas coincide with support(Q);
      * per-abscissa identity: Q(x) = sum over crossing points at x of
        n^2 - sum(m^2), i.e. twice the cross-pair weight;
      * pair accounting: total cross-pair weight doubles to the
        quadruple total;
      * energy identity: energy over the support equals
        quadruple_total + |support| * (sum of line multiplicity^2);
      * vertical-section mass at sampled support abscissas is |A|^2.
    """
    verdict = degeneracy_test(g)
    if verdict.degenerate:
        raise DegenerateError(f"theorem hypotheses violated: {verdict.witness}")
    degree = g.total_degree()
    n = len(ground)

    if n < 2:
        return ChainReport(
            size_a=n, degree=degree, size_x=0, quadruple_total=0,
            squared_multiplicity_total=n, energy_support=0,
            energy_support_excl_zero=0, zero_in_support=False,
            size_bound_ok=True, size_bound_limit=Fraction(n * n, 4 * degree ** 2),
            max_line_multiplicity=min(n, 1), line_multiplicity_within_degree=True,
            max_point_weight=0, point_weight_cap=degree * n,
            point_weight_within_cap=True, energy_bound_ratio=None,
            energy_bound_ratio_excl_zero=None, inferred_lower_bound=0.0,
            links={"empty_instance": True})

    xset = quotient_set(g, ground, workers=workers)
    hist = quadruple_histogram(g, ground, workers=workers)
    quadruple_total = hist.total

    if {-x for x in hist.support} != xset.as_set():
        raise InternalCheckError("quotient set is not the negated histogram support")

    family = build_lines(g, ground, ground)
    t2 = family.squared_multiplicity_total()
    weights = crossing_weights(family, workers=workers, memory_cap=memory_cap)

    support_keys = {(x.numerator, x.denominator): q for x, q in hist.counts.items()}
    per_x: dict[tuple[int, int], list[int]] = {}
    cross_total = 0
    max_point_weight = 0
    for (xp, xq, _yp, _yq), (pn, sqm, cross) in weights.items():
        rec = per_x.get((xp, xq))
        if rec is None:
            per_x[(xp, xq)] = [pn * pn, sqm]
        else:
            rec[0] += pn * pn
            rec[1] += sqm
        cross_total += cross
        if pn > max_point_weight:
            max_point_weight = pn

    if set(per_x) != set(support_keys):
        raise InternalCheckError("crossing abscissas differ from histogram support")
    for key, q in support_keys.items():
        n2, sqm = per_x[key]
        if n2 - sqm != q:
            raise InternalCheckError(
                f"per-abscissa quadruple identity failed at {Fraction(*key)}")
    if 2 * cross_total != quadruple_total:
        raise InternalCheckError("global pair accounting failed")

    energy_support = sum(n2 + t2 - sqm for n2, sqm in per_x.values())
    if energy_support != quadruple_total + len(hist) * t2:
        raise InternalCheckError("energy identity failed over the support")

    support = hist.support
    sampled = {support[0], support[len(support) // 2], support[-1]}
    for x in sampled:
        if sum(vertical_section(family, x).values()) != n * n:
            raise InternalCheckError(f"vertical mass at {x} is not |A|^2")

    zero = Fraction(0)
    zero_in_support = zero in hist.counts
    if zero_in_support:
        energy_excl = energy_support - (hist[zero] + t2)
        size_excl = len(xset) - 1
    else:
        energy_excl = energy_support
        size_excl = len(xset)

    size_bound_limit = Fraction(n * n, 4 * degree ** 2)
    ratio = energy_support / (n ** 3 * math.sqrt(len(xset))) if len(xset) else None
    ratio_excl = (energy_excl / (n ** 3 * math.sqrt(size_excl))
                  if size_excl else None)
    inferred = (len(xset) * (quadruple_total / energy_support) ** 2
                if energy_support else 0.0)

    return ChainReport(
        size_a=n,
        degree=degree,
        size_x=len(xset),
        quadruple_total=quadruple_total,
        squared_multiplicity_total=t2,
        energy_support=energy_support,
        energy_support_excl_zero=energy_excl,
        zero_in_support=zero_in_support,
        size_bound_ok=Fraction(len(xset)) <= size_bound_limit,
        size_bound_limit=size_bound_limit,
        max_line_multiplicity=family.max_multiplicity,
        line_multiplicity_within_degree=family.max_multiplicity <= degree,
        max_point_weight=max_point_weight,
        point_weight_cap=degree * n,
        point_weight_within_cap=max_point_weight <= degree * n,
        energy_bound_ratio=ratio,
        energy_bound_ratio_excl_zero=ratio_excl,
        inferred_lower_bound=inferred,
        links={
            "histogram_conservation": True,
            "sign_bridge": True,
            "abscissa_support_match": True,
            "per_abscissa_quadruple_identity": True,
            "pair_accounting": True,
            "energy_identity": True,
            "vertical_mass_samples": len(sampled),
        })


# -- growth-exponent scans --------------------------------------------------


@dataclass(frozen=True)
class ScanReport:
    rows: tuple[tuple[int, int], ...]  # (|A|, |X|)
    slope: float

    def to_dict(self) -> dict:
        return {
            "rows": [{"size": n, "quotients": m,
                      "log_size": math.log(n), "log_quotients": math.log(m)}
                     for n, m in self.rows],
            "slope": self.slope,
        }


def fit_loglog_slope(sizes: Sequence[int], counts: Sequence[int]) -> float:
    """Least-squares slope of log(count) against log(size), equal weights."""
    if len(sizes) != len(counts) or len(sizes) < 2:
        raise InputError("need >= 2 sizes")
    if any(c <= 0 for c in counts) or any(s <= 0 for s in sizes):
        raise InputError("log-log fit needs positive sizes and counts")
    lx = [math.log(s) for s in sizes]
    ly = [math.log(c) for c in counts]
    mx = sum(lx) / len(lx)
    my = sum(ly) / len(ly)
    sxx = sum((v - mx) ** 2 for v in lx)
    sxy = sum((u - mx) * (v - my) for u, v in zip(lx, ly))
    return sxy / sxx


def exponent_scan(g: Poly, family: SetSpec, sizes: Sequence[int],
                  workers: int = 1, allow_degenerate: bool = False) -> ScanReport:
    """|X| across a family of growing sets, with the fitted growth slope.

    Degenerate g is refused unless ``allow_degenerate`` forces the plain
    quotient computation (useful to chart the collapsing families).
    """
    if len(sizes) < 2:
        raise InputError("need >= 2 sizes")
    if any(not isinstance(s, int) or s < 2 for s in sizes):
        raise InputError("scan sizes must be integers >= 2")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise InputError("scan sizes must be strictly increasing")
    verdict = degeneracy_test(g)
    if verdict.degenerate and not allow_degenerate:
        raise DegenerateError(f"theorem hypotheses violated: {verdict.witness}")
    rows = []
    for size in sizes:
        ground = generate_set(family.with_size(size))
        rows.append((size, len(quotient_set(g, ground, workers=workers))))
    slope = fit_loglog_slope([r[0] for r in rows], [r[1] for r in rows])
    return ScanReport(tuple(rows), slope)
