"""Dual line family, point weights, rich points, energy, incidences.

Each pair (a, b) in A x B maps to the line y = b*x - g(a, b).  The family
is a multiset: pairs sharing slope and intercept merge into one stored
line carrying all its source tags.  The point weight n(x, y) counts the
lines through (x, y) *with* multiplicity.

Enumeration never walks instance pairs.  Lines are grouped by slope;
for each pair of slope classes the crossing abscissa is solved exactly,
x = (c2 - c1)/(b1 - b2), in pre-scaled integer arithmetic.  Per crossing
point the kernel accumulates, over the unordered pairs of distinct lines
(multiplicities m_i, m_j) that meet there:

    pairs     += 1
    mass      += m_i + m_j
    sq_mass   += m_i^2 + m_j^2
    cross     += m_i * m_j

All lines through one point have pairwise distinct slopes, so with k
distinct lines through it, pairs = k(k-1)/2 and each line is counted in
(k-1) of the pairs.  Hence n = mass/(k-1), sum of m^2 = sq_mass/(k-1),
and n^2 - sum(m^2) = 2*cross, which the kernel re-checks on every point.
When every multiplicity is 1 a single counter per point suffices (n = k).

Points on a single distinct line are never materialized.  Where a sum of
n(x, y)^2 over *all* y at an abscissa is needed, the un-materialized
crossings contribute exactly (sum over all lines of m^2) minus the
sq_mass already seen at that abscissa; this multiplicity-aware correction
is applied in energy computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

from .errors import InputError, InternalCheckError, ResourceCapError
from .parallel import chunk_ranges, run_chunks
from .polynomials import Poly
from .rationals import scaled_ints
from .sets import GroundSet

DEFAULT_POINT_CAP = 200_000_000


@dataclass(frozen=True)
class Line:
    """One distinct line with its source tags (a, b)."""

    slope: Fraction
    intercept: Fraction
    tags: tuple

    @property
    def multiplicity(self) -> int:
        return len(self.tags)

    def y_at(self, x: Fraction) -> Fraction:
        return self.slope * x + self.intercept


class LineMultiset:
    """Distinct lines with multiplicities; total weight = sum of tags."""

    __slots__ = ("lines", "total_weight")

    def __init__(self, lines: Sequence[Line]):
        seen = set()
        for line in lines:
            key = (line.slope, line.intercept)
            if key in seen:
                raise InputError("duplicate (slope, intercept) in line multiset")
            if not line.tags:
                raise InputError("line without tags")
            seen.add(key)
        self.lines = tuple(sorted(lines, key=lambda l: (l.slope, l.intercept)))
        self.total_weight = sum(l.multiplicity for l in self.lines)

    @classmethod
    def from_weighted(cls, entries: Iterable[tuple[Fraction, Fraction, int]]) -> "LineMultiset":
        """Build directly from (slope, intercept, multiplicity) rows."""
        lines = []
        for slope, intercept, mult in entries:
            if mult < 1:
                raise InputError("line multiplicity must be >= 1")
            lines.append(Line(slope, intercept, ((slope, intercept),) * mult))
        return cls(lines)

    def __len__(self) -> int:
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    @property
    def max_multiplicity(self) -> int:
        return max((l.multiplicity for l in self.lines), default=0)

    def squared_multiplicity_total(self) -> int:
        """Sum of m^2 over distinct lines: the weight of same-line
        instance pairs, and the per-abscissa floor of sum_y n(x,y)^2."""
        return sum(l.multiplicity ** 2 for l in self.lines)

    def slope_classes(self) -> list[tuple[Fraction, list[tuple[Fraction, int]]]]:
        """Lines grouped by slope, both levels sorted."""
        classes: dict[Fraction, list[tuple[Fraction, int]]] = {}
        for line in self.lines:
            classes.setdefault(line.slope, []).append((line.intercept, line.multiplicity))
        return [(slope, classes[slope]) for slope in sorted(classes)]


def build_lines(g: Poly, ground_a: GroundSet, ground_b: GroundSet) -> LineMultiset:
    """The dual family {y = b*x - g(a, b) : (a, b) in A x B}."""
    if len(ground_a) == 0 or len(ground_b) == 0:
        raise InputError("ground sets must be nonempty")
    merged: dict[tuple[Fraction, Fraction], list] = {}
    for b in ground_b:
        for a in ground_a:
            intercept = -g.evaluate((a, b))
            merged.setdefault((b, intercept), []).append((a, b))
    lines = [Line(slope, intercept, tuple(tags))
             for (slope, intercept), tags in merged.items()]
    out = LineMultiset(lines)
    if out.total_weight != len(ground_a) * len(ground_b):
        raise InternalCheckError("line multiset lost weight during merging")
    return out


def vertical_section(family: LineMultiset, x: Fraction) -> dict[Fraction, int]:
    """Map y -> n(x, y) on the vertical line at x; values sum to |A||B|."""
    section: dict[Fraction, int] = {}
    for line in family.lines:
        y = line.y_at(x)
        section[y] = section.get(y, 0) + line.multiplicity
    return section


# -- exact crossing aggregation ------------------------------------------


def _scaled_family(family: LineMultiset):
    """Integer form of the slope classes: (SB, LB, intercept lists, mult
    lists, LC).  Index order matches sorted slopes/intercepts."""
    classes = family.slope_classes()
    slopes = [s for s, _ in classes]
    sb, lb = scaled_ints(slopes)
    flat = [c for _, items in classes for c, _ in items]
    flat_scaled, lc = scaled_ints(flat)
    sc_lists: list[list[int]] = []
    mult_lists: list[list[int]] = []
    pos = 0
    for _, items in classes:
        sc_lists.append(flat_scaled[pos:pos + len(items)])
        mult_lists.append([m for _, m in items])
        pos += len(items)
    return sb, lb, sc_lists, mult_lists, lc


def _crossing_chunk(args):
    """Aggregate crossings for one chunk of slope-class pairs.

    Returns {(xp, xq, yp, yq): count} when all multiplicities are 1,
    else {...: [pairs, mass, cross, sq_mass]}.  Top-level so process
    pools can pickle it.
    """
    sb, lb, sc_lists, mult_lists, lc, pairs, fast, xfilter, cap = args
    agg: dict = {}
    _gcd = gcd
    k_scale = lb * lc
    for i, j in pairs:
        bi = sb[i]
        d0 = (bi - sb[j]) * lc
        g0 = _gcd(lb, d0)
        mul = lb // g0
        den = d0 // g0
        if den < 0:
            mul, den = -mul, -den
        bi_lc = bi * lc
        ci_list = sc_lists[i]
        cj_list = sc_lists[j]
        mi_list = mult_lists[i]
        mj_list = mult_lists[j]
        for ci, mi in zip(ci_list, mi_list):
            t1 = ci * lb
            for cj, mj in zip(cj_list, mj_list):
                xp = (cj - ci) * mul
                if xp == 0:
                    xq = 1
                else:
                    gx = _gcd(xp, den)
                    xp //= gx
                    xq = den // gx
                if xfilter is not None and (xp, xq) not in xfilter:
                    continue
                yp = bi_lc * xp + t1 * xq
                yq = k_scale * xq
                if yp == 0:
                    yq = 1
                else:
                    gy = _gcd(yp, yq)
                    yp //= gy
                    yq //= gy
                key = (xp, xq, yp, yq)
                if fast:
                    agg[key] = agg.get(key, 0) + 1
                else:
                    rec = agg.get(key)
                    if rec is None:
                        agg[key] = [1, mi + mj, mi * mj, mi * mi + mj * mj]
                    else:
                        rec[0] += 1
                        rec[1] += mi + mj
                        rec[2] += mi * mj
                        rec[3] += mi * mi + mj * mj
        if cap is not None and len(agg) > cap:
            raise ResourceCapError(
                f"crossing-point aggregate exceeded cap of {cap} entries")
    return agg


def _merge_crossings(parts: list[dict], fast: bool, cap: int | None) -> dict:
    total = parts[0] if parts else {}
    for part in parts[1:]:
        if fast:
            for key, c in part.items():
                total[key] = total.get(key, 0) + c
        else:
            for key, rec in part.items():
                base = total.get(key)
                if base is None:
                    total[key] = rec
                else:
                    base[0] += rec[0]
                    base[1] += rec[1]
                    base[2] += rec[2]
                    base[3] += rec[3]
        if cap is not None and len(total) > cap:
            raise ResourceCapError(
                f"crossing-point aggregate exceeded cap of {cap} entries")
    return total


def _point_stats(rec, fast: bool) -> tuple[int, int, int]:
    """(n, sum of m^2, cross-pair weight) for one aggregated point, with
    exact consistency checks."""
    if fast:
        c = rec
        k = (1 + isqrt(1 + 8 * c)) // 2
        if k * (k - 1) // 2 != c or k < 2:
            raise InternalCheckError("crossing pair count is not triangular")
        return k, k, c
    c, mass, cross, sq_mass = rec
    k = (1 + isqrt(1 + 8 * c)) // 2
    if k * (k - 1) // 2 != c or k < 2:
        raise InternalCheckError("crossing pair count is not triangular")
    if mass % (k - 1) or sq_mass % (k - 1):
        raise InternalCheckError("crossing mass not divisible by k-1")
    n = mass // (k - 1)
    sqm = sq_mass // (k - 1)
    if n * n - sqm != 2 * cross:
        raise InternalCheckError("pair accounting failed at a crossing point")
    return n, sqm, cross


def crossing_weights(family: LineMultiset, workers: int = 1,
                     memory_cap: int | None = DEFAULT_POINT_CAP,
                     xfilter: frozenset | None = None) -> dict[tuple[int, int, int, int],
                                                               tuple[int, int, int]]:
    """Every point where >= 2 distinct lines meet, with (n, sum m^2, cross).

    Keys are canonical integer pairs (xp, xq, yp, yq).  ``xfilter``
    restricts to abscissas whose canonical pair is in the set.  The
    result is independent of ``workers``.
    """
    scaled = _scaled_family(family)
    n_classes = len(scaled[0])
    pairs = [(i, j) for i in range(n_classes) for j in range(i + 1, n_classes)]
    fast = family.max_multiplicity == 1
    tasks = [scaled + (pairs[start:stop], fast, xfilter, memory_cap)
             for start, stop in chunk_ranges(len(pairs), workers)]
    parts = run_chunks(_crossing_chunk, tasks, workers)
    merged = _merge_crossings(parts, fast, memory_cap)
    return {key: _point_stats(rec, fast) for key, rec in merged.items()}


# -- public reports -------------------------------------------------------


@dataclass(frozen=True)
class PointMultiplicity:
    point: tuple[Fraction, Fraction]
    count: int


@dataclass(frozen=True)
class RichPointReport:
    threshold: int
    count: int
    bound_ratio: Fraction  # count * t^3 / (total weight)^2


@dataclass(frozen=True)
class IncidenceReport:
    count: int
    st_reference: float
    n_points: int
    n_distinct_lines: int
    total_weight: int


def intersection_points(family: LineMultiset, workers: int = 1,
                        memory_cap: int | None = DEFAULT_POINT_CAP) -> list[PointMultiplicity]:
    """All points on >= 2 distinct lines, sorted by (x, y), with n(x, y)."""
    weights = crossing_weights(family, workers=workers, memory_cap=memory_cap)
    out = [PointMultiplicity((Fraction(xp, xq), Fraction(yp, yq)), stats[0])
           for (xp, xq, yp, yq), stats in weights.items()]
    out.sort(key=lambda pm: pm.point)
    return out


def energy_restricted(family: LineMultiset, abscissas: Iterable[Fraction],
                      workers: int = 1,
                      memory_cap: int | None = DEFAULT_POINT_CAP) -> int:
    """Sum over x in ``abscissas`` of sum over all y of n(x, y)^2.

    Materialized crossing points contribute n^2; the remaining
    single-line crossings at each x contribute multiplicity^2 apiece,
    in total (sum of m^2 over all lines) - (sq_mass seen at x).
    """
    xs = sorted(set(abscissas))
    if not xs:
        return 0
    xset = frozenset((x.numerator, x.denominator) for x in xs)
    weights = crossing_weights(family, workers=workers, memory_cap=memory_cap,
                               xfilter=xset)
    floor = family.squared_multiplicity_total()
    energy = floor * len(xs)
    for (xp, xq, _yp, _yq), (n, sqm, _cross) in weights.items():
        energy += n * n - sqm
    return energy


def rich_points(family: LineMultiset, threshold: int, workers: int = 1,
                memory_cap: int | None = DEFAULT_POINT_CAP) -> RichPointReport:
    """Count points with n(x, y) >= threshold; threshold must be >= 2."""
    reports = rich_point_reports(family, [threshold], workers=workers,
                                 memory_cap=memory_cap)
    return reports[0]


def rich_point_reports(family: LineMultiset, thresholds: Sequence[int],
                       workers: int = 1,
                       memory_cap: int | None = DEFAULT_POINT_CAP) -> list[RichPointReport]:
    """Rich-point counts for several thresholds from one enumeration."""
    for t in thresholds:
        if not isinstance(t, int) or t < 2:
            raise InputError("rich-point threshold must be an integer >= 2 "
                             "(points on fewer than 2 distinct lines are not materialized)")
    weights = crossing_weights(family, workers=workers, memory_cap=memory_cap)
    ns = sorted((stats[0] for stats in weights.values()), reverse=True)
    w2 = family.total_weight ** 2
    out = []
    for t in thresholds:
        count = 0
        for n in ns:
            if n >= t:
                count += 1
            else:
                break
        out.append(RichPointReport(t, count, Fraction(count * t ** 3, w2)))
    return out


def incidences(points: Iterable[tuple[Fraction, Fraction]],
               family: LineMultiset) -> IncidenceReport:
    """Exact incidence count sum over points of n(point), with the
    classical n^(2/3) m^(2/3) + n + m reference value alongside."""
    pts = list(points)
    count = 0
    for x, y in pts:
        for line in family.lines:
            if y == line.slope * x + line.intercept:
                count += line.multiplicity
    n = len(pts)
    m = len(family)
    reference = n ** (2 / 3) * m ** (2 / 3) + n + m
    return IncidenceReport(count=count, st_reference=reference, n_points=n,
                           n_distinct_lines=m, total_weight=family.total_weight)
