import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quotlab.errors import InputError, ResourceCapError
from quotlab.lines import (LineMultiset, build_lines, energy_restricted,
                           incidences, intersection_points, rich_points,
                           vertical_section)
from quotlab.polynomials import Poly
from quotlab.sets import GroundSet

from oracles import (brute_energy, brute_incidences, brute_intersection_points,
                     brute_vertical_section, instance_lines, random_ground_set,
                     random_polynomial)

G_X = Poly(2, {(1, 0): Fraction(1)})
G_Y2 = Poly(2, {(0, 2): Fraction(1)})
G_XY = Poly(2, {(1, 1): Fraction(1)})

A01 = GroundSet.of(0, 1)


def frac(p, q=1):
    return Fraction(p, q)


# -- building the family -----------------------------------------------------

def test_build_lines_four_distinct():
    family = build_lines(G_X, A01, A01)
    rows = {(l.slope, l.intercept): l.multiplicity for l in family}
    assert rows == {(frac(0), frac(0)): 1, (frac(0), frac(-1)): 1,
                    (frac(1), frac(0)): 1, (frac(1), frac(-1)): 1}
    assert family.total_weight == 4
    assert family.max_multiplicity == 1


def test_build_lines_merges_equal_lines():
    family = build_lines(G_Y2, GroundSet.of(1, 2), GroundSet.of(3))
    assert len(family) == 1
    line = family.lines[0]
    assert (line.slope, line.intercept, line.multiplicity) == (frac(3), frac(-9), 2)
    assert sorted(line.tags) == [(frac(1), frac(3)), (frac(2), frac(3))]


def test_build_lines_singleton():
    family = build_lines(G_X, GroundSet.of(5), GroundSet.of(5))
    assert [(l.slope, l.intercept) for l in family] == [(frac(5), frac(-5))]


def test_build_lines_collapsing_slope_reports_multiplicity():
    # g = xy with 0 in B: the b = 0 column collapses onto one line
    ground = GroundSet.of(0, 1, 2)
    family = build_lines(G_XY, ground, ground)
    assert family.max_multiplicity == 3
    assert family.total_weight == 9


# -- vertical sections --------------------------------------------------------

def test_vertical_section_at_zero():
    section = vertical_section(build_lines(G_X, A01, A01), frac(0))
    assert section == {frac(0): 2, frac(-1): 2}


def test_vertical_section_at_one():
    section = vertical_section(build_lines(G_X, A01, A01), frac(1))
    assert section == {frac(0): 2, frac(1): 1, frac(-1): 1}


@given(st.integers(min_value=0, max_value=10**6))
@settings(max_examples=30)
def test_vertical_mass_conservation(seed):
    rng = random.Random(seed)
    g = random_polynomial(rng, require_x=False)
    ground_a = random_ground_set(rng, rng.randint(1, 5), rational=bool(seed % 2))
    ground_b = random_ground_set(rng, rng.randint(1, 5))
    family = build_lines(g, ground_a, ground_b)
    for _ in range(3):
        x = Fraction(rng.randint(-8, 8), rng.randint(1, 5))
        section = vertical_section(family, x)
        assert sum(section.values()) == len(ground_a) * len(ground_b)
        assert section == brute_vertical_section(g, ground_a, ground_b, x)


# -- intersection enumeration -------------------------------------------------

def test_intersection_points_worked_example():
    pts = intersection_points(build_lines(G_X, A01, A01))
    assert [(p.point, p.count) for p in pts] == [
        ((frac(-1), frac(-1)), 2),
        ((frac(0), frac(-1)), 2),
        ((frac(0), frac(0)), 2),
        ((frac(1), frac(0)), 2),
    ]


def test_single_slope_class_has_no_intersections():
    family = LineMultiset.from_weighted([(frac(2), frac(c), 1) for c in range(5)])
    assert intersection_points(family) == []


def test_three_concurrent_lines():
    family = LineMultiset.from_weighted([
        (frac(1), frac(0), 1), (frac(2), frac(0), 1), (frac(-1), frac(0), 1)])
    pts = intersection_points(family)
    assert [(p.point, p.count) for p in pts] == [((frac(0), frac(0)), 3)]


@given(st.integers(min_value=0, max_value=10**6))
@settings(max_examples=25)
def test_intersections_match_brute_force(seed):
    rng = random.Random(seed)
    g = random_polynomial(rng, require_x=False)
    ground_a = random_ground_set(rng, rng.randint(1, 4), rational=bool(seed % 2))
    ground_b = random_ground_set(rng, rng.randint(2, 4))
    family = build_lines(g, ground_a, ground_b)
    expected = brute_intersection_points(g, ground_a, ground_b)
    got = {pm.point: pm.count for pm in intersection_points(family)}
    assert got == expected


def test_intersections_deterministic_across_workers():
    ground = GroundSet.of(*range(8))
    family = build_lines(G_XY, ground, ground)
    baseline = intersection_points(family, workers=1)
    for workers in (2, 4):
        assert intersection_points(family, workers=workers) == baseline


def test_memory_cap_enforced():
    ground = GroundSet.of(*range(6))
    family = build_lines(G_X, ground, ground)
    with pytest.raises(ResourceCapError):
        intersection_points(family, memory_cap=3)


# -- energy ---------------------------------------------------------------

def test_energy_worked_example():
    family = build_lines(G_X, A01, A01)
    xs = [frac(-1), frac(0), frac(1)]
    assert energy_restricted(family, xs) == 20


def test_energy_empty_restriction():
    family = build_lines(G_X, A01, A01)
    assert energy_restricted(family, []) == 0


def test_energy_away_from_crossings_counts_single_line_hits():
    # no crossings at x = 7: every line contributes multiplicity^2
    family = build_lines(G_X, A01, A01)
    assert energy_restricted(family, [frac(7)]) == 4
    assert brute_energy(G_X, A01, A01, [frac(7)]) == 4


def test_energy_with_collapsed_lines_matches_brute_force():
    # multiplicity-3 line away from any crossing contributes 9, not 3
    ground = GroundSet.of(0, 1, 2)
    family = build_lines(G_XY, ground, ground)
    xs = [frac(5), frac(0), frac(-1, 2)]
    assert energy_restricted(family, xs) == brute_energy(G_XY, ground, ground, xs)


@given(st.integers(min_value=0, max_value=10**6))
@settings(max_examples=25)
def test_energy_matches_brute_force(seed):
    rng = random.Random(seed)
    g = random_polynomial(rng, require_x=False)
    ground_a = random_ground_set(rng, rng.randint(1, 4))
    ground_b = random_ground_set(rng, rng.randint(2, 4), rational=bool(seed % 2))
    family = build_lines(g, ground_a, ground_b)
    xs = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(4)]
    assert energy_restricted(family, xs) == brute_energy(g, ground_a, ground_b, xs)


# -- rich points ------------------------------------------------------------

def test_rich_points_worked_example():
    family = build_lines(G_X, A01, A01)
    report = rich_points(family, 2)
    assert report.count == 4
    assert report.bound_ratio == Fraction(4 * 8, 16)
    assert rich_points(family, 3).count == 0


def test_rich_points_rejects_threshold_below_two():
    family = build_lines(G_X, A01, A01)
    with pytest.raises(InputError):
        rich_points(family, 1)


def test_rich_points_decay():
    ground = GroundSet.of(*range(1, 9))
    family = build_lines(G_XY, ground, ground)
    counts = [rich_points(family, t).count for t in range(2, 12)]
    assert all(a >= b for a, b in zip(counts, counts[1:]))
    max_n = max((p.count for p in intersection_points(family)), default=0)
    assert rich_points(family, max_n + 1).count == 0


def test_rich_points_empty_above_degree_cap():
    # degree-1 polynomial with all multiplicities 1: no point can carry
    # more than d * min(|A|, |B|) lines
    ground = GroundSet.of(*range(1, 6))
    family = build_lines(G_X, ground, ground)
    assert family.max_multiplicity == 1
    assert rich_points(family, len(ground) + 1).count == 0


# -- incidences -------------------------------------------------------------

def test_incidences_single_point():
    family = LineMultiset.from_weighted([
        (frac(0), frac(0), 1), (frac(1), frac(0), 1), (frac(0), frac(1), 1)])
    report = incidences([(frac(0), frac(0))], family)
    assert report.count == 2


def test_incidences_empty_points():
    family = LineMultiset.from_weighted([(frac(0), frac(0), 1)])
    assert incidences([], family).count == 0


def test_incidences_grid_with_weighted_horizontals():
    # vertical lines are out of scope, so "6 lines, 3 grid points each" is
    # realized as the 3 horizontals of the grid carried with multiplicity 2
    grid = [(frac(i), frac(j)) for i in range(3) for j in range(3)]
    family = LineMultiset.from_weighted([(frac(0), frac(j), 2) for j in range(3)])
    report = incidences(grid, family)
    assert family.total_weight == 6
    assert report.count == 18
    rows = [(l.slope, l.intercept, l.multiplicity) for l in family]
    assert report.count == brute_incidences(grid, rows)


@given(st.integers(min_value=0, max_value=10**6))
@settings(max_examples=25)
def test_incidences_match_brute_force(seed):
    rng = random.Random(seed)
    g = random_polynomial(rng, require_x=False)
    ground = random_ground_set(rng, rng.randint(2, 4))
    family = build_lines(g, ground, ground)
    pts = [(Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4)))
           for _ in range(6)]
    weighted = [(l.slope, l.intercept, l.multiplicity) for l in family]
    assert incidences(pts, family).count == brute_incidences(pts, weighted)


# -- instance-pair accounting -------------------------------------------------

@given(st.integers(min_value=0, max_value=10**6))
@settings(max_examples=20)
def test_master_pair_accounting(seed):
    # ordered instance pairs with distinct slopes all meet exactly once:
    # summing n^2 - sum(m^2) over crossing points recovers their number
    rng = random.Random(seed)
    g = random_polynomial(rng, require_x=False)
    ground_a = random_ground_set(rng, rng.randint(1, 4))
    ground_b = random_ground_set(rng, rng.randint(2, 4))
    family = build_lines(g, ground_a, ground_b)
    from quotlab.lines import crossing_weights
    total = sum(n * n - sqm for n, sqm, _ in crossing_weights(family).values())
    na, nb = len(ground_a), len(ground_b)
    assert total == na * na * nb * (nb - 1)


def test_instance_lines_oracle_agrees_with_family_weight():
    ground = GroundSet.of(0, 1, 2)
    family = build_lines(G_XY, ground, ground)
    assert family.total_weight == len(instance_lines(G_XY, ground, ground))
