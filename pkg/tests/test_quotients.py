import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quotlab.errors import DegenerateError, InputError
from quotlab.polynomials import Poly
from quotlab.quotients import (exponent_scan, fit_loglog_slope,
                               quadruple_histogram, quotient_set, verify_chain)
from quotlab.sets import GroundSet, SetSpec

from oracles import (brute_quadruple_histogram, brute_quotient_set,
                     random_ground_set, random_polynomial)

G_X = Poly(2, {(1, 0): Fraction(1)})
G_Y2 = Poly(2, {(0, 2): Fraction(1)})
G_XY = Poly(2, {(1, 1): Fraction(1)})

AP_SPEC = SetSpec.from_dict({"kind": "arithmetic", "start": 1, "step": 1, "size": 4})


def frac(p, q=1):
    return Fraction(p, q)


def interval(*values):
    return GroundSet.of(*values)


# -- quotient sets -----------------------------------------------------------

def test_quotient_set_collapsed_quadratic():
    xs = quotient_set(G_Y2, interval(1, 2, 3))
    assert list(xs) == [frac(-5), frac(-4), frac(-3)]


def test_quotient_set_difference_ratio_example():
    xs = quotient_set(G_X, interval(1, 2, 3))
    assert list(xs) == [frac(-2), frac(-1), frac(-1, 2), frac(0),
                        frac(1, 2), frac(1), frac(2)]
    assert len(xs) == 7


def test_quotient_set_singleton_is_empty():
    assert len(quotient_set(G_X, interval(1))) == 0


def test_quotient_set_rational_ground_set():
    ground = interval("1/2", "1/3", "-2")
    assert quotient_set(G_XY, ground).as_set() == brute_quotient_set(G_XY, ground)


@given(st.integers(min_value=0, max_value=10**6))
@settings(max_examples=25)
def test_quotient_set_matches_brute_force(seed):
    rng = random.Random(seed)
    g = random_polynomial(rng, require_x=False)
    ground = random_ground_set(rng, rng.randint(2, 6), rational=bool(seed % 2))
    assert quotient_set(g, ground).as_set() == brute_quotient_set(g, ground)


@given(st.integers(min_value=0, max_value=10**6))
@settings(max_examples=15)
def test_quotient_set_monotone_under_inclusion(seed):
    rng = random.Random(seed)
    g = random_polynomial(rng)
    big = random_ground_set(rng, 6)
    small = GroundSet(list(big)[:4])
    assert quotient_set(g, small).as_set() <= quotient_set(g, big).as_set()


def test_quotient_set_workers_equivalent():
    ground = interval(*range(1, 9))
    base = quotient_set(G_XY, ground, workers=1)
    assert quotient_set(G_XY, ground, workers=3) == base
    assert quotient_set(G_XY, ground, workers=8) == base


# -- quadruple histogram -------------------------------------------------------

def test_histogram_worked_example():
    hist = quadruple_histogram(G_X, interval(0, 1))
    assert hist.counts == {frac(-1): 2, frac(0): 4, frac(1): 2}
    assert hist.total == 8


def test_histogram_collapsed_quadratic():
    hist = quadruple_histogram(G_Y2, interval(1, 2))
    assert hist.counts == {frac(3): 8}


def test_histogram_singleton_empty():
    assert len(quadruple_histogram(G_X, interval(5))) == 0


@given(st.integers(min_value=0, max_value=10**6))
@settings(max_examples=20)
def test_histogram_matches_brute_force(seed):
    rng = random.Random(seed)
    g = random_polynomial(rng, require_x=False)
    ground = random_ground_set(rng, rng.randint(2, 6), rational=bool(seed % 2))
    assert quadruple_histogram(g, ground).counts == brute_quadruple_histogram(g, ground)


@given(st.integers(min_value=0, max_value=10**6))
@settings(max_examples=20)
def test_histogram_conservation_and_bridge(seed):
    rng = random.Random(seed)
    g = random_polynomial(rng)
    ground = random_ground_set(rng, rng.randint(2, 7))
    hist = quadruple_histogram(g, ground)
    n = len(ground)
    assert hist.total == n ** 3 * (n - 1)
    assert {-x for x in hist.support} == quotient_set(g, ground).as_set()


def test_histogram_workers_equivalent():
    ground = interval(*range(1, 8))
    base = quadruple_histogram(G_XY, ground, workers=1)
    assert quadruple_histogram(G_XY, ground, workers=4).counts == base.counts


# -- verification chain ---------------------------------------------------------

def test_chain_worked_example():
    report = verify_chain(G_X, interval(0, 1))
    assert report.size_x == 3
    assert report.quadruple_total == 8
    assert report.energy_support == 20
    assert report.energy_bound_ratio == pytest.approx(20 / (8 * math.sqrt(3)))
    assert all(report.links.values())


def test_chain_refuses_degenerate():
    with pytest.raises(DegenerateError, match="hypotheses"):
        verify_chain(G_Y2, interval(1, 2, 3))


def test_chain_singleton_reports_zeroes():
    report = verify_chain(G_X, interval(7))
    assert report.size_x == 0
    assert report.quadruple_total == 0
    assert report.energy_support == 0


def test_chain_energy_identity_fields():
    ground = interval(*range(1, 7))
    report = verify_chain(G_XY, ground)
    t2 = report.squared_multiplicity_total
    assert report.energy_support == report.quadruple_total + report.size_x * t2
    assert report.links["energy_identity"]


def test_chain_zero_in_support_handling():
    # 0 is always a quotient (a1 = a2, b1 = b2 swapped pairs), so the
    # excluded-zero energy must drop Q(0) + T2
    ground = interval(1, 2, 3)
    report = verify_chain(G_X, ground)
    assert report.zero_in_support
    hist = quadruple_histogram(G_X, ground)
    drop = hist[frac(0)] + report.squared_multiplicity_total
    assert report.energy_support_excl_zero == report.energy_support - drop


def test_chain_collapsing_multiplicity_is_reported_not_asserted():
    ground = interval(0, 1, 2, 3)
    report = verify_chain(G_XY, ground)  # b = 0 collapses a whole column
    assert report.max_line_multiplicity == 4
    assert not report.line_multiplicity_within_degree
    assert all(report.links.values())


@given(st.integers(min_value=0, max_value=10**6))
@settings(max_examples=10)
def test_chain_links_hold_on_random_instances(seed):
    rng = random.Random(seed)
    g = random_polynomial(rng, max_degree=3)
    ground = random_ground_set(rng, rng.randint(2, 6), rational=bool(seed % 2))
    report = verify_chain(g, ground)
    assert all(report.links.values())
    assert report.size_x == len(quotient_set(g, ground))


def test_chain_workers_equivalent():
    ground = interval(*range(1, 8))
    r1 = verify_chain(G_XY, ground, workers=1)
    r4 = verify_chain(G_XY, ground, workers=4)
    assert r1.to_dict() == r4.to_dict()


# -- closed form for the collapsed quadratic ------------------------------------

@pytest.mark.parametrize("n", [2, 3, 5, 10, 17])
def test_collapsed_quadratic_size_closed_form(n):
    ground = interval(*range(1, n + 1))
    assert len(quotient_set(G_Y2, ground)) == 2 * n - 3


# -- exponent scans ---------------------------------------------------------------

def test_scan_needs_two_sizes():
    with pytest.raises(InputError, match="2 sizes"):
        exponent_scan(G_X, AP_SPEC, [8])


def test_scan_sizes_must_increase():
    with pytest.raises(InputError, match="increasing"):
        exponent_scan(G_X, AP_SPEC, [8, 8])


def test_scan_refuses_degenerate_without_flag():
    with pytest.raises(DegenerateError):
        exponent_scan(G_Y2, AP_SPEC, [4, 8])
    report = exponent_scan(G_Y2, AP_SPEC, [4, 8], allow_degenerate=True)
    assert [m for _, m in report.rows] == [5, 13]


def test_scan_difference_ratio_small():
    report = exponent_scan(G_X, AP_SPEC, [4, 8, 16])
    assert [n for n, _ in report.rows] == [4, 8, 16]
    assert 1.5 <= report.slope <= 2.2


def test_fit_loglog_slope_exact_power():
    assert fit_loglog_slope([2, 4, 8, 16], [4, 16, 64, 256]) == pytest.approx(2.0)
    with pytest.raises(InputError):
        fit_loglog_slope([4], [2])
    with pytest.raises(InputError):
        fit_loglog_slope([2, 4], [0, 1])
