import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lienard.bounds import (
    LIENARD_A0,
    A0Constants,
    a0_verify,
    bernstein_radii,
    certified_radius,
    compose,
    domination_check,
    majorant_coefficients,
    radius_basic,
    radius_scaled,
    rho_solve,
    series_invert,
    tail_bound,
)
from lienard.exact import PiPoly
from lienard.paramring import pp_eval
from lienard.recurrence import compute_table

_TABLE = compute_table(3, 16)

entries = st.one_of(st.just(0.0), st.floats(1e-6, 2), st.floats(-2, -1e-6))
lams = st.lists(entries, min_size=1, max_size=6)


def test_a0_constants():
    assert LIENARD_A0.envelope(3) == PiPoly.pi(4)
    with pytest.raises(ValueError):
        A0Constants(K4=PiPoly.const(-1))


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_a0_envelope(d, table):
    rep = a0_verify(table(d, 11))
    assert rep.ok
    assert rep.theta_ok
    assert rep.to_json()["ok"]


def test_majorant_first_terms():
    W = majorant_coefficients(Fraction(1), 4)
    assert W[1] == PiPoly.const(1)
    assert W[2] == PiPoly.pi(2)
    Wf = majorant_coefficients(1.0, 4)
    assert all(abs(float(a) - b) < 1e-12 * max(1, b) for a, b in zip(W[1:], Wf[1:]))


def test_majorant_satisfies_functional_equation():
    L, K = 0.3, 12
    W = majorant_coefficients(L, K)
    x = 0.01
    w = sum(W[k] * x ** k for k in range(1, K + 1))
    assert abs((w - x) * (1 - (1 + L) * w) - 2 * math.pi * L * w * w) < 1e-14


@given(st.floats(0, 2), st.floats(0, 2))
def test_majorant_monotone_and_nonnegative(a, b):
    lo, hi = sorted((a, b))
    Wl, Wh = majorant_coefficients(lo, 8), majorant_coefficients(hi, 8)
    for k in range(1, 9):
        assert 0 <= Wl[k] <= Wh[k] * (1 + 1e-12)


@given(st.lists(st.fractions(-3, 3, max_denominator=5), min_size=7, max_size=7))
def test_series_invert_round_trip(c):
    K = 8
    f = [None, Fraction(1)] + c
    g = series_invert(f, K)
    ident = compose(f, g, K)
    assert ident[1] == 1
    assert all(x is None for x in ident[2:])
    assert all(x is None for x in compose(g, f, K)[2:])


def test_series_invert_needs_unit():
    with pytest.raises(ValueError):
        series_invert([None, None, Fraction(1)], 3)


@pytest.mark.parametrize("lam", [[Fraction(1, 2), Fraction(-1, 3)], [0, Fraction(1, 4), Fraction(1, 5)]])
def test_domination(lam, table):
    rep = domination_check(table(len(lam), 7), lam)
    assert rep.ok, rep.rows


@given(lams)
def test_radius_basic(lam):
    r = radius_basic(lam)
    assert 0 < r <= 1
    if all(x == 0 for x in lam):
        assert r == 1
    elif sum(map(abs, lam)) > 1e-12:
        assert r < 1


@given(lams)
def test_rho_residual_and_monotone(lam):
    rho = rho_solve(lam)
    if all(x == 0 for x in lam):
        assert rho is None
        return
    g = lambda r: sum(abs(x) * r ** (i + 1) for i, x in enumerate(lam))
    assert abs(g(rho) - 1) <= 1e-10
    assert g(0.5 * rho) < g(rho) < g(1.5 * rho)


def test_rho_examples():
    assert abs(rho_solve([2]) - 0.5) <= 1e-12
    assert abs(rho_solve([1, 1]) - (math.sqrt(5) - 1) / 2) <= 1e-12
    assert abs(radius_scaled([1, 1]) - 0.309017) < 1e-6
    assert abs(radius_scaled([2]) - 0.25) < 1e-12
    assert radius_scaled([0, 0]) is None
    assert certified_radius([0, 0]) == 1.0
    # tiny coefficients must not overflow the bracket
    assert math.isclose(rho_solve([0, 1e-300]), 1e150, rel_tol=1e-9)
    assert rho_solve([5e-324]) > 1e300


def test_bernstein_values():
    rep = bernstein_radii(1, [0, 0])
    assert math.isclose(rep.r_bernstein, 1 / (2048 * math.pi), rel_tol=1e-12)
    assert math.isclose(rep.variants["zero_radius_ratio"], 1.0, rel_tol=1e-12)
    assert rep.zero_bound == 2
    scaled = bernstein_radii(1, [0, 1]).r_bernstein_scaled
    assert math.isclose(scaled, (math.pi / 4) / (math.pi ** 2 * 2 ** 14), rel_tol=1e-10)
    assert bernstein_radii(3, [0] * 6).zero_bound == 6
    assert set(rep.to_json()["variants"]) >= {"zero_radius_symbolic", "zero_radius_substituted"}
    with pytest.raises(ValueError):
        bernstein_radii(0, [0])


@given(lams)
def test_bernstein_shrinks_with_lambda(lam):
    big = [2 * x for x in lam]
    assert bernstein_radii(2, big).r_bernstein <= bernstein_radii(2, lam).r_bernstein


@settings(max_examples=15)
@given(st.lists(st.fractions(-1, 1, max_denominator=8), min_size=3, max_size=3), st.floats(0.01, 0.2))
def test_tail_bound_dominates_true_tail(lam, x):
    K, K_far = 6, 16
    t = _TABLE
    tail = sum(abs(float(pp_eval(t.f(k), lam))) * x ** k for k in range(K + 1, K_far + 1))
    assert tail <= tail_bound(lam, x, K) * (1 + 1e-9) + 1e-300


def test_tail_bound_decreases_in_k():
    lam = [0.2, -0.1]
    vals = [tail_bound(lam, 0.1, K) for K in range(4, 12)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert tail_bound([0, 0], 0.5, 4) == 0.0
