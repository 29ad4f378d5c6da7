import json
import math
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from lienard.exact import PiPoly
from lienard.paramring import ParamPoly, pp_eval
from lienard.recurrence import (
    CoefficientTable,
    brute_force_series_oracle,
    check_lemma_I1,
    check_lemma_I3,
    clear_cache,
    compute_table,
    degree_profile,
    dump_table,
    wallis_c,
)
from lienard.trig import ONE, tp_value_at_zero

GOLDEN = Path(__file__).parent / "data" / "table_d4_K9.json"


def test_first_orders(table):
    t = table(3, 4)
    assert t.vtheta[1] == ParamPoly.constant(3, ONE)
    assert t.f(2).is_zero()
    assert t.f(3) == ParamPoly.variable(3, 2, PiPoly.pi(Fraction(1, 4)))


@pytest.mark.parametrize("d", range(1, 9))
def test_second_coefficient_vanishes(d, table):
    assert table(d, 3).f(2).is_zero()


def test_vanish_at_zero(table):
    t = table(4, 8)
    for k in range(2, 9):
        assert all(tp_value_at_zero(c) == 0 for _, c in t.vtheta[k].items())


@pytest.mark.parametrize("d,K", [(2, 10), (4, 9), (5, 9)])
def test_weighted_homogeneity(d, K, table):
    t = table(d, K)
    for k in range(1, K + 1):
        for m in t.vtheta[k].monomials():
            assert sum((i + 1) * e for i, e in enumerate(m)) == k - 1


def test_matches_golden_table():
    golden = json.loads(GOLDEN.read_text())
    assert compute_table(4, 9).to_json() == golden
    assert dump_table(compute_table(4, 9)) == GOLDEN.read_text().rstrip("\n")


def test_json_round_trip(table):
    t = table(3, 6)
    assert CoefficientTable.from_json(t.to_json()) == t


def test_cache_does_not_change_results():
    before = compute_table(3, 7).to_json()
    clear_cache()
    assert compute_table(3, 7).to_json() == before
    # growing on demand keeps prefixes
    assert compute_table(3, 9).to_json()["orders"][:7] == before["orders"]


def test_rejects_bad_sizes():
    with pytest.raises(ValueError):
        compute_table(0, 3)


def test_wallis_constants():
    assert wallis_c(0) == PiPoly.pi(1)
    assert [wallis_c(k) for k in (1, 2, 3)] == [
        PiPoly.pi(Fraction(1, 4)),
        PiPoly.pi(Fraction(1, 8)),
        PiPoly.pi(Fraction(5, 64)),
    ]
    for k in range(6):
        val, _ = quad(lambda t: math.cos(t) ** (2 * k) * math.sin(t) ** 2, 0, 2 * math.pi, epsabs=1e-14)
        assert abs(float(wallis_c(k)) - val) < 1e-12


@settings(max_examples=8)
@given(st.lists(st.floats(-0.6, 0.6), min_size=3, max_size=3))
def test_brute_force_oracle_agrees(lam):
    t = compute_table(3, 8)
    lam = [Fraction(x).limit_denominator(1000) for x in lam]
    oracle = brute_force_series_oracle(3, 8, lam)
    for k in range(1, 9):
        exact = float(pp_eval(t.f(k), lam))
        assert abs(exact - oracle[k - 1]) <= 1e-9 * (1 + abs(exact))


def test_oracle_rejects_wrong_length():
    with pytest.raises(ValueError):
        brute_force_series_oracle(2, 4, [0.1])


@pytest.mark.parametrize("d", range(1, 8))
def test_structure_lemmas(d, table):
    n = d // 2
    t = table(d, max(2 * n + 3, 6))
    rep = check_lemma_I1(t)
    assert rep.ok, rep.violations
    if n:
        rep3 = check_lemma_I3(t, n)
        assert rep3.ok, rep3.violations


def test_degree_profile(table):
    prof = degree_profile(table(4, 9))
    assert prof[2] is None
    assert prof[3] == 1
    assert all(p is None or p <= k - 1 for k, p in enumerate(prof) if k)


def test_rescaling_relation(table):
    # f_k(rho^i lambda_i) = rho^(k-1) f_k(lambda)
    t = table(3, 9)
    rng = random.Random(3)
    lam = [Fraction(rng.randint(-5, 5), 7) for _ in range(3)]
    rho = Fraction(3, 2)
    scaled = [rho ** (i + 1) * x for i, x in enumerate(lam)]
    for k in range(2, 10):
        a, b = t.f(k).substitute(scaled), t.f(k).substitute(lam)
        if b is None:
            assert a is None
        else:
            assert a == b * PiPoly.const(rho ** (k - 1))
