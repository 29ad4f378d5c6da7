"""Exact coefficients v_k(theta) of the inverse return-map series.

Along an orbit of x' = y, y' = -x + p(x) y with p(x) = sum lambda_l x**l,
written in polar coordinates, the initial radius is

    r0 = r + v_2(theta) r**2 + v_3(theta) r**3 + ...

with v_1 = 1, v_k(0) = 0 for k >= 2 and

    v_k' = sum_l lambda_l cos^l sin [cos v_{k-l}' + (k - l) sin v_{k-l}].

Everything here is exact: v_k(theta) is a ParamPoly over TrigPoly and
v_k(2 pi) a ParamPoly over PiPoly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from .exact import PiPoly
from .paramring import (
    Monomial,
    ParamPoly,
    eval_2pi,
    in_variable_ideal,
    monomial_key,
    pp_degree,
    unit_monomial,
)
from .trig import (
    ONE,
    TrigPoly,
    tp_antideriv,
    tp_as_sin_polynomial,
    tp_diff,
    tp_eval_2pi,
    tp_from_monomial,
    tp_value_at_zero,
)


@dataclass(frozen=True)
class CoefficientTable:
    """v_k(theta) and v_k(2 pi) for k = 1..K.

    ``vtheta[k]`` and ``v2pi[k]`` are indexed by the order ``k``; slot 0 is unused.
    """

    d: int
    K: int
    vtheta: Tuple[Optional[ParamPoly], ...]
    v2pi: Tuple[Optional[ParamPoly], ...]

    def f(self, k: int) -> ParamPoly:
        """Return-map coefficient f_k(lambda) = v_k(2 pi)."""
        return self.v2pi[k]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "K": self.K,
            "orders": [
                {"k": k, "vtheta": self.vtheta[k].to_json(), "v2pi": self.v2pi[k].to_json()}
                for k in range(1, self.K + 1)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CoefficientTable":
        d, K = data["d"], data["K"]
        vt: List[Optional[ParamPoly]] = [None] * (K + 1)
        v2: List[Optional[ParamPoly]] = [None] * (K + 1)
        for row in data["orders"]:
            k = row["k"]
            vt[k] = ParamPoly.from_json(d, row["vtheta"], TrigPoly.from_json)
            v2[k] = ParamPoly.from_json(d, row["v2pi"], PiPoly.from_json)
        return cls(d, K, tuple(vt), tuple(v2))


# Computed orders per d, grown on demand; prefixes never change.
_ORDERS: Dict[int, List[ParamPoly]] = {}


def _next_order(d: int, v: List[ParamPoly], dv: List[ParamPoly]) -> ParamPoly:
    k = len(v)  # v[0] is a placeholder, v[1..k-1] known
    integrand: Dict[Monomial, TrigPoly] = {}
    for l in range(1, min(d, k - 1) + 1):
        with_deriv = tp_from_monomial(l + 1, 1)  # cos^(l+1) sin
        with_value = tp_from_monomial(l, 2).scale(k - l)  # (k-l) cos^l sin^2
        e_l = unit_monomial(d, l)
        for m, c in v[k - l].items():
            g = with_deriv * dv[k - l].coeff(m, TrigPoly()) + with_value * c
            target = tuple(a + b for a, b in zip(m, e_l))
            prev = integrand.get(target)
            integrand[target] = g if prev is None else prev + g
    return ParamPoly(d, {m: tp_antideriv(g) for m, g in integrand.items()})


def _orders(d: int, K: int) -> List[ParamPoly]:
    v = _ORDERS.setdefault(d, [None, ParamPoly.constant(d, ONE)])
    if len(v) <= K:
        dv = [None] + [p.map_coeffs(tp_diff) for p in v[1:]]
        while len(v) <= K:
            v.append(_next_order(d, v, dv))
            dv.append(v[-1].map_coeffs(tp_diff))
    return v


def compute_table(d: int, K: int) -> CoefficientTable:
    """Coefficient table for degree ``d`` up to order ``K`` (both >= 1)."""
    if d < 1 or K < 1:
        raise ValueError("d and K must be at least 1")
    v = _orders(d, K)[: K + 1]
    return CoefficientTable(d, K, tuple(v), tuple([None] + [eval_2pi(p) for p in v[1:]]))


def clear_cache() -> None:
    _ORDERS.clear()


@lru_cache(maxsize=None)
def wallis_c(k0: int) -> PiPoly:
    """Integral of cos^(2 k0) sin^2 over one period, as a rational multiple of pi."""
    if k0 < 0:
        raise ValueError("k0 must be non-negative")
    return tp_eval_2pi(tp_antideriv(tp_from_monomial(2 * k0, 2)))


# --- independent numeric oracle ------------------------------------------

def _series_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = len(a)
    return np.convolve(a, b)[:n]


def _series_div(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = len(a)
    q = np.zeros(n)
    for i in range(n):
        q[i] = (a[i] - np.dot(q[:i], b[i:0:-1])) / b[0]
    return q


def brute_force_series_oracle(d: int, K: int, lam: Sequence, rtol: float = 1e-13) -> List[float]:
    """v_1(2 pi)..v_K(2 pi) at a fixed ``lam``, by a route independent of the recurrence.

    Writes r(theta) = sum u_k(theta) r0**k, substitutes it into
    dr/dtheta = r p(r cos) sin^2 / (-1 + sin cos p(r cos)) with truncated
    power series, integrates the u_k over [0, 2 pi] numerically and inverts
    the resulting map r0 -> r(2 pi).
    """
    if len(lam) != d:
        raise ValueError(f"expected {d} parameter values, got {len(lam)}")
    lam = np.array([float(x) for x in lam])
    n = K + 1  # series coefficients 0..K

    def rhs(theta, u_tail):
        c, s = np.cos(theta), np.sin(theta)
        u = np.zeros(n)
        u[1] = 1.0
        u[2:] = u_tail
        # x = r cos as a series in r0
        x = u * c
        p = np.zeros(n)
        xp = np.zeros(n)
        xp[0] = 1.0
        for l in range(1, d + 1):
            xp = _series_mul(xp, x)
            p += lam[l - 1] * xp
        num = _series_mul(u, p) * s * s
        den = s * c * p
        den[0] -= 1.0
        return _series_div(num, den)[2:]

    sol = solve_ivp(rhs, (0.0, 2 * np.pi), np.zeros(n - 2), method="DOP853", rtol=rtol, atol=1e-16)
    if not sol.success:
        raise RuntimeError(sol.message)
    U = np.zeros(n)
    U[1] = 1.0
    U[2:] = sol.y[:, -1]
    # invert r0 -> U(r0): find Q with Q(U(x)) = x
    q = np.zeros(n)
    q[1] = 1.0
    powers = [None, U.copy()]
    for k in range(2, n):
        powers.append(_series_mul(powers[-1], U))
    for j in range(2, n):
        q[j] = -sum(q[k] * powers[k][j] for k in range(1, j))
    return [float(x) for x in q[1:]]


# --- structural checks ------------------------------------------------------

@dataclass
class LemmaReport:
    ok: bool = True
    violations: List[str] = field(default_factory=list)
    details: Dict[int, dict] = field(default_factory=dict)

    def fail(self, msg: str) -> None:
        self.ok = False
        self.violations.append(msg)

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": self.violations, "details": self.details}


def _has_even(m: Monomial) -> bool:
    return any(e for i, e in enumerate(m) if (i + 1) % 2 == 0)


def split_even_odd(series: ParamPoly) -> Tuple[ParamPoly, ParamPoly]:
    """Split into (monomials using some even-index lambda, pure odd-index part)."""
    return series.filter(_has_even), series.filter(lambda m: not _has_even(m))


def check_lemma_I1(table: CoefficientTable) -> LemmaReport:
    """Check v_k = f_k + sum_j lambda_{2j+1} w(sin theta) with f_k in the even ideal.

    The pure odd-index part of each v_k(theta) must be a polynomial in
    sin(theta) vanishing at theta = 0; every other monomial must contain some
    lambda_{2j} with 2j <= k - 1.
    """
    rep = LemmaReport()
    for k in range(2, table.K + 1):
        even_part, odd_part = split_even_odd(table.vtheta[k])
        for m in even_part.monomials():
            if not any(e for i, e in enumerate(m) if (i + 1) % 2 == 0 and i + 1 <= k - 1):
                rep.fail(f"k={k} monomial {monomial_key(m)}: even generator beyond k-1")
        sin_polys = {}
        for m, tp in odd_part.items():
            if not any(m):
                rep.fail(f"k={k}: constant term in odd part")
                continue
            coeffs = tp_as_sin_polynomial(tp)
            if coeffs is None:
                rep.fail(f"k={k} monomial {monomial_key(m)}: not a polynomial in sin(theta)")
            elif coeffs and coeffs[0] != 0:
                rep.fail(f"k={k} monomial {monomial_key(m)}: w(0) != 0")
            else:
                sin_polys[monomial_key(m)] = [str(c) for c in coeffs]
        rep.details[k] = {
            "even_monomials": len(even_part),
            "odd_monomials": len(odd_part),
            "sin_polynomials": sin_polys,
        }
    return rep


def check_lemma_I3(table: CoefficientTable, n: int) -> LemmaReport:
    """Check v_{2k0+1}(2 pi) - c_{2k0+1} lambda_{2k0} lies in (lambda_2..lambda_{2k0-2})."""
    if table.K < 2 * n + 1 or table.d < 2 * n:
        raise ValueError("need K >= 2n+1 and d >= 2n")
    rep = LemmaReport()
    d = table.d
    for k0 in range(1, n + 1):
        c = wallis_c(k0)
        f = table.v2pi[2 * k0 + 1]
        rest = f - ParamPoly.variable(d, 2 * k0, c)
        member = in_variable_ideal(rest, range(2, 2 * k0 - 1, 2))
        if not member:
            rep.fail(f"k0={k0}: v_{2 * k0 + 1}(2pi) - c*lambda_{2 * k0} outside lower ideal")
        rep.details[k0] = {"c": c.to_json(), "member": member}
    return rep


def degree_profile(table: CoefficientTable) -> List[Optional[int]]:
    return [None] + [pp_degree(table.v2pi[k]) for k in range(1, table.K + 1)]


def dump_table(table: CoefficientTable) -> str:
    return json.dumps(table.to_json(), sort_keys=True, indent=1)
