"""Explicit size bounds for the return-map series.

* A0 envelope: deg f_k <= K1 k + K2 and |f_k| <= K3 K4**k.
* Algebraic majorant W(r0) solving W - r0 = 2 pi L W**2 / (1 - (1 + L) W).
* Convergence radii 1 / (1 + L) and rho / 2 where sum rho**i |lambda_i| = 1.
* Bernstein-class constants and the zero-free radii derived from them.

Here ``L = |lambda| = sum |lambda_i|``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .exact import PiPoly, pipoly_eval
from .paramring import abs_lambda, pp_degree, pp_norm
from .recurrence import CoefficientTable, wallis_c
from .trig import tp_sup_norm_bound


@dataclass(frozen=True)
class A0Constants:
    K1: Fraction = Fraction(1)
    K2: Fraction = Fraction(-1)
    K3: PiPoly = PiPoly.pi(Fraction(1, 2))
    K4: PiPoly = PiPoly.const(2)

    def __post_init__(self):
        if float(self.K3) <= 0 or float(self.K4) <= 0:
            raise ValueError("K3 and K4 must be positive")

    def envelope(self, k: int) -> PiPoly:
        return self.K3 * self.K4 ** k


LIENARD_A0 = A0Constants()


@dataclass
class A0Row:
    k: int
    degree: Optional[int]
    degree_bound: Fraction
    norm: Decimal
    theta_norm: Decimal
    norm_bound: Decimal
    degree_ok: bool
    norm_ok: bool
    theta_norm_ok: bool


@dataclass
class A0Report:
    rows: List[A0Row]

    @property
    def ok(self) -> bool:
        return all(r.degree_ok and r.norm_ok for r in self.rows)

    @property
    def theta_ok(self) -> bool:
        return all(r.theta_norm_ok for r in self.rows)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "theta_ok": self.theta_ok,
            "rows": [
                {k: (str(v) if isinstance(v, (Decimal, Fraction)) else v) for k, v in asdict(r).items()}
                for r in self.rows
            ],
        }


def a0_verify(
    table: CoefficientTable, consts: A0Constants = LIENARD_A0, precision: int = 30
) -> A0Report:
    """Compare every f_k = v_k(2 pi) (and every v_k(theta)) with the A0 envelope."""
    rows = []
    for k in range(1, table.K + 1):
        f = table.v2pi[k]
        deg = pp_degree(f)
        deg_bound = consts.K1 * k + consts.K2
        norm = pp_norm(f, precision)
        theta_norm = pp_norm(table.vtheta[k], precision)
        bound = pipoly_eval(consts.envelope(k), precision)
        rows.append(
            A0Row(
                k=k,
                degree=deg,
                degree_bound=deg_bound,
                norm=norm,
                theta_norm=theta_norm,
                norm_bound=bound,
                degree_ok=deg is None or deg <= deg_bound,
                norm_ok=norm <= bound,
                theta_norm_ok=theta_norm <= bound,
            )
        )
    return A0Report(rows)


# --- majorant ---------------------------------------------------------------

def majorant_coefficients(L, K: int) -> List:
    """W_1..W_K (index 0 unused) of the majorant series.

    Solves (W - r0)(1 - (1 + L) W) = 2 pi L W**2 order by order. With a float
    ``L`` the result is float; with a rational ``L`` it is exact (PiPoly).
    """
    if L < 0:
        raise ValueError("|lambda| must be non-negative")
    exact = isinstance(L, (int, Fraction))
    if exact:
        a, b = PiPoly.const(1 + Fraction(L)), PiPoly.pi(2 * Fraction(L))
        zero, one = PiPoly(), PiPoly.const(1)
    else:
        a, b = 1.0 + L, 2 * math.pi * L
        zero, one = 0.0, 1.0
    W = [zero, one] + [zero] * (K - 1)
    U = [zero] * (K + 1)  # U = W - r0
    for m in range(2, K + 1):
        s = zero
        for i in range(1, m - 1):
            s = s + W[i] * U[m - i]
        t = zero
        for i in range(1, m):
            t = t + W[i] * W[m - i]
        W[m] = a * s + b * t
        U[m] = W[m]
    return W[: K + 1]


# --- series composition and inversion -----------------------------------------

def _mul_trunc(a: Sequence, b: Sequence, K: int) -> List:
    out = [None] * (K + 1)
    for i in range(1, K + 1):
        if a[i] is None:
            continue
        for j in range(1, K + 1 - i):
            if b[j] is None:
                continue
            t = a[i] * b[j]
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    return out


def _normalize(series: Sequence, K: int) -> List:
    s = list(series[: K + 1]) + [None] * max(0, K + 1 - len(series))
    s[0] = None
    return [None if (c is not None and not c) else c for c in s]


def compose(f: Sequence, g: Sequence, K: int) -> List:
    """Coefficients 1..K of f(g(x)); both series start at x (index 0 ignored)."""
    f, g = _normalize(f, K), _normalize(g, K)
    out = [None] * (K + 1)
    power = g
    for k in range(1, K + 1):
        if f[k] is not None:
            for n in range(k, K + 1):
                if power[n] is not None:
                    t = f[k] * power[n]
                    out[n] = t if out[n] is None else out[n] + t
        if k < K:
            power = _mul_trunc(power, g, K)
    return _normalize(out, K)


def series_invert(coeffs: Sequence, K: int) -> List:
    """Compositional inverse to order K of x + c_2 x**2 + ... + c_K x**K.

    ``coeffs[1]`` must be the ring's unit; entries may be ``None`` for zero.
    Works over any commutative coefficient ring (ParamPoly, TrigPoly, ...).
    """
    f = _normalize(coeffs, K)
    one = f[1]
    if one is None:
        raise ValueError("leading coefficient must be the unit")
    # powers[k] = f**k truncated; g_n = -sum_{k<n} g_k [f**k]_n
    powers = [None, f]
    for k in range(2, K + 1):
        powers.append(_mul_trunc(powers[-1], f, K))
    g = [None, one] + [None] * (K - 1)
    for n in range(2, K + 1):
        acc = None
        for k in range(1, n):
            if g[k] is None or powers[k][n] is None:
                continue
            t = g[k] * powers[k][n]
            acc = t if acc is None else acc + t
        g[n] = None if acc is None or not acc else -acc
    return g


@dataclass
class DominationReport:
    lam: List[Fraction]
    L: Fraction
    rows: List[dict] = field(default_factory=list)
    ok: bool = True

    def to_json(self) -> dict:
        return {"lambda": [str(x) for x in self.lam], "abs_lambda": str(self.L), "ok": self.ok, "rows": self.rows}


def domination_check(
    table: CoefficientTable, lam: Sequence, K: Optional[int] = None, precision: int = 30,
    slack: float = 1e-9,
) -> DominationReport:
    """Sup bounds of the inverse-series coefficients w_k(theta) against W_k(|lambda|).

    The table is specialized exactly at the rational ``lam``.
    """
    K = table.K if K is None else K
    lam = [Fraction(x) for x in lam]
    L = sum(abs(x) for x in lam)
    v = [None] + [table.vtheta[k].substitute(lam) for k in range(1, K + 1)]
    w = series_invert(v, K)
    W = majorant_coefficients(L, K)
    rep = DominationReport(lam, L)
    for k in range(2, K + 1):
        sup = tp_sup_norm_bound(w[k], precision) if w[k] is not None else Decimal(0)
        maj = pipoly_eval(W[k], precision)
        ok = sup <= maj + Decimal(slack)
        rep.ok &= ok
        rep.rows.append({"k": k, "sup_bound": str(sup), "majorant": str(maj), "ok": ok})
    return rep


# --- radii --------------------------------------------------------------------

def radius_basic(lam: Sequence[float]) -> float:
    """1 / (1 + |lambda|)."""
    return 1.0 / (1.0 + abs_lambda(lam))


def rho_solve(lam: Sequence[float], tol: float = 1e-12) -> Optional[float]:
    """Unique rho > 0 with sum rho**i |lambda_i| = 1 (bisection); None if lambda = 0."""
    a = [abs(float(x)) for x in lam]
    if not any(a):
        return None

    logs = [(i + 1, math.log(c)) for i, c in enumerate(a) if c]

    def g(rho):
        # log space: rho**i alone may overflow when lambda_i is tiny
        lr = math.log(rho)
        return sum(math.exp(lc + i * lr) for i, lc in logs) - 1.0

    # any single term reaches 1 at c**(-1/i), so g >= 0 there (capped to stay finite)
    lo, hi = 0.0, min(math.exp(min(-lc / i, 700.0)) for i, lc in logs)
    if g(hi) <= 0:
        return hi
    for _ in range(400):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def radius_scaled(lam: Sequence[float]) -> Optional[float]:
    """rho / 2; None for lambda = 0 (the linear center converges everywhere)."""
    rho = rho_solve(lam)
    return None if rho is None else rho / 2


def certified_radius(lam: Sequence[float]) -> float:
    """Largest of the two convergence radii."""
    r = radius_scaled(lam)
    return radius_basic(lam) if r is None else max(r, radius_basic(lam))


@dataclass
class RadiusReport:
    r_basic: float
    rho: Optional[float]
    r_scaled: Optional[float]
    r_bernstein: float
    r_bernstein_scaled: Optional[float]
    zero_bound: int
    variants: Dict[str, float] = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)


def bernstein_radii(n: int, lam: Sequence[float]) -> RadiusReport:
    """Bernstein-class parameters, zero-free radii and the 2n zero bound.

    Both printed forms of the radius are evaluated: the symbolic one in terms
    of K3, K4 and the one with K3 = pi/2, K4 = 2 substituted. The reported
    ``r_bernstein`` is the smaller of the two.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    L = abs_lambda(lam)
    K3 = math.pi / 2
    K4 = 2.0
    c = float(wallis_c(n))
    cn = c ** n
    R_class = K4 * (1 + L)
    c_short = n * K3 ** 2 * K4 ** (2 * n - 1) / cn
    c_full = n * K3 ** 2 * (K4 * (1 + L)) ** (4 * n) / cn
    r_symbolic = cn / (2 ** (6 * n) * n * K3 ** 2 * (K4 * (1 + L)) ** (4 * n + 1))
    r_substituted = cn / (2 ** (10 * n - 1) * n * math.pi ** 2 * (1 + L) ** (4 * n + 1))
    rho = rho_solve(lam)
    r_scaled_bern = None if rho is None else rho * cn / (math.pi ** 2 * n * 2 ** (14 * n))
    chain_plain = n * K3 ** 2 * (K4 * (1 + L)) ** (2 * n - 1) / cn
    chain_weighted = n * K3 ** 2 * (K4 * (1 + L)) ** (4 * n) / cn
    return RadiusReport(
        r_basic=radius_basic(lam),
        rho=rho,
        r_scaled=None if rho is None else rho / 2,
        r_bernstein=min(r_symbolic, r_substituted),
        r_bernstein_scaled=r_scaled_bern,
        zero_bound=2 * n,
        variants={
            "class_radius": R_class,
            "class_constant_short": c_short,
            "class_constant_full": c_full,
            "zero_radius_symbolic": r_symbolic,
            "zero_radius_substituted": r_substituted,
            "zero_radius_ratio": r_symbolic / r_substituted,
            "coefficient_chain_plain": chain_plain,
            "coefficient_chain_weighted": chain_weighted,
            "wallis_constant": c,
        },
    )


def tail_bound(lam: Sequence[float], x: float, K: int) -> float:
    """Bound on sum_{k>K} |f_k(lambda)| x**k from the A0 envelope.

    Uses the better of the plain envelope (valid for |x| < 1/(2 max(1, |lambda|_inf)))
    and its rescaled form |f_k(lambda)| <= rho**(1-k) (pi/2) 2**k.
    """
    x = abs(x)
    best = math.inf
    m = max([1.0] + [abs(float(v)) for v in lam])
    q = 2 * x * m
    if q < 1:
        best = (math.pi / 2) * (2 * x) ** (K + 1) * m ** K / (1 - q)
    rho = rho_solve(lam)
    if rho is None:
        return 0.0
    q = 2 * x / rho
    if q < 1:
        best = min(best, (math.pi / 2) * rho * q ** (K + 1) / (1 - q))
    return best
