"""Numerical oracle: integrate the flow, sample the return map, count cycles.

The section is the positive x-axis. By default the return map follows the
direction of increasing polar angle, which is backward in time (the angle
decreases along the forward flow). In that orientation the coefficient
series is the inverse of the return map: ``Q(P(r0)) = r0`` with
``Q(r) = r + sum_k v_k(2 pi) r**k``. Zeros of the displacement do not depend
on the orientation.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from .bounds import bernstein_radii, radius_basic, radius_scaled, tail_bound
from .paramring import pp_eval
from .recurrence import CoefficientTable, wallis_c


class IntegrationError(RuntimeError):
    pass


class DomainExitError(IntegrationError):
    """The angular velocity changed sign: the section is no longer transversal."""


class EscapeError(IntegrationError):
    """The trajectory left the bounding box."""


class BoundaryAmbiguityError(RuntimeError):
    """A root lies too close to the counting circle."""


class InconsistencyError(RuntimeError):
    """Winding number and root count disagree."""


@dataclass(frozen=True)
class LienardSystem:
    """x' = y, y' = -x + p(x) y with p(x) = damping + sum lambda_i x**i.

    ``damping`` is zero for the center case; it is only used by the
    first-order cycle construction, where it turns the linear part into a focus.
    """

    d: int
    lam: Tuple
    damping: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(self.lam))
        if self.d < 1:
            raise ValueError("d must be at least 1")
        if len(self.lam) != self.d:
            raise ValueError(f"expected {self.d} coefficients, got {len(self.lam)}")

    @property
    def n(self) -> int:
        return self.d // 2

    def p(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.lam):
            acc = (acc + float(c)) * x
        return acc + float(self.damping)

    def field(self, x: float, y: float) -> Tuple[float, float]:
        return y, -x + self.p(x) * y


def liouville_form_convert(P_coeffs: Sequence) -> LienardSystem:
    """Convert x' = Y - P(x), Y' = -x into x' = y, y' = -x + p(x) y.

    ``P_coeffs[i]`` multiplies x**i. Then y = Y - P(x) and p = -P'. A linear
    term of P becomes the damping constant.
    """
    P = list(P_coeffs)
    if P and P[0] != 0:
        raise ValueError("P must vanish at the origin")
    while len(P) > 1 and P[-1] == 0:
        P.pop()
    # p(x) = -sum i P_i x^(i-1)
    lam = [-(i + 1) * P[i + 1] for i in range(1, len(P) - 1)]
    damping = -P[1] if len(P) > 1 else 0
    if not lam:
        lam = [0]
    return LienardSystem(len(lam), tuple(lam), damping)


def to_liouville_form(sys: LienardSystem) -> List:
    """Inverse of :func:`liouville_form_convert`: coefficients of P."""
    return [0, -sys.damping] + [-c / (i + 2) for i, c in enumerate(sys.lam)]


@dataclass(frozen=True)
class ReturnSample:
    r0: float
    r_return: float
    integrator_tolerance: float
    steps: int
    time: float


def return_map(
    sys: LienardSystem,
    r0: float,
    tol: float = 1e-10,
    backward: bool = True,
    box: float = 1e3,
    max_time: float = 200.0,
) -> ReturnSample:
    """First return of (r0, 0) to the positive x-axis.

    ``backward=True`` follows increasing polar angle (see module docstring).
    """
    if r0 <= 0:
        raise ValueError("r0 must be positive")
    sign = -1.0 if backward else 1.0

    def rhs(t, s):
        x, y, _ = s
        fx, fy = sys.field(x, y)
        fx, fy = sign * fx, sign * fy
        # accumulated angle, oriented to increase
        dphi = -sign * (x * fy - y * fx) / (x * x + y * y)
        return (fx, fy, dphi)

    # direction-of-crossing: with this orientation y goes - to + (backward) or + to - (forward)
    ysign = 1.0 if backward else -1.0

    def crossing(t, s):
        return ysign * s[1] if s[2] > 1.5 * math.pi else -r0

    crossing.terminal = True
    crossing.direction = 1.0

    def transversal(t, s):
        x, y, _ = s
        fx, fy = sys.field(x, y)
        return -(x * fy - y * fx)  # positive while the forward angle decreases

    transversal.terminal = True
    transversal.direction = -1.0

    def escape(t, s):
        return max(abs(s[0]), abs(s[1])) - box

    escape.terminal = True
    escape.direction = 1.0

    # huge r0 can overflow before the escape event fires; that is reported below
    with np.errstate(over="ignore", invalid="ignore"):
        sol = solve_ivp(
            rhs,
            (0.0, max_time),
            (float(r0), 0.0, 0.0),
            method="DOP853",
            rtol=tol,
            atol=tol * float(r0),
            events=(crossing, transversal, escape),
            dense_output=True,
        )
    if not sol.success:
        raise IntegrationError(sol.message)
    if sol.t_events[2].size:
        raise EscapeError(f"trajectory from r0={r0} left the box |x|,|y| <= {box}")
    if sol.t_events[1].size:
        raise DomainExitError(f"angular velocity changed sign for r0={r0}")
    if not sol.t_events[0].size:
        if transversal(0.0, sol.y[:, -1]) <= 0:
            raise DomainExitError(f"angular velocity vanished for r0={r0}")
        raise IntegrationError(f"no return to the section within t={max_time}")
    x, y, _ = sol.y_events[0][0]
    if abs(y) > tol * r0:
        raise IntegrationError(f"section crossing not resolved: |y|={abs(y):.3e}")
    if x <= 0:
        raise IntegrationError("returned to the negative x-axis")
    return ReturnSample(float(r0), float(x), tol, int(sol.t.size - 1), float(sol.t_events[0][0]))


# --- series against the flow ----------------------------------------------------

def _coefficients_at(table: CoefficientTable, lam: Sequence, K: int) -> List[float]:
    return [0.0, 1.0] + [float(pp_eval(table.v2pi[k], lam)) for k in range(2, K + 1)]


def eval_series(coeffs: Sequence[float], x):
    """sum coeffs[k] x**k by Horner (coeffs[0] ignored)."""
    acc = 0
    for c in reversed(coeffs[1:]):
        acc = (acc + c) * x
    return acc


@dataclass
class ValidationReport:
    lam: List[float]
    K: int
    radius: float
    threshold: float
    rows: List[dict] = field(default_factory=list)

    @property
    def max_residual(self) -> float:
        return max((r["residual"] for r in self.rows), default=0.0)

    @property
    def ok(self) -> bool:
        return self.max_residual <= self.threshold

    def to_json(self) -> dict:
        return {
            "lambda": self.lam,
            "K": self.K,
            "radius": self.radius,
            "threshold": self.threshold,
            "max_residual": self.max_residual,
            "ok": self.ok,
            "rows": self.rows,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r0", "r_return", "residual", "tail_bound"])
        for r in self.rows:
            w.writerow([repr(r["r0"]), repr(r["r_return"]), repr(r["residual"]), repr(r["tail_bound"])])
        return buf.getvalue()


def validate_series(
    sys: LienardSystem,
    table: CoefficientTable,
    K: int,
    radius: Optional[float] = None,
    samples: int = 16,
    tol: float = 1e-12,
    threshold: float = 1e-6,
) -> ValidationReport:
    """Check Q_K(P(r0)) = r0 on ``samples`` points in (0, radius / 2]."""
    if sys.damping:
        raise ValueError("the coefficient series covers the center case only")
    if table.d != sys.d or table.K < K:
        raise ValueError("table does not match the system")
    limit = radius_scaled(sys.lam)
    limit = radius_basic(sys.lam) if limit is None else limit
    radius = limit if radius is None else radius
    if radius > limit * (1 + 1e-12):
        raise ValueError(f"radius {radius} exceeds the certified radius {limit}")
    coeffs = _coefficients_at(table, sys.lam, K)
    rep = ValidationReport([float(c) for c in sys.lam], K, radius, threshold)
    for i in range(1, samples + 1):
        r0 = radius / 2 * i / samples
        P = return_map(sys, r0, tol).r_return
        residual = abs(eval_series(coeffs, P) - r0)
        rep.rows.append(
            {"r0": r0, "r_return": P, "residual": residual, "tail_bound": tail_bound(sys.lam, P, K)}
        )
    return rep


# --- real cycles ----------------------------------------------------------------

def displacement(sys: LienardSystem, r: float, tol: float = 1e-11) -> float:
    return return_map(sys, r, tol).r_return - r


def real_cycle_radii(
    sys: LienardSystem, r_max: float, grid_size: int = 40, tol: float = 1e-11
) -> List[float]:
    """Radii where the displacement changes sign on (0, r_max], refined by bisection.

    Grid values below the integration noise floor are treated as unsigned.
    """
    rs = [r_max * (i + 1) / grid_size for i in range(grid_size)]
    signed = []
    for r in rs:
        D = displacement(sys, r, tol)
        if abs(D) > 1e3 * tol * r:
            signed.append((r, D))
    roots = []
    for (a, Da), (b, Db) in zip(signed, signed[1:]):
        if (Da > 0) == (Db > 0):
            continue
        while b - a > max(tol, 1e-9 * b):
            m = 0.5 * (a + b)
            Dm = displacement(sys, m, tol)
            if (Dm > 0) == (Da > 0):
                a, Da = m, Dm
            else:
                b = m
        roots.append(0.5 * (a + b))
    return roots


def count_real_cycles(
    sys: LienardSystem, r_max: float, grid_size: int = 40, tol: float = 1e-11
) -> int:
    return len(real_cycle_radii(sys, r_max, grid_size, tol))


def lins_neto_construct(n: int, epsilon: float) -> LienardSystem:
    """Degree 2n system whose first-order displacement vanishes on n circles.

    Chooses a_0..a_n with sum_k a_k c_{2k+1} s**k = prod_j (s - s_j),
    s_j = (j/(n+1))**2, and sets damping = eps a_0, lambda_{2k} = eps a_k.
    To first order in eps the displacement is eps r sum_k a_k c_{2k+1} r**(2k),
    so the circles r = j/(n+1) are candidate limit cycles.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    roots = [Fraction(j, n + 1) ** 2 for j in range(1, n + 1)]
    poly = [Fraction(1)]  # ascending coefficients of prod (s - s_j)
    for s in roots:
        poly = [(poly[i - 1] if i else 0) - s * (poly[i] if i < len(poly) else 0)
                for i in range(len(poly) + 1)]
    a = [float(b) / float(wallis_c(k)) for k, b in enumerate(poly)]
    lam = [0.0] * (2 * n)
    for k in range(1, n + 1):
        lam[2 * k - 1] = epsilon * a[k]
    return LienardSystem(2 * n, tuple(lam), epsilon * a[0])


# --- complex zeros ----------------------------------------------------------------

@dataclass
class ComplexZeroReport:
    radius: float
    count: int
    winding: int
    trivial_order: int
    tail_bound: float
    min_on_contour: float
    guard_ok: bool
    roots: List[complex] = field(default_factory=list)
    identically_zero: bool = False

    def to_json(self) -> dict:
        return {
            "radius": self.radius,
            "count": self.count,
            "winding": self.winding,
            "trivial_order": self.trivial_order,
            "tail_bound": self.tail_bound,
            "min_on_contour": self.min_on_contour,
            "guard_ok": self.guard_ok,
            "identically_zero": self.identically_zero,
            "roots_inside": [[z.real, z.imag] for z in self.roots],
        }


def complex_zero_report(
    table: CoefficientTable, lam: Sequence, K: int, radius: float, samples: int = 4096
) -> ComplexZeroReport:
    """Zeros of the truncated displacement sum_{k=2}^K f_k(lambda) x**k in |x| < radius.

    The zero at the origin is divided out. Roots come from the companion
    matrix (numpy.roots) and are cross-checked by the winding number of the
    reduced polynomial around the circle.
    """
    if radius > radius_basic(lam) / 2:
        raise ValueError("radius must not exceed half the basic convergence radius")
    f = _coefficients_at(table, lam, K)
    disp = [0.0, 0.0] + f[2:]
    nz = [k for k, c in enumerate(disp) if c != 0.0]
    if not nz:
        return ComplexZeroReport(radius, 0, 0, 0, 0.0, 0.0, True, [], identically_zero=True)
    m = nz[0]
    reduced = disp[m:]  # ascending
    roots = np.roots(reduced[::-1]) if len(reduced) > 1 else np.array([])
    for z in roots:
        if abs(abs(z) - radius) < 1e-8 * radius:
            raise BoundaryAmbiguityError(f"root {z} lies on the circle |x| = {radius}")
    inside = [complex(z) for z in roots if abs(z) < radius]

    theta = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    x = radius * np.exp(1j * theta)
    vals = np.polyval(np.array(reduced[::-1], dtype=complex), x)
    steps = np.angle(np.roll(vals, -1) / vals)
    winding = int(round(steps.sum() / (2 * np.pi)))
    if winding != len(inside):
        raise InconsistencyError(f"winding {winding} != root count {len(inside)}")
    full_min = float(np.min(np.abs(vals)) * radius ** m)
    tb = tail_bound(lam, radius, K)
    return ComplexZeroReport(
        radius=radius,
        count=len(inside),
        winding=winding,
        trivial_order=m,
        tail_bound=tb,
        min_on_contour=full_min,
        guard_ok=tb < full_min,
        roots=inside,
    )


def count_complex_zeros(table: CoefficientTable, lam: Sequence, K: int, radius: float) -> int:
    return complex_zero_report(table, lam, K, radius).count


def conservative_zero_radius(lam: Sequence) -> float:
    return bernstein_radii(max(1, len(lam) // 2), lam).r_bernstein
