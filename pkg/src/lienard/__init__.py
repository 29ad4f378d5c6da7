"""Exact return-map coefficients, Bautin ideals and cycle-count bounds for Liénard systems."""

from .exact import PiFraction, PiPoly, Rational, pi_decimal
from .trig import TrigPoly
from .paramring import ParamPoly
from .recurrence import CoefficientTable, brute_force_series_oracle, compute_table, wallis_c
from .bautin import IdealSpec, bautin_report, hironaka_decompose, recompose
from .bounds import (
    a0_verify,
    bernstein_radii,
    certified_radius,
    domination_check,
    majorant_coefficients,
    radius_basic,
    radius_scaled,
    rho_solve,
    tail_bound,
)
from .numeric import (
    LienardSystem,
    complex_zero_report,
    lins_neto_construct,
    real_cycle_radii,
    return_map,
    validate_series,
)

__version__ = "0.1.0"
