"""Command-line front end.

    lienard coeffs   --d 2 --K 3
    lienard bautin   --d 4 --K 9
    lienard radius   --lambda 2
    lienard bernstein --lambda 0,1
    lienard validate --lambda 0.1,-0.05 --K 20 --format csv
    lienard cycles   --lambda 0,-0.1
    lienard lins-neto --n 2 --epsilon 0.005

Exit status: 0 when every asserted check passes, 2 for usage errors,
3 when a check fails, 4 when the numerical integration fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import List, Optional

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CHECK = 3
EXIT_NUMERIC = 4

COMMANDS = ("coeffs", "bautin", "radius", "bernstein", "validate", "cycles", "lins-neto")


def default_precision() -> int:
    return int(os.environ.get("LIENARD_PRECISION", "30"))


@dataclass
class RunConfig:
    command: str
    d: Optional[int] = None
    K: Optional[int] = None
    n: Optional[int] = None
    lam: List[float] = field(default_factory=list)
    tol: Optional[float] = None
    radius: Optional[float] = None
    grid: Optional[int] = None
    epsilon: float = 0.005
    out: Optional[str] = None
    format: str = "json"
    precision: int = 30

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.lam and self.d is None:
            self.d = len(self.lam)
        if self.lam and self.d != len(self.lam):
            raise ValueError(f"--d {self.d} does not match {len(self.lam)} lambda values")
        if self.command in ("coeffs", "bautin") and self.d is None:
            raise ValueError("--d is required")
        if self.command in ("radius", "bernstein", "validate", "cycles") and not self.lam:
            raise ValueError("--lambda is required")
        if self.command == "lins-neto" and self.n is None:
            raise ValueError("--n is required")
        if self.d is not None and self.d < 1:
            raise ValueError("--d must be at least 1")
        if self.K is not None and self.K < 2:
            raise ValueError("--K must be at least 2")
        if self.format not in ("json", "csv"):
            raise ValueError("--format must be json or csv")


class CheckFailed(Exception):
    def __init__(self, payload: dict):
        super().__init__(payload.get("reason", "check failed"))
        self.payload = payload


def _parse_lambda(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad --lambda value {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lienard", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--d", type=int)
        p.add_argument("--K", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--lambda", dest="lam", type=_parse_lambda, default=[])
        p.add_argument("--tol", type=float)
        p.add_argument("--radius", type=float)
        p.add_argument("--grid", type=int)
        p.add_argument("--epsilon", type=float, default=0.005)
        p.add_argument("--out")
        p.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


# --- commands -------------------------------------------------------------------

def _coeffs(cfg: RunConfig):
    from .recurrence import compute_table

    table = compute_table(cfg.d, cfg.K or 5)
    return table.to_json()


def _bautin(cfg: RunConfig):
    from .bautin import bautin_report
    from .exact import pipoly_eval
    from .recurrence import wallis_c

    n = cfg.d // 2
    cert = bautin_report(cfg.d, cfg.K or 2 * n + 4)
    data = cert.to_json()
    data["diagonal_decimal"] = [str(pipoly_eval(wallis_c(j), cfg.precision)) for j in range(1, n + 1)]
    if not cert.ok:
        raise CheckFailed({"ok": False, "reason": "bautin certificate failed", "certificate": data})
    return data


def _radius(cfg: RunConfig):
    from .bounds import radius_basic, radius_scaled, rho_solve
    from .paramring import abs_lambda

    return {
        "lambda": cfg.lam,
        "abs_lambda": abs_lambda(cfg.lam),
        "radius_basic": radius_basic(cfg.lam),
        "rho": rho_solve(cfg.lam),
        "radius_scaled": radius_scaled(cfg.lam),
    }


def _bernstein(cfg: RunConfig):
    from .bounds import bernstein_radii

    n = cfg.n if cfg.n is not None else max(1, cfg.d // 2)
    return bernstein_radii(n, cfg.lam).to_json()


def _validate(cfg: RunConfig):
    from .numeric import LienardSystem, validate_series
    from .recurrence import compute_table

    K = cfg.K or 20
    system = LienardSystem(cfg.d, tuple(cfg.lam))
    rep = validate_series(
        system, compute_table(cfg.d, K), K, cfg.radius, cfg.grid or 16, cfg.tol or 1e-12
    )
    if not rep.ok:
        raise CheckFailed({"ok": False, "reason": "series residual above threshold", "report": rep.to_json()})
    return rep if cfg.format == "csv" else rep.to_json()


def _cycles(cfg: RunConfig):
    from .bounds import bernstein_radii, certified_radius
    from .numeric import LienardSystem, complex_zero_report, real_cycle_radii
    from .recurrence import compute_table

    system = LienardSystem(cfg.d, tuple(cfg.lam))
    n = system.n
    r_max = cfg.radius or certified_radius(cfg.lam)
    radii = real_cycle_radii(system, r_max, cfg.grid or 24, cfg.tol or 1e-11)
    data = {
        "lambda": cfg.lam,
        "n": n,
        "r_max": r_max,
        "real_cycles": len(radii),
        "real_cycle_radii": radii,
        "real_bound": max(n - 1, 0),
    }
    ok = len(radii) <= data["real_bound"]
    if n >= 1:
        K = cfg.K or 2 * n + 6
        R = bernstein_radii(n, cfg.lam).r_bernstein
        zr = complex_zero_report(compute_table(cfg.d, K), cfg.lam, K, R)
        data["complex"] = zr.to_json()
        data["complex_bound"] = 2 * n
        ok = ok and zr.count <= 2 * n and zr.guard_ok
    data["ok"] = ok
    if not ok:
        raise CheckFailed({"ok": False, "reason": "cycle bound violated", "report": data})
    return data


def _lins_neto(cfg: RunConfig):
    from .numeric import lins_neto_construct, real_cycle_radii

    system = lins_neto_construct(cfg.n, cfg.epsilon)
    r_max = cfg.radius or 0.95
    radii = real_cycle_radii(system, r_max, cfg.grid or 40, cfg.tol or 1e-11)
    data = {
        "n": cfg.n,
        "epsilon": cfg.epsilon,
        "lambda": list(system.lam),
        "damping": system.damping,
        "target_radii": [j / (cfg.n + 1) for j in range(1, cfg.n + 1)],
        "cycle_radii": radii,
        "cycles": len(radii),
        "ok": len(radii) == cfg.n,
    }
    if not data["ok"]:
        raise CheckFailed({"ok": False, "reason": f"expected {cfg.n} cycles", "report": data})
    return data


HANDLERS = {
    "coeffs": _coeffs,
    "bautin": _bautin,
    "radius": _radius,
    "bernstein": _bernstein,
    "validate": _validate,
    "cycles": _cycles,
    "lins-neto": _lins_neto,
}


def _emit(result, cfg: RunConfig) -> None:
    if hasattr(result, "to_csv"):
        text = result.to_csv()
    else:
        text = json.dumps(result, sort_keys=True, indent=2, default=str) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(cfg: RunConfig) -> int:
    from .numeric import IntegrationError

    try:
        result = HANDLERS[cfg.command](cfg)
    except CheckFailed as exc:
        _emit(exc.payload, cfg)
        return EXIT_CHECK
    except IntegrationError as exc:
        _emit({"ok": False, "reason": f"{type(exc).__name__}: {exc}"}, cfg)
        return EXIT_NUMERIC
    _emit(result, cfg)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            d=args.d,
            K=args.K,
            n=args.n,
            lam=args.lam,
            tol=args.tol,
            radius=args.radius,
            grid=args.grid,
            epsilon=args.epsilon,
            out=args.out,
            format=args.format,
            precision=default_precision(),
        )
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(json.dumps({"ok": False, "reason": str(exc)}) + "\n")
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
