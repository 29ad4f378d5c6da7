"""Polynomials in the parameters lambda_1..lambda_d over an exact coefficient ring.

One class serves every coefficient type used in the package: ``TrigPoly``
(the functions v_k(theta)), ``PiPoly`` (the numbers v_k(2 pi)), ``PiFraction``
(entries of inverted matrices) and plain ``Fraction``. Coefficients only need
``+``, ``*``, unary ``-`` and truthiness for zero.
"""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, Optional, Sequence, Tuple

from .exact import PiFraction, PiPoly, pifraction_eval, pipoly_eval
from .trig import TrigPoly, tp_eval_2pi, tp_sup_norm_bound

Monomial = Tuple[int, ...]


class DimensionError(ValueError):
    """Operands live in parameter rings with different ``d``."""


def monomial_order(m: Monomial):
    """Graded lexicographic sort key."""
    return (sum(m), tuple(-e for e in m))


def unit_monomial(d: int, i: int) -> Monomial:
    """Exponent vector of lambda_i (1-based)."""
    if not 1 <= i <= d:
        raise DimensionError(f"lambda_{i} does not exist for d={d}")
    return tuple(1 if k == i - 1 else 0 for k in range(d))


def monomial_key(m: Monomial) -> str:
    return ",".join(str(e) for e in m)


class ParamPoly:
    """Immutable map monomial -> nonzero coefficient."""

    __slots__ = ("d", "_entries")

    def __init__(self, d: int, entries: Optional[Dict[Monomial, object]] = None):
        self.d = d
        clean = {}
        for m, c in (entries or {}).items():
            m = tuple(m)
            if len(m) != d:
                raise DimensionError(f"monomial {m} has length {len(m)}, expected {d}")
            if c:
                clean[m] = c
        self._entries = clean

    @classmethod
    def _raw(cls, d: int, entries: Dict[Monomial, object]) -> "ParamPoly":
        obj = cls.__new__(cls)
        obj.d = d
        obj._entries = entries
        return obj

    @classmethod
    def constant(cls, d: int, c) -> "ParamPoly":
        return cls(d, {(0,) * d: c})

    @classmethod
    def variable(cls, d: int, i: int, c=None) -> "ParamPoly":
        """``c * lambda_i``; ``c`` defaults to the rational 1."""
        return cls(d, {unit_monomial(d, i): Fraction(1) if c is None else c})

    # inspection --------------------------------------------------------
    def items(self) -> Iterator[Tuple[Monomial, object]]:
        """Entries in canonical (graded lex) order."""
        for m in sorted(self._entries, key=monomial_order):
            yield m, self._entries[m]

    def monomials(self):
        return sorted(self._entries, key=monomial_order)

    def coeff(self, m: Monomial, default=None):
        return self._entries.get(tuple(m), default)

    def __len__(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.d == other.d and self._entries == other._entries

    def __hash__(self):
        return hash((self.d, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        if not self._entries:
            return f"ParamPoly(d={self.d}, 0)"
        parts = []
        for m, c in self.items():
            mono = "*".join(
                f"l{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e
            )
            parts.append(f"[{c!r}]" + (f"*{mono}" if mono else ""))
        return f"ParamPoly(d={self.d}, " + " + ".join(parts) + ")"

    # ring operations ---------------------------------------------------
    def _check(self, other: "ParamPoly") -> None:
        if not isinstance(other, ParamPoly):
            raise TypeError(f"expected ParamPoly, got {type(other).__name__}")
        if other.d != self.d:
            raise DimensionError(f"d mismatch: {self.d} vs {other.d}")

    def __add__(self, other: "ParamPoly") -> "ParamPoly":
        self._check(other)
        out = dict(self._entries)
        for m, c in other._entries.items():
            if m in out:
                v = out[m] + c
                if v:
                    out[m] = v
                else:
                    del out[m]
            else:
                out[m] = c
        return ParamPoly._raw(self.d, out)

    def __neg__(self) -> "ParamPoly":
        return ParamPoly._raw(self.d, {m: -c for m, c in self._entries.items()})

    def __sub__(self, other: "ParamPoly") -> "ParamPoly":
        return self + (-other)

    def __mul__(self, other) -> "ParamPoly":
        if not isinstance(other, ParamPoly):
            return self.scale(other)
        self._check(other)
        out: Dict[Monomial, object] = {}
        for m1, c1 in self._entries.items():
            for m2, c2 in other._entries.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = c1 * c2
                if m in out:
                    v = out[m] + v
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return ParamPoly._raw(self.d, out)

    def __rmul__(self, other) -> "ParamPoly":
        return self.scale(other)

    def scale(self, c) -> "ParamPoly":
        """Multiply every coefficient by ``c`` (on the right)."""
        out = {}
        for m, v in self._entries.items():
            w = v * c
            if w:
                out[m] = w
        return ParamPoly._raw(self.d, out)

    def shift(self, m: Monomial) -> "ParamPoly":
        """Multiply by the monomial ``m``."""
        return ParamPoly._raw(
            self.d, {tuple(a + b for a, b in zip(k, m)): c for k, c in self._entries.items()}
        )

    def map_coeffs(self, fn: Callable) -> "ParamPoly":
        return ParamPoly(self.d, {m: fn(c) for m, c in self._entries.items()})

    def filter(self, keep: Callable[[Monomial], bool]) -> "ParamPoly":
        return ParamPoly._raw(self.d, {m: c for m, c in self._entries.items() if keep(m)})

    def substitute(self, lam: Sequence) -> object:
        """Exact specialization: returns ``sum c * prod lam_i**e_i`` in the coefficient ring."""
        if len(lam) != self.d:
            raise DimensionError(f"expected {self.d} parameter values, got {len(lam)}")
        lam = [Fraction(x) for x in lam]
        total = None
        for m, c in self._entries.items():
            w = Fraction(1)
            for x, e in zip(lam, m):
                if e:
                    w *= x ** e
            if not w:
                continue
            term = c * w
            total = term if total is None else total + term
        return total

    # serialization -----------------------------------------------------
    def to_json(self) -> dict:
        return {monomial_key(m): c.to_json() for m, c in self.items()}

    @classmethod
    def from_json(cls, d: int, data: dict, coeff_from_json: Callable) -> "ParamPoly":
        return cls(
            d,
            {tuple(int(e) for e in k.split(",")): coeff_from_json(v) for k, v in data.items()},
        )


ParamTrigSeries = ParamPoly  # ParamPoly with TrigPoly coefficients


def pp_add(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    return a + b


def pp_scale(a: ParamPoly, c) -> ParamPoly:
    return a.scale(c)


def pp_mul(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    return a * b


def coeff_abs(c, precision: int = 30) -> Decimal:
    """Absolute size of one coefficient (sup bound for trigonometric ones)."""
    if isinstance(c, PiPoly):
        return abs(pipoly_eval(c, precision))
    if isinstance(c, TrigPoly):
        return tp_sup_norm_bound(c, precision)
    if isinstance(c, PiFraction):
        return abs(pifraction_eval(c, precision))
    q = Fraction(c)
    with localcontext() as ctx:
        ctx.prec = precision + 30
        return abs(Decimal(q.numerator) / Decimal(q.denominator))


def pp_norm(f: ParamPoly, precision: int = 30) -> Decimal:
    """Sum of the absolute values of the coefficients."""
    with localcontext() as ctx:
        ctx.prec = precision + 30
        return sum((coeff_abs(c, precision) for _, c in f.items()), Decimal(0))


def pp_degree(f: ParamPoly) -> Optional[int]:
    """Total degree; ``None`` stands for the degree of the zero polynomial."""
    if f.is_zero():
        return None
    return max(sum(m) for m in f._entries)


def pp_eval(f: ParamPoly, lam: Sequence[float], precision: int = 30) -> Decimal:
    """Value at a numeric ``lam``: exact rational specialization, then rounding."""
    if len(lam) != f.d:
        raise DimensionError(f"expected {f.d} parameter values, got {len(lam)}")
    value = f.substitute([Fraction(x) for x in lam])
    if value is None:
        return Decimal(0)
    if isinstance(value, PiFraction):
        return pifraction_eval(value, precision)
    if not isinstance(value, PiPoly):
        value = PiPoly.const(value) if isinstance(value, (int, Fraction)) else value
    return pipoly_eval(value, precision)


def abs_lambda(lam: Iterable[float]) -> float:
    """``|lambda| = |lambda_1| + ... + |lambda_d|``."""
    return sum(abs(x) for x in lam)


def eval_2pi(series: ParamPoly) -> ParamPoly:
    """Entrywise value at theta = 2 pi of a ParamTrigSeries."""
    return series.map_coeffs(tp_eval_2pi)


def in_variable_ideal(f: ParamPoly, variables: Iterable[int]) -> bool:
    """Membership in the ideal generated by the listed variables (1-based indices).

    Exact for variable-generated ideals: every monomial must use one of them.
    """
    idx = [i - 1 for i in variables]
    return all(any(m[i] for i in idx) for m in f._entries)
