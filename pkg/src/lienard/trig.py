"""Exact trigonometric polynomials with secular terms.

A :class:`TrigPoly` is a finite sum of terms ``q * theta**m * cos(j theta)`` and
``q * theta**m * sin(j theta)`` with rational ``q``. The space is closed under
products, derivatives and antiderivatives, which is all the coefficient
recurrence needs.
"""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, NamedTuple, Optional, Tuple

from .exact import PiPoly, Scalar, pi_decimal, rational_from_json, rational_to_json

COS = "cos"
SIN = "sin"
_KIND_ORDER = {COS: 0, SIN: 1}

Key = Tuple[int, int, str]  # (theta_power, frequency, kind)


class TrigTerm(NamedTuple):
    coeff: Fraction
    theta_power: int
    frequency: int
    kind: str


def _acc(out: Dict[Key, Fraction], m: int, j: int, kind: str, q: Fraction) -> None:
    """Add ``q * theta**m * kind(j theta)`` to ``out``, folding negative frequencies."""
    if j < 0:
        j = -j
        if kind == SIN:
            q = -q
    if kind == SIN and j == 0:
        return
    key = (m, j, kind)
    v = out.get(key, 0) + q
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _sort_key(key: Key):
    m, j, kind = key
    return (m, j, _KIND_ORDER[kind])


class TrigPoly:
    """Immutable exact trigonometric polynomial in canonical form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Dict[Key, Fraction]] = None, _trusted: bool = False):
        if _trusted:
            d = terms
        else:
            d = {}
            for (m, j, kind), q in (terms or {}).items():
                if kind not in _KIND_ORDER:
                    raise ValueError(f"unknown kind {kind!r}")
                if m < 0:
                    raise ValueError("theta power must be non-negative")
                _acc(d, m, j, kind, Fraction(q))
        self._terms = d
        self._hash = None

    # construction ------------------------------------------------------
    @classmethod
    def const(cls, q: Scalar) -> "TrigPoly":
        return cls({(0, 0, COS): Fraction(q)})

    @classmethod
    def cos(cls, j: int = 1, q: Scalar = 1, theta_power: int = 0) -> "TrigPoly":
        return cls({(theta_power, j, COS): Fraction(q)})

    @classmethod
    def sin(cls, j: int = 1, q: Scalar = 1, theta_power: int = 0) -> "TrigPoly":
        return cls({(theta_power, j, SIN): Fraction(q)})

    @classmethod
    def theta(cls, power: int = 1, q: Scalar = 1) -> "TrigPoly":
        return cls({(power, 0, COS): Fraction(q)})

    @classmethod
    def from_terms(cls, terms: Iterable[TrigTerm]) -> "TrigPoly":
        d: Dict[Key, Fraction] = {}
        for t in terms:
            if t.kind not in _KIND_ORDER:
                raise ValueError(f"unknown kind {t.kind!r}")
            _acc(d, t.theta_power, t.frequency, t.kind, Fraction(t.coeff))
        return cls(d, _trusted=True)

    # inspection --------------------------------------------------------
    @property
    def terms(self) -> Tuple[TrigTerm, ...]:
        return tuple(
            TrigTerm(self._terms[k], *k) for k in sorted(self._terms, key=_sort_key)
        )

    def items(self) -> Iterator[Tuple[Key, Fraction]]:
        return iter(self._terms.items())

    def coeff(self, theta_power: int, frequency: int, kind: str) -> Fraction:
        return self._terms.get((theta_power, frequency, kind), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def secular_degree(self) -> int:
        """Largest theta power present (-1 for the zero polynomial)."""
        return max((k[0] for k in self._terms), default=-1)

    @property
    def max_frequency(self) -> int:
        return max((k[1] for k in self._terms), default=0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = TrigPoly.const(other)
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return "TrigPoly(0)"
        parts = []
        for t in self.terms:
            s = f"{t.coeff}"
            if t.theta_power:
                s += f"*t^{t.theta_power}"
            if t.frequency or t.kind == SIN:
                s += f"*{t.kind}({t.frequency}t)"
            parts.append(s)
        return "TrigPoly(" + " + ".join(parts) + ")"

    # ring operations ---------------------------------------------------
    def __add__(self, other) -> "TrigPoly":
        if isinstance(other, (int, Fraction)):
            other = TrigPoly.const(other)
        if not isinstance(other, TrigPoly):
            return NotImplemented
        if len(other._terms) > len(self._terms):
            self, other = other, self
        d = dict(self._terms)
        for k, q in other._terms.items():
            v = d.get(k, 0) + q
            if v:
                d[k] = v
            else:
                d.pop(k, None)
        return TrigPoly(d, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "TrigPoly":
        return TrigPoly({k: -q for k, q in self._terms.items()}, _trusted=True)

    def __sub__(self, other) -> "TrigPoly":
        if isinstance(other, (int, Fraction)):
            other = TrigPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "TrigPoly":
        return (-self) + other

    def scale(self, q: Scalar) -> "TrigPoly":
        q = Fraction(q)
        if q == 0:
            return ZERO
        return TrigPoly({k: v * q for k, v in self._terms.items()}, _trusted=True)

    def __mul__(self, other) -> "TrigPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return tp_mul(self, other)

    __rmul__ = __mul__

    def __call__(self, theta: float) -> float:
        return tp_eval_numeric(self, theta)

    # serialization -----------------------------------------------------
    def to_json(self) -> list:
        return [
            {
                "coeff": rational_to_json(t.coeff),
                "theta_power": t.theta_power,
                "frequency": t.frequency,
                "kind": t.kind,
            }
            for t in self.terms
        ]

    @classmethod
    def from_json(cls, data) -> "TrigPoly":
        return cls.from_terms(
            TrigTerm(rational_from_json(r["coeff"]), r["theta_power"], r["frequency"], r["kind"])
            for r in data
        )


ZERO = TrigPoly({}, _trusted=True)
ONE = TrigPoly.const(1)


def tp_add(a: TrigPoly, b: TrigPoly) -> TrigPoly:
    return a + b


def tp_mul(a: TrigPoly, b: TrigPoly) -> TrigPoly:
    """Product, linearized with the product-to-sum identities."""
    out: Dict[Key, Fraction] = {}
    half = Fraction(1, 2)
    for (m1, j1, k1), q1 in a._terms.items():
        for (m2, j2, k2), q2 in b._terms.items():
            m = m1 + m2
            q = q1 * q2 * half
            if k1 == COS and k2 == COS:
                _acc(out, m, j1 - j2, COS, q)
                _acc(out, m, j1 + j2, COS, q)
            elif k1 == SIN and k2 == SIN:
                _acc(out, m, j1 - j2, COS, q)
                _acc(out, m, j1 + j2, COS, -q)
            elif k1 == SIN:
                _acc(out, m, j1 + j2, SIN, q)
                _acc(out, m, j1 - j2, SIN, q)
            else:
                _acc(out, m, j1 + j2, SIN, q)
                _acc(out, m, j2 - j1, SIN, q)
    return TrigPoly(out, _trusted=True)


@lru_cache(maxsize=None)
def tp_from_monomial(a: int, b: int) -> TrigPoly:
    """``cos(theta)**a * sin(theta)**b`` in the Fourier basis."""
    if a < 0 or b < 0:
        raise ValueError("exponents must be non-negative")
    if a == 0 and b == 0:
        return ONE
    if a > 0:
        return tp_mul(tp_from_monomial(a - 1, b), TrigPoly.cos(1))
    return tp_mul(tp_from_monomial(0, b - 1), TrigPoly.sin(1))


def tp_diff(a: TrigPoly) -> TrigPoly:
    out: Dict[Key, Fraction] = {}
    for (m, j, kind), q in a._terms.items():
        if m:
            _acc(out, m - 1, j, kind, q * m)
        if j:
            if kind == COS:
                _acc(out, m, j, SIN, -q * j)
            else:
                _acc(out, m, j, COS, q * j)
    return TrigPoly(out, _trusted=True)


@lru_cache(maxsize=None)
def _primitive(m: int, j: int, kind: str) -> Tuple[Tuple[Key, Fraction], ...]:
    """An antiderivative of theta**m * kind(j theta), by parts."""
    if j == 0:
        return (((m + 1, 0, COS), Fraction(1, m + 1)),)
    out: Dict[Key, Fraction] = {}
    inv = Fraction(1, j)
    if kind == COS:
        _acc(out, m, j, SIN, inv)
        if m:
            for k, q in _primitive(m - 1, j, SIN):
                _acc(out, *k, -m * inv * q)
    else:
        _acc(out, m, j, COS, -inv)
        if m:
            for k, q in _primitive(m - 1, j, COS):
                _acc(out, *k, m * inv * q)
    return tuple(out.items())


def tp_antideriv(a: TrigPoly) -> TrigPoly:
    """The antiderivative vanishing at theta = 0."""
    out: Dict[Key, Fraction] = {}
    for (m, j, kind), q in a._terms.items():
        for k, p in _primitive(m, j, kind):
            _acc(out, *k, q * p)
    at_zero = sum((q for (m, _j, kind), q in out.items() if m == 0 and kind == COS), Fraction(0))
    if at_zero:
        _acc(out, 0, 0, COS, -at_zero)
    return TrigPoly(out, _trusted=True)


def tp_value_at_zero(a: TrigPoly) -> Fraction:
    return sum(
        (q for (m, _j, kind), q in a._terms.items() if m == 0 and kind == COS), Fraction(0)
    )


def tp_eval_2pi(a: TrigPoly) -> PiPoly:
    """Exact value at theta = 2 pi."""
    c: Dict[int, Fraction] = {}
    for (m, _j, kind), q in a._terms.items():
        if kind == COS:
            c[m] = c.get(m, 0) + q * 2 ** m
    if not c:
        return PiPoly()
    return PiPoly(c.get(i, 0) for i in range(max(c) + 1))


def tp_eval_numeric(a: TrigPoly, theta: float) -> float:
    total = 0.0
    for (m, j, kind), q in a._terms.items():
        f = math.cos(j * theta) if kind == COS else math.sin(j * theta)
        total += float(q) * theta ** m * f
    return total


def tp_sup_norm_bound(a: TrigPoly, precision: int = 30) -> Decimal:
    """Triangle-inequality bound ``sum |q| (2 pi)**m`` for the sup over [0, 2 pi]."""
    if not a._terms:
        return Decimal(0)
    two_pi = 2 * pi_decimal(precision + 10)
    with localcontext() as ctx:
        ctx.prec = precision + 40
        total = Decimal(0)
        for (m, _j, _kind), q in a._terms.items():
            total += Decimal(abs(q.numerator)) / Decimal(q.denominator) * two_pi ** m
        return +total


def _sin_power_leading(b: int) -> Tuple[Key, Fraction]:
    """Highest-frequency term of sin(theta)**b."""
    # sin^b = 2^(1-b) * (-1)^((b-1)/2) sin(b t) + ...  for odd b
    #       = 2^(1-b) * (-1)^(b/2)     cos(b t) + ...  for even b
    if b % 2:
        return (0, b, SIN), Fraction((-1) ** ((b - 1) // 2), 2 ** (b - 1))
    return (0, b, COS), Fraction((-1) ** (b // 2), 2 ** (b - 1))


def tp_as_sin_polynomial(a: TrigPoly) -> Optional[Tuple[Fraction, ...]]:
    """Coefficients ``c`` with ``a(theta) == sum c[i] sin(theta)**i``, or ``None``.

    Triangular elimination from the top frequency down.
    """
    if a.secular_degree > 0:
        return None
    rest = a
    coeffs: Dict[int, Fraction] = {}
    while rest:
        top = rest.max_frequency
        if top == 0:
            coeffs[0] = coeffs.get(0, 0) + rest.coeff(0, 0, COS)
            break
        (key, lead) = _sin_power_leading(top)
        other_kind = COS if key[2] == SIN else SIN
        if rest.coeff(0, top, other_kind):
            return None
        c = rest.coeff(*key) / lead
        coeffs[top] = c
        rest = rest - tp_from_monomial(0, top).scale(c)
    if not coeffs:
        return ()
    n = max(coeffs)
    return tuple(coeffs.get(i, Fraction(0)) for i in range(n + 1))
