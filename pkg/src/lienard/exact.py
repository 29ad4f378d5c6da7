"""Exact scalars: rationals and polynomials in the symbol pi over Q.

Rationals are plain :class:`fractions.Fraction` values. ``PiPoly`` keeps pi
symbolic so that identities such as ``v_3(2 pi) = (pi/4) lambda_2`` can be
checked with ``==``; numbers only appear when :func:`pipoly_eval` is called.
"""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


def rat_arith(a: Scalar, b: Scalar, op: str) -> Fraction:
    """Apply ``op`` (one of ``+ - * /``) exactly.

    Division by zero raises :class:`ZeroDivisionError`.
    """
    a, b = Fraction(a), Fraction(b)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if b == 0:
            raise ZeroDivisionError("division of a rational by zero")
        return a / b
    raise ValueError(f"unknown operator {op!r}")


def rational_to_json(q: Scalar) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def rational_from_json(s: str) -> Fraction:
    return Fraction(s)


# --- pi to arbitrary precision -------------------------------------------

def _arctan_inv(x: int, digits: int) -> int:
    """``arctan(1/x) * 10**digits`` as a truncated integer (Taylor series)."""
    scale = 10 ** digits
    term = scale // x
    total = term
    x2 = x * x
    n = 1
    sign = -1
    while term:
        term //= x2
        n += 2
        total += sign * (term // n)
        sign = -sign
    return total


@lru_cache(maxsize=32)
def pi_decimal(digits: int) -> Decimal:
    """pi to ``digits`` decimal places via Machin's formula.

    pi = 16 arctan(1/5) - 4 arctan(1/239).
    """
    guard = 10
    n = digits + guard
    value = 16 * _arctan_inv(5, n) - 4 * _arctan_inv(239, n)
    with localcontext() as ctx:
        ctx.prec = digits + guard + 5
        return Decimal(value).scaleb(-n)


def _decimal_from_fraction(q: Fraction) -> Decimal:
    return Decimal(q.numerator) / Decimal(q.denominator)


class PiPoly:
    """Polynomial in pi with rational coefficients; ``coeffs[m]`` multiplies pi**m.

    Immutable, canonical (no trailing zeros), hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("PiPoly is immutable")

    @classmethod
    def const(cls, q: Scalar) -> "PiPoly":
        return cls((q,))

    @classmethod
    def pi(cls, q: Scalar = 1, power: int = 1) -> "PiPoly":
        """``q * pi**power``."""
        return cls([0] * power + [q])

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PiPoly.const(other)
        if not isinstance(other, PiPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("PiPoly", self.coeffs))

    def __add__(self, other) -> "PiPoly":
        other = _as_pipoly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return PiPoly(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self) -> "PiPoly":
        return PiPoly(-x for x in self.coeffs)

    def __sub__(self, other) -> "PiPoly":
        other = _as_pipoly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PiPoly":
        return (-self) + other

    def __mul__(self, other) -> "PiPoly":
        if isinstance(other, (int, Fraction)):
            return PiPoly(x * other for x in self.coeffs)
        if not isinstance(other, PiPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return ZERO_PI
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return PiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PiPoly":
        out = ONE_PI
        for _ in range(k):
            out = out * self
        return out

    def __float__(self) -> float:
        return float(pipoly_eval(self, 20))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for m, q in enumerate(self.coeffs):
            if q == 0:
                continue
            parts.append(f"({q})" if m == 0 else f"({q})*pi" + (f"^{m}" if m > 1 else ""))
        return " + ".join(parts)

    def to_json(self) -> list:
        return [rational_to_json(q) for q in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "PiPoly":
        return cls(rational_from_json(s) for s in data)


def _as_pipoly(x):
    if isinstance(x, PiPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return PiPoly.const(x)
    return None


ZERO_PI = PiPoly()
ONE_PI = PiPoly.const(1)


def pipoly_eval(p: PiPoly, precision: int = 30) -> Decimal:
    """Numeric value of ``p`` rounded to ``precision`` decimal places."""
    if precision < 1:
        raise ValueError("precision must be at least 1")
    if p.is_zero():
        return Decimal(0)
    # enough significant digits for the integer part of every partial sum
    work = precision + 20 + 2 * len(p.coeffs) + sum(
        len(str(abs(q.numerator))) for q in p.coeffs
    )
    pi = pi_decimal(work)
    with localcontext() as ctx:
        ctx.prec = 2 * work
        total = Decimal(0)
        power = Decimal(1)
        for q in p.coeffs:
            if q:
                total += _decimal_from_fraction(q) * power
            power *= pi
        return total.quantize(Decimal(1).scaleb(-precision))


class PiFraction:
    """``num / pi**den_power``: a Laurent polynomial in pi.

    Only needed to invert matrices whose diagonal holds rational multiples of pi.
    """

    __slots__ = ("num", "den_power")

    def __init__(self, num: PiPoly | Scalar, den_power: int = 0):
        num = _as_pipoly(num)
        c = list(num.coeffs)
        # cancel common powers of pi
        while den_power > 0 and c and c[0] == 0:
            c.pop(0)
            den_power -= 1
        if den_power < 0:
            c = [Fraction(0)] * (-den_power) + c
            den_power = 0
        num = PiPoly(c)
        if num.is_zero():
            den_power = 0
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den_power", den_power)

    def __setattr__(self, name, value):
        raise AttributeError("PiFraction is immutable")

    @classmethod
    def lift(cls, x) -> "PiFraction":
        if isinstance(x, PiFraction):
            return x
        return cls(x, 0)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _common(self, other: "PiFraction"):
        e = max(self.den_power, other.den_power)
        a = self.num * PiPoly.pi(1, e - self.den_power)
        b = other.num * PiPoly.pi(1, e - other.den_power)
        return a, b, e

    def __add__(self, other) -> "PiFraction":
        other = PiFraction.lift(other)
        a, b, e = self._common(other)
        return PiFraction(a + b, e)

    __radd__ = __add__

    def __neg__(self) -> "PiFraction":
        return PiFraction(-self.num, self.den_power)

    def __sub__(self, other) -> "PiFraction":
        return self + (-PiFraction.lift(other))

    def __rsub__(self, other) -> "PiFraction":
        return PiFraction.lift(other) - self

    def __mul__(self, other) -> "PiFraction":
        other = PiFraction.lift(other)
        return PiFraction(self.num * other.num, self.den_power + other.den_power)

    __rmul__ = __mul__

    def inverse(self) -> "PiFraction":
        """Inverse of a nonzero monomial ``q * pi**m``."""
        nz = [(m, q) for m, q in enumerate(self.num.coeffs) if q != 0]
        if len(nz) != 1:
            raise ValueError(f"only monomials in pi are invertible, got {self.num!r}")
        m, q = nz[0]
        return PiFraction(PiPoly.const(1 / q), m - self.den_power)

    def __eq__(self, other) -> bool:
        try:
            other = PiFraction.lift(other)
        except (TypeError, AttributeError):
            return NotImplemented
        return self.num == other.num and self.den_power == other.den_power

    def __hash__(self) -> int:
        return hash(("PiFraction", self.num, self.den_power))

    def __repr__(self) -> str:
        if self.den_power == 0:
            return repr(self.num)
        return f"[{self.num!r}]/pi^{self.den_power}"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "pi_denominator_power": self.den_power}


def pifraction_eval(p: PiFraction, precision: int = 30) -> Decimal:
    if p.den_power == 0:
        return pipoly_eval(p.num, precision)
    work = precision + 10 + 2 * p.den_power
    with localcontext() as ctx:
        ctx.prec = 3 * work
        value = pipoly_eval(p.num, work) / pi_decimal(work) ** p.den_power
        return value.quantize(Decimal(1).scaleb(-precision))
