"""Bautin ideal of the Lienard family: membership, decomposition, certificate.

The ideal generated by the return-map coefficients f_k = v_k(2 pi) is
(lambda_2, lambda_4, ..., lambda_2n) with n = d // 2. Membership in an ideal
generated by variables is a monomial test, so no Groebner machinery is needed.
The generation claim is certified by writing f_3, f_5, ..., f_{2n+1} as
(C + Delta) applied to (lambda_2, ..., lambda_2n) and inverting C + Delta
exactly with a finite Neumann series.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .exact import PiFraction, PiPoly
from .paramring import ParamPoly, in_variable_ideal, monomial_key, unit_monomial
from .recurrence import CoefficientTable, compute_table, wallis_c


class MembershipError(ValueError):
    """A polynomial expected in the ideal is not a member."""


class StructureError(ValueError):
    """The matrix relation has a nonzero entry where none is allowed."""


class NilpotencyError(StructureError):
    pass


@dataclass(frozen=True)
class IdealSpec:
    """Ideal generated by the even-index parameters lambda_2, ..., lambda_2n."""

    d: int

    @property
    def n(self) -> int:
        return self.d // 2

    @property
    def generators(self) -> Tuple[int, ...]:
        return tuple(range(2, 2 * self.n + 1, 2))


def ideal_member(f: ParamPoly, spec: IdealSpec) -> bool:
    if f.d != spec.d:
        raise ValueError(f"d mismatch: {f.d} vs {spec.d}")
    return in_variable_ideal(f, spec.generators)


def hironaka_decompose(
    f: ParamPoly, spec: IdealSpec, priority: str = "lowest"
) -> List[ParamPoly]:
    """Return phi_1..phi_n with f = sum phi_i lambda_{2i}.

    Each monomial goes to one generator dividing it: the smallest index with
    ``priority="lowest"`` (collect lambda_2 first, then lambda_4, ...) or the
    largest with ``priority="highest"``.
    """
    if not ideal_member(f, spec):
        raise MembershipError("polynomial is not in the even-parameter ideal")
    return _decompose(f, spec.n, priority)


def _decompose(f: ParamPoly, n: int, priority: str) -> List[ParamPoly]:
    if priority not in ("lowest", "highest"):
        raise ValueError(f"unknown priority {priority!r}")
    order = range(1, n + 1) if priority == "lowest" else range(n, 0, -1)
    parts: List[Dict] = [dict() for _ in range(n)]
    for m, c in f.items():
        for i in order:
            if m[2 * i - 1]:
                q = list(m)
                q[2 * i - 1] -= 1
                parts[i - 1][tuple(q)] = c
                break
        else:
            raise MembershipError(f"monomial {monomial_key(m)} uses no generator")
    return [ParamPoly(f.d, p) for p in parts]


def recompose(phis: Sequence[ParamPoly], spec: IdealSpec) -> ParamPoly:
    total = ParamPoly(spec.d)
    for i, phi in enumerate(phis, start=1):
        total = total + phi.shift(unit_monomial(spec.d, 2 * i))
    return total


# --- matrices over the parameter ring ---------------------------------------

@dataclass(frozen=True)
class ParamMatrix:
    d: int
    rows: Tuple[Tuple[ParamPoly, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    def __post_init__(self):
        if any(len(r) != len(self.rows) for r in self.rows):
            raise ValueError("matrix must be square")

    def __getitem__(self, ij) -> ParamPoly:
        i, j = ij
        return self.rows[i][j]

    @classmethod
    def from_fn(cls, d: int, n: int, fn) -> "ParamMatrix":
        return cls(d, tuple(tuple(fn(i, j) for j in range(n)) for i in range(n)))

    @classmethod
    def identity(cls, d: int, n: int, one=None) -> "ParamMatrix":
        one = PiFraction(1) if one is None else one
        return cls.from_fn(
            d, n, lambda i, j: ParamPoly.constant(d, one) if i == j else ParamPoly(d)
        )

    def __add__(self, other: "ParamMatrix") -> "ParamMatrix":
        return ParamMatrix.from_fn(self.d, self.n, lambda i, j: self[i, j] + other[i, j])

    def __sub__(self, other: "ParamMatrix") -> "ParamMatrix":
        return ParamMatrix.from_fn(self.d, self.n, lambda i, j: self[i, j] - other[i, j])

    def __neg__(self) -> "ParamMatrix":
        return ParamMatrix.from_fn(self.d, self.n, lambda i, j: -self[i, j])

    def __matmul__(self, other: "ParamMatrix") -> "ParamMatrix":
        n = self.n

        def entry(i, j):
            acc = ParamPoly(self.d)
            for k in range(n):
                if self[i, k] and other[k, j]:
                    acc = acc + self[i, k] * other[k, j]
            return acc

        return ParamMatrix.from_fn(self.d, n, entry)

    def map(self, fn) -> "ParamMatrix":
        return ParamMatrix.from_fn(self.d, self.n, lambda i, j: fn(self[i, j]))

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.rows for e in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParamMatrix):
            return NotImplemented
        return self.n == other.n and all(
            self[i, j] == other[i, j] for i in range(self.n) for j in range(self.n)
        )

    def to_json(self) -> list:
        return [[e.to_json() for e in row] for row in self.rows]


def _lift(p: ParamPoly) -> ParamPoly:
    return p.map_coeffs(PiFraction.lift)


def build_matrix_relation(table: CoefficientTable, n: int) -> Tuple[ParamMatrix, ParamMatrix]:
    """Split the rows f_{2j+1} = sum_i A_ji lambda_{2i} into A = C + Delta.

    Monomials are assigned to their highest even generator, so the diagonal
    of A is the constant c_{2j+1} and Delta is strictly lower triangular
    (row j only uses lambda_{2i} with i < j).
    """
    if table.K < 2 * n + 1 or table.d < 2 * n:
        raise ValueError("need K >= 2n+1 and d >= 2n")
    d = table.d
    rows = []
    for j in range(1, n + 1):
        rows.append(tuple(_decompose(table.f(2 * j + 1), n, "highest")))
    full = ParamMatrix(d, tuple(rows))
    C = ParamMatrix.from_fn(
        d, n, lambda i, j: ParamPoly.constant(d, wallis_c(i + 1)) if i == j else ParamPoly(d)
    )
    delta = full - C
    for i in range(n):
        if not delta[i, i].is_zero():
            raise StructureError(
                f"diagonal entry ({i + 1},{i + 1}) is {full[i, i]!r}, expected {wallis_c(i + 1)!r}"
            )
        for j in range(i + 1, n):
            if not delta[i, j].is_zero():
                raise StructureError(
                    f"entry ({i + 1},{j + 1}): lambda_{2 * (j + 1)} appears in f_{2 * i + 3}"
                )
    return C, delta


def invert_matrix_relation(C: ParamMatrix, delta: ParamMatrix) -> ParamMatrix:
    """(C + Delta)^-1 = [sum_{m<n} (-C^-1 Delta)^m] C^-1, computed exactly."""
    d, n = C.d, C.n
    inv_diag = []
    for i in range(n):
        c = C[i, i]
        if len(c) != 1 or c.coeff((0,) * d) is None:
            raise StructureError(f"C[{i + 1},{i + 1}] is not a nonzero constant")
        inv_diag.append(PiFraction.lift(c.coeff((0,) * d)).inverse())
    for i in range(n):
        for j in range(n):
            if i != j and not C[i, j].is_zero():
                raise StructureError("C must be diagonal")
    c_inv = ParamMatrix.from_fn(
        d, n, lambda i, j: ParamPoly.constant(d, inv_diag[i]) if i == j else ParamPoly(d)
    )
    N = c_inv @ delta.map(_lift)
    # nilpotency: N^n must vanish
    power = ParamMatrix.identity(d, n)
    terms = []
    for _ in range(n):
        terms.append(power)
        power = power @ (-N)
    if not power.is_zero():
        raise NilpotencyError("C^-1 Delta is not nilpotent of order n")
    series = terms[0]
    for t in terms[1:]:
        series = series + t
    return series @ c_inv


# --- certificate ------------------------------------------------------------

@dataclass
class BautinCertificate:
    d: int
    n: int
    K: int
    B: int
    ok: bool
    membership: Dict[int, bool]
    recovered: Dict[int, bool]
    strict_growth: Dict[int, bool]
    diagonal: List[PiPoly]
    matrix: ParamMatrix
    inverse: ParamMatrix
    failures: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "K": self.K,
            "B": self.B,
            "ok": self.ok,
            "generators": [f"lambda_{2 * i}" for i in range(1, self.n + 1)],
            "diagonal_constants": [c.to_json() for c in self.diagonal],
            "matrix": self.matrix.to_json(),
            "inverse": self.inverse.to_json(),
            "membership": {str(k): v for k, v in self.membership.items()},
            "recovered": {f"lambda_{2 * i}": v for i, v in self.recovered.items()},
            "strict_growth": {str(k): v for k, v in self.strict_growth.items()},
            "failures": self.failures,
        }


def bautin_report(d: int, K: int, table: CoefficientTable | None = None) -> BautinCertificate:
    """Certify that f_3, f_5, ..., f_{2n+1} generate the Bautin ideal and B = 2n + 1.

    Checks, all exact:
      * every f_k, 2 <= k <= K, lies in (lambda_2, ..., lambda_2n);
      * f_k lies in the smaller ideal (lambda_2, ..., lambda_{2 floor((k-1)/2)});
      * f_{2j+1} is not in (lambda_2, ..., lambda_{2j-2}), so the ideal chain grows
        at every odd order up to 2n + 1;
      * each lambda_{2i} equals sum_j M_ij f_{2j+1} with M = (C + Delta)^-1.
    The chain is therefore stationary exactly from k = 2n + 1.
    """
    n = d // 2
    if K < 2 * n + 2:
        raise ValueError("need K >= 2n+2")
    if table is None:
        table = compute_table(d, K)
    spec = IdealSpec(d)
    failures: List[str] = []

    membership = {}
    for k in range(2, K + 1):
        member = ideal_member(table.f(k), spec)
        membership[k] = member
        if not member:
            failures.append(f"f_{k} is not in the even ideal")
        lower = range(2, 2 * ((k - 1) // 2) + 1, 2)
        if not in_variable_ideal(table.f(k), lower):
            failures.append(f"f_{k} uses an even generator beyond lambda_{2 * ((k - 1) // 2)}")

    strict = {}
    for j in range(1, n + 1):
        grows = not in_variable_ideal(table.f(2 * j + 1), range(2, 2 * j - 1, 2))
        strict[2 * j + 1] = grows
        if not grows:
            failures.append(f"f_{2 * j + 1} adds no new generator")

    if n:
        C, delta = build_matrix_relation(table, n)
        M = invert_matrix_relation(C, delta)
        if M @ (C + delta).map(_lift) != ParamMatrix.identity(d, n):
            failures.append("M (C + Delta) != identity")
    else:
        C = delta = M = ParamMatrix(d, ())

    recovered = {}
    for i in range(1, n + 1):
        acc = ParamPoly(d)
        for j in range(1, n + 1):
            if M[i - 1, j - 1]:
                acc = acc + M[i - 1, j - 1] * table.f(2 * j + 1)
        ok = acc == ParamPoly.variable(d, 2 * i, PiFraction(1))
        recovered[i] = ok
        if not ok:
            failures.append(f"lambda_{2 * i} not recovered from f_3..f_{2 * n + 1}")

    full = C + delta if n else C
    return BautinCertificate(
        d=d,
        n=n,
        K=K,
        B=2 * n + 1,
        ok=not failures,
        membership=membership,
        recovered=recovered,
        strict_growth=strict,
        diagonal=[wallis_c(j) for j in range(1, n + 1)],
        matrix=full,
        inverse=M,
        failures=failures,
    )


def bautin_index(cert: BautinCertificate) -> int:
    """First order from which the ideal chain (f_2..f_k) no longer grows."""
    if not cert.ok:
        raise ValueError("certificate failed; index not established")
    grows_at = [k for k, g in cert.strict_growth.items() if g]
    return max(grows_at, default=1)

