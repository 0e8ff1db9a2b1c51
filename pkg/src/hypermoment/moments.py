"""Moment function sequences of rank r on polynomial hypergroups.

A seed fixes the values phi_alpha(1) for |alpha| <= N.  With

    f(t) = sum_alpha phi_alpha(1) / alpha! * t^alpha

the whole sequence is phi_alpha(n) = d^alpha (P_n o f)(0), and it satisfies

    phi_alpha(n * m) = sum_{beta <= alpha} binom(alpha, beta) phi_beta(n) phi_{alpha-beta}(m)

where the left side is integrated against the convolution delta_n * delta_m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .core import S0, S1, MultiIndex, Scalar, binom_int, mi_enumerate
from .errors import IncompleteSeed, OrderMismatch, RankMismatch, TableRangeExceeded
from .hypergroup import Hypergroup
from .jets import Jet, compose_basis_all, partial_at_zero

__all__ = [
    "MomentSeed",
    "MomentTable",
    "BinomialViolation",
    "VerificationReport",
    "seed_jet",
    "moment_table",
    "exponential_values",
    "verify_binomial",
    "sine_check",
    "rank1_table",
]


def _normalize_indexed(rank, order, values):
    out = {}
    for k, v in values.items():
        k = MultiIndex(k)
        if len(k) != rank:
            raise RankMismatch(f"multi-index {list(k)} does not have rank {rank}")
        if sum(k) > order:
            raise OrderMismatch(f"multi-index {list(k)} exceeds order {order}")
        out[k] = Scalar.coerce(v)
    return out


@dataclass(frozen=True)
class MomentSeed:
    """Prescribed values phi_alpha(1) for every |alpha| <= order."""

    rank: int
    order: int
    values: Mapping[MultiIndex, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        if self.rank < 1 or self.order < 0:
            raise ValueError("seed needs rank >= 1 and order >= 0")
        object.__setattr__(self, "values", _normalize_indexed(self.rank, self.order, self.values))

    def missing(self) -> list[MultiIndex]:
        return [a for a in mi_enumerate(self.rank, self.order) if a not in self.values]

    def require_complete(self) -> None:
        missing = self.missing()
        if missing:
            raise IncompleteSeed(missing)

    def __getitem__(self, alpha) -> Scalar:
        return self.values[MultiIndex(alpha)]


class MomentTable:
    """Values phi_alpha(n) for |alpha| <= order and 0 <= n <= n_max."""

    def __init__(self, rank: int, order: int, n_max: int, values: Mapping):
        self.rank = rank
        self.order = order
        self.n_max = n_max
        self.alphas = mi_enumerate(rank, order)
        rows = {a: [None] * (n_max + 1) for a in self.alphas}
        for (alpha, n), v in values.items():
            alpha = MultiIndex(alpha)
            if alpha not in rows:
                raise OrderMismatch(f"multi-index {list(alpha)} outside rank {rank}, order {order}")
            if not 0 <= n <= n_max:
                raise TableRangeExceeded(f"n={n} outside 0..{n_max}")
            rows[alpha][n] = Scalar.coerce(v)
        missing = [a for a, row in rows.items() if any(v is None for v in row)]
        if missing:
            raise IncompleteSeed(missing)
        self._rows = rows

    @classmethod
    def _from_rows(cls, rank, order, n_max, rows):
        t = cls.__new__(cls)
        t.rank, t.order, t.n_max = rank, order, n_max
        t.alphas = mi_enumerate(rank, order)
        t._rows = rows
        return t

    def value(self, alpha, n: int) -> Scalar:
        if not 0 <= n <= self.n_max:
            raise TableRangeExceeded(f"n={n} outside 0..{self.n_max}")
        return self._rows[MultiIndex(alpha)][n]

    def __getitem__(self, key) -> Scalar:
        alpha, n = key
        return self.value(alpha, n)

    def row(self, alpha) -> list[Scalar]:
        return list(self._rows[MultiIndex(alpha)])

    def column(self, n: int) -> dict[MultiIndex, Scalar]:
        return {a: self.value(a, n) for a in self.alphas}

    def entries(self) -> Iterator[tuple[MultiIndex, int, Scalar]]:
        """(alpha, n, value) in graded lex order on alpha, then n."""
        for a in self.alphas:
            for n, v in enumerate(self._rows[a]):
                yield a, n, v

    def with_value(self, alpha, n: int, value) -> "MomentTable":
        """Copy with a single entry replaced."""
        rows = {a: list(r) for a, r in self._rows.items()}
        rows[MultiIndex(alpha)][n] = Scalar.coerce(value)
        return MomentTable._from_rows(self.rank, self.order, self.n_max, rows)

    def __eq__(self, other):
        if not isinstance(other, MomentTable):
            return NotImplemented
        return (self.rank, self.order, self.n_max, self._rows) == (
            other.rank,
            other.order,
            other.n_max,
            other._rows,
        )

    def __repr__(self):
        return f"MomentTable(rank={self.rank}, order={self.order}, n_max={self.n_max})"


def seed_jet(seed: MomentSeed) -> Jet:
    """f(t) = sum phi_alpha(1)/alpha! t^alpha."""
    seed.require_complete()
    return Jet(
        seed.rank,
        seed.order,
        {a: seed.values[a] / a.factorial() for a in mi_enumerate(seed.rank, seed.order)},
    )


def moment_table(H: Hypergroup, seed: MomentSeed, n_max: int) -> MomentTable:
    f = seed_jet(seed)
    jets = compose_basis_all(H, n_max, f)
    alphas = mi_enumerate(seed.rank, seed.order)
    rows = {a: [partial_at_zero(J, a) for J in jets] for a in alphas}
    return MomentTable._from_rows(seed.rank, seed.order, n_max, rows)


def exponential_values(H: Hypergroup, lam, n_max: int) -> list[Scalar]:
    """n -> P_n(lam) for n = 0..n_max."""
    return H.eval_basis_all(n_max, lam)


def rank1_table(H: Hypergroup, seed: MomentSeed, n_max: int) -> MomentTable:
    """Rank-1 generator on plain coefficient lists, independent of :mod:`jets`."""
    if seed.rank != 1:
        raise RankMismatch(f"rank1_table needs a rank-1 seed, got rank {seed.rank}")
    seed.require_complete()
    N = seed.order
    f = [seed.values[MultiIndex((j,))] / math.factorial(j) for j in range(N + 1)]

    def mul(p, q):
        out = [S0] * (N + 1)
        for i, x in enumerate(p):
            if x:
                for j in range(N + 1 - i):
                    out[i + j] = out[i + j] + x * q[j]
        return out

    series = [[S1] + [S0] * N, list(f)]
    for k in range(1, n_max):
        a, b, c = H.coefficients(k)
        fp = mul(f, series[k])
        series.append(
            [(fp[i] - a * series[k - 1][i] - b * series[k][i]) / c for i in range(N + 1)]
        )
    rows = {
        MultiIndex((j,)): [s[j] * math.factorial(j) for s in series[: n_max + 1]]
        for j in range(N + 1)
    }
    return MomentTable._from_rows(1, N, n_max, rows)


@dataclass(frozen=True)
class BinomialViolation:
    alpha: MultiIndex
    n: int
    m: int
    lhs: Scalar
    rhs: Scalar


@dataclass
class VerificationReport:
    checked: int = 0
    violations: list[BinomialViolation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.passed


def _binomial_terms(alpha):
    return [(beta, alpha - beta, binom_int(alpha, beta)) for beta in alpha.below()]


def _check(H, table, n_max, m_max, alphas: Iterable[MultiIndex]) -> VerificationReport:
    if n_max < 0 or m_max < 0:
        raise ValueError("n_max and m_max must be natural numbers")
    if n_max + m_max > table.n_max:
        raise TableRangeExceeded(
            f"checking n <= {n_max}, m <= {m_max} reaches index {n_max + m_max}, "
            f"but the table stops at {table.n_max}"
        )
    rows = table._rows
    plan = [(a, rows[a], [(rows[b], rows[g], c) for b, g, c in _binomial_terms(a)]) for a in alphas]
    report = VerificationReport()
    for n in range(n_max + 1):
        for m in range(m_max + 1):
            conv = list(H.linearize(n, m).items())
            for alpha, row, terms in plan:
                lhs = S0
                for k, w in conv:
                    lhs = lhs + w * row[k]
                rhs = S0
                for rb, rg, c in terms:
                    p = rb[n] * rg[m]
                    rhs = rhs + (p * c if c != 1 else p)
                report.checked += 1
                if lhs != rhs:
                    report.violations.append(BinomialViolation(alpha, n, m, lhs, rhs))
    return report


def verify_binomial(H: Hypergroup, table: MomentTable, n_max: int, m_max: int) -> VerificationReport:
    """Exhaustively check the binomial convolution identity; collects every failure."""
    return _check(H, table, n_max, m_max, table.alphas)


def sine_check(H: Hypergroup, table: MomentTable, n_max: int | None = None, m_max: int | None = None):
    """The |alpha| = 1 slice: phi(n*m) = phi(n) phi_0(m) + phi_0(n) phi(m)."""
    if n_max is None:
        n_max = table.n_max // 2
    if m_max is None:
        m_max = table.n_max - n_max
    return _check(H, table, n_max, m_max, [a for a in table.alphas if sum(a) == 1])
