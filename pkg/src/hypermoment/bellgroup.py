"""Group-case moment functions on (N, +) and the Faa di Bruno cross-check.

On a group, moment sequences are ``f_alpha(x) = B_alpha(a(x)) m(x)`` with
additive ``a`` and exponential ``m``.  B_alpha is realized through its
generating function: the alpha-th derivative at 0 of ``exp(g_x)``, where
``g_x`` carries the coefficients a_beta(x)/beta!.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .core import S0, S1, MultiIndex, Scalar, binom_int, mi_enumerate
from .errors import IncompleteSeed, OrderMismatch, RankMismatch
from .jets import Jet, compose_basis, jet_add, jet_const, jet_exp, jet_mul, partial_at_zero
from .moments import BinomialViolation, VerificationReport, _normalize_indexed
from .poly import poly_derivative, poly_eval

__all__ = [
    "AdditiveFamily",
    "GroupExponential",
    "group_moment",
    "group_moments",
    "aczel_rank1",
    "multiplicity_partitions",
    "partial_bell",
    "verify_group_binomial",
    "faa_di_bruno_check",
]


@dataclass(frozen=True)
class AdditiveFamily:
    """a_alpha(x) = slopes[alpha] * x for 0 < |alpha| <= order."""

    rank: int
    order: int
    slopes: Mapping[MultiIndex, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        slopes = _normalize_indexed(self.rank, self.order, self.slopes)
        zero = MultiIndex.zero(self.rank)
        if zero in slopes:
            if slopes[zero]:
                raise ValueError("the additive family has no alpha = 0 member")
            del slopes[zero]
        object.__setattr__(self, "slopes", slopes)
        missing = [a for a in mi_enumerate(self.rank, self.order)[1:] if a not in slopes]
        if missing:
            raise IncompleteSeed(missing)

    def value(self, alpha, x: int) -> Scalar:
        return self.slopes[MultiIndex(alpha)] * x


@dataclass(frozen=True)
class GroupExponential:
    """m(x) = base ** x on N."""

    base: Scalar = S1

    def __post_init__(self):
        object.__setattr__(self, "base", Scalar.coerce(self.base))

    def value(self, x: int) -> Scalar:
        return self.base**x


def _generating_jet(a, x):
    keys = mi_enumerate(a.rank, a.order)[1:]
    return Jet(a.rank, a.order, {b: a.value(b, x) / b.factorial() for b in keys})


def group_moments(x: int, a, m: GroupExponential) -> dict[MultiIndex, Scalar]:
    """f_alpha(x) for every |alpha| <= order, sharing one exponential."""
    e = jet_exp(_generating_jet(a, x))
    mx = m.value(x)
    return {alpha: mx * partial_at_zero(e, alpha) for alpha in mi_enumerate(a.rank, a.order)}


def group_moment(alpha, x: int, a, m: GroupExponential) -> Scalar:
    alpha = MultiIndex(alpha)
    if len(alpha) != a.rank:
        raise RankMismatch(f"multi-index rank {len(alpha)} vs family rank {a.rank}")
    if sum(alpha) > a.order:
        raise OrderMismatch(f"|alpha| = {sum(alpha)} exceeds order {a.order}")
    return m.value(x) * partial_at_zero(jet_exp(_generating_jet(a, x)), alpha)


def multiplicity_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All (j_1, ..., j_n) of naturals with sum k * j_k = n.

    >>> sorted(multiplicity_partitions(3))
    [(0, 0, 1), (1, 1, 0), (3, 0, 0)]
    """

    def rec(k, rest):
        # choose j_k for parts of size k, k descending
        if k == 0:
            if rest == 0:
                yield ()
            return
        for j in range(rest // k, -1, -1):
            for tail in rec(k - 1, rest - j * k):
                yield tail + (j,)

    if n == 0:
        yield ()
        return
    yield from rec(n, n)


def aczel_rank1(n: int, x: int, a) -> Scalar:
    """n! sum over partitions prod_k (a_k(x)/k!)^{j_k} / j_k!."""
    if a.rank != 1:
        raise RankMismatch("aczel_rank1 needs a rank-1 family")
    if n > a.order:
        raise OrderMismatch(f"n = {n} exceeds order {a.order}")
    vals = [None] + [a.value((k,), x) / math.factorial(k) for k in range(1, n + 1)]
    total = S0
    for js in multiplicity_partitions(n):
        term = S1
        for k, j in enumerate(js, start=1):
            if j:
                term = term * vals[k] ** j / math.factorial(j)
        total = total + term
    return total * math.factorial(n)


def verify_group_binomial(a, m: GroupExponential, N: int, x_max: int) -> VerificationReport:
    """Check f_alpha(x + y) = sum binom f_beta(x) f_{alpha-beta}(y) for x, y <= x_max."""
    if N > a.order:
        raise OrderMismatch(f"N = {N} exceeds family order {a.order}")
    values = [group_moments(x, a, m) for x in range(2 * x_max + 1)]
    alphas = mi_enumerate(a.rank, N)
    terms = {al: [(b, al - b, binom_int(al, b)) for b in al.below()] for al in alphas}
    report = VerificationReport()
    for x in range(x_max + 1):
        for y in range(x_max + 1):
            for al in alphas:
                lhs = values[x + y][al]
                rhs = S0
                for b, g, c in terms[al]:
                    rhs = rhs + values[x][b] * values[y][g] * c
                report.checked += 1
                if lhs != rhs:
                    report.violations.append(BinomialViolation(al, x, y, lhs, rhs))
    return report


def partial_bell(f: Jet, alpha, k: int) -> Scalar:
    """B_{alpha,k}(f) = alpha! [t^alpha] (f - f(0))^k / k!."""
    alpha = MultiIndex(alpha)
    g = jet_add(f, jet_const(f.rank, f.order, -f.constant))
    power = jet_const(f.rank, f.order, 1)
    for _ in range(k):
        power = jet_mul(power, g)
    return partial_at_zero(power, alpha) / math.factorial(k)


def faa_di_bruno_check(H, n: int, f: Jet, alpha) -> tuple[Scalar, Scalar]:
    """(sum_k P_n^(k)(f(0)) B_{alpha,k}(f), d^alpha (P_n o f)(0)).

    The two entries are computed independently and must agree.
    """
    alpha = MultiIndex(alpha)
    if sum(alpha) > f.order:
        raise OrderMismatch(f"|alpha| = {sum(alpha)} exceeds jet order {f.order}")
    p = H.basis_polynomial(n)
    f0 = f.constant
    decomposed = S0
    for k in range(sum(alpha) + 1):
        dk = poly_derivative(p, k)
        if len(dk) == 1 and not dk[0]:
            break
        decomposed = decomposed + poly_eval(dk, f0) * partial_bell(f, alpha, k)
    direct = partial_at_zero(compose_basis(H, n, f), alpha)
    return decomposed, direct
