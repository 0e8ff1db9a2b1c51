"""Truncated multivariate power series ("jets").

A jet of rank r and order N is a polynomial in t_1..t_r whose terms of total
degree above N are discarded.  Multiplication and exponentiation are exact in
rational arithmetic, so derivatives at 0 of compositions with polynomials are
computed without error.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping

from .core import S0, S1, MultiIndex, Scalar, mi_enumerate
from .errors import ExpNonzeroConstant, OrderMismatch, RankMismatch

__all__ = [
    "Jet",
    "jet_const",
    "jet_add",
    "jet_scale",
    "jet_mul",
    "jet_exp",
    "jet_variable",
    "compose_basis",
    "compose_basis_all",
    "partial_at_zero",
]


@lru_cache(maxsize=None)
def _layout(r, N):
    """Positions of multi-indices and the truncated product table between them."""
    keys = mi_enumerate(r, N)
    pos = {k: i for i, k in enumerate(keys)}
    table = []
    for a in keys:
        row = []
        for b in keys:
            s = tuple(x + y for x, y in zip(a, b))
            row.append(pos.get(s, -1))
        table.append(tuple(row))
    return tuple(keys), pos, tuple(table)


class Jet:
    """Immutable truncated power series; missing coefficients are zero."""

    __slots__ = ("rank", "order", "_c")

    def __init__(self, rank: int, order: int, coeffs: Mapping | None = None):
        if isinstance(rank, bool) or not isinstance(rank, int) or rank < 1:
            raise ValueError("jet rank must be a positive integer")
        if isinstance(order, bool) or not isinstance(order, int) or order < 0:
            raise ValueError("jet order must be a natural number")
        clean = {}
        for k, v in (coeffs or {}).items():
            k = MultiIndex(k)
            if len(k) != rank:
                raise RankMismatch(f"key {list(k)} does not have rank {rank}")
            if sum(k) > order:
                raise OrderMismatch(f"key {list(k)} exceeds order {order}")
            v = Scalar.coerce(v)
            if v:
                clean[k] = v
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_c", clean)

    @classmethod
    def _trusted(cls, rank, order, coeffs):
        j = object.__new__(cls)
        object.__setattr__(j, "rank", rank)
        object.__setattr__(j, "order", order)
        object.__setattr__(j, "_c", coeffs)
        return j

    def __setattr__(self, name, value):
        raise AttributeError("Jet is immutable")

    @property
    def coeffs(self) -> dict[MultiIndex, Scalar]:
        """Nonzero coefficients in graded lex order."""
        keys, _, _ = _layout(self.rank, self.order)
        return {k: self._c[k] for k in keys if k in self._c}

    def coeff(self, alpha) -> Scalar:
        return self._c.get(tuple(alpha), S0)

    @property
    def constant(self) -> Scalar:
        return self._c.get((0,) * self.rank, S0)

    def is_zero(self) -> bool:
        return not self._c

    def _check(self, other):
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs rank {other.rank}")
        if self.order != other.order:
            raise OrderMismatch(f"order {self.order} vs order {other.order}")

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return (self.rank, self.order, self._c) == (other.rank, other.order, other._c)

    def __hash__(self):
        return hash((self.rank, self.order, frozenset(self._c.items())))

    def __add__(self, other):
        if isinstance(other, Jet):
            return jet_add(self, other)
        try:
            s = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return jet_add(self, jet_const(self.rank, self.order, s))

    __radd__ = __add__

    def __neg__(self):
        return jet_scale(self, -1)

    def __sub__(self, other):
        if isinstance(other, Jet):
            return jet_add(self, -other)
        try:
            s = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-s)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            return jet_mul(self, other)
        try:
            s = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return jet_scale(self, s)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # scalar divisors only; jets are never divided by jets
        s = Scalar.coerce(other)
        return jet_scale(self, 1 / s)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = jet_const(self.rank, self.order, 1)
        base = self
        while k:
            if k & 1:
                out = jet_mul(out, base)
            base = jet_mul(base, base)
            k >>= 1
        return out

    def __repr__(self):
        terms = ", ".join(f"{list(k)}: {v}" for k, v in self.coeffs.items())
        return f"Jet(rank={self.rank}, order={self.order}, {{{terms}}})"


def jet_const(r: int, N: int, s) -> Jet:
    s = Scalar.coerce(s)
    return Jet._trusted(r, N, {MultiIndex.zero(r): s} if s else {})


def jet_variable(r: int, N: int, i: int) -> Jet:
    """The coordinate t_{i+1} (0-based ``i``)."""
    if N == 0:
        return Jet._trusted(r, N, {})
    return Jet._trusted(r, N, {MultiIndex.unit(r, i): S1})


def jet_add(u: Jet, v: Jet) -> Jet:
    u._check(v)
    out = dict(u._c)
    for k, x in v._c.items():
        if k in out:
            y = out[k] + x
            if y:
                out[k] = y
            else:
                del out[k]
        else:
            out[k] = x
    return Jet._trusted(u.rank, u.order, out)


def jet_scale(u: Jet, s) -> Jet:
    s = Scalar.coerce(s)
    if not s:
        return Jet._trusted(u.rank, u.order, {})
    return Jet._trusted(u.rank, u.order, {k: x * s for k, x in u._c.items()})


def jet_mul(u: Jet, v: Jet) -> Jet:
    """Truncated Cauchy product."""
    u._check(v)
    keys, pos, table = _layout(u.rank, u.order)
    ui = [(pos[k], x) for k, x in u._c.items()]
    vi = [(pos[k], x) for k, x in v._c.items()]
    acc = [None] * len(keys)
    for i, x in ui:
        row = table[i]
        for j, y in vi:
            k = row[j]
            if k < 0:
                continue
            p = x * y
            acc[k] = p if acc[k] is None else acc[k] + p
    out = {keys[k]: w for k, w in enumerate(acc) if w is not None and w}
    return Jet._trusted(u.rank, u.order, out)


def jet_exp(u: Jet) -> Jet:
    """exp(u) for u with zero constant term; the series stops after N terms."""
    if u.constant:
        raise ExpNonzeroConstant(f"constant term {u.constant} is not zero")
    out = jet_const(u.rank, u.order, 1)
    term = out
    for k in range(1, u.order + 1):
        term = jet_scale(jet_mul(term, u), Scalar(1) / k)
        if term.is_zero():
            break
        out = jet_add(out, term)
    return out


def compose_basis_all(H, n_max: int, f: Jet) -> list[Jet]:
    """[P_0 o f, ..., P_{n_max} o f] via the three-term recurrence on jets."""
    one = jet_const(f.rank, f.order, 1)
    out = [one, f]
    for k in range(1, n_max):
        a, b, c = H.coefficients(k)
        nxt = jet_mul(f, out[k])
        if b:
            nxt = jet_add(nxt, jet_scale(out[k], -b))
        if a:
            nxt = jet_add(nxt, jet_scale(out[k - 1], -a))
        out.append(jet_scale(nxt, 1 / c))
    return out[: n_max + 1]


def compose_basis(H, n: int, f: Jet) -> Jet:
    """P_n o f."""
    return compose_basis_all(H, n, f)[n]


def partial_at_zero(u: Jet, alpha) -> Scalar:
    """Mixed partial derivative d^alpha u evaluated at t = 0."""
    alpha = MultiIndex(alpha)
    if len(alpha) != u.rank:
        raise RankMismatch(f"multi-index rank {len(alpha)} vs jet rank {u.rank}")
    if sum(alpha) > u.order:
        raise OrderMismatch(f"|alpha| = {sum(alpha)} exceeds jet order {u.order}")
    c = u._c.get(alpha)
    if c is None:
        return S0
    return c * alpha.factorial()
