"""Polynomial hypergroups on N built from three-term recurrences.

The basis polynomials satisfy ``P_0 = 1``, ``P_1 = x`` and

    x P_n = a_n P_{n-1} + b_n P_n + c_n P_{n+1},

and the convolution of point masses is read off the linearization
``P_n P_m = sum_k c(n, m, k) P_k``.
"""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass, field
from typing import Callable, Sequence

from ._backend import ONE, ZERO, rational
from .core import S0, S1, Measure, Scalar
from .errors import (
    CoefficientUnavailable,
    InvalidSpec,
    NegativeLinearization,
    UnknownCatalogEntry,
)
from .poly import poly_mul, trim

__all__ = [
    "RecurrenceSpec",
    "Hypergroup",
    "ValidationReport",
    "Violation",
    "CATALOG",
    "catalog",
    "validate_spec",
    "linearize_by_monomials",
]


def _q(n, d):
    return Scalar(rational(n, d))


def _chebyshev1(n):
    if n == 0:
        return S0, S0, S1
    half = _q(1, 2)
    return half, S0, half


def _chebyshev2(n):
    return _q(n, 2 * (n + 1)), S0, _q(n + 2, 2 * (n + 1))


def _legendre(n):
    return _q(n, 2 * n + 1), S0, _q(n + 1, 2 * n + 1)


# name -> (rule, human-readable formulas)
CATALOG: dict[str, tuple[Callable[[int], tuple], str]] = {
    "chebyshev1": (_chebyshev1, "c_0 = 1; a_n = c_n = 1/2, b_n = 0 for n >= 1"),
    "chebyshev2": (_chebyshev2, "a_n = n/(2(n+1)), b_n = 0, c_n = (n+2)/(2(n+1))"),
    "legendre": (_legendre, "a_n = n/(2n+1), b_n = 0, c_n = (n+1)/(2n+1)"),
}


@dataclass(frozen=True)
class RecurrenceSpec:
    """Coefficient sequences ``(a_n, b_n, c_n)``.

    Catalog entries carry a closed-form ``rule``; custom entries carry
    explicit tables valid up to ``n_max``.
    """

    kind: str
    n_max: int | None = None
    a: tuple = ()
    b: tuple = ()
    c: tuple = ()
    rule: Callable[[int], tuple] | None = field(default=None, compare=False, repr=False)

    @classmethod
    def from_tables(cls, a: Sequence, b: Sequence, c: Sequence, n_max: int | None = None):
        a = tuple(Scalar.coerce(x) for x in a)
        b = tuple(Scalar.coerce(x) for x in b)
        c = tuple(Scalar.coerce(x) for x in c)
        if n_max is None:
            n_max = min(len(a), len(b), len(c)) - 1
        if n_max < 0:
            raise ValueError("n_max must be a natural number")
        return cls(kind="custom", n_max=n_max, a=a, b=b, c=c)

    @property
    def is_custom(self) -> bool:
        return self.rule is None

    @property
    def key(self) -> str:
        """Stable identifier, used to name persisted caches."""
        if not self.is_custom:
            return self.kind
        blob = json.dumps(
            [self.n_max, [str(x) for x in self.a], [str(x) for x in self.b], [str(x) for x in self.c]]
        )
        return "custom-" + hashlib.sha256(blob.encode()).hexdigest()[:16]

    def coefficients(self, n: int) -> tuple[Scalar, Scalar, Scalar]:
        if n < 0:
            raise ValueError("index must be a natural number")
        if self.rule is not None:
            return self.rule(n)
        if n > self.n_max or n >= min(len(self.a), len(self.b), len(self.c)):
            raise CoefficientUnavailable(
                f"custom recurrence has coefficients only up to n={self._available()}; n={n} requested"
            )
        return self.a[n], self.b[n], self.c[n]

    def _available(self):
        return min(self.n_max, min(len(self.a), len(self.b), len(self.c)) - 1)


def catalog(name: str) -> RecurrenceSpec:
    try:
        rule, _ = CATALOG[name]
    except KeyError:
        raise UnknownCatalogEntry(
            f"unknown hypergroup {name!r}; choose from {', '.join(CATALOG)}"
        ) from None
    return RecurrenceSpec(kind=name, rule=rule)


@dataclass(frozen=True)
class Violation:
    n: int
    rule: str
    message: str


@dataclass
class ValidationReport:
    n_max: int
    violations: list[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid


def validate_spec(spec: RecurrenceSpec, n_max: int) -> ValidationReport:
    """Check the hypergroup axioms on the coefficients for every n <= n_max."""
    report = ValidationReport(n_max=n_max)
    bad = report.violations.append
    for n in range(n_max + 1):
        a, b, c = spec.coefficients(n)
        if not (a.is_real and b.is_real and c.is_real):
            bad(Violation(n, "real", f"coefficients at n={n} are not real"))
            continue
        if n == 0:
            if a != 0:
                bad(Violation(0, "a_0 = 0", "a_0 = 0 fails"))
            if b != 0:
                bad(Violation(0, "b_0 = 0", "b_0 = 0 fails"))
        elif not a > 0:
            bad(Violation(n, "a_n > 0", f"a_{n} > 0 fails"))
        if not c > 0:
            bad(Violation(n, "c_n > 0", f"c_{n} > 0 fails"))
        if not b >= 0:
            bad(Violation(n, "b_n >= 0", f"b_{n} ≥ 0 fails"))
        if a + b + c != 1:
            bad(Violation(n, "a_n + b_n + c_n = 1", f"sum ≠ 1 at n={n}"))
    return report


class Hypergroup:
    """Polynomial hypergroup with cached basis polynomials and linearizations.

    Caches fill under a lock, so concurrent callers see the same results
    they would get running one after another.
    """

    def __init__(self, spec: RecurrenceSpec | str, *, validate: bool = True):
        if isinstance(spec, str):
            spec = catalog(spec)
        self.spec = spec
        if validate and spec.is_custom:
            report = validate_spec(spec, spec._available())
            if not report.valid:
                msgs = "; ".join(v.message for v in report.violations)
                raise InvalidSpec(f"not a polynomial hypergroup: {msgs}", report.violations)
        self._lock = threading.RLock()
        self._coef: list[tuple] = []
        self._basis: list[list[Scalar]] = [[S1], [S0, S1]]
        self._rows: dict[int, list[list]] = {}
        self._lin: dict[tuple[int, int], Measure] = {}
        self._negative: dict[tuple[int, int], tuple] = {}

    @property
    def name(self) -> str:
        return self.spec.key

    def __repr__(self):
        return f"Hypergroup({self.spec.kind!r})"

    # -- coefficients -----------------------------------------------------
    def coefficients(self, n: int) -> tuple[Scalar, Scalar, Scalar]:
        coef = self._coef
        if n < len(coef):
            return coef[n]
        with self._lock:
            while len(coef) <= n:
                coef.append(self.spec.coefficients(len(coef)))
        return coef[n]

    def _real_coefficients(self, upto):
        self.coefficients(upto)
        return [(a.re, b.re, c.re) for a, b, c in self._coef[: upto + 1]]

    # -- basis --------------------------------------------------------------
    def basis_polynomial(self, n: int) -> list[Scalar]:
        """Monomial coefficients of P_n, lowest degree first."""
        basis = self._basis
        if n >= len(basis):
            with self._lock:
                while len(basis) <= n:
                    k = len(basis) - 1
                    a, b, c = self.coefficients(k)
                    pk, pkm1 = basis[k], basis[k - 1]
                    nxt = [S0] + list(pk)
                    for i, v in enumerate(pk):
                        nxt[i] = nxt[i] - b * v
                    for i, v in enumerate(pkm1):
                        nxt[i] = nxt[i] - a * v
                    basis.append(trim(v / c for v in nxt))
        return list(basis[n])

    def eval_basis(self, n: int, lam) -> Scalar:
        """P_n(lam) by running the recurrence on values."""
        return self.eval_basis_all(n, lam)[n]

    def eval_basis_all(self, n_max: int, lam) -> list[Scalar]:
        lam = Scalar.coerce(lam)
        vals = [S1, lam]
        for k in range(1, n_max):
            a, b, c = self.coefficients(k)
            vals.append((lam * vals[k] - a * vals[k - 1] - b * vals[k]) / c)
        return vals[: n_max + 1]

    # -- linearization --------------------------------------------------------
    def linearize(self, n: int, m: int) -> Measure:
        """delta_n * delta_m = sum_k c(n, m, k) delta_k."""
        if n < 0 or m < 0:
            raise ValueError("indices must be natural numbers")
        key = (n, m) if n >= m else (m, n)
        hit = self._lin.get(key)
        if hit is not None:
            return hit
        with self._lock:
            if key not in self._lin and key not in self._negative:
                self._extend_rows(*key)
            if key in self._negative:
                k, w = self._negative[key]
                raise NegativeLinearization(n, m, k, w)
            return self._lin[key]

    def _extend_rows(self, n, m):
        # Row j holds c(n, j, .) densely on [n - j, n + j].
        rows = self._rows.setdefault(n, [])
        coef = self._real_coefficients(n + m)
        if not rows:
            rows.append([ONE])
            self._store(n, 0, rows[0])
        while len(rows) <= m:
            j = len(rows) - 1
            cur = rows[j]
            lo = n - j
            out = [ZERO] * (len(cur) + 2)
            # multiply by x: delta_k -> a_k delta_{k-1} + b_k delta_k + c_k delta_{k+1}
            for i, w in enumerate(cur):
                if not w:
                    continue
                a, b, c = coef[lo + i]
                out[i] += a * w
                out[i + 1] += b * w
                out[i + 2] += c * w
            aj, bj, cj = coef[j]
            if bj:
                for i, w in enumerate(cur):
                    out[i + 1] -= bj * w
            if j > 0 and aj:
                for i, w in enumerate(rows[j - 1]):
                    out[i + 2] -= aj * w
            if cj != 1:
                out = [w / cj for w in out]
            rows.append(out)
            self._store(n, j + 1, out)

    def _store(self, n, j, row):
        lo = n - j
        atoms = {}
        neg = None
        for i, w in enumerate(row):
            if w:
                if w < 0 and neg is None:
                    neg = (lo + i, Scalar(w))
                atoms[lo + i] = Scalar(w)
        if neg is not None:
            self._negative[(n, j)] = neg
        else:
            self._lin[(n, j)] = Measure._trusted(atoms)

    def convolve(self, mu: Measure, nu: Measure) -> Measure:
        """Bilinear extension of the point-mass convolution."""
        acc: dict[int, Scalar] = {}
        for n, wn in mu.items():
            for m, wm in nu.items():
                w = wn * wm
                for k, c in self.linearize(n, m).items():
                    acc[k] = acc[k] + w * c if k in acc else w * c
        return Measure(acc)

    # -- cache persistence --------------------------------------------------
    def export_linearizations(self) -> dict[tuple[int, int], Measure]:
        with self._lock:
            return dict(self._lin)

    def import_linearizations(self, entries: dict[tuple[int, int], Measure]) -> None:
        with self._lock:
            for (n, m), mu in entries.items():
                key = (n, m) if n >= m else (m, n)
                self._lin.setdefault(key, mu)


def linearize_by_monomials(H: Hypergroup, n: int, m: int) -> Measure:
    """Reference path: expand P_n P_m in monomials, then solve back into the P basis.

    Independent of :meth:`Hypergroup.linearize`; used to cross-check it.
    """
    prod = poly_mul(H.basis_polynomial(n), H.basis_polynomial(m))
    prod = prod + [S0] * (n + m + 1 - len(prod))
    atoms = {}
    for k in range(n + m, -1, -1):
        pk = H.basis_polynomial(k)
        coeff = prod[k] / pk[k]
        if coeff:
            atoms[k] = coeff
            for i, v in enumerate(pk):
                prod[i] = prod[i] - coeff * v
    assert all(not v for v in prod), "basis change left a remainder"
    return Measure(atoms)
