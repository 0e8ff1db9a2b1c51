"""Exact scalars, multi-indices and finitely supported measures on the naturals."""

from __future__ import annotations

import math
import re
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from ._backend import ONE, RATIONAL_TYPE, ZERO, to_rational
from .errors import DominanceViolation, RankMismatch

__all__ = [
    "Scalar",
    "MultiIndex",
    "Measure",
    "mi_enumerate",
    "mi_binom",
    "measure_add",
    "measure_scale",
    "measure_total",
]

_new = object.__new__
_set = object.__setattr__


def _mk(re_, im_):
    s = _new(Scalar)
    _set(s, "re", re_)
    _set(s, "im", im_)
    return s


def _parts(x):
    """Return (re, im) backend rationals for anything Scalar-like, else None."""
    t = type(x)
    if t is Scalar:
        return x.re, x.im
    if t is RATIONAL_TYPE:
        return x, ZERO
    if t is int:
        return to_rational(x), ZERO
    if t is bool:
        return None
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return to_rational(x), ZERO
    return None


_RATIONAL_TEXT = re.compile(r"[+-]?\d+(?:/\d+)?")


def _parse_rational(text, *, unit_ok):
    text = text.replace(" ", "")
    if unit_ok and text in ("", "+", "-"):
        return to_rational(-1 if text == "-" else 1)
    if not _RATIONAL_TEXT.fullmatch(text):
        raise ValueError(f"not an exact rational: {text!r}")
    p, _, q = text.partition("/")
    if q and int(q) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return to_rational(text)


class Scalar:
    """Gaussian rational ``re + im*i`` with exact arithmetic.

    Scalars are immutable and mix freely with ``int``, ``Fraction`` and the
    backend rational type.  Ordering is only defined for real values.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if type(re) is Scalar:
            if im != 0:
                raise TypeError("Scalar(re=Scalar, im=...) is ambiguous")
            _set(self, "re", re.re)
            _set(self, "im", re.im)
            return
        _set(self, "re", to_rational(re))
        _set(self, "im", to_rational(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __reduce__(self):
        return (Scalar.parse, (str(self),))

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Read ``"p/q"``, ``"p/q+s/t i"``, ``"-s/t i"`` and similar forms."""
        if not isinstance(text, str):
            raise TypeError("Scalar.parse expects a string")
        body = text.strip()
        if not body.endswith("i"):
            return _mk(_parse_rational(body, unit_ok=False), ZERO)
        body = body[:-1].rstrip()
        split = max(body.rfind("+"), body.rfind("-"))
        if split <= 0 or not body[:split].strip():
            return _mk(ZERO, _parse_rational(body, unit_ok=True))
        return _mk(
            _parse_rational(body[:split], unit_ok=False),
            _parse_rational(body[split:], unit_ok=True),
        )

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if type(x) is Scalar:
            return x
        if isinstance(x, str):
            return cls.parse(x)
        p = _parts(x)
        if p is None:
            raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")
        return _mk(*p)

    # -- predicates -----------------------------------------------------
    @property
    def is_real(self) -> bool:
        return self.im == 0

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not (self.re == 0 and self.im == 0)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        p = _parts(other)
        if p is None:
            return NotImplemented
        return _mk(self.re + p[0], self.im + p[1])

    __radd__ = __add__

    def __sub__(self, other):
        p = _parts(other)
        if p is None:
            return NotImplemented
        return _mk(self.re - p[0], self.im - p[1])

    def __rsub__(self, other):
        p = _parts(other)
        if p is None:
            return NotImplemented
        return _mk(p[0] - self.re, p[1] - self.im)

    def __mul__(self, other):
        p = _parts(other)
        if p is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = p
        if not b and not d:
            return _mk(a * c, ZERO)
        return _mk(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = _parts(other)
        if p is None:
            return NotImplemented
        return self * _inverse(*p)

    def __rtruediv__(self, other):
        p = _parts(other)
        if p is None:
            return NotImplemented
        return _mk(*p) * _inverse(self.re, self.im)

    def __neg__(self):
        return _mk(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if not isinstance(k, int) or isinstance(k, bool):
            return NotImplemented
        if k < 0:
            return _inverse(self.re, self.im) ** (-k)
        result = _mk(ONE, ZERO)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "Scalar":
        return _mk(self.re, -self.im)

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        p = _parts(other)
        if p is None:
            return NotImplemented
        return self.re == p[0] and self.im == p[1]

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def _real_pair(self, other):
        p = _parts(other)
        if p is None:
            return None
        if self.im or p[1]:
            raise TypeError("ordering is undefined for non-real scalars")
        return p[0]

    def __lt__(self, other):
        o = self._real_pair(other)
        return NotImplemented if o is None else self.re < o

    def __le__(self, other):
        o = self._real_pair(other)
        return NotImplemented if o is None else self.re <= o

    def __gt__(self, other):
        o = self._real_pair(other)
        return NotImplemented if o is None else self.re > o

    def __ge__(self, other):
        o = self._real_pair(other)
        return NotImplemented if o is None else self.re >= o

    # -- display only; carries no exactness guarantee ---------------------
    def __float__(self):
        if self.im:
            raise TypeError("cannot convert a non-real scalar to float")
        return float(self.re)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def approx(self, digits: int = 12) -> str:
        if not self.im:
            return f"{float(self.re):.{digits}g}"
        z = complex(self)
        return f"{z.real:.{digits}g}{z.imag:+.{digits}g}i"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im} i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)} i"

    def __repr__(self):
        return f"Scalar('{self}')"


def _inverse(a, b):
    if not b:
        if not a:
            raise ZeroDivisionError("division by exact zero")
        return _mk(ONE / a, ZERO)
    n = a * a + b * b
    return _mk(a / n, -b / n)


S0 = _mk(ZERO, ZERO)
S1 = _mk(ONE, ZERO)


class MultiIndex(tuple):
    """Element of N^r.

    Comparison operators implement the componentwise partial order, so
    ``sorted`` on multi-indices is meaningless; use :func:`mi_enumerate` or
    :meth:`grlex_key`.  ``+`` and ``-`` act componentwise.
    """

    __slots__ = ()

    def __new__(cls, components: Iterable[int]):
        if type(components) is cls:
            return components
        comps = tuple(components)
        if not comps:
            raise ValueError("a multi-index needs at least one component")
        for c in comps:
            if isinstance(c, bool) or not isinstance(c, int) or c < 0:
                raise ValueError(f"multi-index components must be naturals, got {c!r}")
        return super().__new__(cls, comps)

    @classmethod
    def zero(cls, r: int) -> "MultiIndex":
        return cls((0,) * r)

    @classmethod
    def unit(cls, r: int, i: int) -> "MultiIndex":
        return cls(tuple(1 if j == i else 0 for j in range(r)))

    @property
    def rank(self) -> int:
        return len(self)

    @property
    def degree(self) -> int:
        return sum(self)

    def factorial(self) -> int:
        out = 1
        for c in self:
            out *= math.factorial(c)
        return out

    def grlex_key(self):
        return (sum(self), tuple(-c for c in self))

    def _same_rank(self, other):
        if len(self) != len(other):
            raise RankMismatch(f"rank {len(self)} vs rank {len(other)}")

    def __le__(self, other):
        if not isinstance(other, tuple):
            return NotImplemented
        self._same_rank(other)
        return all(a <= b for a, b in zip(self, other))

    def __lt__(self, other):
        if not isinstance(other, tuple):
            return NotImplemented
        return self.__le__(other) and tuple(self) != tuple(other)

    def __ge__(self, other):
        if not isinstance(other, tuple):
            return NotImplemented
        self._same_rank(other)
        return all(a >= b for a, b in zip(self, other))

    def __gt__(self, other):
        if not isinstance(other, tuple):
            return NotImplemented
        return self.__ge__(other) and tuple(self) != tuple(other)

    __hash__ = tuple.__hash__
    __eq__ = tuple.__eq__
    __ne__ = tuple.__ne__

    def __add__(self, other):
        self._same_rank(other)
        return MultiIndex(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        self._same_rank(other)
        if not all(b <= a for a, b in zip(self, other)):
            raise DominanceViolation(f"{list(other)} is not below {list(self)}")
        return MultiIndex(a - b for a, b in zip(self, other))

    def below(self) -> Iterator["MultiIndex"]:
        """All beta <= self, in graded lex order."""
        for beta in mi_enumerate(len(self), sum(self)):
            if all(b <= a for a, b in zip(self, beta)):
                yield beta

    def to_json(self) -> list:
        return list(self)

    def __repr__(self):
        return f"MultiIndex({list(self)})"


def _compositions(total, parts):
    # descending in the first component -> lexicographically descending tuples
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _enumerate_cached(r, N):
    return tuple(MultiIndex(c) for d in range(N + 1) for c in _compositions(d, r))


def mi_enumerate(r: int, N: int) -> list[MultiIndex]:
    """Every alpha in N^r with |alpha| <= N, graded lexicographic order.

    >>> [list(a) for a in mi_enumerate(2, 1)]
    [[0, 0], [1, 0], [0, 1]]
    """
    if isinstance(r, bool) or not isinstance(r, int) or r < 1:
        raise ValueError("rank r must be a positive integer")
    if isinstance(N, bool) or not isinstance(N, int) or N < 0:
        raise ValueError("order N must be a natural number")
    return list(_enumerate_cached(r, N))


def binom_int(alpha, beta) -> int:
    if len(alpha) != len(beta):
        raise RankMismatch(f"rank {len(alpha)} vs rank {len(beta)}")
    out = 1
    for a, b in zip(alpha, beta):
        if b > a:
            raise DominanceViolation(f"{list(beta)} is not below {list(alpha)}")
        out *= math.comb(a, b)
    return out


def mi_binom(alpha, beta) -> Scalar:
    """Multi-index binomial alpha! / (beta! (alpha - beta)!)."""
    return Scalar(binom_int(alpha, beta))


class Measure:
    """Finitely supported measure on N with exact weights.

    Zero weights are dropped on construction, so two measures are equal
    exactly when their atom maps are.
    """

    __slots__ = ("_atoms",)

    def __init__(self, atoms: Mapping[int, object] | None = None):
        clean = {}
        for k, w in (atoms or {}).items():
            if isinstance(k, bool) or not isinstance(k, int) or k < 0:
                raise ValueError(f"atoms must sit on naturals, got {k!r}")
            w = Scalar.coerce(w)
            if w:
                clean[k] = w
        _set(self, "_atoms", {k: clean[k] for k in sorted(clean)})

    def __setattr__(self, name, value):
        raise AttributeError("Measure is immutable")

    @classmethod
    def point(cls, n: int, weight=1) -> "Measure":
        return cls({n: weight})

    @classmethod
    def _trusted(cls, atoms):
        # atoms already zero-free, Scalar-valued and key-sorted
        m = _new(cls)
        _set(m, "_atoms", atoms)
        return m

    @property
    def atoms(self) -> dict[int, Scalar]:
        return dict(self._atoms)

    def items(self):
        return self._atoms.items()

    def support(self) -> list[int]:
        return list(self._atoms)

    def __getitem__(self, k) -> Scalar:
        return self._atoms.get(k, S0)

    def __len__(self):
        return len(self._atoms)

    def __iter__(self):
        return iter(self._atoms)

    def __eq__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        return self._atoms == other._atoms

    def __hash__(self):
        return hash(tuple(self._atoms.items()))

    def total(self) -> Scalar:
        out = S0
        for w in self._atoms.values():
            out = out + w
        return out

    def __add__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        acc = dict(self._atoms)
        for k, w in other._atoms.items():
            acc[k] = acc[k] + w if k in acc else w
        return Measure(acc)

    def __sub__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        return self + other.scale(-1)

    def scale(self, s) -> "Measure":
        s = Scalar.coerce(s)
        if not s:
            return Measure()
        return Measure._trusted({k: w * s for k, w in self._atoms.items()})

    def __repr__(self):
        inner = " + ".join(f"{w}*d{k}" for k, w in self._atoms.items())
        return f"Measure({inner or '0'})"


def measure_add(mu: Measure, nu: Measure) -> Measure:
    return mu + nu


def measure_scale(mu: Measure, s) -> Measure:
    return mu.scale(s)


def measure_total(mu: Measure) -> Scalar:
    return mu.total()
