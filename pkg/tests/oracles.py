"""Independent reference computations used by the tests.

Nothing here goes through the jet engine or the recursive linearization;
each oracle reaches its answer by a different route.
"""

import itertools
import math
from fractions import Fraction

import sympy as sp

from hypermoment.core import MultiIndex, Scalar


def brute_multi_indices(r, N):
    return {a for a in itertools.product(range(N + 1), repeat=r) if sum(a) <= N}


def sympy_basis(name, n, x):
    """Catalog basis polynomials from sympy's own closed forms, normalized by P_n(1) = 1."""
    if name == "chebyshev1":
        return sp.chebyshevt(n, x)
    if name == "chebyshev2":
        return sp.expand(sp.chebyshevu(n, x) / (n + 1))
    if name == "legendre":
        return sp.legendre(n, x)
    raise KeyError(name)


def to_sympy(s):
    s = Scalar.coerce(s)
    return sp.Rational(int(s.re.numerator), int(s.re.denominator)) + sp.I * sp.Rational(
        int(s.im.numerator), int(s.im.denominator)
    )


def from_sympy(e):
    e = sp.nsimplify(sp.expand(e))
    re, im = e.as_real_imag()
    return Scalar(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def sympy_moments(name, seed_values, rank, n, alphas):
    """phi_alpha(n) = d^alpha P_n(f(t)) at t = 0, by symbolic differentiation."""
    t = sp.symbols(f"t0:{rank}")
    x = sp.Symbol("x")
    f = sum(
        to_sympy(v) / math.prod(math.factorial(c) for c in a) * sp.Mul(*[ti**c for ti, c in zip(t, a)])
        for a, v in seed_values.items()
    )
    composed = sp.expand(sympy_basis(name, n, x).subs(x, f))
    out = {}
    for a in alphas:
        d = composed
        for ti, c in zip(t, a):
            if c:
                d = sp.diff(d, ti, c)
        out[MultiIndex(a)] = from_sympy(d.subs({ti: 0 for ti in t}))
    return out


def sympy_linearization(name, n, m):
    """Coefficients of P_n P_m in the P basis via sympy polynomial division."""
    x = sp.Symbol("x")
    prod = sp.Poly(sp.expand(sympy_basis(name, n, x) * sympy_basis(name, m, x)), x)
    out = {}
    for k in range(n + m, -1, -1):
        pk = sp.Poly(sympy_basis(name, k, x), x)
        coeff = prod.coeff_monomial(x**k) / pk.coeff_monomial(x**k)
        if coeff != 0:
            out[k] = Fraction(int(coeff.p), int(coeff.q))
            prod = prod - pk * coeff
    assert prod.is_zero
    return out


def reconstruct_from_columns(H, table, n_max):
    """Rebuild phi_alpha(n), n >= 2, from the n = 0 and n = 1 columns alone.

    Uses the convolution identity with m = 1, where delta_n * delta_1 is just
    a_n delta_{n-1} + b_n delta_n + c_n delta_{n+1}, solved for phi_alpha(n+1).
    """
    alphas = table.alphas
    cols = [table.column(0), table.column(1)]
    one = cols[1]
    for n in range(1, n_max):
        a_n, b_n, c_n = H.coefficients(n)
        nxt = {}
        for alpha in alphas:
            rhs = Scalar(0)
            for beta in alpha.below():
                c = math.prod(math.comb(x, y) for x, y in zip(alpha, beta))
                rhs = rhs + cols[n][beta] * one[alpha - beta] * c
            nxt[alpha] = (rhs - a_n * cols[n - 1][alpha] - b_n * cols[n][alpha]) / c_n
        cols.append(nxt)
    return cols


def naive_jet_mul(u, v, N):
    """Dict-of-tuples truncated product with no precomputed layout."""
    out = {}
    for a, x in u.items():
        for b, y in v.items():
            k = tuple(i + j for i, j in zip(a, b))
            if sum(k) <= N:
                out[k] = out.get(k, 0) + x * y
    return {k: w for k, w in out.items() if w != 0}
