from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypermoment.core import MultiIndex, Scalar, mi_binom, mi_enumerate
from hypermoment.errors import ExpNonzeroConstant, OrderMismatch, RankMismatch
from hypermoment.hypergroup import Hypergroup
from hypermoment.jets import (
    Jet,
    compose_basis,
    compose_basis_all,
    jet_add,
    jet_const,
    jet_exp,
    jet_mul,
    jet_scale,
    jet_variable,
    partial_at_zero,
)
from hypermoment.poly import poly_eval

from oracles import naive_jet_mul
from strategies import jets, scalars


def t(r, N, i):
    return jet_variable(r, N, i)


def test_linear_examples():
    u = Jet(2, 2, {(1, 0): 3, (0, 2): Fraction(1, 2)})
    zero = jet_const(2, 2, 0)
    assert zero.is_zero()
    assert jet_add(u, zero) == u
    assert jet_scale(u, 1) == u


def test_mismatch_errors():
    with pytest.raises(RankMismatch):
        jet_add(jet_const(1, 2, 1), jet_const(2, 2, 1))
    with pytest.raises(OrderMismatch):
        jet_mul(jet_const(1, 2, 1), jet_const(1, 3, 1))
    with pytest.raises(OrderMismatch):
        Jet(1, 1, {(2,): 1})
    with pytest.raises(RankMismatch):
        Jet(2, 2, {(1,): 1})


def test_mul_examples():
    assert jet_mul(t(2, 2, 0), t(2, 2, 1)) == Jet(2, 2, {(1, 1): 1})
    x = t(1, 1, 0)
    assert jet_mul(1 + x, 1 - x) == jet_const(1, 1, 1)
    y = t(1, 2, 0)
    p = 1 + y + y * y
    assert jet_mul(p, p) == Jet(1, 2, {(0,): 1, (1,): 2, (2,): 3})


def test_exp_examples():
    assert jet_exp(jet_const(2, 3, 0)) == jet_const(2, 3, 1)
    x = t(1, 3, 0)
    assert jet_exp(x) == Jet(1, 3, {(0,): 1, (1,): 1, (2,): Fraction(1, 2), (3,): Fraction(1, 6)})
    s = t(2, 2, 0) + t(2, 2, 1)
    expected = Jet(
        2, 2, {(0, 0): 1, (1, 0): 1, (0, 1): 1, (2, 0): Fraction(1, 2), (1, 1): 1, (0, 2): Fraction(1, 2)}
    )
    assert jet_exp(s) == expected


def test_exp_needs_nilpotent_argument():
    with pytest.raises(ExpNonzeroConstant):
        jet_exp(jet_const(1, 2, 1))


def test_partial_examples():
    assert partial_at_zero(Jet(1, 1, {(0,): 1, (1,): 2}), (1,)) == 2
    q = Scalar(Fraction(3, 7), 2)
    assert partial_at_zero(Jet(2, 2, {(1, 1): q}), (1, 1)) == q
    assert partial_at_zero(Jet(1, 2, {(2,): Fraction(1, 2)}), (2,)) == 1
    with pytest.raises(OrderMismatch):
        partial_at_zero(Jet(1, 2), (3,))
    with pytest.raises(RankMismatch):
        partial_at_zero(Jet(1, 2), (1, 0))


def test_compose_examples(any_hypergroup, cheb):
    f = Jet(2, 2, {(0, 0): Fraction(1, 3), (1, 0): 2, (1, 1): -1})
    assert compose_basis(any_hypergroup, 0, f) == jet_const(2, 2, 1)
    assert compose_basis(any_hypergroup, 1, f) == f
    assert compose_basis(cheb, 2, f) == jet_mul(f, f) * 2 - 1


@given(jets(2, 3), jets(2, 3))
def test_mul_matches_naive_product(u, v):
    expected = naive_jet_mul(u.coeffs, v.coeffs, 3)
    assert jet_mul(u, v) == Jet(2, 3, expected)


@given(jets(2, 2), jets(2, 2), jets(2, 2))
def test_ring_axioms(u, v, w):
    assert jet_mul(u, v) == jet_mul(v, u)
    assert jet_mul(jet_mul(u, v), w) == jet_mul(u, jet_mul(v, w))
    assert jet_mul(u, jet_add(v, w)) == jet_add(jet_mul(u, v), jet_mul(u, w))


@given(jets(2, 3), jets(2, 3))
def test_leibniz(u, v):
    uv = jet_mul(u, v)
    for alpha in mi_enumerate(2, 3):
        rhs = sum(
            (mi_binom(alpha, b) * partial_at_zero(u, b) * partial_at_zero(v, alpha - b) for b in alpha.below()),
            Scalar(0),
        )
        assert partial_at_zero(uv, alpha) == rhs


@given(jets(2, 3, constant=Scalar(0)), jets(2, 3, constant=Scalar(0)))
def test_exp_is_a_homomorphism(u, v):
    assert jet_exp(jet_add(u, v)) == jet_mul(jet_exp(u), jet_exp(v))


@given(jets(1, 4, constant=Scalar(0)))
def test_exp_derivative_identity(u):
    # d/dt exp(u) = u' exp(u), compared through coefficient k * e_k
    e = jet_exp(u)
    for k in range(1, 5):
        lhs = e.coeff((k,)) * k
        rhs = sum((u.coeff((j,)) * j * e.coeff((k - j,)) for j in range(1, k + 1)), Scalar(0))
        assert lhs == rhs


@pytest.mark.parametrize("name", ["chebyshev1", "chebyshev2", "legendre"])
@given(f=jets(2, 3), n=st.integers(0, 9))
def test_compose_matches_horner(name, f, n):
    H = Hypergroup(name)
    assert compose_basis(H, n, f) == poly_eval(H.basis_polynomial(n), f)


def test_compose_all_is_prefix_consistent(cheb):
    f = Jet(1, 3, {(0,): Fraction(1, 2), (1,): 1, (3,): -2})
    allj = compose_basis_all(cheb, 8, f)
    assert len(allj) == 9
    assert all(allj[n] == compose_basis(cheb, n, f) for n in range(9))
    assert compose_basis_all(cheb, 0, f) == [jet_const(1, 3, 1)]


def test_jet_coeffs_are_graded_and_zero_free():
    u = Jet(2, 2, {(0, 2): 1, (1, 0): 0, (0, 0): 5})
    assert list(u.coeffs) == [MultiIndex((0, 0)), MultiIndex((0, 2))]


def test_order_zero_jets():
    c = jet_const(3, 0, Fraction(2, 3))
    assert jet_mul(c, c) == jet_const(3, 0, Fraction(4, 9))
    assert jet_variable(3, 0, 1).is_zero()


@given(scalars, jets(2, 2))
def test_scalar_division(s, u):
    if s:
        assert (u / s) * s == u
