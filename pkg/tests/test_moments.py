import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypermoment.core import MultiIndex, Scalar, mi_enumerate
from hypermoment.errors import IncompleteSeed, OrderMismatch, RankMismatch, TableRangeExceeded
from hypermoment.hypergroup import CATALOG, Hypergroup
from hypermoment.jets import Jet, partial_at_zero
from hypermoment.moments import (
    MomentSeed,
    MomentTable,
    exponential_values,
    moment_table,
    rank1_table,
    seed_jet,
    sine_check,
    verify_binomial,
)

from oracles import reconstruct_from_columns, sympy_moments
from strategies import scalars, seeds

EXAMPLE_SEED = MomentSeed(
    2,
    2,
    {
        (0, 0): Fraction(1, 2),
        (1, 0): 1,
        (0, 1): Fraction(2, 3),
        (1, 1): Fraction(1, 5),
        (2, 0): 0,
        (0, 2): -1,
    },
)


def random_seed(rng, r, N, complex_values=False):
    def q():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    return MomentSeed(r, N, {a: Scalar(q(), q() if complex_values else 0) for a in mi_enumerate(r, N)})


# -- seeds ----------------------------------------------------------------------


def test_seed_jet_examples():
    lam, c = Fraction(1, 3), Fraction(-2, 7)
    assert seed_jet(MomentSeed(1, 1, {(0,): lam, (1,): c})) == Jet(1, 1, {(0,): lam, (1,): c})
    zero = MomentSeed(2, 2, {a: 0 for a in mi_enumerate(2, 2)})
    assert seed_jet(zero).is_zero()
    only = MomentSeed(2, 2, {a: (1 if a == (2, 0) else 0) for a in mi_enumerate(2, 2)})
    assert seed_jet(only) == Jet(2, 2, {(2, 0): Fraction(1, 2)})


@given(seeds(2, 3, values=scalars))
def test_seed_jet_recovers_values(seed):
    f = seed_jet(seed)
    assert all(partial_at_zero(f, a) == v for a, v in seed.values.items())


def test_incomplete_seed_lists_missing():
    seed = MomentSeed(2, 1, {(0, 0): 1, (1, 0): 2})
    assert seed.missing() == [(0, 1)]
    with pytest.raises(IncompleteSeed) as info:
        seed_jet(seed)
    assert info.value.missing == [(0, 1)]


def test_seed_rejects_foreign_keys():
    with pytest.raises(RankMismatch):
        MomentSeed(2, 1, {(0,): 1})
    with pytest.raises(OrderMismatch):
        MomentSeed(1, 1, {(2,): 1})


# -- generation -------------------------------------------------------------------


def test_tchebyshev_rows(cheb):
    T = moment_table(cheb, EXAMPLE_SEED, 8)
    lam = Fraction(1, 2)
    assert T.row((0, 0)) == [cheb.eval_basis(n, lam) for n in range(9)]
    # phi_{1,0}(n) = c_{1,0} T_n'(lambda) with c_{1,0} = 1; T_2'(x) = 4x
    assert T[(1, 0), 2] == 2
    assert T[(0, 1), 2] == Fraction(4, 3)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_table_matches_symbolic_derivatives(name, hypergroups):
    rng = random.Random(7)
    H = hypergroups[name]
    for r, N in [(1, 3), (2, 2)]:
        seed = random_seed(rng, r, N, complex_values=(r == 2))
        table = moment_table(H, seed, 6)
        for n in range(7):
            expected = sympy_moments(name, seed.values, r, n, table.alphas)
            assert table.column(n) == expected


def test_table_invariants_and_seed_recovery(any_hypergroup):
    rng = random.Random(3)
    for r, N in [(1, 4), (2, 2), (3, 2)]:
        seed = random_seed(rng, r, N)
        T = moment_table(any_hypergroup, seed, 5)
        for a in T.alphas:
            assert T[a, 0] == (1 if sum(a) == 0 else 0)
            assert T[a, 1] == seed[a]


def test_zero_n_max(cheb):
    T = moment_table(cheb, EXAMPLE_SEED, 0)
    assert [v for _, _, v in T.entries()] == [1, 0, 0, 0, 0, 0]


def test_exponential_values_examples(cheb, any_hypergroup):
    assert exponential_values(cheb, 1, 20) == [1] * 21
    assert exponential_values(any_hypergroup, Fraction(3, 4), 0) == [1]
    assert exponential_values(cheb, Fraction(1, 2), 3)[3] == -1


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_exponential_row_matches_table(name, hypergroups):
    H = hypergroups[name]
    T = moment_table(H, EXAMPLE_SEED, 12)
    assert T.row((0, 0)) == exponential_values(H, Fraction(1, 2), 12)


def test_rank1_examples(cheb):
    seed = MomentSeed(1, 1, {(0,): Fraction(1, 2), (1,): 1})
    T = rank1_table(cheb, seed, 5)
    assert T[(1,), 2] == 2
    assert T.row((0,)) == exponential_values(cheb, Fraction(1, 2), 5)
    with pytest.raises(RankMismatch):
        rank1_table(cheb, EXAMPLE_SEED, 3)


def test_rank1_agrees_with_rank_r(any_hypergroup):
    rng = random.Random(11)
    for _ in range(20):
        seed = random_seed(rng, 1, rng.randint(0, 4))
        assert rank1_table(any_hypergroup, seed, 12) == moment_table(any_hypergroup, seed, 12)


# -- verification ------------------------------------------------------------------


@settings(max_examples=15)
@given(st.sampled_from(sorted(CATALOG)), st.data())
def test_generated_tables_satisfy_identity(name, data):
    r, N = data.draw(st.sampled_from([(1, 3), (2, 2), (3, 1)]))
    seed = data.draw(seeds(r, N, values=scalars))
    H = Hypergroup(name)
    T = moment_table(H, seed, 12)
    report = verify_binomial(H, T, 6, 6)
    assert report.passed
    assert report.checked == 7 * 7 * len(T.alphas)


def test_perturbed_entry_is_caught(cheb):
    T = moment_table(cheb, EXAMPLE_SEED, 10)
    bad = T.with_value((1, 1), 5, T[(1, 1), 5] + 1)
    report = verify_binomial(cheb, bad, 5, 5)
    assert not report.passed
    assert all(v.n + v.m == 5 or v.n == 5 or v.m == 5 or abs(v.n - v.m) == 5 for v in report.violations)
    assert any(v.n + v.m == 5 or v.n == 5 for v in report.violations)
    first = report.violations[0]
    assert first.lhs != first.rhs


def test_exponential_slice_alone(cheb):
    seed = MomentSeed(1, 0, {(0,): Fraction(2, 3)})
    T = moment_table(cheb, seed, 10)
    assert T.row((0,)) == exponential_values(cheb, Fraction(2, 3), 10)
    assert verify_binomial(cheb, T, 5, 5).passed


def test_range_check(cheb):
    T = moment_table(cheb, EXAMPLE_SEED, 6)
    with pytest.raises(TableRangeExceeded):
        verify_binomial(cheb, T, 4, 3)
    with pytest.raises(TableRangeExceeded):
        T[(0, 0), 7]


def test_sine_check(cheb):
    T = moment_table(cheb, EXAMPLE_SEED, 10)
    assert sine_check(cheb, T).passed
    assert verify_binomial(cheb, T, 5, 5).passed
    broken = T.with_value((1, 0), 0, 1)
    report = sine_check(cheb, broken, 3, 3)
    assert (0, 0) in [(v.n, v.m) for v in report.violations]
    assert {sum(v.alpha) for v in report.violations} == {1}


def test_uniqueness_by_reconstruction(any_hypergroup):
    rng = random.Random(5)
    seed = random_seed(rng, 2, 2)
    T = moment_table(any_hypergroup, seed, 14)
    cols = reconstruct_from_columns(any_hypergroup, T, 14)
    assert all(cols[n] == T.column(n) for n in range(15))


def test_table_construction_checks():
    with pytest.raises(IncompleteSeed):
        MomentTable(1, 1, 1, {((0,), 0): 1, ((0,), 1): 1, ((1,), 0): 0})
    with pytest.raises(TableRangeExceeded):
        MomentTable(1, 0, 0, {((0,), 0): 1, ((0,), 1): 1})
    T = MomentTable(1, 0, 1, {((0,), 0): 1, ((0,), 1): Fraction(1, 2)})
    assert T.row(MultiIndex((0,))) == [1, Fraction(1, 2)]
