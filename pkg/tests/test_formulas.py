from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import brute_density, naive_ok, naive_shifted
from sumfree.formulas import (
    interval_witness,
    lambda_connected,
    lambda_cyclic,
    lambda_product,
    lambda_sumfree_abelian,
)
from sumfree.groups import FiniteAbelianGroup, GroupSubset, cyclic, divisors
from sumfree.search import is_shifted_sum_free, shifted_iterated_sumset

F = Fraction


@pytest.mark.parametrize(
    "k, l, n, expected",
    [(1, 2, 7, F(2, 7)), (1, 3, 4, F(1, 4)), (2, 3, 5, F(1, 5)), (1, 2, 10, F(1, 2))],
)
def test_lambda_cyclic_examples(k, l, n, expected):
    assert lambda_cyclic(k, l, n).value == expected
    assert brute_density((n,), k, l) == expected


def test_lambda_cyclic_argmax_smallest_divisor():
    res = lambda_cyclic(1, 2, 10)
    assert res.argmax_divisor == 2
    assert [t.d for t in res.terms] == [1, 2, 5, 10]
    assert res.value == max(t.value for t in res.terms)


def test_lambda_cyclic_term_record():
    # d=1 always contributes 0
    t1 = lambda_cyclic(2, 5, 12).terms[0]
    assert (t1.d, t1.value, t1.delta, t1.remainder) == (1, 0, 1, 0)
    for t in lambda_cyclic(2, 5, 12).terms:
        assert 0 <= t.remainder < t.delta


def test_lambda_cyclic_rejects_bad_kl():
    with pytest.raises(ValueError):
        lambda_cyclic(2, 2, 5)
    with pytest.raises(ValueError):
        lambda_cyclic(1, 2, 0)


@pytest.mark.parametrize("kl", [(1, 2), (1, 3), (2, 3), (1, 4), (2, 5), (3, 4)])
def test_lambda_cyclic_matches_brute_force(kl):
    k, l = kl
    for n in range(1, 11):
        assert lambda_cyclic(k, l, n).value == brute_density((n,), k, l), n


@pytest.mark.parametrize("kl", [(1, 2), (1, 3), (2, 3), (1, 5), (3, 7)])
def test_lambda_cyclic_monotone_over_divisors(kl):
    for n in range(1, 150):
        v = lambda_cyclic(*kl, n).value
        assert all(lambda_cyclic(*kl, d).value <= v for d in divisors(n))


@pytest.mark.parametrize(
    "factors, expected",
    [((7,), F(2, 7)), ((3, 3), F(1, 3)), ((1,), F(0)), ((5, 5), F(2, 5)), ((5,), F(2, 5))],
)
def test_lambda_sumfree_abelian_examples(factors, expected):
    assert lambda_sumfree_abelian(FiniteAbelianGroup(factors)).value == expected


def test_lambda_sumfree_abelian_matches_brute_force():
    for factors in [(3, 3), (5,), (2, 2, 2), (2, 4)]:
        assert lambda_sumfree_abelian(FiniteAbelianGroup(factors)).value == brute_density(factors, 1, 2)


def test_green_ruzsa_agrees_with_cyclic_formula():
    for n in range(1, 1001):
        assert lambda_sumfree_abelian(cyclic(n)).value == lambda_cyclic(1, 2, n).value


@given(st.lists(st.integers(2, 40), min_size=1, max_size=4))
def test_green_ruzsa_bounds(factors):
    v = lambda_sumfree_abelian(FiniteAbelianGroup(tuple(factors))).value
    assert F(2, 7) <= v <= F(1, 2)


@pytest.mark.parametrize("kl, expected", [((1, 2), F(1, 3)), ((2, 3), F(1, 5)), ((1, 9), F(1, 10))])
def test_lambda_connected(kl, expected):
    assert lambda_connected(*kl) == expected


def test_lambda_connected_rejects_bad_kl():
    with pytest.raises(ValueError):
        lambda_connected(3, 3)


def test_lambda_product_examples():
    assert lambda_product(1, 2, F(2, 7), True) == F(1, 3)
    assert lambda_product(1, 2, F(1, 2), True) == F(1, 2)
    assert lambda_product(1, 2, F(2, 7), False) == F(2, 7)
    with pytest.raises(ValueError):
        lambda_product(1, 2, F(3, 2), True)


@pytest.mark.parametrize(
    "k, l, n, expected",
    [(1, 2, 3, [1]), (1, 2, 6, [2, 3]), (2, 3, 5, [2])],
)
def test_interval_witness_examples(k, l, n, expected):
    A = interval_witness(k, l, n)
    assert A.elements() == expected
    C = {(0,), (1 % n,)}
    At = {(a,) for a in expected}
    assert not naive_shifted(At, C, k, (n,)) & naive_shifted(At, C, l, (n,))


def test_interval_witness_requires_divisibility():
    with pytest.raises(ValueError):
        interval_witness(1, 2, 7)
    with pytest.raises(ValueError):
        interval_witness(2, 3, 12)


@pytest.mark.parametrize("kl", [(1, 2), (2, 3), (1, 3), (3, 5), (1, 4)])
def test_interval_witness_partitions_group(kl):
    k, l = kl
    L = l * l - k * k
    for n in range(L, 6 * L + 1, L):
        A = interval_witness(k, l, n)
        G = A.group
        C = GroupSubset.from_elements(G, {0, 1 % n})
        assert A.density() == F(1, k + l)
        assert is_shifted_sum_free(A, C, k, l)
        kA = shifted_iterated_sumset(A, C, k)
        lA = shifted_iterated_sumset(A, C, l)
        assert kA.isdisjoint(lA)
        assert kA.cardinality + lA.cardinality == n
        assert (kA | lA) == GroupSubset.full(G)


def test_interval_witness_plain_sum_free_too():
    # the grid image of an open arc is also sum-free without the shift
    A = interval_witness(1, 2, 9)
    assert naive_ok({(a,) for a in A}, 1, 2, (9,))
