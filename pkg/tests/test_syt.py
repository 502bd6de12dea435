from collections import Counter
from math import factorial

from hypothesis import given, strategies as st
import pytest

from starcover.errors import GuardExceededError, StarCoverError
from starcover.syt import (
    I_lambda,
    Partition,
    StandardTableau,
    content,
    hook_length_count,
    multiplicities,
    multiplicity,
    multiplicity_table,
    partitions,
    syt_enumerate,
)


@st.composite
def partition_strategy(draw, max_n=8):
    n = draw(st.integers(min_value=1, max_value=max_n))
    k = draw(st.integers(min_value=1, max_value=n))
    bins = draw(st.lists(st.integers(min_value=0, max_value=k - 1), min_size=n, max_size=n))
    return Partition(tuple(sorted(Counter(bins).values(), reverse=True)))


def test_partitions_of_four():
    assert [str(p) for p in partitions(4)] == ["4", "31", "22", "211", "1111"]
    assert len(partitions(7)) == 15


def test_partition_validation():
    with pytest.raises(StarCoverError):
        Partition((1, 2))
    with pytest.raises(StarCoverError):
        Partition((2, 0))


def test_hook_length_known_values():
    assert hook_length_count(Partition((3, 1))) == 3
    assert hook_length_count(Partition((2, 2))) == 2
    assert hook_length_count(Partition((3, 2))) == 5
    assert hook_length_count(Partition((3, 2, 1))) == 16


@given(partition_strategy())
def test_enumeration_matches_hook_length(shape):
    tableaux = syt_enumerate(shape)
    assert len(tableaux) == hook_length_count(shape)
    assert len({t.rows for t in tableaux}) == len(tableaux)


@given(partition_strategy())
def test_conjugate_is_an_involution(shape):
    assert shape.conjugate().conjugate() == shape
    assert hook_length_count(shape.conjugate()) == hook_length_count(shape)


@given(st.integers(min_value=1, max_value=7))
def test_sum_of_squares_is_factorial(m):
    assert sum(hook_length_count(p) ** 2 for p in partitions(m)) == factorial(m)


def test_tableau_validation():
    shape = Partition((2, 1))
    assert StandardTableau(shape, ((1, 2), (3,))).position(3) == (2, 1)
    with pytest.raises(StarCoverError):
        StandardTableau(shape, ((2, 1), (3,)))
    with pytest.raises(StarCoverError):
        StandardTableau(shape, ((1, 3), (2, 4)))
    with pytest.raises(StarCoverError):
        StandardTableau(Partition((2, 2)), ((1, 2), (4, 3)))


def test_content_of_largest_entry():
    t = StandardTableau(Partition((3, 1)), ((1, 2, 4), (3,)))
    assert content(t, 4) == 2
    assert content(t, 3) == -1


def test_i_lambda():
    assert I_lambda(Partition((3, 1)), 3, 2) == 2
    assert I_lambda(Partition((3, 1)), 3, -1) == 1
    assert I_lambda(Partition((2, 2)), 3, 0) == 2
    with pytest.raises(StarCoverError):
        I_lambda(Partition((2, 2)), 4, 0)


def test_multiplicity_table_for_x3():
    rows = {str(r.shape): ({k: v for k, v in r.counts.items() if v}, r.f) for r in multiplicity_table(3)}
    assert rows == {
        "4": ({3: 1}, 1),
        "31": ({-1: 1, 2: 2}, 3),
        "22": ({0: 2}, 2),
        "211": ({-2: 2, 1: 1}, 3),
        "1111": ({-3: 1}, 1),
    }


def test_multiplicities_of_x3():
    assert multiplicities(3) == {-3: 1, -2: 6, -1: 3, 0: 4, 1: 3, 2: 6, 3: 1}
    assert multiplicity(3, 0) == 4


def test_multiplicities_of_x4():
    assert multiplicities(4) == {-4: 1, -3: 12, -2: 28, -1: 4, 0: 30, 1: 4, 2: 28, 3: 12, 4: 1}


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_small_eigenvalues_present(n):
    mult = multiplicities(n)
    assert all(mult.get(k, 0) > 0 for k in range(n + 1))
    assert sum(mult.values()) == factorial(n + 1)


def test_guards(monkeypatch):
    with pytest.raises(GuardExceededError):
        partitions(21)
    monkeypatch.setenv("STARCOVER_MULT_LIMIT", "3")
    with pytest.raises(GuardExceededError):
        multiplicity(4, 0)
