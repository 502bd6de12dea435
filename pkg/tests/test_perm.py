from hypothesis import given, strategies as st
import pytest

from starcover.errors import DegreeMismatchError, NotASubgroupError, NotNormalError, StarCoverError
from starcover.perm import (
    GroupTable,
    Permutation,
    compose,
    from_cycles,
    generate_group,
    identity,
    inverse,
    is_normal,
    parse_permutation,
    point_stabilizer,
    quotient_group,
    star_transpositions,
    subgroups,
    symmetric_group,
    transposition,
)


@st.composite
def permutation_strategy(draw, degree=5):
    images = draw(st.permutations(range(1, degree + 1)))
    return Permutation(tuple(images))


def test_compose_applies_right_factor_first():
    t14 = transposition(1, 4, 4)
    t24 = transposition(2, 4, 4)
    p = compose(t14, t24)
    assert p.images == (4, 1, 3, 2)
    assert p(2) == t14(t24(2))
    assert t14 * t24 == p


def test_from_cycles_matches_compose():
    assert from_cycles([(1, 4), (2, 4)], 4) == compose(transposition(1, 4, 4), transposition(2, 4, 4))


def test_parse_cycle_and_one_line():
    assert parse_permutation("(1,2)", 4).one_line() == "2134"
    assert parse_permutation("(1,2)(3,4)", 4).one_line() == "2143"
    assert parse_permutation("4231").cycles() == [(1, 4)]
    assert parse_permutation("2,1,3").images == (2, 1, 3)
    assert parse_permutation("()", 3).is_identity()


def test_parse_errors():
    with pytest.raises(StarCoverError):
        parse_permutation("(1,2)")
    with pytest.raises(StarCoverError):
        parse_permutation("1134")
    with pytest.raises(DegreeMismatchError):
        parse_permutation("213", 4)
    with pytest.raises(StarCoverError):
        parse_permutation("(1,a)", 3)


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatchError):
        compose(identity(3), identity(4))


def test_sign_order_and_cycle_string():
    p = parse_permutation("(1,2,3)(4,5)", 5)
    assert p.order() == 6
    assert p.sign() == -1
    assert p.cycle_string() == "(1,2,3)(4,5)"
    assert identity(3).cycle_string() == "()"


def test_star_transpositions():
    taus = star_transpositions(3)
    assert [t.one_line() for t in taus] == ["4231", "1432", "1243"]


@given(permutation_strategy(), permutation_strategy(), permutation_strategy())
def test_composition_is_associative(p, q, r):
    assert compose(compose(p, q), r) == compose(p, compose(q, r))


@given(permutation_strategy())
def test_inverse(p):
    assert compose(p, inverse(p)).is_identity()
    assert compose(inverse(p), p).is_identity()


@given(permutation_strategy(), permutation_strategy())
def test_sign_is_multiplicative(p, q):
    assert compose(p, q).sign() == p.sign() * q.sign()


def test_group_orders():
    assert symmetric_group(4).order == 24
    assert point_stabilizer(4, 4).order == 6
    assert all(p(4) == 4 for p in point_stabilizer(4, 4).elements)
    assert generate_group(star_transpositions(3)).order == 24


def test_table_axioms():
    table = symmetric_group(3).table
    assert table.check_axioms() == []
    assert not table.is_abelian()
    assert table.labels[table.identity] == "123"


def test_subgroup_counts():
    assert len(subgroups(symmetric_group(3))) == 6
    assert len(subgroups(symmetric_group(4))) == 30


def test_subgroups_sorted_by_order():
    orders = [h.order for h in subgroups(symmetric_group(3))]
    assert orders == [1, 2, 2, 2, 3, 6]


def test_klein_groups():
    s4 = symmetric_group(4)
    v = generate_group([parse_permutation("(1,2)(3,4)", 4), parse_permutation("(1,3)(2,4)", 4)])
    other = generate_group([parse_permutation("(1,2)", 4), parse_permutation("(3,4)", 4)])
    assert v.order == other.order == 4
    assert is_normal(v, s4)
    assert not is_normal(other, s4)
    q = quotient_group(s4, v)
    assert q.order == 6
    assert not q.is_abelian()
    assert q.check_axioms() == []
    with pytest.raises(NotNormalError):
        quotient_group(s4, other)


def test_cosets_partition_the_group():
    table = symmetric_group(3).table
    c3 = next(s for s in table.subgroups() if len(s) == 3)
    coset_of, reps = table.cosets(c3)
    assert len(reps) == 2
    assert sorted(set(coset_of)) == [0, 1]
    assert reps[0] == 0


def test_is_normal_rejects_non_subgroups():
    table = symmetric_group(3).table
    with pytest.raises(NotASubgroupError):
        table.is_normal([1, 2])


def test_subtable():
    table = symmetric_group(3).table
    c2 = next(s for s in table.subgroups() if len(s) == 2)
    sub, ordered = table.subtable(c2)
    assert sub.order == 2
    assert sub.check_axioms() == []
    assert len(ordered) == 2


def test_cyclic_group_table():
    six = generate_group([from_cycles([(1, 2, 3, 4, 5, 6)], 6)])
    table: GroupTable = six.table
    assert table.order == 6
    assert table.is_abelian()
    assert sorted(table.element_order(a) for a in range(6)) == [1, 2, 3, 3, 6, 6]


def test_right_action_moves_the_last_point():
    taus = star_transpositions(3)
    for xi in symmetric_group(4).elements:
        for i, tau in enumerate(taus, start=1):
            assert compose(xi, tau)(4) == xi(i)
