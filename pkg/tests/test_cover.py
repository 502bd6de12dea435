import json
from dataclasses import replace

import pytest

from starcover.cover import (
    CoveringMap,
    GaloisCover,
    cover_to_json,
    delete_edges_cover,
    frobenius,
    identity_cover,
    intermediate_covers,
    lift_walk,
    quotient,
    quotient_galois,
    restrict_to_subgroup,
    star_cover,
    validate_cover,
    validate_galois,
    walk_darts,
)
from starcover.errors import (
    EdgeNotFoundError,
    GuardExceededError,
    HalfEdgeError,
    NotASubgroupError,
    NotNormalError,
    WalkError,
)
from starcover.graph import Graph, cycle_graph, isomorphic
from starcover.perm import GroupTable, generate_group, parse_permutation


def test_star_cover_shape(x3):
    assert x3.total.num_vertices == 24
    assert x3.total.num_edges == 36
    assert x3.total.regular_degree() == 3
    assert x3.base.num_vertices == 4
    assert x3.group.order == 6
    assert x3.total.labels[0] == "1234"
    assert all(len(x3.covering.fiber(w)) == 6 for w in range(4))


def test_star_cover_dart_indexing(x3):
    # dart (xi, i) sits at index a*n + (i-1) and pairs with (xi*tau_i, i)
    d = x3.total.darts[0]
    assert d.origin == 0
    assert x3.total.labels[d.terminus] == "4231"
    assert d.pair == d.terminus * 3


def test_star_cover_is_galois(x3):
    assert validate_cover(x3.covering) == []
    assert validate_galois(x3) == []


def test_x2_is_a_hexagon():
    x2 = star_cover(2)
    assert isomorphic(x2.total, cycle_graph(6)) is not None
    assert x2.group.order == 2
    assert validate_galois(x2) == []


def test_star_cover_guard(monkeypatch):
    monkeypatch.setenv("STARCOVER_STAR_LIMIT", "2")
    with pytest.raises(GuardExceededError):
        star_cover(3)


def test_validate_cover_reports_broken_map(k4):
    broken = CoveringMap(k4, k4, (0, 0, 2, 3), tuple(range(k4.num_darts)))
    assert validate_cover(broken)
    assert validate_cover(identity_cover(k4)) == []


def test_quotients_of_x3(x3, c3_members, c2_members, cube, truncated_tetrahedron):
    q = quotient(x3, c3_members)
    t = quotient(x3, c2_members)
    assert q.graph.num_vertices == 8
    assert t.graph.num_vertices == 12
    assert isomorphic(q.graph, cube) is not None
    assert isomorphic(t.graph, truncated_tetrahedron) is not None
    assert validate_cover(q.to_quotient) == []
    assert validate_cover(q.to_base) == []
    graph, to_q, to_base = t
    assert validate_cover(to_q.then(to_base)) == []


def test_quotient_accepts_permutation_group(x3):
    h = generate_group([parse_permutation("(1,2,3)", 4)])
    assert quotient(x3, h).graph.num_vertices == 8


def test_quotient_rejects_non_subgroup(x3):
    with pytest.raises(NotASubgroupError):
        quotient(x3, [x3.group.identity, 1, 2])
    with pytest.raises(NotASubgroupError):
        quotient(x3, generate_group([parse_permutation("(1,4)", 4)]))


def test_trivial_and_full_quotients(x3, k4):
    assert quotient(x3, [x3.group.identity]).graph.num_vertices == 24
    full = quotient(x3, range(6)).graph
    assert isomorphic(full, k4) is not None


def test_half_edge_detected():
    total = Graph.from_edges(["a", "b"], [(0, 1)])
    base = Graph.from_edges(["*"], [(0, 0)])
    c2 = GroupTable(("e", "s"), ((0, 1), (1, 0)), 0)
    # s swaps the endpoints, so it carries dart 0 onto its own reverse
    gc = GaloisCover(CoveringMap(total, base, (0, 0), (0, 1)), c2, ((0, 1), (1, 0)), ((0, 1), (1, 0)))
    with pytest.raises(HalfEdgeError):
        quotient(gc, [0, 1])


def test_quotient_galois(x3, c3_members, c2_members):
    cube_cover = quotient_galois(x3, c3_members)
    assert cube_cover.group.order == 2
    assert cube_cover.total.num_vertices == 8
    assert validate_galois(cube_cover) == []
    with pytest.raises(NotNormalError):
        quotient_galois(x3, c2_members)


def test_restrict_to_subgroup(x3, c2_members):
    y_over_t = restrict_to_subgroup(x3, c2_members)
    assert y_over_t.group.order == 2
    assert y_over_t.base.num_vertices == 12
    assert validate_galois(y_over_t) == []


def test_delete_edges_cover(x3):
    deleted = delete_edges_cover(x3, [(0, 1)])
    assert deleted.base.num_edges == 5
    assert deleted.total.num_edges == 30
    assert validate_galois(deleted) == []
    with pytest.raises(EdgeNotFoundError):
        delete_edges_cover(deleted, [(0, 1)])


def test_frobenius_of_triangle(x3):
    darts = walk_darts(x3.base, [3, 0, 1, 3])
    g = frobenius(x3, darts, 0)
    assert x3.group.labels[g] == "2134"
    assert x3.permutations[g] == parse_permutation("(1,2)", 4)


def test_frobenius_empty_walk_is_identity(x3):
    assert frobenius(x3, [], 0) == x3.group.identity


def test_lift_walk(x3):
    darts = walk_darts(x3.base, [3, 0, 1, 3])
    path = lift_walk(x3.covering, darts, 0)
    assert [x3.total.labels[v] for v in path] == ["1234", "4231", "4132", "2134"]


def test_walk_errors(x3):
    darts = walk_darts(x3.base, [3, 0, 1])
    with pytest.raises(WalkError):
        frobenius(x3, darts, 0)
    with pytest.raises(WalkError):
        lift_walk(x3.covering, walk_darts(x3.base, [0, 1]), 0)
    with pytest.raises(WalkError):
        walk_darts(x3.base, [0, 0])


def test_intermediate_covers(x3):
    covers = intermediate_covers(x3)
    assert [c.order for c in covers] == [1, 2, 2, 2, 3, 6]
    proper = [c for c in covers if 1 < c.order < 6]
    assert sorted(c.graph.num_vertices for c in proper) == [8, 12, 12, 12]
    assert len({c.isomorphism_class for c in proper}) == 2
    assert [c.normal for c in covers] == [True, False, False, False, True, True]


def test_cover_to_json(x3):
    doc = json.loads(cover_to_json(x3))
    assert len(doc["vertex_map"]) == 24
    assert len(doc["dart_map"]) == 72
    assert len(doc["group"]) == 6
    assert len(doc["vertex_action"]) == 6


@pytest.mark.parametrize("n", [1, 2, 4])
def test_star_cover_is_galois_for_other_degrees(n):
    gc = star_cover(n)
    assert validate_cover(gc.covering) == []
    assert validate_galois(gc) == []


def _swap(row, a, b):
    row = list(row)
    row[a], row[b] = row[b], row[a]
    return tuple(row)


def test_validate_galois_flags_a_broken_vertex_action(x3):
    g = next(k for k in range(x3.group.order) if k != x3.group.identity)
    vertex_action = list(x3.vertex_action)
    vertex_action[g] = _swap(vertex_action[g], 0, 1)
    broken = replace(x3, vertex_action=tuple(vertex_action))
    assert validate_galois(broken)


def test_validate_galois_flags_a_broken_dart_action(x3):
    g = next(k for k in range(x3.group.order) if k != x3.group.identity)
    dart_action = list(x3.dart_action)
    dart_action[g] = _swap(dart_action[g], 0, 1)
    broken = replace(x3, dart_action=tuple(dart_action))
    problems = validate_galois(broken)
    assert any("automorphism" in p for p in problems)


def test_validate_galois_needs_a_transitive_action():
    x2 = star_cover(2)
    trivial = GroupTable(("e",), ((0,),), 0)
    gc = GaloisCover(
        x2.covering,
        trivial,
        (tuple(range(x2.total.num_vertices)),),
        (tuple(range(x2.total.num_darts)),),
    )
    problems = validate_galois(gc)
    assert len(problems) == x2.base.num_vertices
    assert all("not transitive" in p for p in problems)


def test_frobenius_conjugates_when_the_start_moves(x3):
    darts = walk_darts(x3.base, [3, 0, 1, 3])
    G = x3.group
    g = frobenius(x3, darts, 0)
    for h in range(G.order):
        moved = x3.vertex_action[h][0]
        assert frobenius(x3, darts, moved) == G.mul(G.mul(G.inverse(h), g), h)


def test_walks_reject_out_of_range_ids(x3):
    with pytest.raises(WalkError):
        walk_darts(x3.base, [-1, 0])
    with pytest.raises(WalkError):
        lift_walk(x3.covering, [-1], 0)
    with pytest.raises(WalkError):
        frobenius(x3, [x3.base.num_darts], 0)
