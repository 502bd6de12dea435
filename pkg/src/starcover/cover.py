"""
Graph covers, Galois covers and the star-graph construction.

A Galois cover carries its group as an abstract ``GroupTable`` together with
the right action on total vertices and darts: ``vertex_action[g][v]`` is v.g,
so that ``vertex_action[g*h] = vertex_action[h] o vertex_action[g]``. Star
covers additionally remember the permutation behind each group element.
"""

import itertools
import json
import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel

from .config import get_config
from .errors import (
    DegreeMismatchError,
    EdgeNotFoundError,
    GuardExceededError,
    HalfEdgeError,
    NotASubgroupError,
    NotNormalError,
    StarCoverError,
    WalkError,
)
from .graph import Dart, Graph, GraphDocument, complete_graph, delete_darts, is_connected, isomorphic, to_document
from .perm import GroupTable, Permutation, PermutationGroup, compose, inverse, point_stabilizer, star_transpositions

logger = logging.getLogger(__name__)

SubgroupLike = Union[PermutationGroup, Iterable[int]]


@dataclass(frozen=True)
class CoveringMap:
    total: Graph
    base: Graph
    vertex_map: Tuple[int, ...]
    dart_map: Tuple[int, ...]

    def fiber(self, w: int) -> List[int]:
        return [v for v, b in enumerate(self.vertex_map) if b == w]

    def then(self, other: "CoveringMap") -> "CoveringMap":
        """Composite total -> other.base of self followed by other."""
        return CoveringMap(
            self.total,
            other.base,
            tuple(other.vertex_map[w] for w in self.vertex_map),
            tuple(other.dart_map[e] for e in self.dart_map),
        )


def identity_cover(g: Graph) -> CoveringMap:
    return CoveringMap(g, g, tuple(range(g.num_vertices)), tuple(range(g.num_darts)))


def validate_cover(c: CoveringMap) -> List[str]:
    """Violations of the covering-map conditions; empty when c is a cover."""
    problems: List[str] = []
    total, base = c.total, c.base
    if len(c.vertex_map) != total.num_vertices:
        return [f"vertex_map has {len(c.vertex_map)} entries for {total.num_vertices} vertices"]
    if len(c.dart_map) != total.num_darts:
        return [f"dart_map has {len(c.dart_map)} entries for {total.num_darts} darts"]
    for v, w in enumerate(c.vertex_map):
        if not 0 <= w < base.num_vertices:
            return [f"vertex {total.labels[v]} maps outside the base"]
    for e, f in enumerate(c.dart_map):
        if not 0 <= f < base.num_darts:
            return [f"dart {e} maps outside the base"]

    missed = set(range(base.num_vertices)) - set(c.vertex_map)
    for w in sorted(missed):
        problems.append(f"base vertex {base.labels[w]} is not in the image")

    for e, d in enumerate(total.darts):
        f = c.dart_map[e]
        bd = base.darts[f]
        if bd.origin != c.vertex_map[d.origin] or bd.terminus != c.vertex_map[d.terminus]:
            problems.append(f"dart {e} ({total.labels[d.origin]}->{total.labels[d.terminus]}) does not commute with endpoints")
        if c.dart_map[d.pair] != bd.pair:
            problems.append(f"dart {e} does not commute with pairing")

    for v in range(total.num_vertices):
        images = sorted(c.dart_map[e] for e in total.out_darts[v])
        expected = sorted(base.out_darts[c.vertex_map[v]])
        if images != expected:
            problems.append(
                f"vertex {total.labels[v]}: darts do not map bijectively onto the darts at "
                f"{base.labels[c.vertex_map[v]]} (degree {len(images)} vs {len(expected)})"
            )
    return problems


@dataclass(frozen=True)
class GaloisCover:
    covering: CoveringMap
    group: GroupTable
    vertex_action: Tuple[Tuple[int, ...], ...]
    dart_action: Tuple[Tuple[int, ...], ...]
    permutations: Optional[Tuple[Permutation, ...]] = None

    @property
    def total(self) -> Graph:
        return self.covering.total

    @property
    def base(self) -> Graph:
        return self.covering.base

    def element_index(self, p: Permutation) -> int:
        if self.permutations is None:
            raise StarCoverError("this cover's group is abstract, address elements by index")
        try:
            return self.permutations.index(p)
        except ValueError:
            raise NotASubgroupError(f"{p.one_line()} is not in the Galois group")

    def subgroup(self, h: SubgroupLike) -> FrozenSet[int]:
        """Element indices of ``h``; raises unless h is a subgroup."""
        if isinstance(h, PermutationGroup):
            if self.permutations is None:
                raise StarCoverError("this cover's group is abstract, pass element indices")
            if h.degree != self.permutations[0].degree:
                raise DegreeMismatchError(
                    f"subgroup degree {h.degree} differs from group degree {self.permutations[0].degree}"
                )
            members = frozenset(self.element_index(p) for p in h.elements)
        else:
            members = frozenset(h)
        if any(not 0 <= a < self.group.order for a in members):
            raise NotASubgroupError("element index outside the group")
        if not self.group.is_subgroup(members):
            raise NotASubgroupError("elements do not form a subgroup")
        return members


def validate_galois(gc: GaloisCover) -> List[str]:
    """Covering, automorphism, fiber, freeness and transitivity violations."""
    problems = validate_cover(gc.covering)
    if problems:
        return problems
    total, c, G = gc.total, gc.covering, gc.group
    nv, nd = total.num_vertices, total.num_darts
    if len(gc.vertex_action) != G.order or len(gc.dart_action) != G.order:
        return [f"action tables have the wrong length for a group of order {G.order}"]

    for g in range(G.order):
        va, da = gc.vertex_action[g], gc.dart_action[g]
        name = G.labels[g]
        if sorted(va) != list(range(nv)) or sorted(da) != list(range(nd)):
            problems.append(f"element {name} does not act bijectively")
            continue
        for e, d in enumerate(total.darts):
            img = total.darts[da[e]]
            if img.origin != va[d.origin] or img.terminus != va[d.terminus] or da[d.pair] != img.pair:
                problems.append(f"element {name} is not a graph automorphism at dart {e}")
                break
        if any(c.vertex_map[va[v]] != c.vertex_map[v] for v in range(nv)):
            problems.append(f"element {name} does not preserve fibers")
        if any(c.dart_map[da[e]] != c.dart_map[e] for e in range(nd)):
            problems.append(f"element {name} does not preserve dart fibers")
        if g != G.identity and any(va[v] == v for v in range(nv)):
            problems.append(f"element {name} fixes a vertex, the action is not free")

    for g, h in itertools.product(range(G.order), repeat=2):
        gh = G.mul(g, h)
        if any(gc.vertex_action[gh][v] != gc.vertex_action[h][gc.vertex_action[g][v]] for v in range(nv)):
            problems.append(f"action is not a right action on ({G.labels[g]}, {G.labels[h]})")
            break

    for w in range(gc.base.num_vertices):
        fiber = c.fiber(w)
        if not fiber:
            continue
        orbit = {gc.vertex_action[g][fiber[0]] for g in range(G.order)}
        if orbit != set(fiber):
            problems.append(f"group is not transitive on the fiber over {gc.base.labels[w]}")
    return problems


def star_cover(n: int) -> GaloisCover:
    """X_n = Cay(S_{n+1}, {(i, n+1)}) over K_{n+1} with G_n acting on the right."""
    limit = get_config().star_degree_limit
    if n < 1:
        raise StarCoverError("star_cover needs n >= 1")
    if n > limit:
        raise GuardExceededError(f"star_cover({n}) exceeds the configured limit n <= {limit}")
    m = n + 1
    taus = star_transpositions(n)
    vertices = [Permutation(p) for p in itertools.permutations(range(1, m + 1))]
    index = {p: i for i, p in enumerate(vertices)}

    # dart (xi, i) has index xi*n + (i-1) and pairs with (xi*tau_i, i)
    darts = []
    for a, xi in enumerate(vertices):
        for i, tau in enumerate(taus):
            b = index[compose(xi, tau)]
            darts.append((a, b, b * n + i))
    total = Graph(tuple(p.one_line() for p in vertices), tuple(Dart(a, b, pr) for a, b, pr in darts))
    base = complete_graph(m)
    vertex_map = tuple(xi(m) - 1 for xi in vertices)
    dart_map = tuple(base.dart_between(vertex_map[a], vertex_map[b]) for a, b, _ in darts)

    group = point_stabilizer(m, m)
    perms = group.elements
    vertex_action = tuple(tuple(index[compose(xi, s)] for xi in vertices) for s in perms)
    dart_action = []
    for s in perms:
        s_inv = inverse(s)
        row = []
        for a, xi in enumerate(vertices):
            b = index[compose(xi, s)]
            for i in range(n):
                row.append(b * n + s_inv(i + 1) - 1)
        dart_action.append(tuple(row))
    logger.debug("built star cover X_%d with %d vertices", n, total.num_vertices)
    return GaloisCover(
        CoveringMap(total, base, vertex_map, dart_map),
        group.table,
        vertex_action,
        tuple(dart_action),
        perms,
    )


@dataclass(frozen=True)
class QuotientResult:
    graph: Graph
    to_quotient: CoveringMap
    to_base: CoveringMap
    vertex_orbits: Tuple[Tuple[int, ...], ...]
    dart_orbits: Tuple[Tuple[int, ...], ...]

    def __iter__(self):
        return iter((self.graph, self.to_quotient, self.to_base))


def quotient(gc: GaloisCover, h: SubgroupLike) -> QuotientResult:
    """X/H with the covering maps X -> X/H -> base."""
    members = sorted(gc.subgroup(h))
    total = gc.total

    vclass = [-1] * total.num_vertices
    vorbits: List[Tuple[int, ...]] = []
    for v in range(total.num_vertices):
        if vclass[v] != -1:
            continue
        orbit = tuple(sorted({gc.vertex_action[g][v] for g in members}))
        for w in orbit:
            vclass[w] = len(vorbits)
        vorbits.append(orbit)

    dclass = [-1] * total.num_darts
    dorbits: List[Tuple[int, ...]] = []
    for e in range(total.num_darts):
        if dclass[e] != -1:
            continue
        orbit = tuple(sorted({gc.dart_action[g][e] for g in members}))
        if total.darts[e].pair in orbit:
            raise HalfEdgeError(f"dart {e} is identified with its own reverse; the quotient would need half-edges")
        for f in orbit:
            dclass[f] = len(dorbits)
        dorbits.append(orbit)

    qdarts = []
    for orbit in dorbits:
        d = total.darts[orbit[0]]
        qdarts.append(Dart(vclass[d.origin], vclass[d.terminus], dclass[d.pair]))
    labels = tuple(total.labels[orbit[0]] for orbit in vorbits)
    qgraph = Graph(labels, tuple(qdarts))

    to_q = CoveringMap(total, qgraph, tuple(vclass), tuple(dclass))
    to_base = CoveringMap(
        qgraph,
        gc.base,
        tuple(gc.covering.vertex_map[o[0]] for o in vorbits),
        tuple(gc.covering.dart_map[o[0]] for o in dorbits),
    )
    logger.debug("quotient by subgroup of order %d has %d vertices", len(members), qgraph.num_vertices)
    return QuotientResult(qgraph, to_q, to_base, tuple(vorbits), tuple(dorbits))


def quotient_galois(gc: GaloisCover, n: SubgroupLike) -> GaloisCover:
    """X/N -> base as a Galois cover with group G/N; N must be normal."""
    members = gc.subgroup(n)
    if not gc.group.is_normal(members):
        raise NotNormalError("quotient_galois needs a normal subgroup")
    result = quotient(gc, members)
    qtable, coset_of = gc.group.quotient(members)
    _, reps = gc.group.cosets(members)
    to_q = result.to_quotient

    vertex_action = []
    dart_action = []
    for g in reps:
        vertex_action.append(tuple(to_q.vertex_map[gc.vertex_action[g][o[0]]] for o in result.vertex_orbits))
        dart_action.append(tuple(to_q.dart_map[gc.dart_action[g][o[0]]] for o in result.dart_orbits))
    return GaloisCover(result.to_base, qtable, tuple(vertex_action), tuple(dart_action))


def restrict_to_subgroup(gc: GaloisCover, h: SubgroupLike) -> GaloisCover:
    """The Galois cover X -> X/H with group H."""
    members = gc.subgroup(h)
    result = quotient(gc, members)
    table, ordered = gc.group.subtable(members)
    perms = tuple(gc.permutations[a] for a in ordered) if gc.permutations is not None else None
    return GaloisCover(
        result.to_quotient,
        table,
        tuple(gc.vertex_action[a] for a in ordered),
        tuple(gc.dart_action[a] for a in ordered),
        perms,
    )


def delete_edges_cover(gc: GaloisCover, base_edges: Sequence[Tuple[int, int]]) -> GaloisCover:
    """Remove base edges and every edge of their fibers."""
    base, total, c = gc.base, gc.total, gc.covering
    removed_base = set()
    for u, v in base_edges:
        candidates = [
            e for e in (base.out_darts[u] if 0 <= u < base.num_vertices else ())
            if base.darts[e].terminus == v and e not in removed_base
        ]
        if not candidates:
            raise EdgeNotFoundError(f"no remaining base edge between vertices {u} and {v}")
        removed_base.update({candidates[0], base.darts[candidates[0]].pair})
    if not removed_base:
        return gc

    removed_total = {e for e in range(total.num_darts) if c.dart_map[e] in removed_base}
    new_base, base_index = delete_darts(base, removed_base)
    new_total, total_index = delete_darts(total, removed_total)
    if not is_connected(new_base):
        logger.warning("base graph is disconnected after deleting %d edge(s)", len(base_edges))

    kept = [e for e in range(total.num_darts) if total_index[e] != -1]
    covering = CoveringMap(new_total, new_base, c.vertex_map, tuple(base_index[c.dart_map[e]] for e in kept))
    dart_action = tuple(tuple(total_index[row[e]] for e in kept) for row in gc.dart_action)
    return GaloisCover(covering, gc.group, gc.vertex_action, dart_action, gc.permutations)


def walk_darts(g: Graph, vertices: Sequence[int]) -> List[int]:
    """Darts of the walk through ``vertices``, taking the smallest dart at each step."""
    try:
        return [g.dart_between(a, b) for a, b in zip(vertices, vertices[1:])]
    except EdgeNotFoundError as err:
        raise WalkError(str(err))


def lift_walk(c: CoveringMap, darts: Sequence[int], start: int) -> List[int]:
    """Total vertices visited by the lift of a base dart walk from ``start``."""
    base, total = c.base, c.total
    if not 0 <= start < total.num_vertices:
        raise WalkError(f"start vertex {start} is not a vertex of the cover")
    for d in darts:
        if not 0 <= d < base.num_darts:
            raise WalkError(f"dart {d} is not a dart of the base")
    if darts and c.vertex_map[start] != base.darts[darts[0]].origin:
        raise WalkError(f"start vertex {total.labels[start]} is not in the fiber over the walk's origin")
    for a, b in zip(darts, darts[1:]):
        if base.darts[a].terminus != base.darts[b].origin:
            raise WalkError(f"darts {a} and {b} are not consecutive")

    path = [start]
    v = start
    for d in darts:
        step = [e for e in total.out_darts[v] if c.dart_map[e] == d]
        if len(step) != 1:
            raise WalkError(f"dart {d} has {len(step)} lifts at {total.labels[v]}")
        v = total.darts[step[0]].terminus
        path.append(v)
    return path


def frobenius(gc: GaloisCover, base_cycle: Sequence[int], start: int) -> int:
    """The element g with start.g equal to the end of the lifted cycle."""
    base = gc.base
    for d in base_cycle:
        if not 0 <= d < base.num_darts:
            raise WalkError(f"dart {d} is not a dart of the base")
    if base_cycle and base.darts[base_cycle[-1]].terminus != base.darts[base_cycle[0]].origin:
        raise WalkError("walk is not closed")
    if not base_cycle:
        if not 0 <= start < gc.total.num_vertices:
            raise WalkError(f"start vertex {start} is not a vertex of the cover")
        return gc.group.identity
    end = lift_walk(gc.covering, base_cycle, start)[-1]
    for g in range(gc.group.order):
        if gc.vertex_action[g][start] == end:
            return g
    raise StarCoverError("no group element carries the lift's start to its end; the cover is not Galois")


@dataclass(frozen=True)
class IntermediateCover:
    members: FrozenSet[int]
    order: int
    normal: bool
    graph: Graph
    isomorphism_class: int


def intermediate_covers(gc: GaloisCover) -> List[IntermediateCover]:
    """Every X/H, grouped into isomorphism classes numbered in order of appearance."""
    out: List[IntermediateCover] = []
    representatives: List[Graph] = []
    for members in gc.group.subgroups():
        g = quotient(gc, members).graph
        cls = -1
        for k, rep in enumerate(representatives):
            if rep.num_vertices == g.num_vertices and isomorphic(rep, g) is not None:
                cls = k
                break
        if cls == -1:
            cls = len(representatives)
            representatives.append(g)
        out.append(IntermediateCover(members, len(members), gc.group.is_normal(members), g, cls))
    return out


class CoverDocument(BaseModel):
    total: GraphDocument
    base: GraphDocument
    vertex_map: List[int]
    dart_map: List[int]
    group: List[str]
    vertex_action: List[List[int]]


def cover_to_json(gc: GaloisCover) -> str:
    doc = CoverDocument(
        total=to_document(gc.total),
        base=to_document(gc.base),
        vertex_map=list(gc.covering.vertex_map),
        dart_map=list(gc.covering.dart_map),
        group=list(gc.group.labels),
        vertex_action=[list(row) for row in gc.vertex_action],
    )
    return json.dumps(doc.model_dump(), indent=2, sort_keys=True)
