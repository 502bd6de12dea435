"""
Finite multigraphs stored as paired darts.

Vertices are 0..n-1 with string labels carried as metadata. Every undirected
edge is two darts e, pair(e) with opposite directions; a loop contributes two
darts at the same vertex. Graphs are immutable, mutating operations return
new graphs.
"""

import json
import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import MultiGraphMatcher
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .config import get_config
from .errors import EdgeNotFoundError, GraphFormatError, GuardExceededError, StarCoverError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Dart:
    origin: int
    terminus: int
    pair: int


@dataclass(frozen=True)
class Graph:
    labels: Tuple[str, ...]
    darts: Tuple[Dart, ...]

    def __post_init__(self):
        n = len(self.labels)
        for i, d in enumerate(self.darts):
            if not (0 <= d.origin < n and 0 <= d.terminus < n):
                raise StarCoverError(f"dart {i} has an endpoint outside 0..{n - 1}")
            if not 0 <= d.pair < len(self.darts) or d.pair == i:
                raise StarCoverError(f"dart {i} has an invalid pair index {d.pair}")
            p = self.darts[d.pair]
            if p.pair != i or p.origin != d.terminus or p.terminus != d.origin:
                raise StarCoverError(f"dart {i} and its pair {d.pair} are not reverses")

    @classmethod
    def from_edges(cls, labels: Sequence[str], edges: Iterable[Tuple[int, int]]) -> "Graph":
        """Darts 2k, 2k+1 are u->v and v->u for the k-th edge."""
        darts: List[Dart] = []
        for u, v in edges:
            k = len(darts)
            darts.append(Dart(u, v, k + 1))
            darts.append(Dart(v, u, k))
        return cls(tuple(labels), tuple(darts))

    @property
    def num_vertices(self) -> int:
        return len(self.labels)

    @property
    def num_darts(self) -> int:
        return len(self.darts)

    @property
    def num_edges(self) -> int:
        return len(self.darts) // 2

    @cached_property
    def out_darts(self) -> Tuple[Tuple[int, ...], ...]:
        out: List[List[int]] = [[] for _ in self.labels]
        for i, d in enumerate(self.darts):
            out[d.origin].append(i)
        return tuple(tuple(x) for x in out)

    def degree(self, v: int) -> int:
        return len(self.out_darts[v])

    def degrees(self) -> List[int]:
        return [len(x) for x in self.out_darts]

    def regular_degree(self) -> Optional[int]:
        """The common degree, or None when the graph is not regular."""
        degs = set(self.degrees())
        if len(degs) == 1:
            return degs.pop()
        return None

    def dart_between(self, u: int, v: int) -> int:
        """Smallest dart index from u to v."""
        n = self.num_vertices
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeNotFoundError(f"no edge between vertices {u} and {v}: ids must lie in 0..{n - 1}")
        for i in self.out_darts[u]:
            if self.darts[i].terminus == v:
                return i
        raise EdgeNotFoundError(f"no edge between {self.labels[u]} and {self.labels[v]}")

    def edge_list(self) -> List[Tuple[int, int]]:
        """One (origin, terminus) per undirected edge, taken from its lower-indexed dart."""
        return [(d.origin, d.terminus) for i, d in enumerate(self.darts) if i < d.pair]

    def edge_multiplicities(self) -> Dict[Tuple[int, int], int]:
        counts: Counter = Counter()
        for u, v in self.edge_list():
            counts[(min(u, v), max(u, v))] += 1
        return dict(sorted(counts.items()))

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Graph whose vertex order[i] is the old vertex i."""
        n = self.num_vertices
        labels = [""] * n
        for old, new in enumerate(order):
            labels[new] = self.labels[old]
        darts = tuple(Dart(order[d.origin], order[d.terminus], d.pair) for d in self.darts)
        return Graph(tuple(labels), darts)


def complete_graph(m: int) -> Graph:
    """K_m on vertices labelled "1".."m"."""
    if m < 1:
        raise StarCoverError("complete graph needs at least one vertex")
    edges = [(u, v) for u in range(m) for v in range(u + 1, m)]
    return Graph.from_edges([str(i) for i in range(1, m + 1)], edges)


def cycle_graph(m: int) -> Graph:
    if m < 3:
        raise StarCoverError("a simple cycle needs at least three vertices")
    return Graph.from_edges([str(i) for i in range(1, m + 1)], [(i, (i + 1) % m) for i in range(m)])


def from_networkx(g: nx.Graph) -> Graph:
    nodes = list(g.nodes)
    index = {v: i for i, v in enumerate(nodes)}

    def _label(v) -> str:
        if isinstance(v, tuple):
            return "".join(str(x) for x in v)
        return str(v)

    edges = [(index[u], index[v]) for u, v in g.edges()]
    return Graph.from_edges([_label(v) for v in nodes], edges)


def to_networkx(g: Graph) -> nx.MultiGraph:
    G = nx.MultiGraph()
    for i, label in enumerate(g.labels):
        G.add_node(i, label=label)
    G.add_edges_from(g.edge_list())
    return G


def cube_graph() -> Graph:
    return from_networkx(nx.hypercube_graph(3))


def truncated_tetrahedron_graph() -> Graph:
    return from_networkx(nx.truncated_tetrahedron_graph())


def adjacency_matrix(g: Graph) -> List[List[int]]:
    """A[u][v] = number of darts u -> v; a loop adds 2 to the diagonal."""
    n = g.num_vertices
    A = [[0] * n for _ in range(n)]
    for d in g.darts:
        A[d.origin][d.terminus] += 1
    return A


def is_connected(g: Graph) -> bool:
    if g.num_vertices == 0:
        return True
    return nx.is_connected(to_networkx(g))


def is_bipartite(g: Graph) -> bool:
    return nx.is_bipartite(to_networkx(g))


def delete_undirected_edge(g: Graph, u: int, v: int) -> Graph:
    """Remove one dart u -> v together with its pair."""
    e = g.dart_between(u, v)
    return delete_darts(g, {e, g.darts[e].pair})[0]


def delete_darts(g: Graph, removed: Iterable[int]) -> Tuple[Graph, List[int]]:
    """Drop a pair-closed dart set; returns the graph and old -> new dart index (-1 if dropped)."""
    removed = set(removed)
    new_index = [-1] * g.num_darts
    k = 0
    for i in range(g.num_darts):
        if i not in removed:
            new_index[i] = k
            k += 1
    darts = []
    for i, d in enumerate(g.darts):
        if i in removed:
            continue
        if new_index[d.pair] == -1:
            raise StarCoverError(f"dart {i} is kept but its pair {d.pair} is removed")
        darts.append(Dart(d.origin, d.terminus, new_index[d.pair]))
    return Graph(g.labels, tuple(darts)), new_index


def is_isomorphism(g1: Graph, g2: Graph, mapping: Sequence[int]) -> bool:
    """Check that ``mapping`` is a bijection preserving dart multiplicities."""
    if g1.num_vertices != g2.num_vertices or g1.num_darts != g2.num_darts:
        return False
    if sorted(mapping) != list(range(g2.num_vertices)):
        return False
    c1 = Counter((mapping[d.origin], mapping[d.terminus]) for d in g1.darts)
    c2 = Counter((d.origin, d.terminus) for d in g2.darts)
    return c1 == c2


def isomorphic(g1: Graph, g2: Graph) -> Optional[List[int]]:
    """A vertex bijection g1 -> g2 preserving dart multiplicities, or None."""
    limit = get_config().isomorphism_vertex_limit
    if max(g1.num_vertices, g2.num_vertices) > limit:
        raise GuardExceededError(f"isomorphism search is limited to {limit} vertices")
    if g1.num_vertices != g2.num_vertices or g1.num_darts != g2.num_darts:
        return None
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return None

    matcher = MultiGraphMatcher(to_networkx(g1), to_networkx(g2))
    if not matcher.is_isomorphic():
        return None
    mapping = [matcher.mapping[v] for v in range(g1.num_vertices)]
    if not is_isomorphism(g1, g2, mapping):
        # VF2 counts parallel edges, so this only trips on a matcher bug
        raise StarCoverError("isomorphism search returned an invalid bijection")
    return mapping


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


class VertexEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: int
    label: Optional[str] = None


class EdgeEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    u: int
    v: int
    multiplicity: int = Field(default=1, ge=1)


class GraphDocument(BaseModel):
    vertices: List[VertexEntry]
    edges: List[EdgeEntry]


def _format_validation_error(err: ValidationError) -> str:
    parts = []
    for item in err.errors():
        loc = ".".join(str(x) for x in item.get("loc", ())) or "<root>"
        parts.append(f"{loc}: {item.get('msg')}")
    return "; ".join(parts)


def to_document(g: Graph) -> GraphDocument:
    return GraphDocument(
        vertices=[VertexEntry(id=i, label=label) for i, label in enumerate(g.labels)],
        edges=[EdgeEntry(u=u, v=v, multiplicity=m) for (u, v), m in g.edge_multiplicities().items()],
    )


def to_json(g: Graph) -> str:
    return json.dumps(to_document(g).model_dump(), indent=2, sort_keys=True)


def from_document(doc: GraphDocument) -> Graph:
    index: Dict[int, int] = {}
    labels = []
    for i, entry in enumerate(doc.vertices):
        if entry.id in index:
            raise GraphFormatError(f"vertices.{i}.id: duplicate vertex id {entry.id}")
        index[entry.id] = i
        labels.append(entry.label if entry.label is not None else str(entry.id))
    edges = []
    for i, entry in enumerate(doc.edges):
        for end in ("u", "v"):
            if getattr(entry, end) not in index:
                raise GraphFormatError(f"edges.{i}.{end}: unknown vertex id {getattr(entry, end)}")
        edges.extend([(index[entry.u], index[entry.v])] * entry.multiplicity)
    return Graph.from_edges(labels, edges)


def from_json(text: str) -> Graph:
    """Parse graph JSON; errors carry the JSON position or field path."""
    try:
        doc = GraphDocument.model_validate_json(text)
    except ValidationError as err:
        raise GraphFormatError(f"malformed graph JSON: {_format_validation_error(err)}")
    return from_document(doc)


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Graph) -> str:
    lines = ["graph G {"]
    for i, label in enumerate(g.labels):
        lines.append(f"  {i} [label={_dot_quote(label)}];")
    for u, v in g.edge_list():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
