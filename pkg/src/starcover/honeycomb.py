"""
Finite quotients of the honeycomb lattice.

Coordinates are integers in the basis v1, v2 of the lattice of translations.
black(a, b) sits at B + a v1 + b v2 and white(a, b) at W + a v1 + b v2, with
black(a, b) adjacent to white(a, b), white(a+1, b) and white(a, b+1). The
half-turn R sends black(a, b) to white(1-a, 1-b) and back.
"""

import logging
from collections import deque
from dataclasses import dataclass
from math import isqrt
from typing import Dict, List, Optional, Tuple

from sympy.core.intfunc import igcdex

from .cover import CoveringMap
from .errors import InconsistentLabelingError, LatticeError, StarCoverError
from .graph import Dart, Graph, is_isomorphism
from .perm import Permutation, compose, identity, transposition
from .spectra import SpectrumMultiset

logger = logging.getLogger(__name__)

Vector = Tuple[int, int]

DIRECTIONS: Tuple[Vector, ...] = ((0, 0), (1, 0), (0, 1))


@dataclass(frozen=True)
class LatticeSpec:
    gen1: Vector
    gen2: Vector
    half_turn: bool = False

    def __post_init__(self):
        if self.determinant == 0:
            raise LatticeError(f"generators {self.gen1}, {self.gen2} are linearly dependent")

    @property
    def determinant(self) -> int:
        return self.gen1[0] * self.gen2[1] - self.gen1[1] * self.gen2[0]

    def with_half_turn(self, flag: bool = True) -> "LatticeSpec":
        return LatticeSpec(self.gen1, self.gen2, flag)


LAMBDA_Q = LatticeSpec((2, 0), (0, 2))
LAMBDA_X3 = LatticeSpec((2, 2), (4, -2))
G_K4 = LAMBDA_Q.with_half_turn()
G_T = LAMBDA_X3.with_half_turn()

PRESETS: Dict[str, LatticeSpec] = {
    "Lambda_Q": LAMBDA_Q,
    "Lambda_X3": LAMBDA_X3,
    "G_K4": G_K4,
    "G_T": G_T,
}


def parse_lattice(text: str, half_turn: bool = False) -> LatticeSpec:
    """Parse "a,b;c,d" or a preset name."""
    if text in PRESETS:
        spec = PRESETS[text]
        return spec.with_half_turn(True) if half_turn else spec
    try:
        first, second = text.split(";")
        a, b = (int(x) for x in first.split(","))
        c, d = (int(x) for x in second.split(","))
    except ValueError:
        raise LatticeError(f"cannot parse lattice {text!r}; expected 'a,b;c,d' or one of {', '.join(PRESETS)}")
    return LatticeSpec((a, b), (c, d), half_turn)


@dataclass(frozen=True)
class Sublattice:
    """Hermite normal form basis (g, h), (0, r) with g, r > 0."""

    g: int
    h: int
    r: int

    @classmethod
    def of(cls, spec: LatticeSpec) -> "Sublattice":
        (a, b), (c, d) = spec.gen1, spec.gen2
        s, t, g = igcdex(a, c)
        if g < 0:
            s, t, g = -s, -t, -g
        h = s * b + t * d
        r = abs(spec.determinant) // g
        return cls(int(g), int(h), int(r))

    @property
    def index(self) -> int:
        return self.g * self.r

    def reduce(self, v: Vector) -> Vector:
        """Representative with 0 <= x < g and 0 <= y < r."""
        x, y = v
        k = x // self.g
        return x - k * self.g, (y - k * self.h) % self.r

    def contains(self, v: Vector) -> bool:
        return self.reduce(v) == (0, 0)

    def representatives(self) -> List[Vector]:
        return [(x, y) for x in range(self.g) for y in range(self.r)]


@dataclass(frozen=True)
class HoneycombVertex:
    color: str
    a: int
    b: int


@dataclass(frozen=True)
class HoneycombQuotient:
    """Quotient graph with the bookkeeping needed for labelings and projections.

    ``black_dart[(rep, j)]`` is the dart carrying black(rep) -> white(rep + DIRECTIONS[j]).
    """

    spec: LatticeSpec
    lattice: Sublattice
    graph: Graph
    vertices: Tuple[HoneycombVertex, ...]
    black_dart: Dict[Tuple[Vector, int], int]

    def vertex_index(self, v: HoneycombVertex) -> int:
        rep = self.lattice.reduce((v.a, v.b))
        if self.spec.half_turn and v.color == "white":
            rep = self.lattice.reduce((1 - rep[0], 1 - rep[1]))
            return self._index[HoneycombVertex("black", *rep)]
        return self._index[HoneycombVertex(v.color, *rep)]

    @property
    def _index(self) -> Dict[HoneycombVertex, int]:
        return {v: i for i, v in enumerate(self.vertices)}


def _add(v: Vector, w: Vector) -> Vector:
    return v[0] + w[0], v[1] + w[1]


def build_quotient(spec: LatticeSpec) -> HoneycombQuotient:
    lat = Sublattice.of(spec)
    reps = lat.representatives()
    black_dart: Dict[Tuple[Vector, int], int] = {}
    darts: List[Dart] = []

    if not spec.half_turn:
        vertices = [HoneycombVertex("black", *v) for v in reps] + [HoneycombVertex("white", *v) for v in reps]
        white_index = {v: len(reps) + i for i, v in enumerate(reps)}
        for i, v in enumerate(reps):
            for j, delta in enumerate(DIRECTIONS):
                w = white_index[lat.reduce(_add(v, delta))]
                k = len(darts)
                darts.append(Dart(i, w, k + 1))
                darts.append(Dart(w, i, k))
                black_dart[(v, j)] = k
    else:
        vertices = [HoneycombVertex("black", *v) for v in reps]
        index = {v: i for i, v in enumerate(reps)}
        for i, v in enumerate(reps):
            for j, delta in enumerate(DIRECTIONS):
                if (v, j) in black_dart:
                    continue
                # R maps the edge at black(v) in direction delta to the one at black(1 - v - delta)
                partner = lat.reduce((1 - v[0] - delta[0], 1 - v[1] - delta[1]))
                if partner == v:
                    raise LatticeError(f"the half-turn inverts the edge at black{v} in direction {delta}")
                k = len(darts)
                darts.append(Dart(i, index[partner], k + 1))
                darts.append(Dart(index[partner], i, k))
                black_dart[(v, j)] = k
                black_dart[(partner, j)] = k + 1

    labels = tuple(f"{'B' if v.color == 'black' else 'W'}({v.a},{v.b})" for v in vertices)
    graph = Graph(labels, tuple(darts))
    logger.debug("honeycomb quotient has %d vertices", graph.num_vertices)
    return HoneycombQuotient(spec, lat, graph, tuple(vertices), black_dart)


def honeycomb_quotient(spec: LatticeSpec) -> Graph:
    return build_quotient(spec).graph


# weight of the edge black(a,b) -> white((a,b)+delta) is COLOURS[(a - b + KAPPA[delta]) % 3]
KAPPA = {0: 0, 1: 2, 2: 1}
COLOUR_POINTS = {0: 3, 1: 2, 2: 1}


def edge_weight(v: Vector, direction: int) -> Permutation:
    colour = (v[0] - v[1] + KAPPA[direction]) % 3
    return transposition(COLOUR_POINTS[colour], 4, 4)


def label_vertices_s4(spec: LatticeSpec = LAMBDA_X3) -> Dict[HoneycombVertex, Permutation]:
    """Path products of edge weights from black(0,0), checked on every edge."""
    if spec.half_turn or Sublattice.of(spec) != Sublattice.of(LAMBDA_X3):
        raise LatticeError("the S_4 labeling is defined on the quotient by Lambda_X3 without half-turn")
    hq = build_quotient(spec)
    g = hq.graph
    weight: Dict[int, Permutation] = {}
    for (v, j), d in hq.black_dart.items():
        w = edge_weight(v, j)
        weight[d] = w
        weight[g.darts[d].pair] = w

    labels: List[Optional[Permutation]] = [None] * g.num_vertices
    root = hq.vertex_index(HoneycombVertex("black", 0, 0))
    labels[root] = identity(4)
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for d in g.out_darts[x]:
            y = g.darts[d].terminus
            if labels[y] is None:
                labels[y] = compose(labels[x], weight[d])
                queue.append(y)

    for d, dart in enumerate(g.darts):
        if labels[dart.terminus] != compose(labels[dart.origin], weight[d]):
            raise InconsistentLabelingError(
                f"path products disagree at {g.labels[dart.terminus]} along dart {d}"
            )
    return {v: labels[i] for i, v in enumerate(hq.vertices)}


def labeling_isomorphism(labels: Dict[HoneycombVertex, Permutation], spec: LatticeSpec, target: Graph) -> List[int]:
    """Vertex map quotient -> target given by matching labels; verified."""
    hq = build_quotient(spec)
    by_label = {label: i for i, label in enumerate(target.labels)}
    mapping = [by_label[labels[v].one_line()] for v in hq.vertices]
    if not is_isomorphism(hq.graph, target, mapping):
        raise InconsistentLabelingError("labeling is not a graph isomorphism onto the target")
    return mapping


def lattice_projection(fine: LatticeSpec, coarse: LatticeSpec) -> CoveringMap:
    """The covering L/fine -> L/coarse induced by an inclusion of lattices."""
    if fine.half_turn:
        raise LatticeError("the source of a lattice projection must not include the half-turn")
    coarse_lat = Sublattice.of(coarse)
    if not (coarse_lat.contains(fine.gen1) and coarse_lat.contains(fine.gen2)):
        raise LatticeError("the fine lattice is not contained in the coarse lattice")
    src = build_quotient(fine)
    dst = build_quotient(coarse)
    vertex_map = tuple(dst.vertex_index(v) for v in src.vertices)
    dart_map = [0] * src.graph.num_darts
    for (v, j), d in src.black_dart.items():
        image = dst.black_dart[(coarse_lat.reduce(v), j)]
        dart_map[d] = image
        dart_map[src.graph.darts[d].pair] = dst.graph.darts[image].pair
    return CoveringMap(src.graph, dst.graph, vertex_map, tuple(dart_map))


# 2 cos(2 pi j / 6) for j mod 6
_TWO_COS = (2, 1, -1, -2, -1, 1)


def fourier_spectrum() -> SpectrumMultiset:
    """{+-|1 + z^k + z^(-k+3l)| : k mod 6, l mod 2} with z = exp(2 pi i / 6)."""
    entries: Dict[int, int] = {}
    for k in range(6):
        for l in range(2):
            squared = 3 + _TWO_COS[k % 6] + _TWO_COS[(-k + 3 * l) % 6] + _TWO_COS[(2 * k - 3 * l) % 6]
            root = isqrt(squared)
            if root * root != squared:
                raise StarCoverError(f"|1+a+b|^2 = {squared} is not a perfect square at k={k}, l={l}")
            for value in (root, -root):
                entries[value] = entries.get(value, 0) + 1
    return SpectrumMultiset(entries)
