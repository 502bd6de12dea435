"""
Permutations and small finite groups.

Composition convention: (p * q)(x) = p(q(x)), so ``compose(xi, tau)`` applies
``tau`` first. With this convention right cosets and right actions read
exactly as xi*sigma and xi*tau_i.

Groups come in two shapes. ``PermutationGroup`` holds concrete elements of a
symmetric group; ``GroupTable`` is an abstract multiplication table on element
indices 0..|G|-1, which is what quotient groups and Galois covers carry.
"""

import itertools
import logging
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .config import get_config
from .errors import (
    DegreeMismatchError,
    GuardExceededError,
    NotASubgroupError,
    NotNormalError,
    StarCoverError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Permutation:
    """Element of S_m in one-line notation (1-based images)."""

    images: Tuple[int, ...]

    def __post_init__(self):
        m = len(self.images)
        if m < 1:
            raise StarCoverError("permutation degree must be at least 1")
        if sorted(self.images) != list(range(1, m + 1)):
            raise StarCoverError(f"not a bijection on 1..{m}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, start=1))

    def order(self) -> int:
        k, p = 1, self
        while not p.is_identity():
            p = compose(p, self)
            k += 1
        return k

    def sign(self) -> int:
        """+1 for even permutations, -1 for odd ones."""
        parity = 0
        for cycle in self.cycles():
            parity += len(cycle) - 1
        return -1 if parity % 2 else 1

    def cycles(self) -> List[Tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cycle.append(x)
                seen.add(x)
                x = self(x)
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def one_line(self) -> str:
        if self.degree < 10:
            return "".join(str(v) for v in self.images)
        return ",".join(str(v) for v in self.images)

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(str(x) for x in c) + ")" for c in cycles)

    def __str__(self) -> str:
        return self.one_line()


def identity(m: int) -> Permutation:
    return Permutation(tuple(range(1, m + 1)))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return p*q, the map x -> p(q(x))."""
    if p.degree != q.degree:
        raise DegreeMismatchError(f"cannot compose degree {p.degree} with degree {q.degree}")
    return Permutation(tuple(p.images[y - 1] for y in q.images))


def inverse(p: Permutation) -> Permutation:
    out = [0] * p.degree
    for i, v in enumerate(p.images, start=1):
        out[v - 1] = i
    return Permutation(tuple(out))


def transposition(i: int, j: int, m: int) -> Permutation:
    images = list(range(1, m + 1))
    images[i - 1], images[j - 1] = j, i
    return Permutation(tuple(images))


def from_cycles(cycles: Iterable[Sequence[int]], m: int) -> Permutation:
    """Build a permutation of degree m from disjoint or overlapping cycles.

    Cycles are composed left to right in the same convention as ``compose``,
    so ``from_cycles([(1,4),(2,4)], 4)`` equals ``compose((1,4), (2,4))``.
    """
    result = identity(m)
    for cycle in cycles:
        images = list(range(1, m + 1))
        for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
            if not 1 <= a <= m:
                raise DegreeMismatchError(f"point {a} outside 1..{m}")
            images[a - 1] = b
        result = compose(result, Permutation(tuple(images)))
    return result


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: Optional[int] = None) -> Permutation:
    """Parse one-line ("4231", "4,2,3,1") or cycle ("(1,4)(2,3)") notation.

    Cycle notation needs ``degree``; one-line notation checks it when given.
    """
    s = text.strip()
    if s.startswith("(") or s in ("", "id", "e"):
        if degree is None:
            raise StarCoverError(f"cycle notation {text!r} needs an explicit degree")
        if s in ("", "id", "e", "()"):
            return identity(degree)
        if _CYCLE_RE.sub("", s).strip():
            raise StarCoverError(f"cannot parse cycle notation {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(s):
            parts = [p for p in re.split(r"[,\s]+", body.strip()) if p]
            try:
                cycles.append(tuple(int(p) for p in parts))
            except ValueError:
                raise StarCoverError(f"cannot parse cycle notation {text!r}")
        return from_cycles([c for c in cycles if c], degree)
    try:
        if "," in s:
            images = tuple(int(p) for p in s.split(","))
        else:
            images = tuple(int(ch) for ch in s)
    except ValueError:
        raise StarCoverError(f"cannot parse one-line notation {text!r}")
    p = Permutation(images)
    if degree is not None and p.degree != degree:
        raise DegreeMismatchError(f"{text!r} has degree {p.degree}, expected {degree}")
    return p


def star_transpositions(n: int) -> List[Permutation]:
    """[tau_1, ..., tau_n] with tau_i = (i, n+1) in S_{n+1}."""
    if n < 1:
        raise StarCoverError("star transpositions need n >= 1")
    return [transposition(i, n + 1, n + 1) for i in range(1, n + 1)]


@dataclass(frozen=True)
class PermutationGroup:
    """Finite group of permutations; elements kept in one-line lexicographic order."""

    degree: int
    elements: Tuple[Permutation, ...]

    def __post_init__(self):
        for p in self.elements:
            if p.degree != self.degree:
                raise DegreeMismatchError(f"element {p} does not have degree {self.degree}")
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements))))

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def element_set(self) -> FrozenSet[Permutation]:
        return frozenset(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p in self.element_set

    def __len__(self) -> int:
        return len(self.elements)

    def issubset(self, other: "PermutationGroup") -> bool:
        return self.element_set <= other.element_set

    @cached_property
    def table(self) -> "GroupTable":
        return table_of(self)


def generate_group(gens: Sequence[Permutation]) -> PermutationGroup:
    """Closure of ``gens`` under composition."""
    if not gens:
        raise StarCoverError("generate_group needs at least one generator")
    m = gens[0].degree
    for g in gens:
        if g.degree != m:
            raise DegreeMismatchError(f"generator {g} does not have degree {m}")
    e = identity(m)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return PermutationGroup(m, tuple(seen))


def symmetric_group(m: int) -> PermutationGroup:
    return PermutationGroup(m, tuple(Permutation(p) for p in itertools.permutations(range(1, m + 1))))


def point_stabilizer(m: int, point: int) -> PermutationGroup:
    """Permutations of degree m fixing ``point``; G_n is point_stabilizer(n+1, n+1)."""
    elems = [Permutation(p) for p in itertools.permutations(range(1, m + 1)) if p[point - 1] == point]
    return PermutationGroup(m, tuple(elems))


@dataclass(frozen=True)
class GroupTable:
    """Abstract finite group as a multiplication table on indices.

    ``products[a][b]`` is the index of a*b. Element 0 need not be the identity;
    ``identity`` says which one is.
    """

    labels: Tuple[str, ...]
    products: Tuple[Tuple[int, ...], ...]
    identity: int

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, a: int, b: int) -> int:
        return self.products[a][b]

    @cached_property
    def inverses(self) -> Tuple[int, ...]:
        out = [0] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.products[a][b] == self.identity:
                    out[a] = b
                    break
        return tuple(out)

    def inverse(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, k: int) -> int:
        result = self.identity
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(
            self.products[a][b] == self.products[b][a]
            for a in range(self.order)
            for b in range(a + 1, self.order)
        )

    def check_axioms(self) -> List[str]:
        """Associativity, identity and inverses; returns violations."""
        problems = []
        n = self.order
        for a in range(n):
            if self.mul(self.identity, a) != a or self.mul(a, self.identity) != a:
                problems.append(f"identity fails on {self.labels[a]}")
            if self.mul(a, self.inverse(a)) != self.identity:
                problems.append(f"{self.labels[a]} has no inverse")
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                problems.append(
                    f"associativity fails on ({self.labels[a]}, {self.labels[b]}, {self.labels[c]})"
                )
                break
        return problems

    def closure(self, gens: Iterable[int]) -> FrozenSet[int]:
        gens = list(gens)
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.products[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def is_subgroup(self, members: Iterable[int]) -> bool:
        s = set(members)
        if self.identity not in s:
            return False
        return all(self.products[a][b] in s for a in s for b in s)

    def is_normal(self, members: Iterable[int]) -> bool:
        s = frozenset(members)
        if not self.is_subgroup(s):
            raise NotASubgroupError("elements do not form a subgroup")
        for g in range(self.order):
            gi = self.inverse(g)
            for h in s:
                if self.mul(self.mul(g, h), gi) not in s:
                    return False
        return True

    def subgroups(self) -> List[FrozenSet[int]]:
        """All subgroups, sorted by order then by sorted element labels."""
        limit = get_config().subgroup_order_limit
        if self.order > limit:
            raise GuardExceededError(
                f"group of order {self.order} exceeds subgroup enumeration limit {limit}"
            )
        cyclic: Dict[FrozenSet[int], int] = {}
        for a in range(self.order):
            c = self.closure([a])
            cyclic.setdefault(c, a)
        found: Dict[FrozenSet[int], Tuple[int, ...]] = {
            frozenset([self.identity]): ()
        }
        queue = list(found.items())
        while queue:
            subgroup, gens = queue.pop()
            for c, a in cyclic.items():
                if c <= subgroup:
                    continue
                joined = self.closure(gens + (a,))
                if joined not in found:
                    found[joined] = gens + (a,)
                    queue.append((joined, gens + (a,)))
        out = sorted(found, key=lambda s: (len(s), sorted(self.labels[i] for i in s)))
        logger.debug("group of order %d has %d subgroups", self.order, len(out))
        return out

    def cosets(self, members: Iterable[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """Left cosets gN ordered by smallest member; returns (coset_of, representatives)."""
        s = sorted(set(members))
        coset_of = [-1] * self.order
        reps: List[int] = []
        for g in range(self.order):
            if coset_of[g] != -1:
                continue
            idx = len(reps)
            reps.append(g)
            for h in s:
                coset_of[self.mul(g, h)] = idx
        return tuple(coset_of), tuple(reps)

    def quotient(self, members: Iterable[int]) -> Tuple["GroupTable", Tuple[int, ...]]:
        """G/N as a table together with the projection G -> G/N."""
        s = frozenset(members)
        if not self.is_normal(s):
            raise NotNormalError("subgroup is not normal")
        coset_of, reps = self.cosets(s)
        k = len(reps)
        products = tuple(
            tuple(coset_of[self.mul(reps[i], reps[j])] for j in range(k)) for i in range(k)
        )
        # cosets are labelled by their smallest representative
        labels = tuple(self.labels[r] for r in reps)
        return GroupTable(labels, products, coset_of[self.identity]), coset_of

    def subtable(self, members: Iterable[int]) -> Tuple["GroupTable", Tuple[int, ...]]:
        """Restrict to a subgroup; returns (table, member indices in ambient order)."""
        ordered = tuple(sorted(set(members)))
        if not self.is_subgroup(ordered):
            raise NotASubgroupError("elements do not form a subgroup")
        pos = {a: i for i, a in enumerate(ordered)}
        products = tuple(tuple(pos[self.mul(a, b)] for b in ordered) for a in ordered)
        return GroupTable(tuple(self.labels[a] for a in ordered), products, pos[self.identity]), ordered


def table_of(group: PermutationGroup) -> GroupTable:
    """Multiplication table of a permutation group in its lexicographic element order."""
    elems = group.elements
    index = {p: i for i, p in enumerate(elems)}
    products = []
    for p in elems:
        row = []
        for q in elems:
            pq = compose(p, q)
            if pq not in index:
                raise NotASubgroupError(f"{p.one_line()}*{q.one_line()} leaves the element set")
            row.append(index[pq])
        products.append(tuple(row))
    return GroupTable(tuple(p.one_line() for p in elems), tuple(products), index[identity(group.degree)])


def _indices_in(sub: PermutationGroup, group: PermutationGroup) -> FrozenSet[int]:
    if sub.degree != group.degree:
        raise DegreeMismatchError(f"subgroup degree {sub.degree} differs from group degree {group.degree}")
    index = {p: i for i, p in enumerate(group.elements)}
    missing = [p for p in sub.elements if p not in index]
    if missing:
        raise NotASubgroupError(f"{missing[0].one_line()} is not an element of the group")
    return frozenset(index[p] for p in sub.elements)


def subgroups(group: PermutationGroup) -> List[PermutationGroup]:
    """All subgroups of ``group``, ordered by size then lexicographic element list."""
    table = group.table
    out = []
    for members in table.subgroups():
        out.append(PermutationGroup(group.degree, tuple(group.elements[i] for i in members)))
    out.sort(key=lambda h: (h.order, h.elements))
    return out


def is_normal(sub: PermutationGroup, group: PermutationGroup) -> bool:
    members = _indices_in(sub, group)
    return group.table.is_normal(members)


def quotient_group(group: PermutationGroup, normal: PermutationGroup) -> GroupTable:
    members = _indices_in(normal, group)
    table, _ = group.table.quotient(members)
    return table
