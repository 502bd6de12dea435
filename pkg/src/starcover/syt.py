"""
Partitions, standard Young tableaux and the content-count formula for the
eigenvalue multiplicities of star graphs.

Rows and columns are 1-based, so the content of a box is column - row.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Dict, List, Tuple

from .config import get_config
from .errors import GuardExceededError, StarCoverError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Partition:
    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p <= 0 for p in parts):
            raise StarCoverError(f"partition parts must be positive: {self.parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise StarCoverError(f"partition parts must be weakly decreasing: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def __str__(self) -> str:
        if max(self.parts) < 10:
            return "".join(str(p) for p in self.parts)
        return ",".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class StandardTableau:
    shape: Partition
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if tuple(len(r) for r in self.rows) != self.shape.parts:
            raise StarCoverError("row lengths do not match the shape")
        entries = sorted(x for r in self.rows for x in r)
        if entries != list(range(1, self.shape.size + 1)):
            raise StarCoverError("entries must be 1..m, each once")
        for r in self.rows:
            if any(a >= b for a, b in zip(r, r[1:])):
                raise StarCoverError(f"row {r} is not increasing")
        for upper, lower in zip(self.rows, self.rows[1:]):
            if any(upper[j] >= lower[j] for j in range(len(lower))):
                raise StarCoverError("columns are not increasing")

    def position(self, m: int) -> Tuple[int, int]:
        """1-based (row, column) of entry m."""
        for i, r in enumerate(self.rows, start=1):
            if m in r:
                return i, r.index(m) + 1
        raise StarCoverError(f"{m} is not an entry of the tableau")

    def reading_word(self) -> Tuple[int, ...]:
        return tuple(x for r in self.rows for x in r)


def partitions(m: int) -> List[Partition]:
    """Partitions of m in reverse lexicographic order: (m), (m-1,1), ..."""
    limit = get_config().partition_size_limit
    if m < 1:
        raise StarCoverError("partitions need m >= 1")
    if m > limit:
        raise GuardExceededError(f"partition enumeration is limited to m <= {limit}")
    out: List[Partition] = []

    def build(remaining: int, largest: int, prefix: List[int]):
        if remaining == 0:
            out.append(Partition(tuple(prefix)))
            return
        for p in range(min(remaining, largest), 0, -1):
            prefix.append(p)
            build(remaining - p, p, prefix)
            prefix.pop()

    build(m, m, [])
    return out


def hook_length_count(shape: Partition) -> int:
    """f^lambda by the hook length formula."""
    conj = shape.conjugate().parts
    hooks = 1
    for i, row in enumerate(shape.parts):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return factorial(shape.size) // hooks


def syt_enumerate(shape: Partition) -> List[StandardTableau]:
    """All standard tableaux of the shape, sorted by reading word."""
    limit = get_config().tableau_size_limit
    if shape.size > limit:
        raise GuardExceededError(f"tableau enumeration is limited to size {limit}")
    m = shape.size
    rows: List[List[int]] = [[] for _ in shape.parts]
    out: List[StandardTableau] = []

    def place(k: int):
        if k > m:
            out.append(StandardTableau(shape, tuple(tuple(r) for r in rows)))
            return
        for i, target in enumerate(shape.parts):
            if len(rows[i]) < target and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(k)
                place(k + 1)
                rows[i].pop()

    place(1)
    out.sort(key=StandardTableau.reading_word)
    expected = hook_length_count(shape)
    if len(out) != expected:
        raise StarCoverError(f"enumerated {len(out)} tableaux of shape {shape}, hook length formula says {expected}")
    return out


def content(tableau: StandardTableau, m: int) -> int:
    row, col = tableau.position(m)
    return col - row


@lru_cache(maxsize=None)
def _largest_entry_contents(parts: Tuple[int, ...]) -> Tuple[Tuple[int, int], ...]:
    shape = Partition(parts)
    counts: Dict[int, int] = {}
    for t in syt_enumerate(shape):
        c = content(t, shape.size)
        counts[c] = counts.get(c, 0) + 1
    return tuple(sorted(counts.items()))


def I_lambda(shape: Partition, n: int, k: int) -> int:
    """Number of tableaux of the shape whose largest entry n+1 has content k."""
    if shape.size != n + 1:
        raise StarCoverError(f"shape {shape} has size {shape.size}, expected {n + 1}")
    return dict(_largest_entry_contents(shape.parts)).get(k, 0)


def _check_degree(n: int):
    limit = get_config().multiplicity_degree_limit
    if n < 1:
        raise StarCoverError("multiplicities need n >= 1")
    if n > limit:
        raise GuardExceededError(f"multiplicity computation is limited to n <= {limit}")


def multiplicity(n: int, k: int) -> int:
    """Multiplicity of k in the spectrum of X_n: sum over shapes of f * I(k)."""
    _check_degree(n)
    return sum(hook_length_count(shape) * I_lambda(shape, n, k) for shape in partitions(n + 1))


@dataclass(frozen=True)
class MultiplicityRow:
    shape: Partition
    counts: Dict[int, int]
    f: int

    def to_dict(self) -> dict:
        return {"lambda": list(self.shape.parts), "I": {str(k): v for k, v in self.counts.items()}, "f": self.f}


def multiplicity_table(n: int) -> List[MultiplicityRow]:
    """Rows (shape, I(k) for k in -n..n, f) for every partition of n+1."""
    _check_degree(n)
    rows = []
    for shape in partitions(n + 1):
        counts = {k: I_lambda(shape, n, k) for k in range(-n, n + 1)}
        f = hook_length_count(shape)
        if sum(counts.values()) != f:
            raise StarCoverError(f"content counts of shape {shape} do not sum to f = {f}")
        rows.append(MultiplicityRow(shape, counts, f))
    logger.debug("multiplicity table for n=%d has %d rows", n, len(rows))
    return rows


def multiplicities(n: int) -> Dict[int, int]:
    """k -> multiplicity for k in -n..n, zeros dropped."""
    table = multiplicity_table(n)
    out = {}
    for k in range(-n, n + 1):
        total = sum(row.f * row.counts[k] for row in table)
        if total:
            out[k] = total
    return out
