"""
Ihara zeta functions, prime cycles and Artin L-functions of Galois covers.

Zeta functions are handled through their reciprocals Z(u) = 1/zeta(u), which
are integer polynomials; every identity is checked in that form.
"""

import logging
from dataclasses import dataclass
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import Matrix, Poly, Symbol
from sympy.polys.domains import ZZ

from .config import get_config
from .cover import GaloisCover, frobenius
from .errors import GraphHypothesisError, GuardExceededError, InexactDivisionError, NotS3Error, StarCoverError
from .graph import Graph, adjacency_matrix, is_connected
from .perm import GroupTable, Permutation, compose, symmetric_group
from .spectra import IdentityCertificate, IntPolynomial, integer_det, interpolate_consecutive, poly_exact_div, poly_mul, poly_product

logger = logging.getLogger(__name__)

u = Symbol("u")

IntMatrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class ZetaReciprocal:
    """1/zeta(u) as an integer polynomial in u; r_minus_1 = |E| - |V|."""

    poly: IntPolynomial
    r_minus_1: int

    def series(self, m: int) -> List[int]:
        """Coefficients of Z(u) up to u^m."""
        c = list(self.poly.coefficients[: m + 1])
        return c + [0] * (m + 1 - len(c))


def _check_zeta_hypotheses(g: Graph):
    if g.num_vertices == 0:
        raise GraphHypothesisError("zeta functions need a nonempty graph")
    if not is_connected(g):
        raise GraphHypothesisError("graph is disconnected")
    low = min(g.degrees())
    if low < 2:
        raise GraphHypothesisError(f"graph has a vertex of degree {low}")


def _one_minus_u2_power(k: int) -> IntPolynomial:
    return IntPolynomial.from_poly(Poly(1 - u**2, u, domain=ZZ) ** k)


def ihara_zeta_reciprocal(g: Graph) -> ZetaReciprocal:
    """(1-u^2)^(|E|-|V|) det(I - uA + u^2 Q) by interpolation in u."""
    _check_zeta_hypotheses(g)
    n = g.num_vertices
    A = adjacency_matrix(g)
    Q = [d - 1 for d in g.degrees()]
    start = -n
    values = []
    for t in range(start, n + 1):
        M = [
            [(1 + t * t * Q[i] if i == j else 0) - t * A[i][j] for j in range(n)]
            for i in range(n)
        ]
        values.append(integer_det(M))
    logger.debug("Bass determinant interpolated from %d points", len(values))
    det_poly = IntPolynomial.from_poly(interpolate_consecutive(values, start, u))
    r_minus_1 = g.num_edges - n
    poly = poly_mul(_one_minus_u2_power(r_minus_1), det_poly)
    if poly.coefficients[0] != 1:
        raise StarCoverError("zeta reciprocal does not have constant term 1")
    return ZetaReciprocal(poly, r_minus_1)


def zeta_from_charpoly(g: Graph, p: IntPolynomial) -> ZetaReciprocal:
    """Reciprocal zeta of a regular graph from its characteristic polynomial.

    With q = d - 1 and s = q u^2 + 1 this is
    (1-u^2)^(|E|-|V|) * sum_k a_k s^k u^(|V|-k) for p = sum_k a_k x^k.
    """
    d = g.regular_degree()
    if d is None:
        raise GraphHypothesisError("zeta_from_charpoly needs a regular graph")
    _check_zeta_hypotheses(g)
    n = g.num_vertices
    if p.degree != n:
        raise StarCoverError(f"polynomial degree {p.degree} does not match {n} vertices")
    s = Poly((d - 1) * u**2 + 1, u, domain=ZZ)
    total = Poly(0, u, domain=ZZ)
    for k, a in enumerate(p.coefficients):
        if a:
            total += a * s**k * Poly(u ** (n - k), u, domain=ZZ)
    r_minus_1 = g.num_edges - n
    return ZetaReciprocal(poly_mul(_one_minus_u2_power(r_minus_1), IntPolynomial.from_poly(total)), r_minus_1)


def regular_quotient_exponent(n: int, order: int) -> int:
    """(n-2)(n+1)!/(2|H|), which equals |E| - |V| for X_n/H."""
    num = (n - 2) * factorial(n + 1)
    if num % (2 * order):
        raise StarCoverError(f"|H| = {order} does not divide (n+1)!/2")
    return num // (2 * order)


# ---------------------------------------------------------------------------
# Prime cycles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeCycle:
    darts: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.darts)


def _is_primitive(seq: Sequence[int]) -> bool:
    n = len(seq)
    for p in range(1, n):
        if n % p == 0 and all(seq[i] == seq[(i + p) % n] for i in range(n)):
            return False
    return True


def _is_least_rotation(seq: Sequence[int]) -> bool:
    t = tuple(seq)
    return all(t <= t[i:] + t[:i] for i in range(1, len(t)))


def enumerate_primes(g: Graph, max_len: int) -> List[PrimeCycle]:
    """Primes of length <= max_len as least rotations, ordered by length then darts."""
    limit = get_config().prime_length_limit
    if max_len > limit:
        raise GuardExceededError(f"prime enumeration is limited to length {limit}")
    found: List[PrimeCycle] = []
    darts = g.darts

    # all darts of a least rotation are >= its first dart
    def extend(path: List[int]):
        last = path[-1]
        if darts[last].terminus == darts[path[0]].origin:
            if darts[last].pair != path[0] and _is_least_rotation(path) and _is_primitive(path):
                found.append(PrimeCycle(tuple(path)))
        if len(path) == max_len:
            return
        for e in g.out_darts[darts[last].terminus]:
            if e >= path[0] and e != darts[last].pair:
                path.append(e)
                extend(path)
                path.pop()

    for d0 in range(g.num_darts):
        extend([d0])
    found.sort(key=lambda c: (c.length, c.darts))
    logger.debug("found %d primes up to length %d", len(found), max_len)
    return found


def count_nonbacktracking_cycles(g: Graph, length: int) -> int:
    """Closed non-backtracking tailless dart walks of the given length, with start."""
    darts = g.darts
    count = 0

    def walk(first: int, last: int, steps: int):
        nonlocal count
        if steps == length:
            if darts[last].terminus == darts[first].origin and darts[last].pair != first:
                count += 1
            return
        for e in g.out_darts[darts[last].terminus]:
            if e != darts[last].pair:
                walk(first, e, steps + 1)

    if length < 1:
        return 0
    for d0 in range(g.num_darts):
        walk(d0, d0, 1)
    return count


def series_mul(a: Sequence[int], b: Sequence[int], m: int) -> List[int]:
    out = [0] * (m + 1)
    for i, x in enumerate(a[: m + 1]):
        if x:
            for j, y in enumerate(b[: m + 1 - i]):
                out[i + j] += x * y
    return out


def series_inverse(a: Sequence[int], m: int) -> List[int]:
    """Power series inverse of a series with constant term 1."""
    if not a or a[0] != 1:
        raise StarCoverError("series inverse needs constant term 1")
    out = [0] * (m + 1)
    out[0] = 1
    for k in range(1, m + 1):
        out[k] = -sum(a[i] * out[k - i] for i in range(1, min(k, len(a) - 1) + 1))
    return out


def euler_product_reciprocal(primes: Sequence[PrimeCycle], m: int) -> List[int]:
    """prod (1 - u^len) over the given primes, truncated at u^m."""
    out = [1] + [0] * m
    for c in primes:
        if c.length <= m:
            factor = [0] * (m + 1)
            factor[0], factor[c.length] = 1, -1
            out = series_mul(out, factor, m)
    return out


def cycle_count_series(z: ZetaReciprocal, m: int) -> List[int]:
    """N_1..N_m with sum N_k u^k = u d/du log zeta(u) = -u Z'(u)/Z(u)."""
    limit = get_config().series_length_limit
    if m > limit:
        raise GuardExceededError(f"cycle count series is limited to {limit} terms")
    c = z.series(m)
    N = [0] * (m + 1)
    for k in range(1, m + 1):
        N[k] = -k * c[k] - sum(c[i] * N[k - i] for i in range(1, k))
    return N[1:]


# ---------------------------------------------------------------------------
# Representations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupRepresentation:
    """Integer matrix representation indexed by the elements of a group table."""

    name: str
    degree: int
    matrices: Tuple[IntMatrix, ...]

    def character(self, g: int) -> int:
        return sum(self.matrices[g][i][i] for i in range(self.degree))

    def characters(self) -> List[int]:
        return [self.character(g) for g in range(len(self.matrices))]

    def is_homomorphism(self, table: GroupTable) -> bool:
        for a in range(table.order):
            for b in range(table.order):
                if Matrix(self.matrices[table.mul(a, b)]) != Matrix(self.matrices[a]) * Matrix(self.matrices[b]):
                    return False
        return True

    def reciprocal_factor(self, g: int) -> List[int]:
        """Coefficients of det(I - t rho(g)) in t."""
        coeffs = Matrix(self.matrices[g]).charpoly().all_coeffs()
        return [int(c) for c in coeffs]


def _std_matrix(p: Permutation) -> IntMatrix:
    # basis e1-e3, e2-e3 of the sum-zero subspace
    cols = []
    for j in (1, 2):
        v = [0, 0, 0]
        v[p(j) - 1] += 1
        v[p(3) - 1] -= 1
        cols.append((v[0], v[1]))
    return ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))


@dataclass(frozen=True)
class S3Representation:
    """Irreducible representation of S_3 on the permutations of {1,2,3}."""

    name: str
    degree: int
    matrices: Dict[Permutation, IntMatrix]

    def __hash__(self):
        return hash(self.name)

    def character(self, p: Permutation) -> int:
        return sum(self.matrices[p][i][i] for i in range(self.degree))

    def on(self, table: GroupTable) -> GroupRepresentation:
        """Pull back along the canonical identification of ``table`` with S_3."""
        ident = s3_identification(table)
        return GroupRepresentation(self.name, self.degree, tuple(self.matrices[p] for p in ident))


def s3_irreps() -> List[S3Representation]:
    """trivial, sgn and std with integer matrices."""
    elems = symmetric_group(3).elements
    trivial = S3Representation("trivial", 1, {p: ((1,),) for p in elems})
    sgn = S3Representation("sgn", 1, {p: ((p.sign(),),) for p in elems})
    std = S3Representation("std", 2, {p: _std_matrix(p) for p in elems})
    return [trivial, sgn, std]


def s3_irrep(name: str) -> S3Representation:
    for rho in s3_irreps():
        if rho.name == name:
            return rho
    raise StarCoverError(f"unknown representation {name!r}; expected trivial, sgn or std")


def s3_identification(table: GroupTable) -> Tuple[Permutation, ...]:
    """Isomorphism table -> S_3 sending the first order-2 element to (1,2)
    and the first order-3 element to (1,2,3)."""
    if table.order != 6 or table.is_abelian():
        raise NotS3Error(f"group of order {table.order} is not isomorphic to S_3")
    a = next(g for g in range(table.order) if table.element_order(g) == 2)
    b = next(g for g in range(table.order) if table.element_order(g) == 3)
    pa = Permutation((2, 1, 3))
    pb = Permutation((2, 3, 1))
    image: List[Optional[Permutation]] = [None] * 6
    for i in range(3):
        for j in range(2):
            g = table.mul(table.power(b, i), table.power(a, j))
            p = Permutation((1, 2, 3))
            for _ in range(i):
                p = compose(p, pb)
            for _ in range(j):
                p = compose(p, pa)
            image[g] = p
    if any(p is None for p in image):
        raise NotS3Error("elements of order 2 and 3 do not generate the group")
    for x in range(6):
        for y in range(6):
            if image[table.mul(x, y)] != compose(image[x], image[y]):
                raise NotS3Error("canonical map to S_3 is not a homomorphism")
    return tuple(image)


def sign_representation(table: GroupTable) -> GroupRepresentation:
    """The nontrivial character of a group of order 2."""
    if table.order != 2:
        raise StarCoverError("sign_representation needs a group of order 2")
    return GroupRepresentation(
        "sgn_C2", 1, tuple(((1 if g == table.identity else -1,),) for g in range(2))
    )


def induced_character(table: GroupTable, members: Sequence[int], sub_character: Sequence[int]) -> List[int]:
    """Character of the induced representation; sub_character follows sorted(members)."""
    ordered = sorted(members)
    chi = {h: sub_character[i] for i, h in enumerate(ordered)}
    out = []
    for g in range(table.order):
        total = 0
        for x in range(table.order):
            conj = table.mul(table.mul(table.inverse(x), g), x)
            if conj in chi:
                total += chi[conj]
        if total % len(ordered):
            raise StarCoverError("induced character is not integral")
        out.append(total // len(ordered))
    return out


# ---------------------------------------------------------------------------
# Artin L-functions
# ---------------------------------------------------------------------------


def _as_group_rep(gc: GaloisCover, rho: Union[S3Representation, GroupRepresentation]) -> GroupRepresentation:
    if isinstance(rho, S3Representation):
        return rho.on(gc.group)
    if len(rho.matrices) != gc.group.order:
        raise StarCoverError(f"representation has {len(rho.matrices)} matrices for a group of order {gc.group.order}")
    return rho


def prime_start(gc: GaloisCover, prime: PrimeCycle) -> int:
    """Smallest total vertex over the prime's origin."""
    origin = gc.base.darts[prime.darts[0]].origin
    return gc.covering.fiber(origin)[0]


def artin_l_reciprocal_truncated(
    gc: GaloisCover,
    rho: Union[S3Representation, GroupRepresentation],
    max_len: int,
    primes: Optional[Sequence[PrimeCycle]] = None,
) -> List[int]:
    """prod over primes of det(I - rho(Frob) u^len), coefficients up to u^max_len."""
    limit = get_config().artin_length_limit
    if max_len > limit:
        raise GuardExceededError(f"Artin L-function series are limited to length {limit}")
    rep = _as_group_rep(gc, rho)
    if primes is None:
        primes = enumerate_primes(gc.base, max_len)
    out = [1] + [0] * max_len
    for c in primes:
        if c.length > max_len:
            continue
        g = frobenius(gc, c.darts, prime_start(gc, c))
        coeffs = rep.reciprocal_factor(g)
        factor = [0] * (max_len + 1)
        for k, a in enumerate(coeffs):
            if k * c.length <= max_len:
                factor[k * c.length] += a
        out = series_mul(out, factor, max_len)
    return out


def zeta_from_artin(gc: GaloisCover, max_len: int) -> List[int]:
    """Truncated Z of the total graph as prod over S_3 irreps of (L^-1)^degree."""
    primes = enumerate_primes(gc.base, max_len)
    out = [1] + [0] * max_len
    for rho in s3_irreps():
        series = artin_l_reciprocal_truncated(gc, rho, max_len, primes)
        for _ in range(rho.degree):
            out = series_mul(out, series, max_len)
    return out


@dataclass(frozen=True)
class LFunctions:
    """Reciprocal L-functions of sgn and std for an S_3 cover family."""

    sgn: IntPolynomial
    std: IntPolynomial


def l_functions_s3(zY: ZetaReciprocal, zX: ZetaReciprocal, zQ: ZetaReciprocal, zT: ZetaReciprocal) -> LFunctions:
    """Lsgn^-1 = Z_Q/Z_X and Lstd^-1 = Z_Y Z_X/(Z_T Z_Q), both exact."""
    sgn = poly_exact_div(zQ.poly, zX.poly)
    if sgn is None:
        raise InexactDivisionError("Z_X does not divide Z_Q; not an S_3 cover family")
    std = poly_exact_div(poly_mul(zY.poly, zX.poly), poly_mul(zT.poly, zQ.poly))
    if std is None:
        raise InexactDivisionError("Z_T Z_Q does not divide Z_Y Z_X; not an S_3 cover family")
    if poly_product([zX.poly, sgn, std, std]) != zY.poly:
        raise InexactDivisionError("Z_Y does not factor as Z_X Lsgn^-1 (Lstd^-1)^2")
    return LFunctions(sgn, std)


def verify_zeta_identity(zY: ZetaReciprocal, zX: ZetaReciprocal, zQ: ZetaReciprocal, zT: ZetaReciprocal) -> IdentityCertificate:
    """Z_Y Z_X^2 = Z_Q Z_T^2."""
    lhs = poly_product([zY.poly, zX.poly, zX.poly])
    rhs = poly_product([zQ.poly, zT.poly, zT.poly])
    return IdentityCertificate(lhs == rhs, lhs, rhs)
