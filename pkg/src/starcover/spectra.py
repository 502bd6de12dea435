"""
Exact characteristic polynomials and integral spectra.

Everything here is integer arithmetic. Determinants are taken over ZZ with
sympy's fraction-free elimination and characteristic polynomials are
recovered by interpolating det(tI - A) at consecutive integers.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Sequence, Tuple

from sympy import Poly, Symbol, factor_list, integer_nthroot
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyerrors import ExactQuotientFailed

from .errors import InexactDivisionError, StarCoverError
from .graph import Graph, adjacency_matrix

logger = logging.getLogger(__name__)

x = Symbol("x")


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients in ascending degree; () is zero."""

    coefficients: Tuple[int, ...]

    def __post_init__(self):
        coeffs = [int(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_poly(cls, p: Poly) -> "IntPolynomial":
        coeffs = p.all_coeffs()[::-1]
        for c in coeffs:
            if not c.is_integer:
                raise StarCoverError(f"non-integer coefficient {c}")
        return cls(tuple(int(c) for c in coeffs))

    @classmethod
    def from_roots(cls, roots: Mapping[int, int]) -> "IntPolynomial":
        """Monic polynomial prod (x - r)^m."""
        result = Poly(1, x, domain=ZZ)
        for r, m in sorted(roots.items()):
            result = result * Poly(x - r, x, domain=ZZ) ** m
        return cls.from_poly(result)

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    def to_poly(self, gen: Symbol = x) -> Poly:
        return Poly(list(reversed(self.coefficients)) or [0], gen, domain=ZZ)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def __call__(self, t: int) -> int:
        return poly_eval(self, t)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        return poly_mul(self, other)

    def __pow__(self, k: int) -> "IntPolynomial":
        return IntPolynomial.from_poly(self.to_poly() ** k)


def poly_mul(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    return IntPolynomial.from_poly(p.to_poly() * q.to_poly())


def poly_product(factors: Sequence[IntPolynomial]) -> IntPolynomial:
    result = IntPolynomial.one()
    for f in factors:
        result = poly_mul(result, f)
    return result


def poly_exact_div(p: IntPolynomial, q: IntPolynomial) -> Optional[IntPolynomial]:
    """p / q when the division is exact over the integers, otherwise None."""
    if not q.coefficients:
        raise ZeroDivisionError("division by the zero polynomial")
    try:
        quotient = p.to_poly().exquo(q.to_poly())
    except ExactQuotientFailed:
        return None
    if not all(c.is_integer for c in quotient.all_coeffs()):
        return None
    return IntPolynomial(tuple(int(c) for c in quotient.all_coeffs()[::-1]))


def poly_eval(p: IntPolynomial, t: int) -> int:
    acc = 0
    for c in reversed(p.coefficients):
        acc = acc * t + c
    return acc


def integer_det(rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    M = DomainMatrix([[ZZ(v) for v in row] for row in rows], (n, n), ZZ)
    return int(M.det())


def interpolate_consecutive(values: Sequence[int], start: int, gen: Symbol = x) -> Poly:
    """The polynomial of degree < len(values) through (start + i, values[i]).

    Uses integer forward differences; raises if a Newton coefficient is not
    integral, which cannot happen for integer-coefficient sources.
    """
    diffs = list(values)
    newton = []
    factorial = 1
    for k in range(len(values)):
        if k:
            factorial *= k
        head = diffs[0]
        if head % factorial:
            raise StarCoverError("interpolated polynomial does not have integer coefficients")
        newton.append(head // factorial)
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]

    s = Poly(gen, gen, domain=ZZ)
    result = Poly(0, gen, domain=ZZ)
    for k in range(len(newton) - 1, -1, -1):
        result = result * (s - k) + newton[k]
    return result.shift(-start)


def charpoly(g: Graph) -> IntPolynomial:
    """det(xI - A) by evaluation at |V|+1 consecutive integers."""
    n = g.num_vertices
    if n == 0:
        return IntPolynomial.one()
    A = adjacency_matrix(g)
    start = -(n // 2)
    values = []
    for t in range(start, start + n + 1):
        M = [[(t if i == j else 0) - A[i][j] for j in range(n)] for i in range(n)]
        values.append(integer_det(M))
    logger.debug("interpolating characteristic polynomial from %d determinants", len(values))
    p = IntPolynomial.from_poly(interpolate_consecutive(values, start))
    if p.degree != n or not p.is_monic():
        raise StarCoverError("characteristic polynomial is not monic of degree |V|")
    return p


@dataclass(frozen=True)
class SpectrumMultiset:
    """Integer eigenvalues with multiplicities plus the non-integral residual."""

    entries: Dict[int, int]
    residual: IntPolynomial = field(default_factory=IntPolynomial.one)

    def __post_init__(self):
        object.__setattr__(self, "entries", {k: v for k, v in sorted(self.entries.items()) if v})

    def __hash__(self):
        return hash((tuple(self.entries.items()), self.residual))

    @property
    def size(self) -> int:
        return sum(self.entries.values()) + max(self.residual.degree, 0)

    def is_integral(self) -> bool:
        return self.residual.degree == 0

    def multiplicity(self, k: int) -> int:
        return self.entries.get(k, 0)

    def __add__(self, other: "SpectrumMultiset") -> "SpectrumMultiset":
        merged = dict(self.entries)
        for k, m in other.entries.items():
            merged[k] = merged.get(k, 0) + m
        return SpectrumMultiset(merged, poly_mul(self.residual, other.residual))


def _root_bound(p: IntPolynomial) -> int:
    """Fujiwara bound 2 * max |a_{n-k}|^(1/k) for a monic p, rounded up."""
    n = p.degree
    best = 0
    for k in range(1, n + 1):
        a = abs(p.coefficients[n - k])
        if a == 0:
            continue
        root, exact = integer_nthroot(a, k)
        best = max(best, root if exact else root + 1)
    return 2 * best


def _divide_linear(p: IntPolynomial, r: int) -> IntPolynomial:
    """Synthetic division by (x - r); the caller guarantees p(r) = 0."""
    coeffs = list(reversed(p.coefficients))
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(c + r * out[-1])
    return IntPolynomial(tuple(reversed(out)))


def integral_spectrum(p: IntPolynomial) -> SpectrumMultiset:
    """Strip integer roots from a monic polynomial, smallest candidate first."""
    if not p.is_monic():
        raise StarCoverError("integral_spectrum needs a monic polynomial")
    bound = _root_bound(p)
    entries: Dict[int, int] = {}
    residual = p
    for r in range(-bound, bound + 1):
        while residual.degree > 0 and poly_eval(residual, r) == 0:
            residual = _divide_linear(residual, r)
            entries[r] = entries.get(r, 0) + 1
    if residual.degree > 0:
        logger.warning("residual factor of degree %d has no integer roots", residual.degree)
    return SpectrumMultiset(entries, residual)


@dataclass(frozen=True)
class IdentityCertificate:
    """Outcome of an exact polynomial identity check with both expansions."""

    holds: bool
    lhs: IntPolynomial
    rhs: IntPolynomial

    def first_difference(self) -> Optional[int]:
        """Smallest degree where the two sides differ."""
        a, b = self.lhs.coefficients, self.rhs.coefficients
        for k in range(max(len(a), len(b))):
            ca = a[k] if k < len(a) else 0
            cb = b[k] if k < len(b) else 0
            if ca != cb:
                return k
        return None

    def __bool__(self) -> bool:
        return self.holds


def verify_charpoly_identity(lhs: Sequence[IntPolynomial], rhs: Sequence[IntPolynomial]) -> IdentityCertificate:
    left = poly_product(lhs)
    right = poly_product(rhs)
    return IdentityCertificate(left == right, left, right)


def _exact_square_root(p: IntPolynomial) -> IntPolynomial:
    spectrum = integral_spectrum(p)
    if any(m % 2 for m in spectrum.entries.values()):
        raise InexactDivisionError("polynomial is not a perfect square")
    root = IntPolynomial.from_roots({k: m // 2 for k, m in spectrum.entries.items()})
    if spectrum.residual.degree > 0:
        content, factors = factor_list(spectrum.residual.to_poly().as_expr(), x)
        if content != 1 or any(e % 2 for _, e in factors):
            raise InexactDivisionError("residual factor is not a perfect square")
        for f, e in factors:
            root = poly_mul(root, IntPolynomial.from_poly(Poly(f, x, domain=ZZ) ** (e // 2)))
    return root


def derive_from_identity(p_total: IntPolynomial, p_base: IntPolynomial, p_quadratic: IntPolynomial) -> IntPolynomial:
    """Solve P_Y * P_X^2 = P_Q * P_T^2 for P_T."""
    square = poly_exact_div(poly_mul(p_total, poly_mul(p_base, p_base)), p_quadratic)
    if square is None:
        raise InexactDivisionError("P_Q does not divide P_Y * P_X^2")
    return _exact_square_root(square)
