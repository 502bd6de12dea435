"""
Verification suites run by ``starcover verify``.

Each suite is a list of named checks composed from library operations. A
check records whether it passed plus a JSON-ready detail dict with the
certificates (expanded or factored polynomials, vertex counts, bijections).
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, List

from .cover import (
    GaloisCover,
    delete_edges_cover,
    frobenius,
    intermediate_covers,
    quotient,
    quotient_galois,
    restrict_to_subgroup,
    star_cover,
    validate_cover,
    validate_galois,
)
from .errors import NotNormalError, StarCoverError
from .graph import (
    Graph,
    complete_graph,
    cube_graph,
    cycle_graph,
    is_connected,
    isomorphic,
    truncated_tetrahedron_graph,
)
from .honeycomb import (
    G_K4,
    G_T,
    LAMBDA_Q,
    LAMBDA_X3,
    build_quotient,
    fourier_spectrum,
    label_vertices_s4,
    labeling_isomorphism,
    lattice_projection,
)
from .perm import PermutationGroup, generate_group, parse_permutation
from .spectra import (
    IntPolynomial,
    SpectrumMultiset,
    charpoly,
    derive_from_identity,
    integral_spectrum,
    verify_charpoly_identity,
)
from .syt import hook_length_count, multiplicity_table, multiplicities, partitions
from .utils.formatting import format_factored, format_spectrum, format_zeta
from .zeta import (
    artin_l_reciprocal_truncated,
    count_nonbacktracking_cycles,
    cycle_count_series,
    enumerate_primes,
    euler_product_reciprocal,
    ihara_zeta_reciprocal,
    l_functions_s3,
    regular_quotient_exponent,
    s3_irrep,
    series_mul,
    sign_representation,
    verify_zeta_identity,
    zeta_from_artin,
    zeta_from_charpoly,
)

logger = logging.getLogger(__name__)

# Characteristic polynomials as root -> multiplicity
X3_QUOTIENT_POLYNOMIALS: Dict[str, Dict[int, int]] = {
    "X3": {-3: 1, -2: 6, -1: 3, 0: 4, 1: 3, 2: 6, 3: 1},
    "K4": {-1: 3, 3: 1},
    "Q": {-3: 1, -1: 3, 1: 3, 3: 1},
    "T": {-2: 3, -1: 3, 0: 2, 2: 3, 3: 1},
}

KLEIN_POLYNOMIALS: Dict[str, Dict[int, int]] = {
    "X4/V": {-4: 1, -2: 10, -1: 4, 1: 4, 2: 10, 4: 1},
    "K5": {-1: 4, 4: 1},
    "Q'": {-4: 1, -1: 4, 1: 4, 4: 1},
    "T'": {-2: 5, -1: 4, 2: 5, 4: 1},
}

# quotient of X4 by the non-normal Klein group <(1,2),(3,4)>
NON_NORMAL_KLEIN_POLYNOMIAL = {-2: 11, -1: 4, 0: 5, 2: 5, 3: 4, 4: 1}

# n = 3 content table: shape -> (I(k) for nonzero k, f)
X3_CONTENT_TABLE: Dict[str, Any] = {
    "4": ({3: 1}, 1),
    "31": ({-1: 1, 2: 2}, 3),
    "22": ({0: 2}, 2),
    "211": ({-2: 2, 1: 1}, 3),
    "1111": ({-3: 1}, 1),
}

NORMAL_KLEIN = ("(1,2)(3,4)", "(1,3)(2,4)")
NON_NORMAL_KLEIN = ("(1,2)", "(3,4)")

ARTIN_LENGTH = 8


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "details": self.details}


@dataclass
class SuiteReport:
    suite: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str, passed: bool, **details) -> CheckResult:
        result = CheckResult(name, bool(passed), details)
        self.checks.append(result)
        logger.debug("%s / %s: %s", self.suite, name, "PASS" if passed else "FAIL")
        return result

    def to_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


# ---------------------------------------------------------------------------
# Shared constructions
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def star(n: int) -> GaloisCover:
    return star_cover(n)


@lru_cache(maxsize=None)
def star_charpoly(n: int) -> IntPolynomial:
    return charpoly(star(n).total)


def subgroup_of_star(n: int, generators) -> PermutationGroup:
    return generate_group([parse_permutation(g, n + 1) for g in generators])


def s3_family(gc: GaloisCover) -> Dict[str, Graph]:
    """Y, X, Q = Y/C3, T = Y/C2 for a cover with group S_3."""
    subs = gc.group.subgroups()
    c3 = next(s for s in subs if len(s) == 3)
    c2 = next(s for s in subs if len(s) == 2)
    return {"Y": gc.total, "X": gc.base, "Q": quotient(gc, c3).graph, "T": quotient(gc, c2).graph}


def _poly_detail(p: IntPolynomial) -> str:
    return format_factored(p)


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def run_s3() -> SuiteReport:
    report = SuiteReport("s3")
    x3 = star(3)
    family = s3_family(x3)
    polys = {
        "X3": star_charpoly(3),
        "K4": charpoly(family["X"]),
        "Q": charpoly(family["Q"]),
        "T": charpoly(family["T"]),
    }
    for name, expected in X3_QUOTIENT_POLYNOMIALS.items():
        report.check(
            f"P_{name}",
            polys[name] == IntPolynomial.from_roots(expected),
            polynomial=_poly_detail(polys[name]),
        )

    cert = verify_charpoly_identity([polys["X3"], polys["K4"], polys["K4"]], [polys["Q"], polys["T"], polys["T"]])
    report.check(
        "P_X3 P_K4^2 = P_Q P_T^2",
        cert.holds,
        lhs=_poly_detail(cert.lhs),
        rhs=_poly_detail(cert.rhs),
        lhs_coefficients=list(cert.lhs.coefficients),
        rhs_coefficients=list(cert.rhs.coefficients),
    )

    try:
        derived = derive_from_identity(polys["X3"], polys["K4"], polys["Q"])
        report.check("P_T recovered from the identity", derived == polys["T"], derived=_poly_detail(derived))
    except StarCoverError as err:
        report.check("P_T recovered from the identity", False, error=str(err))

    cube_map = isomorphic(family["Q"], cube_graph())
    report.check("X3/C3 is the cube", cube_map is not None, bijection=cube_map)
    tt_map = isomorphic(family["T"], truncated_tetrahedron_graph())
    report.check("X3/C2 is the truncated tetrahedron", tt_map is not None, bijection=tt_map)

    proper = [c for c in intermediate_covers(x3) if 1 < c.order < x3.group.order]
    sizes = sorted(c.graph.num_vertices for c in proper)
    classes = sorted({c.isomorphism_class for c in proper})
    report.check(
        "intermediate covers",
        sizes == [8, 12, 12, 12] and len(classes) == 2,
        sizes=sizes,
        classes=len(classes),
        normal=[c.order for c in proper if c.normal],
    )

    problems = validate_galois(x3)
    c3 = next(s for s in x3.group.subgroups() if len(s) == 3)
    cube_cover = quotient_galois(x3, c3)
    problems += validate_galois(cube_cover)
    report.check("Galois validation of X3 and X3/C3", not problems, violations=problems[:5])

    spectrum = integral_spectrum(polys["X3"])
    report.check(
        "0..3 are eigenvalues of X3",
        all(spectrum.multiplicity(k) > 0 for k in range(4)),
        spectrum=format_spectrum(spectrum),
    )

    exponents = {}
    for members in x3.group.subgroups():
        g = quotient(x3, members).graph
        exponents[len(members)] = (regular_quotient_exponent(3, len(members)), g.num_edges - g.num_vertices)
    report.check(
        "zeta prefactor exponent is |E|-|V|",
        all(a == b for a, b in exponents.values()),
        exponents={str(k): list(v) for k, v in sorted(exponents.items())},
    )
    return report


def _klein_quotients():
    x4 = star(4)
    normal = subgroup_of_star(4, NORMAL_KLEIN)
    y = quotient_galois(x4, normal)
    return x4, normal, y


def run_s4v() -> SuiteReport:
    report = SuiteReport("s4v")
    x4, normal, y = _klein_quotients()
    family = s3_family(y)
    report.check(
        "X4/V is a 30-vertex S_3-cover of K5",
        y.total.num_vertices == 30 and y.group.order == 6 and not y.group.is_abelian() and not validate_galois(y),
        vertices=y.total.num_vertices,
    )
    polys = {
        "X4/V": charpoly(family["Y"]),
        "K5": charpoly(family["X"]),
        "Q'": charpoly(family["Q"]),
        "T'": charpoly(family["T"]),
    }
    for name, expected in KLEIN_POLYNOMIALS.items():
        report.check(f"P_{name}", polys[name] == IntPolynomial.from_roots(expected), polynomial=_poly_detail(polys[name]))
    cert = verify_charpoly_identity(
        [polys["X4/V"], polys["K5"], polys["K5"]], [polys["Q'"], polys["T'"], polys["T'"]]
    )
    report.check("P_X4/V P_K5^2 = P_Q' P_T'^2", cert.holds, lhs=_poly_detail(cert.lhs), rhs=_poly_detail(cert.rhs))

    other = subgroup_of_star(4, NON_NORMAL_KLEIN)
    other_poly = charpoly(quotient(x4, other).graph)
    try:
        quotient_galois(x4, other)
        rejected = False
    except NotNormalError:
        rejected = True
    report.check(
        "<(1,2),(3,4)> is not normal and gives a different quotient",
        rejected and other_poly == IntPolynomial.from_roots(NON_NORMAL_KLEIN_POLYNOMIAL),
        polynomial=_poly_detail(other_poly),
    )

    zetas = {k: ihara_zeta_reciprocal(g) for k, g in family.items()}
    zcert = verify_zeta_identity(zetas["Y"], zetas["X"], zetas["Q"], zetas["T"])
    report.check("Z_Y Z_K5^2 = Z_Q' Z_T'^2", zcert.holds, degree=zcert.lhs.degree)
    try:
        lf = l_functions_s3(zetas["Y"], zetas["X"], zetas["Q"], zetas["T"])
        report.check("L-function divisions are exact", True, sgn_degree=lf.sgn.degree, std_degree=lf.std.degree)
    except StarCoverError as err:
        report.check("L-function divisions are exact", False, error=str(err))
    return report


def run_zeta3() -> SuiteReport:
    report = SuiteReport("zeta3")
    x3 = star(3)
    family = s3_family(x3)
    zetas = {k: ihara_zeta_reciprocal(g) for k, g in family.items()}
    degrees = {k: z.poly.degree for k, z in zetas.items()}
    report.check("zeta degrees", degrees == {"Y": 72, "X": 12, "Q": 24, "T": 36}, degrees=degrees)

    agree = {k: zeta_from_charpoly(g, charpoly(g)) == zetas[k] for k, g in family.items()}
    report.check("Bass determinant agrees with the characteristic polynomial route", all(agree.values()), agree=agree)

    cert = verify_zeta_identity(zetas["Y"], zetas["X"], zetas["Q"], zetas["T"])
    report.check("Z_X3 Z_K4^2 = Z_Q Z_T^2", cert.holds, first_difference=cert.first_difference())

    m = ARTIN_LENGTH
    expected = {"trivial": zetas["X"].series(m)}
    try:
        lf = l_functions_s3(zetas["Y"], zetas["X"], zetas["Q"], zetas["T"])
    except StarCoverError as err:
        report.check("Z_X3 = Z_K4 Lsgn^-1 (Lstd^-1)^2", False, error=str(err))
    else:
        report.check(
            "Z_X3 = Z_K4 Lsgn^-1 (Lstd^-1)^2",
            lf.sgn.degree == 12 and lf.std.degree == 24,
            Lsgn=format_zeta(lf.sgn),
            Lstd=format_zeta(lf.std),
        )
        for name, p in (("sgn", lf.sgn), ("std", lf.std)):
            c = list(p.coefficients[: m + 1])
            expected[name] = c + [0] * (m + 1 - len(c))

    primes = enumerate_primes(x3.base, m)
    for name, target in expected.items():
        series = artin_l_reciprocal_truncated(x3, s3_irrep(name), m, primes)
        report.check(f"Euler product of L({name}) to u^{m}", series == target, series=series)

    report.check("Z_X3 from Frobenius data", zeta_from_artin(x3, m) == zetas["Y"].series(m))

    c2 = next(s for s in x3.group.subgroups() if len(s) == 2)
    y_over_t = restrict_to_subgroup(x3, c2)
    induced = artin_l_reciprocal_truncated(y_over_t, sign_representation(y_over_t.group), m)
    if "sgn" in expected:
        report.check(
            "L(sgn_C2, Y/T) = L(sgn) L(std)",
            induced == series_mul(expected["sgn"], expected["std"], m),
            series=induced,
        )

    c3 = next(s for s in x3.group.subgroups() if len(s) == 3)
    q_over_x = quotient_galois(x3, c3)
    short = 6
    via_q = artin_l_reciprocal_truncated(q_over_x, sign_representation(q_over_x.group), short)
    via_y = artin_l_reciprocal_truncated(x3, s3_irrep("sgn"), short)
    report.check("L(sgn) computed on Q/X and on Y/X agree", via_q == via_y, series=via_q)

    deleted = delete_edges_cover(x3, [(0, 1)])
    dfam = s3_family(deleted)
    dz = {k: ihara_zeta_reciprocal(g) for k, g in dfam.items()}
    dcert = verify_zeta_identity(dz["Y"], dz["X"], dz["Q"], dz["T"])
    report.check(
        "edge-deleted family over K4 - e",
        dcert.holds and not validate_galois(deleted),
        degree=dcert.lhs.degree,
    )

    k4 = complete_graph(4)
    z_k4 = zetas["X"]
    report.check(
        "N_3(K4) = 24",
        cycle_count_series(z_k4, 3)[2] == 24 == count_nonbacktracking_cycles(k4, 3),
    )
    euler = {}
    for name, g in (("K4", k4), ("C3", cycle_graph(3)), ("cube", cube_graph())):
        z = ihara_zeta_reciprocal(g)
        euler[name] = euler_product_reciprocal(enumerate_primes(g, 8), 8) == z.series(8)
        counts = [count_nonbacktracking_cycles(g, k) for k in range(1, 9)]
        euler[name] = euler[name] and counts == cycle_count_series(z, 8)
    report.check("Euler products and cycle counts to u^8", all(euler.values()), graphs=euler)

    std = s3_irrep("std").on(x3.group)
    independent = True
    for c in enumerate_primes(x3.base, 5):
        origin = x3.base.darts[c.darts[0]].origin
        factors = {tuple(std.reciprocal_factor(frobenius(x3, c.darts, s))) for s in x3.covering.fiber(origin)}
        independent = independent and len(factors) == 1
    report.check("det(I - std(Frob) u^len) does not depend on the lift", independent)
    return report


def run_honeycomb() -> SuiteReport:
    report = SuiteReport("honeycomb")
    x3 = star(3).total
    targets = {
        "Lambda_Q": (LAMBDA_Q, cube_graph(), 8),
        "Lambda_X3": (LAMBDA_X3, x3, 24),
        "G_T": (G_T, truncated_tetrahedron_graph(), 12),
        "G_K4": (G_K4, complete_graph(4), 4),
    }
    for name, (spec, target, size) in targets.items():
        g = build_quotient(spec).graph
        mapping = isomorphic(g, target)
        report.check(
            f"L/{name}",
            g.num_vertices == size and g.regular_degree() == 3 and is_connected(g) and mapping is not None,
            vertices=g.num_vertices,
            bijection=mapping,
        )

    labels = label_vertices_s4(LAMBDA_X3)
    try:
        mapping = labeling_isomorphism(labels, LAMBDA_X3, x3)
        ok = True
    except StarCoverError:
        mapping, ok = None, False
    report.check(
        "S_4 labeling is an isomorphism onto X3",
        ok,
        labels={f"{v.color}({v.a},{v.b})": p.one_line() for v, p in labels.items()},
    )

    projections = {
        "Lambda_X3 -> Lambda_Q": (LAMBDA_X3, LAMBDA_Q, 3),
        "Lambda_X3 -> G_T": (LAMBDA_X3, G_T, 2),
        "Lambda_X3 -> G_K4": (LAMBDA_X3, G_K4, 6),
        "Lambda_Q -> G_K4": (LAMBDA_Q, G_K4, 2),
    }
    for name, (fine, coarse, fold) in projections.items():
        c = lattice_projection(fine, coarse)
        problems = validate_cover(c)
        report.check(
            f"covering {name}",
            not problems and c.total.num_vertices == fold * c.base.num_vertices,
            violations=problems[:5],
        )

    index = abs(LAMBDA_X3.determinant) // abs(LAMBDA_Q.determinant)
    report.check("[Lambda_Q : Lambda_X3] = 3", index == 3 and abs(LAMBDA_X3.determinant) % abs(LAMBDA_Q.determinant) == 0)
    return report


def run_fourier() -> SuiteReport:
    report = SuiteReport("fourier")
    s = fourier_spectrum()
    spec_x3 = integral_spectrum(star_charpoly(3))
    report.check("S equals Spec(X3)", s == spec_x3, S=format_spectrum(s), spectrum=format_spectrum(spec_x3))

    lattice_spec = integral_spectrum(charpoly(build_quotient(LAMBDA_X3).graph))
    report.check("S equals the spectrum of L/Lambda_X3", s == lattice_spec)

    k4 = integral_spectrum(charpoly(complete_graph(4)))
    q = integral_spectrum(charpoly(cube_graph()))
    t = integral_spectrum(charpoly(truncated_tetrahedron_graph()))
    lhs: SpectrumMultiset = s + k4 + k4
    rhs: SpectrumMultiset = q + t + t
    report.check("S + 2 Spec(K4) = Spec(Q) + 2 Spec(T)", lhs == rhs, lhs=format_spectrum(lhs), rhs=format_spectrum(rhs))
    return report


def run_syt() -> SuiteReport:
    report = SuiteReport("syt")
    table = multiplicity_table(3)
    rows = {str(r.shape): ({k: v for k, v in r.counts.items() if v}, r.f) for r in table}
    report.check("content table for n=3", rows == X3_CONTENT_TABLE, table=[r.to_dict() for r in table])

    for n in (3, 4):
        spectrum = integral_spectrum(star_charpoly(n))
        mult = multiplicities(n)
        report.check(
            f"multiplicities match Spec(X{n})",
            spectrum.is_integral() and mult == spectrum.entries,
            multiplicities={str(k): v for k, v in mult.items()},
        )

    coverage = {n: all(multiplicities(n).get(k, 0) >= 1 for k in range(n + 1)) for n in range(3, 7)}
    report.check("0..n are eigenvalues of X_n for n = 3..6", all(coverage.values()), coverage={str(k): v for k, v in coverage.items()})

    squares = sum(hook_length_count(p) ** 2 for p in partitions(5))
    report.check("sum of f^2 over partitions of 5 is 120", squares == 120)
    return report


SUITES: Dict[str, Callable[[], SuiteReport]] = {
    "s3": run_s3,
    "s4v": run_s4v,
    "zeta3": run_zeta3,
    "honeycomb": run_honeycomb,
    "fourier": run_fourier,
    "syt": run_syt,
}


def run_suite(name: str) -> List[SuiteReport]:
    """Run one suite, or every suite for ``all``."""
    if name == "all":
        return [run() for run in SUITES.values()]
    if name not in SUITES:
        raise StarCoverError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)} or all")
    return [SUITES[name]()]
