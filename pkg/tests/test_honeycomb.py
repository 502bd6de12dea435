import pytest

from starcover.cover import validate_cover
from starcover.errors import LatticeError
from starcover.graph import complete_graph, is_connected, isomorphic
from starcover.honeycomb import (
    G_K4,
    G_T,
    LAMBDA_Q,
    LAMBDA_X3,
    HoneycombVertex,
    LatticeSpec,
    Sublattice,
    build_quotient,
    edge_weight,
    fourier_spectrum,
    honeycomb_quotient,
    label_vertices_s4,
    labeling_isomorphism,
    lattice_projection,
    parse_lattice,
)
from starcover.perm import compose, identity
from starcover.spectra import charpoly, integral_spectrum


def test_hermite_normal_form():
    assert Sublattice.of(LAMBDA_Q) == Sublattice(2, 0, 2)
    lat = Sublattice.of(LAMBDA_X3)
    assert lat.index == 12
    assert lat.contains((2, 2)) and lat.contains((4, -2))
    assert not lat.contains((2, 0))


def test_reduce_is_a_representative():
    lat = Sublattice.of(LAMBDA_X3)
    reps = set(lat.representatives())
    assert len(reps) == 12
    for v in [(5, 7), (-3, 2), (0, -11)]:
        assert lat.reduce(v) in reps
        w = lat.reduce(v)
        assert lat.contains((v[0] - w[0], v[1] - w[1]))


def test_parse_lattice():
    assert parse_lattice("2,0;0,2") == LAMBDA_Q
    assert parse_lattice("Lambda_X3", half_turn=True) == G_T
    with pytest.raises(LatticeError):
        parse_lattice("2,0")
    with pytest.raises(LatticeError):
        parse_lattice("1,2;2,4")


def test_quotients_are_the_expected_graphs(x3, cube, truncated_tetrahedron):
    cases = [
        (LAMBDA_Q, cube, 8),
        (LAMBDA_X3, x3.total, 24),
        (G_T, truncated_tetrahedron, 12),
        (G_K4, complete_graph(4), 4),
    ]
    for spec, target, size in cases:
        g = honeycomb_quotient(spec)
        assert g.num_vertices == size
        assert g.regular_degree() == 3
        assert is_connected(g)
        assert isomorphic(g, target) is not None


def test_half_turn_inverting_an_edge():
    with pytest.raises(LatticeError):
        build_quotient(LatticeSpec((1, 0), (0, 1), half_turn=True))


def test_edge_weights_at_origin():
    assert edge_weight((0, 0), 0).cycle_string() == "(3,4)"
    assert edge_weight((0, 0), 1).cycle_string() == "(1,4)"
    assert edge_weight((0, 0), 2).cycle_string() == "(2,4)"


def test_hexagon_products_are_trivial():
    # black(0,0) -> white(0,0) -> black(-1,0) -> white(-1,1) -> black(-1,1) -> white(0,1) -> black(0,0)
    path = [((0, 0), 0), ((-1, 0), 1), ((-1, 0), 2), ((-1, 1), 0), ((-1, 1), 1), ((0, 0), 2)]
    product = identity(4)
    for v, j in path:
        product = compose(product, edge_weight(v, j))
    assert product.is_identity()


def test_s4_labeling_is_an_isomorphism(x3):
    labels = label_vertices_s4()
    assert len(set(labels.values())) == 24
    assert labels[HoneycombVertex("black", 0, 0)].is_identity()
    mapping = labeling_isomorphism(labels, LAMBDA_X3, x3.total)
    assert sorted(mapping) == list(range(24))


def test_s4_labeling_needs_lambda_x3():
    with pytest.raises(LatticeError):
        label_vertices_s4(LAMBDA_Q)


@pytest.mark.parametrize(
    "fine, coarse, fold",
    [(LAMBDA_X3, LAMBDA_Q, 3), (LAMBDA_X3, G_T, 2), (LAMBDA_X3, G_K4, 6), (LAMBDA_Q, G_K4, 2)],
)
def test_lattice_projections_are_covers(fine, coarse, fold):
    c = lattice_projection(fine, coarse)
    assert validate_cover(c) == []
    assert c.total.num_vertices == fold * c.base.num_vertices


def test_projection_needs_inclusion():
    with pytest.raises(LatticeError):
        lattice_projection(LAMBDA_Q, LAMBDA_X3)


def test_fourier_spectrum_is_spec_x3(x3_charpoly):
    s = fourier_spectrum()
    assert s.size == 24
    assert s == integral_spectrum(x3_charpoly)
    assert s == integral_spectrum(charpoly(build_quotient(LAMBDA_X3).graph))


def test_hermite_normal_form_with_coprime_first_coordinates():
    spec = LatticeSpec((3, 1), (2, 5))
    lat = Sublattice.of(spec)
    assert (lat.g, lat.r) == (1, 13)
    assert lat.index == abs(spec.determinant)
    assert lat.contains(spec.gen1) and lat.contains(spec.gen2)
    assert not lat.contains((0, 1))
