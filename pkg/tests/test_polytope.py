from fractions import Fraction

import pytest

from z2hodge import corpus
from z2hodge.errors import NotFullDimensional, OriginNotInterior
from z2hodge.lattice import hnf_basis
from z2hodge.polytope import LatticePolytope, _affine_rank


def test_square_facets():
    fd = corpus.polytope("square").facet_description()
    assert sorted(zip(fd.normals, fd.offsets)) == [
        ((-1, 0), 1),
        ((0, -1), 1),
        ((0, 1), 1),
        ((1, 0), 1),
    ]


def test_square_f_vector():
    assert corpus.polytope("square").f_vector() == (4, 4)


def test_example1_facets_and_f_vector():
    p = corpus.polytope("example1")
    assert p.f_vector() == (9, 36, 84, 125, 120, 70, 20)
    assert len(p.facet_description()) == 20


def test_example2_facets_and_f_vector():
    p = corpus.polytope("example2")
    assert p.f_vector() == (12, 62, 174, 267, 207, 64)
    assert len(p.facet_description()) == 64


def test_euler_relation_on_corpus():
    for name in corpus.names():
        p = corpus.polytope(name)
        f = p.f_vector()
        euler = sum((-1) ** i * fi for i, fi in enumerate(f))
        assert euler == 1 - (-1) ** p.dim, name


def test_face_is_intersection_of_containing_facets():
    p = corpus.polytope("cross3")
    fd = p.facet_description()
    lat = p.face_lattice()
    for face in lat.faces:
        if face.dim == p.dim:
            continue
        vs = set(face.vertex_ids)
        meet = set(range(len(p.vertices)))
        for inc in fd.incidence:
            if vs <= inc:
                meet &= inc
        assert meet == vs
        # vertex set of a k-face has affine rank k
        assert _affine_rank([p.vertices[i] for i in face.vertex_ids]) == face.dim


def test_cover_pairs_have_containment():
    lat = corpus.polytope("cube").face_lattice()
    for lo, hi in lat.covers:
        f, g = lat.faces[lo], lat.faces[hi]
        assert g.dim == f.dim + 1
        assert set(f.vertex_ids) <= set(g.vertex_ids)


def test_polar_square_is_cross_polytope():
    assert corpus.polytope("square").polar() == corpus.polytope("cross2")


def test_polar_of_double_box_is_rational():
    p = LatticePolytope([(2 * a, 2 * b) for a, b in corpus.box(2)])
    polar = p.polar()
    assert not polar.is_lattice
    assert Fraction(1, 2) in {abs(x) for v in polar.vertices for x in v if x}
    assert not p.is_reflexive()


def test_is_reflexive_examples():
    assert corpus.polytope("square").is_reflexive()
    assert corpus.polytope("example1").is_reflexive()
    assert corpus.polytope("example2").is_reflexive()


def test_polar_requires_interior_origin():
    shifted = LatticePolytope([(1, 0), (2, 0), (1, 1), (2, 1)])
    with pytest.raises(OriginNotInterior):
        shifted.polar()


def test_polar_involution_on_reflexive_corpus():
    for name in corpus.names():
        p = corpus.polytope(name)
        assert p.polar().polar() == p, name


def test_product_of_segments_is_square():
    seg = corpus.polytope("segment")
    assert seg.product(seg) == corpus.polytope("square")


def test_example1_polar_is_product_of_simplices():
    polar = corpus.polytope("example1").polar()
    assert len(polar.vertices) == 20
    # split the coordinates into the two product blocks
    first = sorted({v[:4] for v in polar.vertices})
    second = sorted({v[4:] for v in polar.vertices})
    assert len(first) == 5 and len(second) == 4
    assert sorted(polar.vertices) == sorted(a + b for a in first for b in second)
    # each block is a simplex of full dimension in its own lattice
    assert _affine_rank(first) == 4
    assert _affine_rank(second) == 3
    # product f-vector reverses the f-vector of example1
    assert polar.f_vector() == (20, 70, 120, 125, 84, 36, 9)


def test_example2_polar_vertex_count():
    assert len(corpus.polytope("example2").polar().vertices) == 64


def test_bipyramid_from_product_with_segment():
    square = corpus.polytope("square")
    lifted = square.polar().product(corpus.polytope("segment"))
    bipyramid = lifted.polar()
    expected = sorted(
        [v + (0,) for v in square.vertices] + [(0, 0, 1), (0, 0, -1)]
    )
    assert sorted(bipyramid.vertices) == expected


def test_nonextreme_points_are_dropped():
    p = LatticePolytope([(1, 1), (1, -1), (-1, 1), (-1, -1), (0, 0), (1, 0)])
    assert p == corpus.polytope("square")
    assert set(p.dropped_points) == {(0, 0), (1, 0)}


def test_not_full_dimensional_raises():
    with pytest.raises(NotFullDimensional):
        LatticePolytope([(0, 0), (1, 0), (2, 0)])


def test_hnf_basis_of_face_vertices_detects_dim():
    p = corpus.polytope("simplex3")
    lat = p.face_lattice()
    assert lat.f_vector == (4, 6, 4)
    assert hnf_basis([(1, 0, 0)]) == ((1, 0, 0),)
