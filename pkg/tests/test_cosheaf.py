import pytest

from z2hodge import corpus
from z2hodge.cosheaf import (
    ChainComplex,
    Cosheaf,
    chain_complex,
    circ_truncate,
    constant_cosheaf,
    exterior_cosheaf,
    hat,
    homology_ranks,
    zero_cosheaf,
)
from z2hodge.duality import build_bundle
from z2hodge.errors import BoundarySquareNonzero, FunctorialityViolation
from z2hodge.fan import dual_correspondence, face_fan, normal_fan
from z2hodge.gf2 import Gf2Matrix
from z2hodge.hodge import cosheaf_E

from _naive import naive_rank


def test_constant_cosheaf_on_projective_line():
    fan = normal_fan(corpus.polytope("segment"))
    cc = chain_complex(constant_cosheaf(fan))
    # C_1 is the zero-cone stalk, C_0 the two ray stalks
    assert cc.dims == (2, 1)
    assert cc.boundary(1).to_lists() == [[1], [1]]
    assert cc.homology_ranks() == (1, 0)


def test_zero_cosheaf_complex():
    fan = normal_fan(corpus.polytope("segment"))
    cc = chain_complex(zero_cosheaf(fan))
    assert cc.dims == (0, 0)
    assert cc.homology_ranks() == (0, 0)


def test_two_term_acyclic_complex():
    cc = ChainComplex(
        dims=(1, 1),
        boundaries=(Gf2Matrix.identity(1),),
        blocks=({0: (0, 1)}, {1: (0, 1)}),
    )
    assert homology_ranks(cc) == (0, 0)


def test_zero_boundaries_give_dims():
    cc = ChainComplex(
        dims=(2, 3),
        boundaries=(Gf2Matrix.zeros(2, 3),),
        blocks=({}, {}),
    )
    assert cc.homology_ranks() == (2, 3)


def test_boundary_square_nonzero_detected():
    with pytest.raises(BoundarySquareNonzero):
        ChainComplex(
            dims=(1, 1, 1),
            boundaries=(Gf2Matrix.identity(1), Gf2Matrix.identity(1)),
            blocks=({}, {}, {}),
        )


def test_functoriality_violation_detected():
    fan = normal_fan(corpus.polytope("square"))
    good = constant_cosheaf(fan)
    maps = dict(good.maps)
    # corrupt a single ray -> top-cone restriction
    bad_cover = next((lo, hi) for lo, hi in fan.covers if fan.cone(lo).dim == 1)
    maps[bad_cover] = Gf2Matrix.zeros(1, 1)
    broken = Cosheaf(fan, good.stalk_dims, maps)
    with pytest.raises(FunctorialityViolation):
        chain_complex(broken)


def test_exterior_cosheaf_degenerate_powers():
    fan = normal_fan(corpus.polytope("square"))
    e = cosheaf_E(fan)
    w0 = exterior_cosheaf(e, 0)
    assert all(dim == 1 for dim in w0.stalk_dims.values())
    w1 = exterior_cosheaf(e, 1)
    assert w1.stalk_dims == e.stalk_dims
    assert all(w1.maps[c] == e.maps[c] for c in fan.covers)
    w9 = exterior_cosheaf(e, 9)
    assert all(dim == 0 for dim in w9.stalk_dims.values())


def test_cosheaf_E_homology_on_square_fan():
    fan = normal_fan(corpus.polytope("square"))
    cc = chain_complex(exterior_cosheaf(cosheaf_E(fan), 1))
    assert cc.homology_ranks() == (0, 2, 0)
    # oracle: naive elimination on the densified boundary matrices
    for p in range(1, 3):
        assert cc.boundary(p).rank() == naive_rank(cc.boundary(p).to_lists())


def test_circ_truncate_keeps_low_homology():
    fan = normal_fan(corpus.polytope("square"))
    e = cosheaf_E(fan)
    te = circ_truncate(e)
    full = chain_complex(e).homology_ranks()
    trunc = chain_complex(te).homology_ranks()
    assert full[: fan.dim - 1] == trunc[: fan.dim - 1]
    origin = fan.grades[0][0]
    assert te.stalk_dim(origin) == 0


def test_circ_truncate_idempotent():
    fan = normal_fan(corpus.polytope("cross2"))
    e = cosheaf_E(fan)
    once = circ_truncate(e)
    twice = circ_truncate(once)
    assert once.stalk_dims == twice.stalk_dims
    assert all(once.maps[c] == twice.maps[c] for c in fan.covers)


def test_hat_of_constant_sheaf_is_truncated_constant():
    p = corpus.polytope("cross3")
    sigma, sigma_star = normal_fan(p), face_fan(p)
    corr = dual_correspondence(sigma, sigma_star)
    const_sheaf = Cosheaf(
        sigma_star,
        {c.id: 1 for c in sigma_star.cones},
        {cover: Gf2Matrix.identity(1) for cover in sigma_star.covers},
        direction="down",
    )
    hatted = hat(const_sheaf, corr)
    truncated = circ_truncate(constant_cosheaf(sigma))
    assert hatted.stalk_dims == truncated.stalk_dims
    assert all(hatted.maps[c] == truncated.maps[c] for c in sigma.covers)


def test_hat_of_zero_sheaf_is_zero():
    p = corpus.polytope("square")
    sigma, sigma_star = normal_fan(p), face_fan(p)
    corr = dual_correspondence(sigma, sigma_star)
    zero_sheaf = Cosheaf(
        sigma_star,
        {c.id: 0 for c in sigma_star.cones},
        {cover: Gf2Matrix.zeros(0, 0) for cover in sigma_star.covers},
        direction="down",
    )
    hatted = hat(zero_sheaf, corr)
    assert all(dim == 0 for dim in hatted.stalk_dims.values())


def test_hat_chain_dims_match_sheaf_cochain_dims():
    p = corpus.polytope("simplex3")
    bundle = build_bundle(p)
    d = bundle.sigma.dim
    cc = chain_complex(bundle.g_hat)
    for par in range(d):
        u = d - par - 1
        cochain_dim = sum(
            bundle.g_sheaf.stalk_dim(i)
            for i in bundle.sigma_star.grades.get(d - u, ())
        )
        assert cc.dims[par] == cochain_dim


def test_euler_additivity_across_short_exact_sequence():
    for name in ["square", "cross3", "simplex3"]:
        b = build_bundle(corpus.polytope(name))

        def chi(cosheaf):
            ranks = chain_complex(cosheaf).homology_ranks()
            return sum((-1) ** p * r for p, r in enumerate(ranks))

        assert chi(b.c_cosheaf) - chi(b.g_hat) + chi(b.e_circ) == 0
        assert chi(b.f_hat) - chi(b.n_cosheaf) + chi(b.c_cosheaf) == 0
