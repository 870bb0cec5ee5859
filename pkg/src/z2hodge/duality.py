"""Reflexive-polytope duality machinery.

From a reflexive polytope we build a sheaf of perpendicular mod-2 spaces
on the face fan and its quotient sheaf, pull both through the polar
correspondence, and assemble two short exact sequences of cosheaves on
the normal fan.  Their exactness, the rank-one cokernel with identity
restrictions, and the vanishing of the quotient's exterior-power
homology are the verifiable ingredients of the vanishing theorem.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cosheaf import (
    Cosheaf,
    CosheafMorphism,
    chain_complex,
    circ_truncate,
    exterior_family,
    hat,
)
from .errors import InvariantError, NotReflexive
from .fan import (
    DualCorrespondence,
    Fan,
    _complement_quotient,
    dual_correspondence,
    face_fan,
    normal_fan,
    regularity_depth,
)
from .gf2 import Gf2Matrix, Gf2Subspace, induced_quotient_map, solve
from .hodge import HodgeTable, cosheaf_E, cosheaf_N
from .lattice import integer_kernel, mod2_image
from .polytope import LatticePolytope, _dot


@dataclass
class DualityBundle:
    """All duality data for one reflexive polytope."""

    delta: LatticePolytope
    sigma: Fan
    sigma_star: Fan
    corr: DualCorrespondence
    f_sheaf: Cosheaf
    g_sheaf: Cosheaf
    f_hat: Cosheaf
    g_hat: Cosheaf
    n_cosheaf: Cosheaf
    c_cosheaf: Cosheaf
    e_circ: Cosheaf
    incl_fn: CosheafMorphism
    proj_nc: CosheafMorphism
    incl_cg: CosheafMorphism
    proj_ge: CosheafMorphism


def _perp_subspaces(sigma_star: Fan, d: int) -> dict[int, Gf2Subspace]:
    """Mod-2 reduction of the saturated perpendicular lattice per cone."""
    out = {}
    for cone in sigma_star.cones:
        if cone.dim == 0:
            out[cone.id] = Gf2Subspace.full(d)
        else:
            perp = integer_kernel(cone.span_basis, d)
            out[cone.id] = mod2_image(perp, d)
    return out


def _subspace_inclusion(small: Gf2Subspace, big: Gf2Subspace) -> Gf2Matrix:
    """Coordinates of the small basis in the big basis; errors if the
    containment fails."""
    x = solve(big.basis.transpose(), small.basis.transpose())
    if x is None:
        raise InvariantError("expected subspace containment fails")
    return x


def build_bundle(delta: LatticePolytope) -> DualityBundle:
    """Construct sheaves, hatted cosheaves and both short exact sequences.

    Asserts the vertex pairing law (every vertex of a face pairs to -1
    with every polar-face vertex) and all stalk-dimension laws.
    """
    if not delta.is_reflexive():
        raise NotReflexive("duality bundle requires a reflexive polytope")
    d = delta.dim
    sigma = normal_fan(delta)
    sigma_star = face_fan(delta)
    corr = dual_correspondence(sigma, sigma_star)

    fd = delta.facet_description()
    for facet, inc in zip(range(len(fd)), fd.incidence):
        for v in inc:
            if _dot(fd.normals[facet], delta.vertices[v]) != -1:
                raise InvariantError("vertex pairing law <p_i, q_j> = -1 fails")

    perp = _perp_subspaces(sigma_star, d)
    f_stalks = {c.id: perp[c.id].dim for c in sigma_star.cones}
    f_maps = {}
    g_quot = {c.id: _complement_quotient(perp[c.id], d) for c in sigma_star.cones}
    g_stalks = {c.id: g_quot[c.id].nrows for c in sigma_star.cones}
    g_maps = {}
    for lo, hi in sigma_star.covers:
        # sheaf direction: map from the hi stalk to the lo stalk
        f_maps[(lo, hi)] = _subspace_inclusion(perp[hi], perp[lo])
        g_maps[(lo, hi)] = induced_quotient_map(g_quot[hi], g_quot[lo])
    f_sheaf = Cosheaf(sigma_star, f_stalks, f_maps, direction="down")
    g_sheaf = Cosheaf(sigma_star, g_stalks, g_maps, direction="down")

    f_hat = hat(f_sheaf, corr)
    g_hat = hat(g_sheaf, corr)
    n_cosheaf = cosheaf_N(sigma)
    e_circ = circ_truncate(cosheaf_E(sigma))

    origin = sigma.grades[0][0]
    incl_components = {}
    c_quot = {}
    for cone in sigma.cones:
        if cone.dim == 0:
            incl_components[cone.id] = Gf2Matrix.zeros(0, 0)
            c_quot[cone.id] = Gf2Matrix.zeros(0, 0)
            continue
        star = corr.to_star[cone.id]
        if f_hat.stalk_dim(cone.id) != cone.dim - 1:
            raise InvariantError("perp stalk dimension law fails")
        if not cone.n_sigma.contains(perp[star]):
            raise InvariantError("perp space is not contained in the cone span")
        incl = _subspace_inclusion(perp[star], cone.n_sigma)
        incl_components[cone.id] = incl
        image = Gf2Subspace.from_spanning(incl.transpose().to_dense(), cone.dim)
        c_quot[cone.id] = _complement_quotient(image, cone.dim)
        if c_quot[cone.id].nrows != 1:
            raise InvariantError("cokernel stalk is not one-dimensional")

    c_stalks = {c.id: c_quot[c.id].nrows for c in sigma.cones}
    c_maps = {}
    for lo, hi in sigma.covers:
        if lo == origin:
            c_maps[(lo, hi)] = Gf2Matrix.zeros(c_stalks[hi], 0)
        else:
            c_maps[(lo, hi)] = induced_quotient_map(
                c_quot[lo], c_quot[hi] @ n_cosheaf.maps[(lo, hi)]
            )
    c_cosheaf = Cosheaf(sigma, c_stalks, c_maps)

    g_hat_quot = {
        c.id: g_quot[corr.to_star[c.id]] for c in sigma.cones if c.dim > 0
    }
    j_components = {origin: Gf2Matrix.zeros(0, 0)}
    phi_components = {origin: Gf2Matrix.zeros(0, 0)}
    for cone in sigma.cones:
        if cone.dim == 0:
            continue
        # representative of the generator of the cokernel stalk
        cq = c_quot[cone.id].to_dense()
        pivot = int(np.argmax(cq[0]))
        rep_stalk = np.zeros(cone.dim, dtype=np.uint8)
        rep_stalk[pivot] = 1
        ambient = cone.n_sigma.basis.transpose().matvec(rep_stalk)
        j_components[cone.id] = Gf2Matrix.from_dense(
            g_hat_quot[cone.id].matvec(ambient).reshape(-1, 1)
        )
        phi_components[cone.id] = induced_quotient_map(
            g_hat_quot[cone.id], cone.quotient_map
        )

    incl_fn = CosheafMorphism(f_hat, n_cosheaf, incl_components)
    proj_nc = CosheafMorphism(n_cosheaf, c_cosheaf, {c.id: c_quot[c.id] for c in sigma.cones})
    incl_cg = CosheafMorphism(c_cosheaf, g_hat, j_components)
    proj_ge = CosheafMorphism(g_hat, e_circ, phi_components)
    return DualityBundle(
        delta,
        sigma,
        sigma_star,
        corr,
        f_sheaf,
        g_sheaf,
        f_hat,
        g_hat,
        n_cosheaf,
        c_cosheaf,
        e_circ,
        incl_fn,
        proj_nc,
        incl_cg,
        proj_ge,
    )


def stalk_dimension_laws(bundle: DualityBundle) -> bool:
    """dim perp-hat = dim - 1, dim quotient-hat = d - dim + 1,
    dim cokernel = 1, dim truncated cotorus = d - dim, per cone."""
    d = bundle.sigma.dim
    for cone in bundle.sigma.cones:
        k = cone.dim
        if k == 0:
            expected = (0, 0, 0, 0)
        else:
            expected = (k - 1, d - k + 1, 1, d - k)
        got = (
            bundle.f_hat.stalk_dim(cone.id),
            bundle.g_hat.stalk_dim(cone.id),
            bundle.c_cosheaf.stalk_dim(cone.id),
            bundle.e_circ.stalk_dim(cone.id),
        )
        if got != expected:
            return False
    return True


def _stalkwise_exact(first: CosheafMorphism, second: CosheafMorphism) -> bool:
    """Exactness of 0 -> A -> B -> C -> 0 at every cone, plus naturality."""
    if not (first.is_natural() and second.is_natural()):
        return False
    for cone in first.source.fan.cones:
        a = first.source.stalk_dim(cone.id)
        b = first.target.stalk_dim(cone.id)
        c = second.target.stalk_dim(cone.id)
        inj = first.component(cone.id)
        surj = second.component(cone.id)
        if a + c != b:
            return False
        if inj.rank() != a or surj.rank() != c:
            return False
        if a and c and not (surj @ inj).is_zero():
            return False
    return True


def verify_c_identity(bundle: DualityBundle) -> bool:
    """Every positive-dimensional restriction of the cokernel cosheaf is
    the 1 x 1 identity."""
    origin = bundle.sigma.grades[0][0]
    one = Gf2Matrix.identity(1)
    for lo, hi in bundle.sigma.covers:
        if lo == origin:
            continue
        if bundle.c_cosheaf.maps[(lo, hi)] != one:
            return False
    return True


def verify_ses(bundle: DualityBundle) -> bool:
    """Both short exact sequences, stalkwise and naturally."""
    return _stalkwise_exact(bundle.incl_fn, bundle.proj_nc) and _stalkwise_exact(
        bundle.incl_cg, bundle.proj_ge
    )


def g_vanishing(bundle: DualityBundle, k_max: int) -> list[tuple[int, ...]]:
    """Homology rank table of the exterior powers of the hatted quotient
    cosheaf, rows k = 0..k_max, columns p = 0..d."""
    family = exterior_family(bundle.g_hat, k_max)
    return [chain_complex(family[k]).homology_ranks() for k in range(k_max + 1)]


def g_vanishing_holds(bundle: DualityBundle, table: list[tuple[int, ...]] | None = None) -> bool:
    """Zero region 1 <= p < e - 1 of the vanishing lemma, with e the
    regularity depth of the dual fan."""
    e = regularity_depth(bundle.sigma_star)
    if table is None:
        table = g_vanishing(bundle, bundle.sigma.dim)
    for row in table:
        for p in range(1, e - 1):
            if row[p]:
                return False
    return True


def vanishing_theorem_check(bundle: DualityBundle, table: HodgeTable) -> bool:
    """Off-diagonal vanishing for q < p < e-1 and rank-one diagonal for
    q < e-1."""
    e = regularity_depth(bundle.sigma_star)
    for q in range(table.d + 1):
        for p in range(q, table.d + 1):
            if q < p < e - 1 and table.rank(p, q) != 0:
                return False
        if q < e - 1 and table.rank(q, q) != 1:
            return False
    return True
