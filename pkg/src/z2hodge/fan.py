"""Fans from polytopes: normal fan, face fan, per-cone lattice data.

Cones are indexed by the faces of the defining polytope, so the normal
fan and face fan of the same reflexive polytope share face keys and the
polar duality between them is a key lookup.  Each cone carries a
saturated basis of its linear span, the mod-2 span subspace and the
quotient map presenting the stalk of the cosheaf of cotorus classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DimensionMismatch,
    InvariantError,
    NotReflexive,
    OriginNotInterior,
)
from .gf2 import Gf2Matrix, Gf2Subspace
from .lattice import IntVec, det, mod2_image, primitive, saturate
from .polytope import LatticePolytope, _dot


def _complement_quotient(n_sigma: Gf2Subspace, d: int) -> Gf2Matrix:
    """Quotient map (Z/2)^d -> (Z/2)^(d-k) with kernel exactly n_sigma.

    The target coordinates are the non-pivot columns of the echelon
    basis; this fixes the stalk basis of every quotient deterministically.
    """
    dense = n_sigma.basis.to_dense()
    k = dense.shape[0]
    pivots = []
    for row in dense:
        pivots.append(int(row.argmax()))
    pivot_set = set(pivots)
    free = [c for c in range(d) if c not in pivot_set]
    rows = []
    for fi, c in enumerate(free):
        row = [0] * d
        row[c] = 1
        for r, p in enumerate(pivots):
            row[p] = int(dense[r, c])
        rows.append(row)
    _ = k
    return Gf2Matrix.from_rows(rows, d)


class Cone:
    """A cone of a fan with its exact lattice data."""

    __slots__ = (
        "id",
        "dim",
        "rays",
        "span_basis",
        "n_sigma",
        "quotient_map",
        "face_key",
        "_membership",
    )

    def __init__(self, cone_id, dim, rays, ambient_dim, face_key, membership):
        self.id = cone_id
        self.dim = dim
        self.rays = tuple(sorted(rays))
        self.face_key = face_key
        self._membership = membership
        if dim == 0:
            self.span_basis = ()
        else:
            self.span_basis = saturate(self.rays, ambient_dim)
        self.n_sigma = mod2_image(self.span_basis, ambient_dim)
        if self.n_sigma.dim != dim or len(self.span_basis) != dim:
            raise InvariantError(
                f"cone has span rank {len(self.span_basis)} and mod-2 rank "
                f"{self.n_sigma.dim}, expected {dim}"
            )
        self.quotient_map = _complement_quotient(self.n_sigma, ambient_dim)

    @property
    def codim(self) -> int:
        return self.quotient_map.nrows

    def contains(self, point) -> bool:
        """Exact membership of an integer/rational point."""
        if self.dim == 0:
            return not any(point)
        verts, tight_ids = self._membership
        tight = [verts[i] for i in tight_ids]
        level = _dot(tight[0], point)
        if any(_dot(t, point) != level for t in tight[1:]):
            return False
        return all(_dot(v, point) >= level for v in verts)

    def __repr__(self):
        return f"Cone(id={self.id}, dim={self.dim}, rays={len(self.rays)})"


class Fan:
    """Graded set of cones with cover relations.

    Verifies the diamond property at construction: every pair of cones
    with dimension gap two is joined by exactly two intermediate cones,
    which is what makes boundary squares vanish in characteristic two.
    """

    def __init__(self, dim: int, cones: list[Cone], covers, complete: bool = True):
        self.dim = dim
        self.cones = list(cones)
        self.covers = tuple(sorted(covers))
        self.complete = complete
        self.grades: dict[int, tuple[int, ...]] = {}
        for c in self.cones:
            self.grades.setdefault(c.dim, ())
        for k in list(self.grades):
            self.grades[k] = tuple(c.id for c in self.cones if c.dim == k)
        self.up: dict[int, tuple[int, ...]] = {c.id: () for c in self.cones}
        self.down: dict[int, tuple[int, ...]] = {c.id: () for c in self.cones}
        up: dict[int, list[int]] = {c.id: [] for c in self.cones}
        down: dict[int, list[int]] = {c.id: [] for c in self.cones}
        for lo, hi in self.covers:
            if self.cones[hi].dim != self.cones[lo].dim + 1:
                raise InvariantError("cover pair with dimension gap != 1")
            up[lo].append(hi)
            down[hi].append(lo)
        self.up = {k: tuple(v) for k, v in up.items()}
        self.down = {k: tuple(v) for k, v in down.items()}
        self._check_diamonds()

    def cone(self, cone_id: int) -> Cone:
        return self.cones[cone_id]

    def n_cones(self, k: int) -> int:
        return len(self.grades.get(k, ()))

    def _check_diamonds(self) -> None:
        for sigma in self.cones:
            paths: dict[int, int] = {}
            for tau in self.up[sigma.id]:
                for beta in self.up[tau]:
                    paths[beta] = paths.get(beta, 0) + 1
            for beta, count in paths.items():
                if count != 2:
                    raise InvariantError(
                        f"diamond property fails between cones {sigma.id} and {beta}: "
                        f"{count} intermediate cones"
                    )

    def diamonds(self):
        """All (sigma, tau1, tau2, beta) with the two paths sigma<tau_i<beta."""
        out = []
        for sigma in self.cones:
            middle: dict[int, list[int]] = {}
            for tau in self.up[sigma.id]:
                for beta in self.up[tau]:
                    middle.setdefault(beta, []).append(tau)
            for beta, taus in middle.items():
                out.append((sigma.id, taus[0], taus[1], beta))
        return out

    def __repr__(self):
        sizes = [self.n_cones(k) for k in range(self.dim + 1)]
        return f"Fan(dim {self.dim}, cones by dim {sizes})"


def normal_fan(p: LatticePolytope) -> Fan:
    """The normal fan: one cone per face, spanned by the inward normals
    of the facets containing the face."""
    if p._normal_fan is not None:
        return p._normal_fan
    d = p.dim
    lat = p.face_lattice()
    fd = p.facet_description()
    keys = []
    for face in lat.faces:
        face_set = set(face.vertex_ids)
        facet_ids = [i for i, inc in enumerate(fd.incidence) if face_set <= inc]
        keys.append((d - face.dim, face.vertex_ids, facet_ids))
    order = sorted(range(len(keys)), key=lambda i: (keys[i][0], keys[i][1]))
    cone_of_face = {}
    cones = []
    for cone_id, face_idx in enumerate(order):
        cone_dim, face_key, facet_ids = keys[face_idx]
        rays = [primitive(fd.normals[i]) for i in facet_ids]
        cones.append(
            Cone(cone_id, cone_dim, rays, d, face_key, (p.vertices, face_key))
        )
        cone_of_face[face_idx] = cone_id
    covers = []
    for lo, hi in lat.covers:
        covers.append((cone_of_face[hi], cone_of_face[lo]))
    fan = Fan(d, cones, covers, complete=True)
    p._normal_fan = fan
    return fan


def face_fan(p: LatticePolytope) -> Fan:
    """The face fan: cones are positive hulls of the proper faces."""
    if p._face_fan is not None:
        return p._face_fan
    if not p.origin_interior():
        raise OriginNotInterior("face fan requires the origin strictly interior")
    d = p.dim
    lat = p.face_lattice()
    fd = p.facet_description()
    polar_verts = tuple(
        tuple(Fraction(x, c) for x in n) for n, c in zip(fd.normals, fd.offsets)
    )
    entries = [(0, (), [])]
    for face in lat.faces:
        if face.dim == d:
            continue
        face_set = set(face.vertex_ids)
        facet_ids = [i for i, inc in enumerate(fd.incidence) if face_set <= inc]
        entries.append((face.dim + 1, face.vertex_ids, facet_ids))
    entries.sort(key=lambda e: (e[0], e[1]))
    cones = []
    cone_by_key = {}
    for cone_id, (cone_dim, face_key, facet_ids) in enumerate(entries):
        if cone_dim == 0:
            membership = ((), ())
            rays = []
        else:
            membership = (polar_verts, tuple(facet_ids))
            rays = [primitive(p.vertices[i]) for i in face_key]
        cones.append(Cone(cone_id, cone_dim, rays, d, face_key, membership))
        cone_by_key[face_key] = cone_id
    covers = []
    for lo, hi in lat.covers:
        f, g = lat.faces[lo], lat.faces[hi]
        if g.dim == d:
            continue
        covers.append((cone_by_key[f.vertex_ids], cone_by_key[g.vertex_ids]))
    for face in lat.faces:
        if face.dim == 0:
            covers.append((cone_by_key[()], cone_by_key[face.vertex_ids]))
    fan = Fan(d, cones, covers, complete=True)
    p._face_fan = fan
    return fan


@dataclass(frozen=True)
class DualCorrespondence:
    """Inclusion-reversing pairing between the positive-dimensional cones
    of the normal fan and the face fan of one reflexive polytope."""

    sigma: Fan
    sigma_star: Fan
    to_star: dict[int, int]
    from_star: dict[int, int]


def dual_correspondence(sigma: Fan, sigma_star: Fan) -> DualCorrespondence:
    if sigma.dim != sigma_star.dim:
        raise NotReflexive("fans live in different dimensions")
    d = sigma.dim
    star_by_key = {
        c.face_key: c.id for c in sigma_star.cones if c.dim > 0
    }
    to_star = {}
    for c in sigma.cones:
        if c.dim == 0:
            continue
        partner = star_by_key.get(c.face_key)
        if partner is None:
            raise NotReflexive("fans do not come from the same polytope")
        if sigma_star.cone(partner).dim != d - c.dim + 1:
            raise NotReflexive("dual grading mismatch; polytope is not reflexive")
        to_star[c.id] = partner
    if len(to_star) != len(star_by_key):
        raise NotReflexive("correspondence is not a bijection")
    from_star = {v: k for k, v in to_star.items()}
    return DualCorrespondence(sigma, sigma_star, to_star, from_star)


def is_z2_regular(c: Cone) -> bool:
    """True iff the primitive ray generators reduce mod 2 to a basis of
    the cone's mod-2 span."""
    if len(c.rays) != c.dim:
        return False
    return Gf2Matrix.from_rows([[x % 2 for x in r] for r in c.rays]).rank() == c.dim


def regularity_depth(f: Fan) -> int:
    """Largest e with every cone of dimension <= e mod-2 regular."""
    for k in range(1, f.dim + 1):
        for cone_id in f.grades.get(k, ()):
            if not is_z2_regular(f.cone(cone_id)):
                return k - 1
    return f.dim


def check_t_homeomorphism(a, f1: Fan, f2: Fan) -> bool:
    """Checker for the odd-determinant torus homeomorphism conditions.

    Requires: det(a) odd; a maps every cone of f1 into some cone of f2;
    the mod-2 reduction carries each mod-2 span of f1 onto the mod-2
    span of some cone of f2; and every mod-2 span of f2 is hit.
    """
    rows = [list(map(int, r)) for r in a]
    d = f1.dim
    if f2.dim != d or len(rows) != d or any(len(r) != d for r in rows):
        raise DimensionMismatch("matrix must map between fans of equal dimension")
    if det(rows) % 2 == 0:
        return False

    def apply(v):
        return tuple(sum(rows[i][j] * v[j] for j in range(d)) for i in range(d))

    for sigma in f1.cones:
        images = [apply(r) for r in sigma.rays]
        if not any(
            all(tau.contains(img) for img in images) for tau in f2.cones
        ):
            return False

    a2 = Gf2Matrix.from_rows([[x % 2 for x in r] for r in rows])
    hit: set[int] = set()
    for sigma in f1.cones:
        image_rows = [a2.matvec(v) for v in sigma.n_sigma.basis.to_dense()]
        image = Gf2Subspace.from_spanning(image_rows, d)
        matched = False
        for tau in f2.cones:
            if tau.n_sigma == image:
                matched = True
                hit.add(tau.id)
        if not matched:
            return False
    return len(hit) == len(f2.cones)
