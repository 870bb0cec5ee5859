"""Exact convex geometry of lattice polytopes.

Facet enumeration runs an incremental double description over exact
rational arithmetic (no floating point anywhere); faces are vertex-index
sets, so the face lattice is purely combinatorial once facets are known.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import NotFullDimensional, OriginNotInterior, PreconditionError
from .lattice import hnf_basis

Coord = int | Fraction


def _norm_coord(x) -> Coord:
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _affine_rank(points) -> int:
    """Dimension of the affine hull of the given rational points."""
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = []
    for p in points[1:]:
        diff = [Fraction(x) - Fraction(y) for x, y in zip(p, base)]
        scale = lcm(*(f.denominator for f in diff)) if diff else 1
        rows.append([int(f * scale) for f in diff])
    return len(hnf_basis(rows))


def _scale_to_int(vec) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector."""
    fracs = [Fraction(x) for x in vec]
    scale = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * scale) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


# --- double description over the rationals -----------------------------------


def _initial_simplex_rows(rows: list[tuple[int, ...]], dim: int) -> list[int]:
    """Indices of ``dim`` linearly independent rows (greedy)."""
    chosen: list[int] = []
    basis: list[list[int]] = []
    for i, r in enumerate(rows):
        trial = basis + [list(r)]
        if len(hnf_basis(trial)) == len(trial):
            chosen.append(i)
            basis = trial
            if len(chosen) == dim:
                return chosen
    raise NotFullDimensional("input points do not span the ambient space")


def _solve_unit(rows: list[tuple[int, ...]], k: int) -> tuple[int, ...]:
    """Solve A x = -e_k for square integer A, returned as a primitive ray."""
    n = len(rows)
    aug = [[Fraction(v) for v in rows[i]] + [Fraction(-1 if i == k else 0)] for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [a * inv for a in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return _scale_to_int([aug[i][n] for i in range(n)])


def _extreme_rays(ineq_rows: list[tuple[int, ...]]) -> list[tuple[tuple[int, ...], frozenset[int]]]:
    """Extreme rays of the pointed cone {x : a . x <= 0 for all rows a}.

    Incremental double description: seed a simplicial cone from
    independent rows, then insert the remaining inequalities one at a
    time, combining adjacent rays across the new hyperplane.  Adjacency
    is Fukuda's combinatorial test on exact tight sets.

    Returns (primitive ray, tight index set) pairs.
    """
    dim = len(ineq_rows[0])
    seed = _initial_simplex_rows(ineq_rows, dim)
    seed_rows = [ineq_rows[i] for i in seed]
    rays = [_solve_unit(seed_rows, k) for k in range(dim)]
    processed = list(seed)
    order = [i for i in range(len(ineq_rows)) if i not in set(seed)]

    def tight_set(ray):
        return frozenset(j for j in processed if _dot(ineq_rows[j], ray) == 0)

    tights = [tight_set(r) for r in rays]
    for idx in order:
        a = ineq_rows[idx]
        vals = [_dot(a, r) for r in rays]
        if all(v <= 0 for v in vals):
            processed.append(idx)
            tights = [
                t | {idx} if v == 0 else t for t, v in zip(tights, vals)
            ]
            continue
        keep = [i for i, v in enumerate(vals) if v <= 0]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        new_rays = []
        for ip in pos:
            for im in neg:
                common = tights[ip] & tights[im]
                adjacent = True
                for k, t in enumerate(tights):
                    if k != ip and k != im and common <= t:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                combo = [
                    vals[ip] * rn - vals[im] * rp
                    for rp, rn in zip(rays[ip], rays[im])
                ]
                new_rays.append(_scale_to_int(combo))
        processed.append(idx)
        rays = [rays[i] for i in keep] + new_rays
        tights = [tight_set(r) for r in rays]
        # dedupe (a refused adjacency can regenerate an existing ray)
        seen = {}
        for r, t in zip(rays, tights):
            seen[r] = t
        rays = list(seen.keys())
        tights = [seen[r] for r in rays]
    return list(zip(rays, tights))


def _hull_facets(points):
    """Facet inequalities of conv(points), as (primitive m, b) pairs with
    <m, x> <= b for all points and equality on each facet."""
    npts = len(points)
    d = len(points[0])
    centroid = [sum(Fraction(p[i]) for p in points) / npts for i in range(d)]
    ineqs = []
    for p in points:
        shifted = [Fraction(x) - c for x, c in zip(p, centroid)]
        # homogenized polar inequality <w, y> - t <= 0
        ineqs.append(_scale_to_int(shifted + [Fraction(-1)]))
    facets = []
    seen = set()
    for ray, _tight in _extreme_rays(ineqs):
        y, t = ray[:-1], ray[-1]
        if t <= 0:
            raise NotFullDimensional("degenerate dual ray; polytope not full-dimensional")
        # polar vertex u = y/t supports the facet <u, x - centroid> <= 1
        u = [Fraction(c, t) for c in y]
        m = _scale_to_int(u)
        b = max(_dot(m, p) for p in points)
        b = int(b) if Fraction(b).denominator == 1 else b
        if (m, b) not in seen:
            seen.add((m, b))
            facets.append((m, b))
    return facets


# --- public types --------------------------------------------------------------


@dataclass(frozen=True)
class FacetDescription:
    """All facets of a full-dimensional polytope.

    ``normals[i]`` is a primitive inward normal and ``offsets[i]`` the
    integer c with facet i equal to {x : <n, x> = -c} and the polytope
    contained in {x : <n, x> >= -c}.  ``incidence[i]`` is the set of
    vertex indices lying on facet i.
    """

    normals: tuple[tuple[Coord, ...], ...]
    offsets: tuple[Coord, ...]
    incidence: tuple[frozenset[int], ...]

    def __len__(self):
        return len(self.normals)


@dataclass(frozen=True)
class Face:
    dim: int
    vertex_ids: tuple[int, ...]


@dataclass(frozen=True)
class FaceLattice:
    """Graded face poset: proper faces plus the whole polytope on top.

    ``covers`` holds (lower, upper) index pairs into ``faces`` with a
    dimension gap of one.
    """

    faces: tuple[Face, ...]
    covers: tuple[tuple[int, int], ...]
    f_vector: tuple[int, ...]

    def by_dim(self, k: int) -> list[int]:
        return [i for i, f in enumerate(self.faces) if f.dim == k]


class LatticePolytope:
    """Full-dimensional polytope given by its vertices, in a fixed lattice.

    Vertices are canonicalized (duplicates removed, non-extreme points
    rejected, lexicographic order), so all downstream ids are stable.
    Coordinates are integers for lattice polytopes; polars of
    non-reflexive polytopes carry Fractions and ``is_lattice`` is False.
    """

    def __init__(self, points, lattice_role: str = "M", assume_vertices: bool = False):
        pts = [tuple(_norm_coord(x) for x in p) for p in points]
        if not pts:
            raise PreconditionError("empty point list")
        d = len(pts[0])
        if any(len(p) != d for p in pts):
            raise PreconditionError("points of mixed dimension")
        pts = sorted(set(pts))
        if _affine_rank(pts) != d:
            raise NotFullDimensional(f"points span only {_affine_rank(pts)} of {d} dimensions")
        self.dim = d
        self.lattice_role = lattice_role
        self._facets: FacetDescription | None = None
        self._lattice: FaceLattice | None = None
        self._normal_fan = None
        self._face_fan = None
        self.dropped_points: tuple[tuple[Coord, ...], ...] = ()
        if assume_vertices:
            self.vertices = tuple(pts)
        else:
            facets = _hull_facets(pts)
            keep = []
            dropped = []
            for p in pts:
                tight = [m for m, b in facets if _dot(m, p) == b]
                if tight and len(hnf_basis(tight)) == d:
                    keep.append(p)
                else:
                    dropped.append(p)
            self.vertices = tuple(keep)
            self.dropped_points = tuple(dropped)
            self._facets = self._facet_description(facets)

    # -- geometry -----------------------------------------------------------

    def _facet_description(self, raw) -> FacetDescription:
        normals, offsets, incidence = [], [], []
        entries = []
        for m, b in raw:
            n = tuple(-x for x in m)
            tight = frozenset(i for i, v in enumerate(self.vertices) if _dot(m, v) == b)
            entries.append((n, b, tight))
        entries.sort(key=lambda e: (e[0], e[1]))
        for n, b, tight in entries:
            normals.append(n)
            offsets.append(b)
            incidence.append(tight)
        return FacetDescription(tuple(normals), tuple(offsets), tuple(incidence))

    def facet_description(self) -> FacetDescription:
        if self._facets is None:
            self._facets = self._facet_description(_hull_facets(list(self.vertices)))
        return self._facets

    def face_lattice(self) -> FaceLattice:
        if self._lattice is not None:
            return self._lattice
        d = self.dim
        facets = self.facet_description()
        all_verts = frozenset(range(len(self.vertices)))
        known: set[frozenset[int]] = {all_verts}
        queue = [inc for inc in facets.incidence]
        known.update(queue)
        while queue:
            face = queue.pop()
            for inc in facets.incidence:
                meet = face & inc
                if meet and meet not in known:
                    known.add(meet)
                    queue.append(meet)
        graded: list[Face] = []
        for vs in known:
            pts = [self.vertices[i] for i in sorted(vs)]
            faces_dim = d if vs == all_verts else _affine_rank(pts)
            graded.append(Face(faces_dim, tuple(sorted(vs))))
        graded.sort(key=lambda f: (f.dim, f.vertex_ids))
        index = {f.vertex_ids: i for i, f in enumerate(graded)}
        covers = []
        by_dim: dict[int, list[int]] = {}
        for i, f in enumerate(graded):
            by_dim.setdefault(f.dim, []).append(i)
        for k in range(d):
            for lo in by_dim.get(k, []):
                lo_set = set(graded[lo].vertex_ids)
                for hi in by_dim.get(k + 1, []):
                    if lo_set <= set(graded[hi].vertex_ids):
                        covers.append((lo, hi))
        f_vec = tuple(len(by_dim.get(k, [])) for k in range(d))
        self._lattice = FaceLattice(tuple(graded), tuple(covers), f_vec)
        return self._lattice

    def f_vector(self) -> tuple[int, ...]:
        return self.face_lattice().f_vector

    @property
    def is_lattice(self) -> bool:
        return all(isinstance(x, int) for v in self.vertices for x in v)

    def origin_interior(self) -> bool:
        return all(Fraction(c) > 0 for c in self.facet_description().offsets)

    def polar(self) -> "LatticePolytope":
        """The polar polytope {y : <x, y> >= -1 for all x}.

        Vertices are the facet normals scaled so the offset is 1; the
        result is rational (``is_lattice`` False) when ``self`` is not
        reflexive.
        """
        facets = self.facet_description()
        if not self.origin_interior():
            raise OriginNotInterior("polar requires the origin strictly interior")
        verts = []
        for n, c in zip(facets.normals, facets.offsets):
            verts.append(tuple(_norm_coord(Fraction(x, c)) for x in n))
        role = "N" if self.lattice_role == "M" else "M"
        return LatticePolytope(verts, lattice_role=role, assume_vertices=True)

    def is_reflexive(self) -> bool:
        if not self.is_lattice:
            return False
        facets = self.facet_description()
        return all(c == 1 for c in facets.offsets)

    def product(self, other: "LatticePolytope") -> "LatticePolytope":
        """Cartesian product in the direct-sum lattice."""
        verts = [v + w for v in self.vertices for w in other.vertices]
        return LatticePolytope(verts, lattice_role=self.lattice_role, assume_vertices=True)

    def __repr__(self):
        kind = "lattice" if self.is_lattice else "rational"
        return f"LatticePolytope(dim {self.dim}, {len(self.vertices)} vertices, {kind})"

    def __eq__(self, other):
        return (
            isinstance(other, LatticePolytope)
            and self.dim == other.dim
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.dim, self.vertices))
