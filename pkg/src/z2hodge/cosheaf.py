"""Cosheaves of GF(2) vector spaces on a fan and their chain complexes.

Only cover-pair restrictions are stored; longer restrictions are
composites, and functoriality is a finite check over the diamonds of the
fan.  Sheaves on the dual fan live in the same container with direction
``"down"`` (maps run from a cone to each of its facets); the
:func:`hat` correspondence turns them into cosheaves.
"""

from __future__ import annotations

from math import comb

from .errors import (
    BoundarySquareNonzero,
    CorrespondenceMismatch,
    FunctorialityViolation,
)
from .fan import DualCorrespondence, Fan
from .gf2 import Gf2Matrix, exterior_powers_all, sym_power, tensor_product


class Cosheaf:
    """Stalk dimensions per cone plus one restriction matrix per cover.

    ``direction="up"`` is a cosheaf (map for cover (lo, hi) sends the lo
    stalk to the hi stalk); ``direction="down"`` stores a sheaf (the map
    for (lo, hi) sends the hi stalk to the lo stalk).
    """

    def __init__(self, fan: Fan, stalk_dims, maps, direction: str = "up"):
        if direction not in ("up", "down"):
            raise ValueError("direction must be 'up' or 'down'")
        self.fan = fan
        self.stalk_dims = dict(stalk_dims)
        self.maps = dict(maps)
        self.direction = direction
        for lo, hi in fan.covers:
            m = self.maps[(lo, hi)]
            src, tgt = (lo, hi) if direction == "up" else (hi, lo)
            if m.shape != (self.stalk_dims[tgt], self.stalk_dims[src]):
                raise ValueError(
                    f"restriction for cover {(lo, hi)} has shape {m.shape}, "
                    f"expected {(self.stalk_dims[tgt], self.stalk_dims[src])}"
                )

    def stalk_dim(self, cone_id: int) -> int:
        return self.stalk_dims[cone_id]

    def restriction(self, lo: int, hi: int) -> Gf2Matrix:
        return self.maps[(lo, hi)]

    def verify_functoriality(self) -> None:
        """Check the two composites around every diamond agree."""
        for sigma, tau1, tau2, beta in self.fan.diamonds():
            if self.direction == "up":
                one = self.maps[(tau1, beta)] @ self.maps[(sigma, tau1)]
                two = self.maps[(tau2, beta)] @ self.maps[(sigma, tau2)]
            else:
                one = self.maps[(sigma, tau1)] @ self.maps[(tau1, beta)]
                two = self.maps[(sigma, tau2)] @ self.maps[(tau2, beta)]
            if one != two:
                raise FunctorialityViolation(
                    f"composites through cones {tau1} and {tau2} disagree "
                    f"between cones {sigma} and {beta}"
                )

    def __repr__(self):
        total = sum(self.stalk_dims.values())
        return f"Cosheaf({self.direction}, total stalk dim {total} on {self.fan!r})"


class ChainComplex:
    """Chain complex C_p = sum of stalks over cones of dimension d - p.

    ``blocks[p]`` maps a cone id to its (offset, size) column range in
    C_p.  Boundary squares are checked at construction.
    """

    def __init__(self, dims, boundaries, blocks):
        self.dims = tuple(dims)
        self._boundaries = tuple(boundaries)
        self.blocks = tuple(blocks)
        self._ranks: list[int] | None = None
        for p in range(1, len(self._boundaries)):
            lower, upper = self._boundaries[p - 1], self._boundaries[p]
            if lower.ncols and upper.ncols and not (lower @ upper).is_zero():
                raise BoundarySquareNonzero(f"boundary square at degree {p + 1} is nonzero")

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def boundary(self, p: int) -> Gf2Matrix:
        """The map C_p -> C_{p-1} (zero-shaped for p = 0 and p > top)."""
        if 1 <= p <= self.top:
            return self._boundaries[p - 1]
        if p == 0:
            return Gf2Matrix.zeros(0, self.dims[0])
        return Gf2Matrix.zeros(self.dims[self.top] if p == self.top + 1 else 0, 0)

    def boundary_ranks(self) -> tuple[int, ...]:
        return tuple(self.boundary(p).rank() for p in range(1, self.top + 1))

    def homology_ranks(self) -> tuple[int, ...]:
        if self._ranks is None:
            ranks = []
            for p in range(self.top + 1):
                r_in = self.boundary(p + 1).rank() if p < self.top else 0
                r_out = self.boundary(p).rank() if p >= 1 else 0
                ranks.append(self.dims[p] - r_in - r_out)
            self._ranks = ranks
        return tuple(self._ranks)

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * d for p, d in enumerate(self.dims))


def chain_complex(f: Cosheaf) -> ChainComplex:
    """Assemble the block boundary matrices of a cosheaf."""
    if f.direction != "up":
        raise ValueError("chain complexes are built from cosheaves, not sheaves")
    f.verify_functoriality()
    fan = f.fan
    d = fan.dim
    blocks = []
    dims = []
    for p in range(d + 1):
        offset = 0
        layout = {}
        for cone_id in fan.grades.get(d - p, ()):
            size = f.stalk_dim(cone_id)
            layout[cone_id] = (offset, size)
            offset += size
        blocks.append(layout)
        dims.append(offset)
    boundaries = []
    for p in range(1, d + 1):
        rows, cols = dims[p - 1], dims[p]
        entries = []
        for lo, hi in fan.covers:
            if fan.cone(hi).dim != d - p + 1:
                continue
            roff, _ = blocks[p - 1][hi]
            coff, _ = blocks[p][lo]
            entries.append((roff, coff, f.maps[(lo, hi)]))
        boundaries.append(Gf2Matrix.assemble(rows, cols, entries))
    return ChainComplex(dims, boundaries, blocks)


def homology_ranks(c: ChainComplex) -> tuple[int, ...]:
    return c.homology_ranks()


def constant_cosheaf(fan: Fan, dim: int = 1) -> Cosheaf:
    stalks = {c.id: dim for c in fan.cones}
    ident = Gf2Matrix.identity(dim)
    maps = {cover: ident for cover in fan.covers}
    return Cosheaf(fan, stalks, maps)


def zero_cosheaf(fan: Fan) -> Cosheaf:
    stalks = {c.id: 0 for c in fan.cones}
    maps = {cover: Gf2Matrix.zeros(0, 0) for cover in fan.covers}
    return Cosheaf(fan, stalks, maps)


def exterior_family(f: Cosheaf, q_max: int) -> list[Cosheaf]:
    """[wedge^0 f, ..., wedge^q_max f] computed in one pass per cover."""
    fan = f.fan
    out = [constant_cosheaf(fan)]
    if q_max == 0:
        return out
    stalks = [
        {c.id: comb(f.stalk_dim(c.id), q) for c in fan.cones}
        for q in range(1, q_max + 1)
    ]
    maps: list[dict] = [dict() for _ in range(q_max)]
    for cover in fan.covers:
        m = f.maps[cover]
        powers = exterior_powers_all(m)
        for q in range(1, q_max + 1):
            if q < len(powers):
                maps[q - 1][cover] = powers[q]
            else:
                maps[q - 1][cover] = Gf2Matrix.zeros(comb(m.nrows, q), comb(m.ncols, q))
    for q in range(1, q_max + 1):
        out.append(Cosheaf(fan, stalks[q - 1], maps[q - 1], f.direction))
    return out


def exterior_cosheaf(f: Cosheaf, q: int) -> Cosheaf:
    """Stalkwise q-th exterior power (the constant cosheaf when q = 0)."""
    return exterior_family(f, q)[q]


def sym_cosheaf(f: Cosheaf, k: int) -> Cosheaf:
    """Stalkwise k-th symmetric power."""
    if k == 0:
        return constant_cosheaf(f.fan)
    stalks = {c.id: comb(f.stalk_dim(c.id) + k - 1, k) for c in f.fan.cones}
    maps = {cover: sym_power(m, k) for cover, m in f.maps.items()}
    return Cosheaf(f.fan, stalks, maps, f.direction)


def tensor_cosheaf(a: Cosheaf, b: Cosheaf) -> Cosheaf:
    if a.fan is not b.fan or a.direction != b.direction:
        raise ValueError("tensor factors must live on the same fan")
    stalks = {c.id: a.stalk_dim(c.id) * b.stalk_dim(c.id) for c in a.fan.cones}
    maps = {cover: tensor_product(a.maps[cover], b.maps[cover]) for cover in a.fan.covers}
    return Cosheaf(a.fan, stalks, maps, a.direction)


def circ_truncate(f: Cosheaf) -> Cosheaf:
    """Zero out the stalk at the zero cone (the degree-circ truncation);
    homology agrees with f in degrees p <= d - 2."""
    fan = f.fan
    origin = fan.grades[0][0]
    stalks = dict(f.stalk_dims)
    stalks[origin] = 0
    maps = dict(f.maps)
    for lo, hi in fan.covers:
        if lo == origin:
            maps[(lo, hi)] = Gf2Matrix.zeros(f.stalk_dim(hi), 0)
    return Cosheaf(fan, stalks, maps, f.direction)


def hat(sheaf_on_dual: Cosheaf, corr: DualCorrespondence) -> Cosheaf:
    """Pull a sheaf on the dual fan through the polar correspondence.

    The resulting cosheaf has the dual stalk on every positive-dimensional
    cone, the zero stalk at the origin, and zero maps out of the origin.
    """
    if sheaf_on_dual.direction != "down":
        raise CorrespondenceMismatch("hat expects a sheaf (direction 'down')")
    if sheaf_on_dual.fan is not corr.sigma_star:
        raise CorrespondenceMismatch("sheaf does not live on the dual fan")
    fan = corr.sigma
    origin = fan.grades[0][0]
    stalks = {}
    for c in fan.cones:
        stalks[c.id] = 0 if c.dim == 0 else sheaf_on_dual.stalk_dim(corr.to_star[c.id])
    maps = {}
    for lo, hi in fan.covers:
        if lo == origin:
            maps[(lo, hi)] = Gf2Matrix.zeros(stalks[hi], 0)
        else:
            maps[(lo, hi)] = sheaf_on_dual.maps[(corr.to_star[hi], corr.to_star[lo])]
    return Cosheaf(fan, stalks, maps, "up")


class CosheafMorphism:
    """Stalkwise linear maps between cosheaves on one fan."""

    def __init__(self, source: Cosheaf, target: Cosheaf, components):
        if source.fan is not target.fan:
            raise ValueError("morphism requires a common fan")
        self.source = source
        self.target = target
        self.components = dict(components)

    def component(self, cone_id: int) -> Gf2Matrix:
        return self.components[cone_id]

    def is_natural(self) -> bool:
        """All squares against cover restrictions commute."""
        for lo, hi in self.source.fan.covers:
            left = self.components[hi] @ self.source.maps[(lo, hi)]
            right = self.target.maps[(lo, hi)] @ self.components[lo]
            if left != right:
                return False
        return True
