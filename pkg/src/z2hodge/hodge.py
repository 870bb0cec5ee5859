"""Mod-2 Hodge tables, real/complex Betti numbers and collapse detection.

The central objects are two cosheaves on a complete fan: the span
cosheaf (stalk = mod-2 span of the cone) and its cokernel, the cotorus
cosheaf, whose exterior-power homology fills the triangular Hodge
table.  The real cell complex is the group-algebra cosheaf of the same
quotients, whose homology gives the mod-2 Betti numbers of the real
points; summing table columns against those Betti numbers certifies the
collapse that makes the complex Betti numbers (diagonal sums) valid.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .cosheaf import ChainComplex, Cosheaf, chain_complex, exterior_family
from .errors import ColumnSumBelowBetti, InvariantError, NotACycle
from .fan import Cone, Fan, normal_fan
from .gf2 import Gf2Matrix, induced_quotient_map, solve
from .polytope import LatticePolytope


def cosheaf_N(f: Fan) -> Cosheaf:
    """The span cosheaf: stalk = mod-2 reduction of the cone's saturated
    span, restrictions by inclusion."""
    stalks = {c.id: c.dim for c in f.cones}
    maps = {}
    for lo, hi in f.covers:
        src = f.cone(lo).n_sigma.basis
        tgt = f.cone(hi).n_sigma.basis
        x = solve(tgt.transpose(), src.transpose())
        if x is None:
            raise InvariantError("span of a face does not include into its coface")
        maps[(lo, hi)] = x
    return Cosheaf(f, stalks, maps)


def cosheaf_E(f: Fan) -> Cosheaf:
    """The cotorus cosheaf: stalk = (Z/2)^d modulo the cone's mod-2 span,
    presented by the cone's quotient map."""
    stalks = {c.id: c.codim for c in f.cones}
    maps = {}
    for lo, hi in f.covers:
        maps[(lo, hi)] = induced_quotient_map(f.cone(lo).quotient_map, f.cone(hi).quotient_map)
    return Cosheaf(f, stalks, maps)


@dataclass(frozen=True)
class HodgeTable:
    """Triangular table of ranks, 0 <= q <= p <= d."""

    d: int
    rows: tuple[tuple[int, ...], ...]  # rows[q][p - q] for p = q..d

    def rank(self, p: int, q: int) -> int:
        if not (0 <= q <= p <= self.d):
            raise IndexError(f"(p, q) = {(p, q)} outside the triangle")
        return self.rows[q][p - q]

    def column_sums(self) -> tuple[int, ...]:
        return tuple(
            sum(self.rank(p, q) for q in range(p + 1)) for p in range(self.d + 1)
        )

    def diagonal_sums(self) -> tuple[int, ...]:
        out = []
        for k in range(2 * self.d + 1):
            total = 0
            for q in range(self.d + 1):
                p = k - q
                if q <= p <= self.d:
                    total += self.rank(p, q)
            out.append(total)
        return tuple(out)

    def row_euler(self, q: int) -> int:
        return sum((-1) ** p * self.rank(p, q) for p in range(q, self.d + 1))

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {
            (p, q): self.rank(p, q)
            for q in range(self.d + 1)
            for p in range(q, self.d + 1)
            if self.rank(p, q)
        }

    def pretty(self) -> str:
        """Sheared orientation: row q lists ranks for p = q..d, bottom row
        is q = 0, mirroring the usual spectral-sequence page layout."""
        width = max(len(str(v)) for row in self.rows for v in row)
        lines = ["q"]
        for q in range(self.d, -1, -1):
            cells = [" " * width] * q
            cells += [str(self.rank(p, q)).rjust(width) for p in range(q, self.d + 1)]
            lines.append(" ".join(cells).rstrip())
        lines.append(" " * ((width + 1) * self.d // 2) + "p")
        return "\n".join(lines)


def hodge_table(f: Fan, threads: int | None = None) -> HodgeTable:
    """Ranks of the homology of every exterior power of the cotorus
    cosheaf; jobs over q are independent and may run concurrently."""
    d = f.dim
    family = exterior_family(cosheaf_E(f), d)

    def job(q: int) -> tuple[int, ...]:
        ranks = chain_complex(family[q]).homology_ranks()
        return tuple(ranks[p] for p in range(q, d + 1))

    if threads and threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = tuple(pool.map(job, range(d + 1)))
    else:
        rows = tuple(job(q) for q in range(d + 1))
    return HodgeTable(d, rows)


def cell_cosheaf(f: Fan) -> Cosheaf:
    """Group-algebra cosheaf of the cotorus quotients.

    The stalk at a cone is spanned by the 2^codim elements of its
    quotient group, enumerated in the complement-coordinate order fixed
    by the cone's quotient map; restrictions push group elements
    forward, so this is the cellular chain complex of the real points
    under the moment-map cell structure.
    """
    ecosheaf = cosheaf_E(f)
    stalks = {c.id: 1 << c.codim for c in f.cones}
    maps = {}
    for lo, hi in f.covers:
        r = ecosheaf.maps[(lo, hi)].to_dense().astype(np.int64)
        a = f.cone(lo).codim
        b = f.cone(hi).codim
        src = np.zeros((a, 1 << a), dtype=np.int64)
        for t in range(1 << a):
            for i in range(a):
                src[i, t] = (t >> i) & 1
        images = (r @ src) % 2
        weights = np.left_shift(1, np.arange(b, dtype=np.int64))
        targets = weights @ images if b else np.zeros(1 << a, dtype=np.int64)
        dense = np.zeros((1 << b, 1 << a), dtype=np.uint8)
        for t in range(1 << a):
            dense[int(targets[t]), t] = 1
        maps[(lo, hi)] = Gf2Matrix.from_dense(dense)
    return Cosheaf(f, stalks, maps)


def real_cell_complex(delta: LatticePolytope) -> ChainComplex:
    """Cellular chain complex of the real points of the projective toric
    variety of the polytope's normal fan."""
    return cell_complex(normal_fan(delta))


def cell_complex(f: Fan) -> ChainComplex:
    return chain_complex(cell_cosheaf(f))


def betti_real(delta: LatticePolytope) -> tuple[int, ...]:
    return real_cell_complex(delta).homology_ranks()


def collapse_and_betti(table: HodgeTable, real_betti) -> tuple[bool, tuple[int, ...] | None, bool | None]:
    """Compare column sums with the real Betti numbers.

    Returns (collapsed, complex Betti numbers or None, maximal or None).
    Complex Betti numbers are reported only under a verified collapse;
    maximality is True exactly when total ranks agree, unknown (None)
    without the collapse certificate.
    """
    sums = table.column_sums()
    real_betti = tuple(real_betti)
    if len(real_betti) != len(sums):
        raise ValueError("Betti vector has wrong length")
    for p, (s, b) in enumerate(zip(sums, real_betti)):
        if s < b:
            raise ColumnSumBelowBetti(
                f"column {p} sums to {s} < Betti number {b}; upstream bug"
            )
    if sums != real_betti:
        return False, None, None
    betti_complex = table.diagonal_sums()
    maximal = sum(betti_complex) == sum(real_betti)
    return True, betti_complex, maximal


def rightmost_column(f: Fan) -> tuple[int, tuple[int, ...]]:
    """Rank of the mod-2 ray span and the binomial prediction for the
    rightmost Hodge column."""
    rays = [c.rays[0] for c in f.cones if c.dim == 1]
    mat = Gf2Matrix.from_rows([[x % 2 for x in r] for r in rays], f.dim)
    s = mat.rank()
    predicted = tuple(
        comb(f.dim - s, q - s) if q >= s else 0 for q in range(f.dim + 1)
    )
    return s, predicted


def fan_h_vector(f: Fan) -> tuple[int, ...]:
    """h-vector from the cone counts: coefficient of t^q in
    sum over cones of (t - 1)^(d - dim)."""
    d = f.dim
    counts = [f.n_cones(d - j) for j in range(d + 1)]
    return tuple(
        sum((-1) ** (j - q) * comb(j, q) * counts[j] for j in range(q, d + 1))
        for q in range(d + 1)
    )


def h_vector(delta: LatticePolytope) -> tuple[int, ...]:
    """h-vector of the polytope: coefficient of t^q in
    sum_j f_j (t-1)^j with f_d = 1 for the polytope itself."""
    d = delta.dim
    f = list(delta.f_vector()) + [1]
    return tuple(
        sum((-1) ** (j - q) * comb(j, q) * f[j] for j in range(q, d + 1))
        for q in range(d + 1)
    )


def h_vector_check(delta: LatticePolytope, table: HodgeTable) -> bool:
    """Row-wise Euler characteristics against the h-vector."""
    h = h_vector(delta)
    return all(
        table.row_euler(q) == (-1) ** q * h[q] for q in range(table.d + 1)
    )


def edge_class_nonzero(delta: LatticePolytope, beta: Cone, complex_: ChainComplex | None = None) -> bool:
    """Whether the orbit-closure cycle of the cone is nonzero in the
    homology of the real points.

    The cycle is the sum of all cells in the block of the cone (one per
    group element); it is always a cycle because each boundary cell is
    hit twice, and the class is nonzero iff it is not a boundary.
    """
    cc = complex_ if complex_ is not None else real_cell_complex(delta)
    q = beta.codim
    offset, size = cc.blocks[q][beta.id]
    vec = np.zeros((cc.dims[q], 1), dtype=np.uint8)
    vec[offset : offset + size] = 1
    cycle = Gf2Matrix.from_dense(vec)
    if q >= 1 and not (cc.boundary(q) @ cycle).is_zero():
        raise NotACycle("orbit-closure chain has nonzero boundary")
    if q >= cc.top:
        return True
    return solve(cc.boundary(q + 1), cycle) is None


@dataclass(frozen=True)
class HodgeReport:
    """Everything the pipeline computes for one polytope and fan choice."""

    dim: int
    f_vector: tuple[int, ...]
    reflexive: bool
    regularity_depth: int
    table: HodgeTable
    betti_real: tuple[int, ...]
    collapsed: bool
    betti_complex: tuple[int, ...] | None
    maximal: bool | None
    s_rank: int
    chow: tuple[int, ...]
    h_vector: tuple[int, ...]
    checks: dict[str, bool]
