"""Mod-2 torus-invariant Chow groups.

Cycles are orbit closures of cones of fixed codimension; relations are
mod-2 divisors of torus characters, one row per (cone of codimension
q+1, dual-basis character).  The rank of the quotient must agree with
the diagonal Hodge entry computed by the independent cosheaf pipeline.
"""

from __future__ import annotations

from .errors import InvariantError, NotACover
from .fan import Cone, Fan
from .gf2 import Gf2Matrix
from .hodge import HodgeTable
from .lattice import dual_solution, express_in_basis, integer_kernel


def normal_generator(f: Fan, sigma: Cone, tau: Cone) -> tuple[int, ...]:
    """Class in the sigma-quotient of a lattice generator of the rank-one
    quotient (tau-span lattice)/(sigma-span lattice), for a cover pair.

    The result is independent of all basis choices because the quotient
    has exactly one nonzero class.
    """
    if tau.id not in f.up[sigma.id]:
        raise NotACover(f"cones {sigma.id} < {tau.id} are not a cover pair")
    b_tau = tau.span_basis
    coords_matrix = []
    for row in sigma.span_basis:
        coords = express_in_basis(row, b_tau)
        if coords is None:
            raise InvariantError("face span does not lie in coface span lattice")
        coords_matrix.append(coords)
    kernel = integer_kernel(coords_matrix, len(b_tau))
    if len(kernel) != 1:
        raise InvariantError("span quotient of a cover pair is not rank one")
    functional = kernel[0]
    y = dual_solution(functional)
    ambient = tuple(
        sum(y[i] * b_tau[i][j] for i in range(len(b_tau))) for j in range(f.dim)
    )
    cls = sigma.quotient_map.matvec([x % 2 for x in ambient])
    if not cls.any():
        raise InvariantError("normal generator reduced to zero; saturation bug")
    return tuple(int(x) for x in cls)


def chow_presentation(f: Fan, q: int) -> tuple[tuple[int, ...], Gf2Matrix]:
    """Cycle cone ids (codimension q) and the relation matrix, one row
    per (codimension q+1 cone, dual-basis element of its character
    space)."""
    if not 0 <= q <= f.dim:
        raise ValueError(f"q = {q} outside 0..{f.dim}")
    cycles = f.grades.get(f.dim - q, ())
    col_of = {cone_id: i for i, cone_id in enumerate(cycles)}
    rows = []
    if q + 1 <= f.dim:
        for sigma_id in f.grades.get(f.dim - q - 1, ()):
            sigma = f.cone(sigma_id)
            per_coface = {}
            for tau_id in f.up[sigma_id]:
                per_coface[tau_id] = normal_generator(f, sigma, f.cone(tau_id))
            for i in range(sigma.codim):
                row = [0] * len(cycles)
                for tau_id, cls in per_coface.items():
                    row[col_of[tau_id]] = cls[i]
                rows.append(row)
    return cycles, Gf2Matrix.from_rows(rows, len(cycles))


def chow_rank(f: Fan, q: int) -> int:
    cycles, relations = chow_presentation(f, q)
    return len(cycles) - relations.rank()


def chow_ranks(f: Fan) -> tuple[int, ...]:
    return tuple(chow_rank(f, q) for q in range(f.dim + 1))


def verify_hqq_equals_chow(f: Fan, table: HodgeTable) -> bool:
    """The diagonal of the Hodge table against the relation-matrix
    pipeline; the two computations share no code path above the field
    arithmetic."""
    return all(chow_rank(f, q) == table.rank(q, q) for q in range(f.dim + 1))
