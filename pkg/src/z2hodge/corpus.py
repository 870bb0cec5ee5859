"""Built-in polytope corpus.

Every entry is reflexive.  The free sums (``p1xp2`` and friends) are the
polars of products of projective-space simplices, so their dual face fan
is a smooth product fan; the boxes (``square``, ``cube``) have normal
fan a product of projective lines but a highly irregular face fan.

``example1`` and ``example2`` are the seven- and six-dimensional
polytopes used for the golden acceptance values.
"""

from __future__ import annotations

from .polytope import LatticePolytope


def _e(d: int, i: int, scale: int = 1) -> tuple[int, ...]:
    return tuple(scale if j == i else 0 for j in range(d))


def box(d: int) -> list[tuple[int, ...]]:
    """Vertices of [-1, 1]^d."""
    verts = [()]
    for _ in range(d):
        verts = [v + (s,) for v in verts for s in (-1, 1)]
    return verts


def cross_polytope(d: int) -> list[tuple[int, ...]]:
    """Vertices of conv(+-e_i)."""
    return [_e(d, i, s) for i in range(d) for s in (1, -1)]


def projective_simplex(d: int) -> list[tuple[int, ...]]:
    """The reflexive simplex whose normal fan is the fan of P^d."""
    minus_one = tuple(-1 for _ in range(d))
    verts = [minus_one]
    for i in range(d):
        verts.append(tuple(d if j == i else -1 for j in range(d)))
    return verts


def fan_simplex(d: int) -> list[tuple[int, ...]]:
    """conv(e_1, ..., e_d, -e_1-...-e_d), the polar of the above.

    Its face fan is the smooth fan of P^d, so these are the
    projective-space entries with a fully mod-2-regular dual fan (the
    polar side only has that property for even d)."""
    return [_e(d, i) for i in range(d)] + [tuple(-1 for _ in range(d))]


def free_sum(*factors: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Free sum: embed each factor in its own coordinate block."""
    total = sum(len(f[0]) for f in factors)
    verts = []
    offset = 0
    for f in factors:
        k = len(f[0])
        for v in f:
            verts.append((0,) * offset + tuple(v) + (0,) * (total - offset - k))
        offset += k
    return verts


EXAMPLE1_VERTICES = (
    [_e(7, i, -1) for i in range(7)]
    + [(1, 1, 1, 1, 0, 0, 0), (0, 0, 0, 0, 1, 1, 1)]
)

EXAMPLE2_VERTICES = (
    [(-1, 0, 0, 0, 0, 0)]
    + [_e(6, i, s) for i in range(1, 5) for s in (1, -1)]
    + [(0, 0, 0, 0, 0, 1), (1, 0, 0, 0, 0, -1), (-1, -1, -1, -1, -1, -1)]
)


_BUILDERS = {
    "segment": lambda: [(-1,), (1,)],
    "square": lambda: box(2),
    "cube": lambda: box(3),
    "cross2": lambda: cross_polytope(2),
    "cross3": lambda: cross_polytope(3),
    "cross4": lambda: cross_polytope(4),
    "simplex2": lambda: projective_simplex(2),
    "simplex3": lambda: projective_simplex(3),
    "simplex4": lambda: projective_simplex(4),
    "dsimplex2": lambda: fan_simplex(2),
    "dsimplex3": lambda: fan_simplex(3),
    "dsimplex4": lambda: fan_simplex(4),
    "p1xp2": lambda: free_sum(fan_simplex(1), fan_simplex(2)),
    "p1xp3": lambda: free_sum(fan_simplex(1), fan_simplex(3)),
    "p2xp2": lambda: free_sum(fan_simplex(2), fan_simplex(2)),
    "example1": lambda: EXAMPLE1_VERTICES,
    "example2": lambda: EXAMPLE2_VERTICES,
}


def names() -> list[str]:
    return sorted(_BUILDERS)


def vertices(name: str) -> list[tuple[int, ...]]:
    try:
        return list(_BUILDERS[name]())
    except KeyError:
        raise KeyError(f"unknown corpus entry {name!r}; have {', '.join(names())}") from None


def polytope(name: str) -> LatticePolytope:
    return LatticePolytope(vertices(name), assume_vertices=True)
