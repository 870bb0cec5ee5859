"""Exact integer lattice computations.

Hermite normal form, integer kernels, saturation of sublattices,
primitive vectors and reduction mod 2.  Everything runs on Python ints,
so no intermediate value can overflow; no floating point appears
anywhere in the package.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import ZeroVector
from .gf2 import Gf2Subspace

IntVec = tuple[int, ...]


def primitive(v) -> IntVec:
    """v divided by the gcd of its entries (direction preserved)."""
    v = tuple(int(x) for x in v)
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ZeroVector("primitive vector of 0 is undefined")
    return tuple(x // g for x in v)


def _hnf_rows(rows: list[list[int]], track: list[list[int]] | None = None) -> int:
    """In-place row Hermite normal form; returns the rank.

    Row operations are mirrored onto ``track`` when given (used for
    kernel extraction).  Pivots are positive, entries above each pivot
    reduced into [0, pivot).
    """
    if not rows:
        return 0
    nrows, ncols = len(rows), len(rows[0])

    def addmul(i, j, q):
        rows[i] = [a - q * b for a, b in zip(rows[i], rows[j])]
        if track is not None:
            track[i] = [a - q * b for a, b in zip(track[i], track[j])]

    def swap(i, j):
        rows[i], rows[j] = rows[j], rows[i]
        if track is not None:
            track[i], track[j] = track[j], track[i]

    def negate(i):
        rows[i] = [-a for a in rows[i]]
        if track is not None:
            track[i] = [-a for a in track[i]]

    r = 0
    for c in range(ncols):
        # gcd out column c among rows r..end
        while True:
            nz = [i for i in range(r, nrows) if rows[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(rows[i][c]))
            if piv != r:
                swap(r, piv)
            done = True
            for i in range(r + 1, nrows):
                if rows[i][c] != 0:
                    q = rows[i][c] // rows[r][c]
                    addmul(i, r, q)
                    if rows[i][c] != 0:
                        done = False
            if done:
                break
        if r < nrows and rows[r][c] != 0:
            if rows[r][c] < 0:
                negate(r)
            for i in range(r):
                q = rows[i][c] // rows[r][c]
                if q:
                    addmul(i, r, q)
            r += 1
            if r == nrows:
                break
    return r


def hnf(matrix) -> tuple[IntVec, ...]:
    """Row-style Hermite normal form, zero rows kept at the bottom."""
    rows = [list(map(int, r)) for r in matrix]
    _hnf_rows(rows)
    return tuple(tuple(r) for r in rows)


def hnf_basis(matrix) -> tuple[IntVec, ...]:
    """HNF with zero rows dropped: a canonical basis of the row span."""
    rows = [list(map(int, r)) for r in matrix]
    rank = _hnf_rows(rows)
    return tuple(tuple(r) for r in rows[:rank])


def integer_kernel(matrix, ncols: int) -> tuple[IntVec, ...]:
    """Basis of {x in Z^ncols : M x = 0}, via HNF of the transpose."""
    rows = [list(r) for r in matrix]
    nrows = len(rows)
    transpose = [[int(rows[i][j]) for i in range(nrows)] for j in range(ncols)]
    track = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    rank = _hnf_rows(transpose, track)
    kernel = [tuple(track[i]) for i in range(rank, ncols)]
    return hnf_basis(kernel)


def saturate(generators, ambient_dim: int | None = None) -> tuple[IntVec, ...]:
    """Basis of span_R(generators) intersected with Z^d.

    The result has exactly rank(generators) rows and is normalized by
    HNF, so it is deterministic.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if ambient_dim is None:
        if not gens:
            raise ValueError("ambient_dim required for an empty generator list")
        ambient_dim = len(gens[0])
    if not gens:
        return ()
    orth = integer_kernel(gens, ambient_dim)
    if not orth:
        return tuple(tuple(int(i == j) for j in range(ambient_dim)) for i in range(ambient_dim))
    return integer_kernel(orth, ambient_dim)


def mod2_image(vectors, ambient_dim: int) -> Gf2Subspace:
    """Span in (Z/2)^d of the entrywise mod-2 reductions."""
    reduced = [[int(x) % 2 for x in v] for v in vectors]
    return Gf2Subspace.from_spanning(reduced, ambient_dim)


def det(matrix) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    work = [list(map(int, r)) for r in matrix]
    n = len(work)
    if any(len(r) != n for r in work):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if work[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if work[i][k] != 0), None)
            if swap is None:
                return 0
            work[k], work[swap] = work[swap], work[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i][j] = (work[i][j] * work[k][k] - work[i][k] * work[k][j]) // prev
            work[i][k] = 0
        prev = work[k][k]
    return sign * work[n - 1][n - 1]


def express_in_basis(vector, basis) -> IntVec | None:
    """Integer coordinates of ``vector`` in ``basis`` rows, else None.

    Solves x . basis = vector exactly over Q and returns x only when it
    is integral (which is guaranteed whenever the basis is a saturated
    lattice basis and the vector lies in the lattice).
    """
    basis = [list(map(int, r)) for r in basis]
    target = [Fraction(int(x)) for x in vector]
    k = len(basis)
    if k == 0:
        return () if not any(target) else None
    d = len(basis[0])
    # eliminate on the transposed system basis^T x = vector
    aug = [[Fraction(basis[i][j]) for i in range(k)] + [target[j]] for j in range(d)]
    pivots = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, d) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [a * inv for a in aug[r]]
        for i in range(d):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    # consistency: residual rows must vanish
    for i in range(r, d):
        if aug[i][k] != 0:
            return None
    x = [Fraction(0)] * k
    for row, c in enumerate(pivots):
        x[c] = aug[row][k]
    if any(v.denominator != 1 for v in x):
        return None
    return tuple(int(v) for v in x)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def dual_solution(f) -> IntVec:
    """Some y with <y, f> = 1, for a primitive integer vector f."""
    f = [int(x) for x in f]
    y = [0] * len(f)
    g = 0
    for i, v in enumerate(f):
        g2, a, b = _egcd(g, v)
        y = [a * t for t in y]
        y[i] = b
        g = g2
    if g != 1:
        raise ZeroVector("vector is not primitive")
    return tuple(y)
