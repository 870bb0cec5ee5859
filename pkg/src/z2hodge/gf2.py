"""Exact linear algebra over the two-element field.

Matrices are dense and bit-packed: each row is a run of 64-bit words,
entry (i, j) is bit ``j & 63`` of word ``j >> 6``.  All reductions are
plain Gaussian elimination with word-wide XOR (see :mod:`z2hodge._kernels`
for the numba/numpy backends).

Wedge bases are ordered by lexicographic index subset and monomial bases
by lexicographic index multiset; this ordering is part of the public
contract so stalk bases compose deterministically across modules.
"""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement
from math import comb

import numpy as np

from . import _kernels
from .errors import NoFactorization


def _pack(dense: np.ndarray) -> np.ndarray:
    """Pack a (rows, cols) 0/1 array into (rows, words) uint64."""
    rows, cols = dense.shape
    words = (cols + 63) >> 6
    if words == 0 or rows == 0:
        return np.zeros((rows, words), dtype=np.uint64)
    packed = np.packbits(dense.astype(np.uint8), axis=1, bitorder="little")
    padded = np.zeros((rows, words * 8), dtype=np.uint8)
    padded[:, : packed.shape[1]] = packed
    return np.ascontiguousarray(padded).view(np.uint64)


def _unpack(data: np.ndarray, ncols: int) -> np.ndarray:
    rows = data.shape[0]
    if ncols == 0 or rows == 0:
        return np.zeros((rows, ncols), dtype=np.uint8)
    as_bytes = np.ascontiguousarray(data).view(np.uint8)
    return np.unpackbits(as_bytes, axis=1, count=ncols, bitorder="little")


class Gf2Matrix:
    """Immutable bit-packed matrix over GF(2)."""

    __slots__ = ("nrows", "ncols", "data", "_rank")

    def __init__(self, nrows: int, ncols: int, data: np.ndarray):
        self.nrows = nrows
        self.ncols = ncols
        data.setflags(write=False)
        self.data = data
        self._rank = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Gf2Matrix":
        words = (ncols + 63) >> 6
        return cls(nrows, ncols, np.zeros((nrows, words), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        dense = np.eye(n, dtype=np.uint8)
        return cls(n, n, _pack(dense))

    @classmethod
    def from_rows(cls, rows, ncols: int | None = None) -> "Gf2Matrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        dense = np.array(rows, dtype=np.int64).reshape(len(rows), ncols) % 2
        return cls(len(rows), ncols, _pack(dense.astype(np.uint8)))

    @classmethod
    def from_dense(cls, arr) -> "Gf2Matrix":
        dense = np.asarray(arr, dtype=np.int64) % 2
        if dense.ndim != 2:
            raise ValueError("expected a 2-d array")
        r, c = dense.shape
        return cls(r, c, _pack(dense.astype(np.uint8)))

    @classmethod
    def assemble(cls, nrows: int, ncols: int, blocks) -> "Gf2Matrix":
        """Build from ``(row_offset, col_offset, Gf2Matrix)`` blocks."""
        dense = np.zeros((nrows, ncols), dtype=np.uint8)
        for roff, coff, m in blocks:
            if m.nrows and m.ncols:
                dense[roff : roff + m.nrows, coff : coff + m.ncols] ^= m.to_dense()
        return cls(nrows, ncols, _pack(dense))

    # -- basics ----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def bit(self, i: int, j: int) -> int:
        return int((self.data[i, j >> 6] >> np.uint64(j & 63)) & np.uint64(1))

    def to_dense(self) -> np.ndarray:
        return _unpack(self.data, self.ncols)

    def to_lists(self) -> list[list[int]]:
        return self.to_dense().astype(int).tolist()

    def row_ints(self) -> list[int]:
        """Rows as Python ints, bit j = entry j."""
        dense = self.to_dense()
        out = []
        for i in range(self.nrows):
            acc = 0
            for j in np.nonzero(dense[i])[0]:
                acc |= 1 << int(j)
            out.append(acc)
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Gf2Matrix)
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.data.tobytes()))

    def __repr__(self):
        return f"Gf2Matrix({self.nrows}x{self.ncols})"

    def is_zero(self) -> bool:
        return not self.data.any()

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Gf2Matrix(self.nrows, self.ncols, self.data ^ other.data)

    def __matmul__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out = _kernels.matmul_packed(self.data, self.ncols, other.data)
        return Gf2Matrix(self.nrows, other.ncols, out)

    def transpose(self) -> "Gf2Matrix":
        return Gf2Matrix.from_dense(self.to_dense().T)

    def matvec(self, vec) -> np.ndarray:
        """Apply to a 0/1 column vector, returned as a uint8 array."""
        v = np.asarray(vec, dtype=np.uint8).reshape(-1, 1) % 2
        col = Gf2Matrix.from_dense(v)
        return (self @ col).to_dense().reshape(-1)

    # -- elimination -------------------------------------------------------

    def rref(self) -> tuple["Gf2Matrix", tuple[int, ...]]:
        """Reduced row echelon form and pivot columns."""
        work = self.data.copy()
        rank, piv = _kernels.rref_inplace(work, self.ncols)
        self._rank = rank
        return Gf2Matrix(self.nrows, self.ncols, work), tuple(int(p) for p in piv)

    def rank(self) -> int:
        if self._rank is None:
            work = self.data.copy()
            r, _ = _kernels.rref_inplace(work, self.ncols)
            self._rank = r
        return self._rank


def rank(m: Gf2Matrix) -> int:
    return m.rank()


def solve(a: Gf2Matrix, b: Gf2Matrix) -> Gf2Matrix | None:
    """A particular X with ``a @ X = b``, or None if inconsistent.

    Free coordinates are set to zero; the solution is unique when ``a``
    has full column rank.
    """
    if a.nrows != b.nrows:
        raise ValueError("row count mismatch")
    aug_dense = np.concatenate([a.to_dense(), b.to_dense()], axis=1)
    aug = Gf2Matrix.from_dense(aug_dense)
    red, piv = aug.rref()
    if any(p >= a.ncols for p in piv):
        return None
    red_dense = red.to_dense()
    x = np.zeros((a.ncols, b.ncols), dtype=np.uint8)
    for r, p in enumerate(piv):
        x[p] = red_dense[r, a.ncols :]
    return Gf2Matrix.from_dense(x)


class Gf2Subspace:
    """Subspace of GF(2)^n, canonically represented by its RREF basis.

    Echelon form is unique, so equality of subspaces is equality of
    basis matrices.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: Gf2Matrix):
        self.ambient_dim = ambient_dim
        self.basis = basis

    @classmethod
    def from_spanning(cls, rows, ambient_dim: int) -> "Gf2Subspace":
        m = Gf2Matrix.from_rows(rows, ambient_dim)
        red, piv = m.rref()
        dense = red.to_dense()[: len(piv)]
        return cls(ambient_dim, Gf2Matrix.from_dense(dense.reshape(len(piv), ambient_dim)))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Gf2Subspace":
        return cls(ambient_dim, Gf2Matrix.zeros(0, ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> "Gf2Subspace":
        return cls(ambient_dim, Gf2Matrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def reduce_vector(self, vec) -> np.ndarray:
        """Residual of ``vec`` after reduction by the echelon basis."""
        v = np.asarray(vec, dtype=np.uint8).copy() % 2
        dense = self.basis.to_dense()
        for row in dense:
            p = int(np.argmax(row))
            if row[p] and v[p]:
                v ^= row
        return v

    def contains_vector(self, vec) -> bool:
        return not self.reduce_vector(vec).any()

    def contains(self, other: "Gf2Subspace") -> bool:
        return all(self.contains_vector(r) for r in other.basis.to_dense())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Gf2Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Gf2Subspace(dim {self.dim} of {self.ambient_dim})"


def kernel_basis(m: Gf2Matrix) -> Gf2Subspace:
    """Echelon basis of the right kernel {v : m v = 0}."""
    red, piv = m.rref()
    dense = red.to_dense()
    pivset = set(piv)
    free = [c for c in range(m.ncols) if c not in pivset]
    vectors = []
    for f in free:
        v = np.zeros(m.ncols, dtype=np.uint8)
        v[f] = 1
        for r, p in enumerate(piv):
            if dense[r, f]:
                v[p] = 1
        vectors.append(v)
    return Gf2Subspace.from_spanning(vectors, m.ncols)


def induced_quotient_map(q_src: Gf2Matrix, q_tgt: Gf2Matrix) -> Gf2Matrix:
    """The unique R with ``q_tgt = R @ q_src``.

    Both arguments are surjective quotient maps out of the same space;
    raises :class:`NoFactorization` when ker(q_src) is not contained in
    ker(q_tgt), which signals a face-relation bug upstream.
    """
    if q_src.ncols != q_tgt.ncols:
        raise NoFactorization("quotient maps have different source spaces")
    x = solve(q_src.transpose(), q_tgt.transpose())
    if x is None:
        raise NoFactorization("ker(q_src) is not contained in ker(q_tgt)")
    return x.transpose()


# --- multilinear constructions ------------------------------------------------


def _det_bits(rows: list[int], q: int) -> int:
    """Determinant over GF(2) of a q x q matrix given as row bitmasks."""
    rows = list(rows)
    for c in range(q):
        piv = -1
        for idx in range(c, q):
            if (rows[idx] >> c) & 1:
                piv = idx
                break
        if piv < 0:
            return 0
        rows[c], rows[piv] = rows[piv], rows[c]
        for idx in range(c + 1, q):
            if (rows[idx] >> c) & 1:
                rows[idx] ^= rows[c]
    return 1


def exterior_power(m: Gf2Matrix, q: int) -> Gf2Matrix:
    """Matrix of the q-th exterior power on lexicographic wedge bases.

    Entry at (S, T) is the GF(2) determinant of the minor m[S, T]; the
    0-th power is the 1 x 1 identity.
    """
    if q < 0:
        raise ValueError("q must be nonnegative")
    if q == 0:
        return Gf2Matrix.identity(1)
    n, c = m.nrows, m.ncols
    out_rows, out_cols = comb(n, q), comb(c, q)
    if out_rows == 0 or out_cols == 0:
        return Gf2Matrix.zeros(out_rows, out_cols)
    row_ints = m.row_ints()
    dense = np.zeros((out_rows, out_cols), dtype=np.uint8)
    col_subsets = list(combinations(range(c), q))
    for si, s in enumerate(combinations(range(n), q)):
        srows = [row_ints[i] for i in s]
        for ti, t in enumerate(col_subsets):
            minor = []
            for r in srows:
                bits = 0
                for pos, col in enumerate(t):
                    bits |= ((r >> col) & 1) << pos
                minor.append(bits)
            if _det_bits(minor, q):
                dense[si, ti] = 1
    return Gf2Matrix(out_rows, out_cols, _pack(dense))


def exterior_powers_all(m: Gf2Matrix) -> list[Gf2Matrix]:
    """All exterior powers [wedge^0 m, ..., wedge^ncols m] in one pass.

    Wedge images are built by a subset DP (each column subset extends a
    prefix by one wedge factor), which beats per-entry minors when every
    power is needed.  Requires nrows <= 16.
    """
    n, c = m.nrows, m.ncols
    if n > 16:
        return [exterior_power(m, q) for q in range(c + 1)]
    dense_m = m.to_dense()
    col_support = [np.nonzero(dense_m[:, j])[0].tolist() for j in range(c)]
    # vec[T] encodes the wedge of the columns in T: bit at position S
    # (a row-subset mask) is the coefficient of e_S.
    vec = {0: 1}
    for mask in range(1, 1 << c):
        h = mask.bit_length() - 1
        prev = vec[mask ^ (1 << h)]
        support = col_support[h]
        acc = 0
        a = prev
        while a:
            t = a & -a
            a ^= t
            s = t.bit_length() - 1
            for i in support:
                if not (s >> i) & 1:
                    acc ^= 1 << (s | (1 << i))
        vec[mask] = acc
    out = []
    for q in range(c + 1):
        rows_q = list(combinations(range(n), q))
        cols_q = list(combinations(range(c), q))
        dense = np.zeros((len(rows_q), len(cols_q)), dtype=np.uint8)
        row_index = {}
        for si, s in enumerate(rows_q):
            smask = 0
            for i in s:
                smask |= 1 << i
            row_index[smask] = si
        for ti, t in enumerate(cols_q):
            tmask = 0
            for j in t:
                tmask |= 1 << j
            v = vec[tmask]
            while v:
                bit = v & -v
                v ^= bit
                smask = bit.bit_length() - 1
                si = row_index.get(smask)
                if si is not None:
                    dense[si, ti] = 1
        out.append(Gf2Matrix(len(rows_q), len(cols_q), _pack(dense)))
    return out


def sym_power(m: Gf2Matrix, k: int) -> Gf2Matrix:
    """Matrix of the k-th symmetric power on lexicographic monomial bases.

    The image of a degree-k monomial in the source coordinates is
    expanded through m and read off in target monomials, coefficients
    mod 2.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return Gf2Matrix.identity(1)
    n, c = m.nrows, m.ncols
    src_monos = list(combinations_with_replacement(range(c), k))
    tgt_monos = list(combinations_with_replacement(range(n), k))
    tgt_index = {mono: i for i, mono in enumerate(tgt_monos)}
    dense_m = m.to_dense()
    col_support = [np.nonzero(dense_m[:, j])[0].tolist() for j in range(c)]
    dense = np.zeros((len(tgt_monos), len(src_monos)), dtype=np.uint8)
    for ti, mono in enumerate(src_monos):
        poly = {(): 1}
        for x in mono:
            new: dict = {}
            for factor, coeff in poly.items():
                for i in col_support[x]:
                    key = tuple(sorted(factor + (i,)))
                    new[key] = new.get(key, 0) ^ coeff
            poly = {key: v for key, v in new.items() if v}
        for key in poly:
            dense[tgt_index[key], ti] = 1
    return Gf2Matrix(len(tgt_monos), len(src_monos), _pack(dense))


def tensor_product(a: Gf2Matrix, b: Gf2Matrix) -> Gf2Matrix:
    """Kronecker product on pair bases ordered first-factor-major."""
    if a.nrows == 0 or a.ncols == 0 or b.nrows == 0 or b.ncols == 0:
        return Gf2Matrix.zeros(a.nrows * b.nrows, a.ncols * b.ncols)
    dense = np.kron(a.to_dense(), b.to_dense())
    return Gf2Matrix.from_dense(dense)
