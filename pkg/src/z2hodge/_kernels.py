"""Hot loops for bit-packed GF(2) matrices, in two interchangeable backends.

A matrix is stored as a C-contiguous ``uint64`` array of shape
``(rows, words)``; bit ``j`` of a row lives in word ``j >> 6`` at bit
position ``j & 63``.

* ``numba``: ``@njit``-compiled scalar loops (default when numba is
  importable).
* ``numpy``: vectorized fallback with no compilation step.

Both backends pick pivots in identical order, so every result is
bit-for-bit the same.  Select with the ``Z2HODGE_BACKEND`` environment
variable (``numba`` or ``numpy``) or :func:`set_backend` at runtime.
"""

from __future__ import annotations

import os

import numpy as np

_ONE = np.uint64(1)


# --- numpy fallback ----------------------------------------------------------

def _rref_numpy(m: np.ndarray, ncols: int):
    """Reduce ``m`` in place to reduced row echelon form.

    Returns ``(rank, pivot_columns)``.
    """
    nrows = m.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        w = c >> 6
        b = np.uint64(c & 63)
        col = (m[r:, w] >> b) & _ONE
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        full = (m[:, w] >> b) & _ONE
        full[r] = 0
        hit = np.nonzero(full)[0]
        if hit.size:
            m[hit] ^= m[r]
        pivots.append(c)
        r += 1
    return r, np.asarray(pivots, dtype=np.int64)


def _matmul_numpy(a: np.ndarray, ncols_a: int, b: np.ndarray) -> np.ndarray:
    """Product of packed matrices: ``a`` is (ra, wa) over ncols_a columns,
    ``b`` is (ncols_a, wb).  Returns packed (ra, wb)."""
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.uint64)
    for k in range(ncols_a):
        col = (a[:, k >> 6] >> np.uint64(k & 63)) & _ONE
        rows = np.nonzero(col)[0]
        if rows.size:
            out[rows] ^= b[k]
    return out


# --- numba backend -----------------------------------------------------------

try:
    from numba import njit

    @njit(cache=True, nogil=True)
    def _rref_numba(m, ncols):  # pragma: no cover - exercised via dispatch
        nrows, words = m.shape
        pivots = np.empty(min(nrows, ncols), dtype=np.int64)
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            w = c >> 6
            b = np.uint64(c & 63)
            p = -1
            for i in range(r, nrows):
                if (m[i, w] >> b) & np.uint64(1):
                    p = i
                    break
            if p < 0:
                continue
            if p != r:
                for j in range(words):
                    t = m[r, j]
                    m[r, j] = m[p, j]
                    m[p, j] = t
            for i in range(nrows):
                if i != r and ((m[i, w] >> b) & np.uint64(1)):
                    for j in range(words):
                        m[i, j] ^= m[r, j]
            pivots[r] = c
            r += 1
        return r, pivots[:r].copy()

    @njit(cache=True, nogil=True)
    def _matmul_numba(a, ncols_a, b):  # pragma: no cover
        ra = a.shape[0]
        wb = b.shape[1]
        out = np.zeros((ra, wb), dtype=np.uint64)
        for i in range(ra):
            for k in range(ncols_a):
                if (a[i, k >> 6] >> np.uint64(k & 63)) & np.uint64(1):
                    for j in range(wb):
                        out[i, j] ^= b[k, j]
        return out

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False


_BACKENDS = {"numpy": (_rref_numpy, _matmul_numpy)}
if _HAVE_NUMBA:
    _BACKENDS["numba"] = (_rref_numba, _matmul_numba)

_current = None
_rref_impl = None
_matmul_impl = None


def set_backend(name: str) -> None:
    """Switch the kernel backend (``"numba"`` or ``"numpy"``)."""
    global _current, _rref_impl, _matmul_impl
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; have {sorted(_BACKENDS)}")
    _rref_impl, _matmul_impl = _BACKENDS[name]
    _current = name


def backend_name() -> str:
    return _current


def rref_inplace(m: np.ndarray, ncols: int):
    """RREF of a packed matrix, in place.  Returns (rank, pivot cols)."""
    rank, piv = _rref_impl(m, ncols)
    return int(rank), piv


def matmul_packed(a: np.ndarray, ncols_a: int, b: np.ndarray) -> np.ndarray:
    return _matmul_impl(a, ncols_a, b)


set_backend(os.environ.get("Z2HODGE_BACKEND") or ("numba" if _HAVE_NUMBA else "numpy"))
