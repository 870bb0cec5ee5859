"""Koszul-type exact sequences over GF(2), as executable checks.

Given a short exact sequence 0 -> G -> F -> E -> 0 the wedge/symmetric
strand complexes are built from contraction boundaries that consume only
the surjection, so no splitting is ever chosen; the transport identity
(:func:`splitting_transport_ok`) certifies that the boundary agrees with
the block Koszul differential carried through any section.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from math import comb

import numpy as np

from .cosheaf import tensor_cosheaf, sym_cosheaf, exterior_family
from .duality import DualityBundle
from .errors import NotExactInput
from .gf2 import Gf2Matrix, exterior_power, solve, sym_power, tensor_product


@dataclass(frozen=True)
class GradedComplex:
    """Finite complex written left to right: maps[i] : dims[i] -> dims[i+1]."""

    dims: tuple[int, ...]
    maps: tuple[Gf2Matrix, ...]

    def is_complex(self) -> bool:
        for a, b in zip(self.maps, self.maps[1:]):
            if a.ncols and b.nrows and not (b @ a).is_zero():
                return False
        return True

    def is_exact(self) -> bool:
        """Exact everywhere, ends included (kernel of the first map and
        cokernel of the last both vanish)."""
        if not self.is_complex():
            return False
        ranks = [m.rank() for m in self.maps]
        if self.maps and ranks[0] != self.dims[0]:
            return False
        if self.maps and ranks[-1] != self.dims[-1]:
            return False
        for i in range(1, len(self.dims) - 1):
            if ranks[i - 1] + ranks[i] != self.dims[i]:
                return False
        return True


def _sym_dim(n: int, s: int) -> int:
    return 1 if s == 0 else comb(n + s - 1, s)


def _wedge_sym_basis(nf: int, ne: int, l: int, s: int):
    return [
        (set_part, mono)
        for set_part in combinations(range(nf), l)
        for mono in combinations_with_replacement(range(ne), s)
    ]


def _contraction_boundary(psi: Gf2Matrix, l: int, s: int) -> Gf2Matrix:
    """wedge^l F (x) S^s E -> wedge^(l-1) F (x) S^(s+1) E,
    x_1^...^x_l (x) a  |->  sum_i x_1^...^x_i-hat^...^x_l (x) psi(x_i) a."""
    nf, ne = psi.ncols, psi.nrows
    src = _wedge_sym_basis(nf, ne, l, s)
    tgt = _wedge_sym_basis(nf, ne, l - 1, s + 1)
    tgt_index = {b: i for i, b in enumerate(tgt)}
    psi_dense = psi.to_dense()
    support = [np.nonzero(psi_dense[:, j])[0].tolist() for j in range(nf)]
    dense = np.zeros((len(tgt), len(src)), dtype=np.uint8)
    for ci, (subset, mono) in enumerate(src):
        for i in subset:
            rest = tuple(x for x in subset if x != i)
            for e_idx in support[i]:
                new_mono = tuple(sorted(mono + (e_idx,)))
                dense[tgt_index[(rest, new_mono)], ci] ^= 1
    return Gf2Matrix.from_dense(dense)


def koszul_strand(rank_e: int, j: int) -> GradedComplex:
    """Degree-j strand 0 -> wedge^j E -> wedge^(j-1) E (x) S^1 E -> ...
    -> S^j E -> 0 with the contraction boundary; exact for j >= 1."""
    if rank_e < 1 or j < 1:
        raise ValueError("rank_e and j must be positive")
    ident = Gf2Matrix.identity(rank_e)
    dims = [comb(rank_e, l) * _sym_dim(rank_e, j - l) for l in range(j, -1, -1)]
    maps = tuple(_contraction_boundary(ident, l, j - l) for l in range(j, 0, -1))
    return GradedComplex(tuple(dims), maps)


def _check_ses(phi: Gf2Matrix, psi: Gf2Matrix) -> None:
    g, f, e = phi.ncols, phi.nrows, psi.nrows
    if psi.ncols != f:
        raise NotExactInput("maps are not composable")
    if f != g + e:
        raise NotExactInput("dimensions do not telescope")
    if phi.rank() != g:
        raise NotExactInput("first map is not injective")
    if psi.rank() != e:
        raise NotExactInput("second map is not surjective")
    if g and e and not (psi @ phi).is_zero():
        raise NotExactInput("composite is nonzero")


def kosa_complex(ses: tuple[Gf2Matrix, Gf2Matrix], k: int) -> GradedComplex:
    """0 -> wedge^k G -> wedge^k F -> wedge^(k-1) F (x) S^1 E -> ...
    -> S^k E -> 0 for a short exact sequence (phi: G -> F, psi: F -> E)."""
    phi, psi = ses
    _check_ses(phi, psi)
    if k < 1:
        raise ValueError("k must be positive")
    g, f, e = phi.ncols, phi.nrows, psi.nrows
    dims = [comb(g, k)]
    dims += [comb(f, l) * _sym_dim(e, k - l) for l in range(k, -1, -1)]
    maps = [exterior_power(phi, k)]
    maps += [_contraction_boundary(psi, l, k - l) for l in range(k, 0, -1)]
    return GradedComplex(tuple(dims), tuple(maps))


def kosc_complex(ses: tuple[Gf2Matrix, Gf2Matrix], k: int) -> GradedComplex:
    """0 -> S^k E -> wedge^1 H (x) S^(k-1) E -> ... -> wedge^k H ->
    wedge^k G -> 0, built by dualizing the wedge-first complex of the
    dual sequence and transposing back."""
    iota, pi = ses
    _check_ses(iota, pi)
    if k < 1:
        raise ValueError("k must be positive")
    dual = kosa_complex((pi.transpose(), iota.transpose()), k)
    dims = tuple(reversed(dual.dims))
    maps = tuple(m.transpose() for m in reversed(dual.maps))
    return GradedComplex(dims, maps)


def random_ses(rng, dim_g: int, dim_e: int) -> tuple[Gf2Matrix, Gf2Matrix]:
    """Uniform random short exact sequence with middle dim_g + dim_e."""
    f = dim_g + dim_e
    while True:
        phi = Gf2Matrix.from_dense(rng.integers(0, 2, size=(f, dim_g)))
        if phi.rank() == dim_g:
            break
    from .fan import _complement_quotient
    from .gf2 import Gf2Subspace

    image = Gf2Subspace.from_spanning(phi.transpose().to_dense(), f)
    quotient = _complement_quotient(image, f)
    while True:
        twist = Gf2Matrix.from_dense(rng.integers(0, 2, size=(dim_e, dim_e)))
        if twist.rank() == dim_e:
            break
    return phi, twist @ quotient


def random_section(rng, phi: Gf2Matrix, psi: Gf2Matrix) -> Gf2Matrix:
    """A random section s of psi (psi s = identity)."""
    base = solve(psi, Gf2Matrix.identity(psi.nrows))
    offset = Gf2Matrix.from_dense(rng.integers(0, 2, size=(phi.ncols, psi.nrows)))
    return base + (phi @ offset)


def splitting_transport_ok(phi: Gf2Matrix, psi: Gf2Matrix, k: int, section: Gf2Matrix) -> bool:
    """Transport identity for one section.

    The columns of [phi | section] wedge to a basis adapted to the
    splitting; on that side the Koszul differential contracts only
    section-columns into the symmetric factor.  The contraction boundary
    must intertwine the two, for every section.
    """
    if (psi @ section) != Gf2Matrix.identity(psi.nrows):
        raise NotExactInput("not a section")
    g, e = phi.ncols, psi.nrows
    f = g + e
    w = Gf2Matrix.assemble(f, f, [(0, 0, phi), (0, g, section)])
    complex_ = kosa_complex((phi, psi), k)
    for l in range(k, 0, -1):
        s = k - l
        # decomposed-side boundary on subsets of the adapted columns
        src = _wedge_sym_basis(f, e, l, s)
        tgt = _wedge_sym_basis(f, e, l - 1, s + 1)
        tgt_index = {b: i for i, b in enumerate(tgt)}
        dense = np.zeros((len(tgt), len(src)), dtype=np.uint8)
        for ci, (subset, mono) in enumerate(src):
            for col in subset:
                if col < g:
                    continue  # image-of-phi columns die under the surjection
                rest = tuple(x for x in subset if x != col)
                new_mono = tuple(sorted(mono + (col - g,)))
                dense[tgt_index[(rest, new_mono)], ci] ^= 1
        block = Gf2Matrix.from_dense(dense)
        t_src = tensor_product(exterior_power(w, l), Gf2Matrix.identity(_sym_dim(e, s)))
        t_tgt = tensor_product(exterior_power(w, l - 1), Gf2Matrix.identity(_sym_dim(e, s + 1)))
        # complex_.maps[0] is the wedge of phi; contraction for wedge degree
        # l sits at index k - l + 1
        boundary = complex_.maps[k - l + 1]
        if (boundary @ t_src) != (t_tgt @ block):
            return False
    return True


def cosheaf_koszul_check(bundle: DualityBundle, q: int) -> bool:
    """Stalkwise exactness and naturality of the degree-q cosheaf sequence
    0 -> S^q C -> wedge^1 G-hat (x) S^(q-1) C -> ... -> wedge^q G-hat ->
    wedge^q E-circ -> 0 attached to the duality short exact sequence."""
    if q < 1:
        raise ValueError("q must be positive")
    sigma = bundle.sigma
    g_fam = exterior_family(bundle.g_hat, q)
    c_syms = [sym_cosheaf(bundle.c_cosheaf, s) for s in range(q + 1)]
    # the nodes of the sequence as cosheaves, left to right
    nodes = []
    for l in range(q + 1):
        if l == 0:
            node = c_syms[q]
        elif l == q:
            node = g_fam[q]
        else:
            node = tensor_cosheaf(g_fam[l], c_syms[q - l])
        nodes.append(node)
    nodes.append(exterior_family(bundle.e_circ, q)[q])
    # uniform stalk handling: sym^s of the zero stalk at the origin has
    # dimension zero for s >= 1, but sym_cosheaf(c, 0) is the constant
    # cosheaf; the origin column of the sequence must be all-zero, which
    # holds because q >= 1 keeps an exterior factor everywhere except the
    # leftmost node, where S^q of the zero stalk vanishes.
    origin = sigma.grades[0][0]

    per_cone_maps: dict[int, list[Gf2Matrix]] = {}
    for cone in sigma.cones:
        if cone.dim == 0:
            per_cone_maps[cone.id] = [
                Gf2Matrix.zeros(nodes[i + 1].stalk_dim(origin), nodes[i].stalk_dim(origin))
                for i in range(len(nodes) - 1)
            ]
            continue
        j = bundle.incl_cg.component(cone.id)
        phi = bundle.proj_ge.component(cone.id)
        stalk_complex = kosc_complex((j, phi), q)
        expected = tuple(n.stalk_dim(cone.id) for n in nodes)
        if stalk_complex.dims != expected:
            return False
        if not stalk_complex.is_exact():
            return False
        per_cone_maps[cone.id] = list(stalk_complex.maps)
    # naturality of every node map against the cover restrictions
    for lo, hi in sigma.covers:
        for i in range(len(nodes) - 1):
            rest_src = nodes[i].maps[(lo, hi)]
            rest_tgt = nodes[i + 1].maps[(lo, hi)]
            left = per_cone_maps[hi][i] @ rest_src
            right = rest_tgt @ per_cone_maps[lo][i]
            if left != right:
                return False
    return True
