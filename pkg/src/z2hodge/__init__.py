"""Mod-2 Hodge spaces, Betti numbers and Chow ranks of toric fans.

Exact pipeline from a lattice polytope to the triangular table of
GF(2) cosheaf homology ranks of its normal fan, the mod-2 Betti numbers
of the real and complex points of the toric variety, torus-invariant
Chow ranks, reflexive duality diagnostics and a maximality verdict.
"""

from .chow import chow_rank, chow_ranks, normal_generator, verify_hqq_equals_chow
from .cosheaf import (
    ChainComplex,
    Cosheaf,
    CosheafMorphism,
    chain_complex,
    circ_truncate,
    constant_cosheaf,
    exterior_cosheaf,
    hat,
    homology_ranks,
)
from .duality import (
    DualityBundle,
    build_bundle,
    g_vanishing,
    vanishing_theorem_check,
    verify_c_identity,
    verify_ses,
)
from .fan import (
    Cone,
    DualCorrespondence,
    Fan,
    check_t_homeomorphism,
    dual_correspondence,
    face_fan,
    is_z2_regular,
    normal_fan,
    regularity_depth,
)
from .gf2 import (
    Gf2Matrix,
    Gf2Subspace,
    exterior_power,
    induced_quotient_map,
    kernel_basis,
    rank,
    sym_power,
)
from .hodge import (
    HodgeReport,
    HodgeTable,
    betti_real,
    collapse_and_betti,
    cosheaf_E,
    cosheaf_N,
    edge_class_nonzero,
    h_vector,
    h_vector_check,
    hodge_table,
    real_cell_complex,
    rightmost_column,
)
from .koszul import GradedComplex, cosheaf_koszul_check, kosa_complex, kosc_complex, koszul_strand
from .lattice import hnf, mod2_image, primitive, saturate
from .polytope import FaceLattice, FacetDescription, LatticePolytope

__version__ = "0.1.0"
