import numpy as np
import pytest

from z2hodge import corpus
from z2hodge.cosheaf import chain_complex
from z2hodge.errors import ColumnSumBelowBetti
from z2hodge.fan import normal_fan
from z2hodge.gf2 import kernel_basis
from z2hodge.hodge import (
    HodgeTable,
    betti_real,
    collapse_and_betti,
    cosheaf_E,
    cosheaf_N,
    edge_class_nonzero,
    fan_h_vector,
    h_vector,
    h_vector_check,
    hodge_table,
    real_cell_complex,
    rightmost_column,
)

from _naive import naive_rank


def test_cosheaf_N_stalk_dims():
    fan = normal_fan(corpus.polytope("square"))
    n = cosheaf_N(fan)
    for cone in fan.cones:
        assert n.stalk_dim(cone.id) == cone.dim


def test_cosheaf_E_stalkwise_exactness():
    # 0 -> N_sigma -> (Z/2)^d -> E_sigma -> 0 as rank bookkeeping per cone
    fan = normal_fan(corpus.polytope("cross3"))
    for cone in fan.cones:
        q = cone.quotient_map
        assert q.rank() == fan.dim - cone.dim
        assert kernel_basis(q) == cone.n_sigma


def test_hodge_table_projective_plane():
    fan = normal_fan(corpus.polytope("simplex2"))
    table = hodge_table(fan)
    assert table.nonzero() == {(0, 0): 1, (1, 1): 1, (2, 2): 1}


def test_hodge_table_boundary_ranks_match_naive_oracle():
    fan = normal_fan(corpus.polytope("simplex2"))
    from z2hodge.cosheaf import exterior_cosheaf

    for q in range(3):
        cc = chain_complex(exterior_cosheaf(cosheaf_E(fan), q))
        for p in range(1, 3):
            assert cc.boundary(p).rank() == naive_rank(cc.boundary(p).to_lists())


def test_hodge_table_structural_zeros_below_diagonal():
    table = hodge_table(normal_fan(corpus.polytope("cross3")))
    with pytest.raises(IndexError):
        table.rank(0, 1)


def test_real_cell_complex_segment_is_circle():
    assert betti_real(corpus.polytope("segment")) == (1, 1)


def test_real_cell_complex_square_is_torus():
    assert betti_real(corpus.polytope("square")) == (1, 2, 1)


def test_real_cell_complex_simplex2_is_projective_plane():
    assert betti_real(corpus.polytope("simplex2")) == (1, 1, 1)


def test_real_cell_complex_cube_is_three_torus():
    assert betti_real(corpus.polytope("cube")) == (1, 3, 3, 1)


def test_real_cell_complex_cell_counts():
    cc = real_cell_complex(corpus.polytope("square"))
    # one cell per (face, group element): 4 + 4*2 + 1*4
    assert cc.dims == (4, 8, 4)


def test_collapse_reports_trivially_for_diagonal_table():
    table = HodgeTable(2, ((1,), (2,), (1,)))
    # rows[q] lists p = q..d; build the diagonal-only table explicitly
    table = HodgeTable(2, ((1, 0, 0), (2, 0), (1,)))
    collapsed, bc, mx = collapse_and_betti(table, (1, 2, 1))
    assert collapsed and mx
    assert bc == (1, 0, 2, 0, 1)


def test_collapse_distinguishes_noncollapse():
    table = HodgeTable(1, ((1, 1), (1,)))
    collapsed, bc, mx = collapse_and_betti(table, (1, 1))
    assert not collapsed and bc is None and mx is None


def test_column_sum_below_betti_raises():
    table = HodgeTable(1, ((1, 0), (1,)))
    with pytest.raises(ColumnSumBelowBetti):
        collapse_and_betti(table, (2, 1))


def test_rightmost_column_projective_plane():
    s, pred = rightmost_column(normal_fan(corpus.polytope("simplex2")))
    assert s == 2
    assert pred == (0, 0, 1)


def test_rightmost_column_cross3():
    fan = normal_fan(corpus.polytope("cross3"))
    s, pred = rightmost_column(fan)
    assert s == 1
    assert pred == (0, 1, 2, 1)
    table = hodge_table(fan)
    assert tuple(table.rank(3, q) for q in range(4)) == pred
    assert betti_real(corpus.polytope("cross3"))[3] == 1 << (3 - s)


def test_h_vector_square():
    assert h_vector(corpus.polytope("square")) == (1, 2, 1)


def test_h_vector_example1_from_printed_f_vector():
    h = h_vector(corpus.polytope("example1"))
    assert h[0] == 1
    assert h[6] == 13
    # row Euler characteristic of the printed table: 15 - 2 = 13
    table = hodge_table(normal_fan(corpus.polytope("example1")))
    assert table.row_euler(6) == 13


def test_h_vector_check_on_small_corpus():
    for name in ["segment", "square", "cross2", "cross3", "simplex2", "simplex3", "p1xp2"]:
        p = corpus.polytope(name)
        table = hodge_table(normal_fan(p))
        assert h_vector_check(p, table), name
        assert fan_h_vector(normal_fan(p)) == h_vector(p), name


def test_edge_class_point_in_h0():
    p = corpus.polytope("segment")
    fan = normal_fan(p)
    top = fan.cone(fan.grades[1][0])
    assert edge_class_nonzero(p, top)


def test_edge_class_codim_d_minus_2_on_square_and_cube():
    for name in ["square", "cube"]:
        p = corpus.polytope(name)
        fan = normal_fan(p)
        cc = real_cell_complex(p)
        for cone_id in fan.grades[2]:
            assert edge_class_nonzero(p, fan.cone(cone_id), cc), name


def test_edge_class_top_sum_always_nonzero():
    # q = d: the sum of all top cells; must agree with rank H_dd = 1
    for name in ["square", "cross2", "simplex3"]:
        p = corpus.polytope(name)
        fan = normal_fan(p)
        origin = fan.cone(fan.grades[0][0])
        assert edge_class_nonzero(p, origin), name
        table = hodge_table(fan)
        assert table.rank(fan.dim, fan.dim) >= 1


def test_hodge_table_threads_match_serial():
    fan = normal_fan(corpus.polytope("cross3"))
    serial = hodge_table(fan, threads=1)
    threaded = hodge_table(fan, threads=4)
    assert serial.rows == threaded.rows


def test_group_algebra_restriction_is_permutation_like():
    # every column of a cell restriction has exactly one nonzero entry
    from z2hodge.hodge import cell_cosheaf

    fan = normal_fan(corpus.polytope("cross2"))
    cells = cell_cosheaf(fan)
    for cover in fan.covers:
        dense = np.array(cells.maps[cover].to_lists())
        assert (dense.sum(axis=0) == 1).all()
