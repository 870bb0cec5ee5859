"""Acceptance suite: one test per criterion, exact equality throughout.

Every expected value is integer-exact (tolerance zero).  Each test
prints one PASS line on success; run with ``pytest tests/test_acceptance.py -v -s``
to see them.
"""

import json
import time

import numpy as np
import pytest

from z2hodge import corpus
from z2hodge.chow import chow_ranks
from z2hodge.cli import RunConfig, full_report, run
from z2hodge.cosheaf import chain_complex, exterior_cosheaf
from z2hodge.duality import (
    build_bundle,
    g_vanishing,
    stalk_dimension_laws,
    verify_c_identity,
    verify_ses,
)
from z2hodge.fan import face_fan, normal_fan, regularity_depth
from z2hodge.hodge import cosheaf_E, fan_h_vector, hodge_table
from z2hodge.koszul import (
    kosa_complex,
    kosc_complex,
    koszul_strand,
    random_section,
    random_ses,
    splitting_transport_ok,
)

ALL_NAMES = corpus.names()

EXAMPLE1_NONZERO = {
    (0, 0): 1,
    (1, 1): 1,
    (2, 2): 1,
    (3, 3): 1,
    (4, 4): 1,
    (5, 5): 1,
    (6, 1): 1,
    (6, 2): 7,
    (6, 3): 21,
    (6, 4): 34,
    (6, 5): 31,
    (6, 6): 15,
    (7, 5): 1,
    (7, 6): 2,
    (7, 7): 1,
}

EXAMPLE2_NONZERO = {
    (0, 0): 1,
    (1, 1): 1,
    (2, 2): 1,
    (3, 3): 1,
    (4, 1): 10,
    (4, 2): 34,
    (4, 3): 38,
    (4, 4): 15,
    (5, 1): 10,
    (5, 2): 45,
    (5, 3): 96,
    (5, 4): 113,
    (5, 5): 58,
    (6, 6): 1,
}


@pytest.fixture(scope="module")
def reports(corpus_poly):
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = full_report(corpus_poly(name), threads=4)
        return cache[name]

    return get


def _announce(number, text):
    print(f"ACCEPTANCE {number}: {text} ... PASS")


def test_criterion_1_example1_golden():
    start = time.monotonic()
    delta = corpus.polytope("example1")
    assert delta.dim == 7 and len(delta.vertices) == 9
    assert delta.f_vector() == (9, 36, 84, 125, 120, 70, 20)
    report = full_report(delta, threads=4)
    assert report.table.nonzero() == EXAMPLE1_NONZERO
    assert report.betti_real == (1, 1, 1, 1, 1, 1, 109, 4)
    assert report.collapsed is True
    assert report.betti_complex == (1, 0, 1, 0, 1, 0, 1, 1, 8, 21, 35, 31, 16, 2, 1)
    assert report.maximal is True
    elapsed = time.monotonic() - start
    assert elapsed < 120.0, f"golden example 1 took {elapsed:.1f}s"
    _announce(1, f"example1 golden values reproduced in {elapsed:.1f}s")


def test_criterion_2_example2_golden():
    start = time.monotonic()
    delta = corpus.polytope("example2")
    assert delta.dim == 6 and len(delta.vertices) == 12
    assert delta.f_vector() == (12, 62, 174, 267, 207, 64)
    assert len(delta.polar().vertices) == 64
    assert regularity_depth(face_fan(delta)) == 5
    report = full_report(delta, threads=4)
    assert report.table.nonzero() == EXAMPLE2_NONZERO
    assert tuple(report.table.rank(q, q) for q in range(7)) == (1, 1, 1, 1, 15, 58, 1)
    assert report.betti_real == (1, 1, 1, 1, 97, 322, 1)
    assert report.collapsed is True
    assert report.betti_complex == (1, 0, 1, 0, 1, 10, 45, 83, 111, 113, 58, 0, 1)
    elapsed = time.monotonic() - start
    assert elapsed < 600.0, f"golden example 2 took {elapsed:.1f}s"
    _announce(2, f"example2 golden values reproduced in {elapsed:.1f}s")


def test_criterion_3_vanishing_theorem_suite(corpus_poly, reports):
    for name in ALL_NAMES:
        delta = corpus_poly(name)
        assert delta.is_reflexive(), name
        e = regularity_depth(face_fan(delta))
        table = reports(name).table
        for q in range(table.d + 1):
            if q < e - 1:
                assert table.rank(q, q) == 1, (name, q)
            for p in range(q + 1, table.d + 1):
                if q < p < e - 1:
                    assert table.rank(p, q) == 0, (name, p, q)
    _announce(3, f"vanishing theorem window verified on {len(ALL_NAMES)} reflexive polytopes")


def test_criterion_4_chow_equals_diagonal(corpus_poly, reports):
    for name in ALL_NAMES:
        report = reports(name)
        fan = normal_fan(corpus_poly(name))
        ranks = chow_ranks(fan)
        diag = tuple(report.table.rank(q, q) for q in range(report.dim + 1))
        assert ranks == diag, (name, ranks, diag)
    _announce(4, f"relation-matrix Chow ranks equal Hodge diagonals on {len(ALL_NAMES)} fans")


def test_criterion_5_rightmost_column(corpus_poly, reports):
    from math import comb

    for name in ALL_NAMES:
        report = reports(name)
        d, s = report.dim, report.s_rank
        for q in range(d + 1):
            expected = comb(d - s, q - s) if q >= s else 0
            assert report.table.rank(d, q) == expected, (name, q)
        assert report.betti_real[d] == 1 << (d - s), name
    _announce(5, f"rightmost-column binomials and top Betti 2^(d-s) on {len(ALL_NAMES)} fans")


def test_criterion_6_collapse_certificates(corpus_poly, reports):
    regular_names = []
    for name in ALL_NAMES:
        report = reports(name)
        sums = report.table.column_sums()
        assert all(s >= b for s, b in zip(sums, report.betti_real)), name
        delta = corpus_poly(name)
        if regularity_depth(face_fan(delta)) == delta.dim:
            regular_names.append(name)
            assert sums == report.betti_real, name
            assert report.maximal is True, name
    # the fully regular bucket must contain the projective-space simplices
    # (smooth face fan side) and the free-sum product-of-simplices family
    assert {
        "dsimplex2",
        "dsimplex3",
        "dsimplex4",
        "p1xp2",
        "p2xp2",
        "example1",
    } <= set(regular_names)
    _announce(
        6,
        f"column-sum bound everywhere; equality and maximality on {len(regular_names)} "
        "fully regular dual fans",
    )


def test_criterion_7_koszul_exactness_suite():
    start = time.monotonic()
    for rank_e in range(1, 6):
        for j in range(1, 6):
            assert koszul_strand(rank_e, j).is_exact(), (rank_e, j)
    rng = np.random.default_rng(20240901)
    checked = 0
    while checked < 200:
        dim_g = int(rng.integers(0, 4))
        dim_e = int(rng.integers(0, 4))
        if dim_g + dim_e == 0 or dim_g + dim_e > 6:
            continue
        phi, psi = random_ses(rng, dim_g, dim_e)
        k = int(rng.integers(1, 5))
        assert kosa_complex((phi, psi), k).is_exact(), (dim_g, dim_e, k)
        assert kosc_complex((phi, psi), k).is_exact(), (dim_g, dim_e, k)
        if dim_e:
            section = random_section(rng, phi, psi)
            assert splitting_transport_ok(phi, psi, k, section), (dim_g, dim_e, k)
        checked += 1
    elapsed = time.monotonic() - start
    assert elapsed < 30.0, f"koszul suite took {elapsed:.1f}s"
    _announce(7, f"200 random SES kosa/kosc complexes exact and splitting-independent in {elapsed:.1f}s")


def test_criterion_8_duality_bundle_suite(corpus_poly):
    for name in ALL_NAMES:
        delta = corpus_poly(name)
        bundle = build_bundle(delta)
        assert stalk_dimension_laws(bundle), name
        assert verify_c_identity(bundle), name
        assert verify_ses(bundle), name
        e = regularity_depth(bundle.sigma_star)
        table = g_vanishing(bundle, bundle.sigma.dim)
        for k, row in enumerate(table):
            for p in range(1, e - 1):
                assert row[p] == 0, (name, k, p)
    _announce(8, f"duality bundles verified on {len(ALL_NAMES)} reflexive polytopes")


def test_criterion_9_h_vector_euler(corpus_poly, reports):
    for name in ALL_NAMES:
        report = reports(name)
        fan = normal_fan(corpus_poly(name))
        h = fan_h_vector(fan)
        assert h == report.h_vector, name
        for q in range(report.dim + 1):
            assert report.table.row_euler(q) == (-1) ** q * h[q], (name, q)
    _announce(9, f"h-vector Euler identity on {len(ALL_NAMES)} polytopes")


def test_criterion_10_structural_invariants(corpus_poly):
    # boundary squares vanish: probe assembled complexes directly
    for name in ["square", "cross3", "simplex3"]:
        fan = normal_fan(corpus_poly(name))
        for q in range(fan.dim + 1):
            cc = chain_complex(exterior_cosheaf(cosheaf_E(fan), q))
            for p in range(2, fan.dim + 1):
                product = cc.boundary(p - 1) @ cc.boundary(p)
                assert product.is_zero(), (name, q, p)
    # diamond property on every corpus fan (constructor re-verifies)
    for name in ALL_NAMES:
        fan = normal_fan(corpus_poly(name))
        for sigma, tau1, tau2, beta in fan.diamonds():
            assert tau1 != tau2
        face_fan(corpus_poly(name))
    # polar involution
    for name in ALL_NAMES:
        p = corpus_poly(name)
        assert p.polar().polar() == p, name
    # byte-identical machine-readable reports across thread counts
    outputs = set()
    for threads in (1, 2, 4):
        config = RunConfig(corpus_name="cross3", fmt="json", threads=threads)
        outputs.add(run(config, "report"))
    assert len(outputs) == 1
    payload = json.loads(outputs.pop())
    assert payload["collapsed"] is True
    _announce(10, "boundary squares, diamonds, polar involution, thread determinism")
