from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from evendecomp import rigs
from evendecomp.decompose import Thresholds, decompose_auto, decompose_dense, decompose_sparse, decompose_uniform
from evendecomp.graph import Graph, complete, disjoint_union, f_gadget, mask_of, path
from evendecomp.oracle import exact_even_decomposable
from evendecomp.witness import Status, verify_witness

from .conftest import graphs


def gadget_masks(count, size, offset=0):
    return [mask_of(range(offset + size * i, offset + size * (i + 1))) for i in range(count)]


def test_thresholds_fractions():
    assert Thresholds.fractions(1000).to_dict() == {"tau1": 10, "tau2": 5, "tau3": 0}
    assert Thresholds.fractions(200_000) == Thresholds(2000, 1000, 2)


class TestUniform:
    def test_two_gadgets_plus_isolated(self):
        g = disjoint_union(f_gadget(), f_gadget(), Graph.empty(4))
        out = decompose_uniform(g, gadget_masks(2, 20), 2)
        assert out.status is Status.DECOMPOSED and verify_witness(g, out.witness)

    def test_three_gadgets_clique_and_apex(self):
        base = disjoint_union(f_gadget(), f_gadget(), f_gadget(), complete(3), Graph.empty(1))
        g = Graph.from_edges(64, list(base.edges()) + [(63, 60), (63, 61), (63, 0)])
        assert g.num_edges() == 156
        out = decompose_uniform(g, gadget_masks(3, 20), 3)
        assert out.status is Status.DECOMPOSED and verify_witness(g, out.witness)

    def test_clique_bound(self):
        g = disjoint_union(complete(4), f_gadget())
        out = decompose_uniform(g, gadget_masks(1, 20, offset=4), 1)
        assert out.status is Status.CONDITION_UNMET and out.condition == "clique bound"

    def test_packing_shortfall(self):
        g = disjoint_union(f_gadget(), Graph.empty(2))
        out = decompose_uniform(g, gadget_masks(1, 20), 2)
        assert out.condition == "packing"

    def test_odd_edges(self):
        g = disjoint_union(f_gadget(), path(2))
        assert decompose_uniform(g, gadget_masks(1, 20), 1).condition == "odd edge count"

    def test_overlapping_packing_rejected(self):
        with pytest.raises(ValueError):
            decompose_uniform(f_gadget(), [0b11, 0b110], 1)

    @settings(max_examples=40)
    @given(st.integers(0, 2**32))
    def test_planted(self, seed):
        g, gadgets, t = rigs.planted_uniform(random.Random(seed))
        out = decompose_uniform(g, gadgets, t)
        assert out.status is Status.DECOMPOSED, out.condition
        assert verify_witness(g, out.witness)


class TestSparse:
    def test_ten_paths(self):
        g = disjoint_union(*[path(4)] * 10)
        out = decompose_sparse(g, Thresholds(10, 3, 4))
        assert out.status is Status.DECOMPOSED and verify_witness(g, out.witness)

    def test_clique_plus_paths(self):
        g = disjoint_union(complete(4), *[path(4)] * 8)
        out = decompose_sparse(g, Thresholds(8, 5, 4))
        assert out.status is Status.DECOMPOSED and verify_witness(g, out.witness)

    def test_degree_cap(self):
        g = disjoint_union(complete(4), *[path(4)] * 8)
        assert decompose_sparse(g, Thresholds(8, 5, 2)).condition == "degree cap"

    def test_clique_cap(self):
        g = disjoint_union(complete(4), *[path(4)] * 8)
        assert decompose_sparse(g, Thresholds(8, 4, 3)).condition == "clique bound"

    @settings(max_examples=40)
    @given(st.integers(0, 2**32))
    def test_planted(self, seed):
        g, gadgets = rigs.planted_sparse(random.Random(seed))
        cfg = Thresholds(len(gadgets), g.n + 1, g.n)
        out = decompose_sparse(g, cfg, packing=gadgets)
        if out.status is Status.DECOMPOSED:
            assert verify_witness(g, out.witness)
        else:
            assert out.status is Status.CONDITION_UNMET and out.condition.startswith("stage")


class TestDense:
    def test_complete_graph_has_no_p3(self):
        out = decompose_dense(complete(20), Thresholds(1, 25, 20))
        assert out.condition == "packing"

    def test_near_complete(self):
        # complement: perfect matching plus four bridges forming induced P3s
        hbar = [(2 * j, 2 * j + 1) for j in range(20)] + [(4 * j + 1, 4 * j + 2) for j in range(4)]
        g = Graph.from_edges(40, hbar).complement()
        assert g.num_edges() == 756
        out = decompose_dense(g, Thresholds(4, 39, 3))
        assert out.status is Status.DECOMPOSED and verify_witness(g, out.witness)

    def test_complement_degree_cap(self):
        g = Graph.from_edges(40, [(2 * j, 2 * j + 1) for j in range(20)] + [(1, 2), (5, 6)]).complement()
        assert decompose_dense(g, Thresholds(2, 39, 1)).condition == "complement degree cap"

    @settings(max_examples=40)
    @given(st.integers(0, 2**32))
    def test_planted(self, seed):
        g, gadgets = rigs.planted_dense(random.Random(seed))
        cfg = Thresholds(len(gadgets), g.n + 1, g.n)
        out = decompose_dense(g, cfg, packing=gadgets)
        if out.status is Status.DECOMPOSED:
            assert verify_witness(g, out.witness)
        else:
            assert out.status is Status.CONDITION_UNMET and out.condition.startswith("stage")


class TestAuto:
    def test_small_graphs_match_oracle(self):
        assert decompose_auto(complete(4)).status is Status.NON_DECOMPOSABLE
        out = decompose_auto(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
        assert out.status is Status.DECOMPOSED

    def test_odd(self):
        assert decompose_auto(complete(3)).condition == "odd edge count"

    @given(graphs(max_n=10))
    def test_agrees_with_oracle(self, g):
        if g.num_edges() % 2:
            return
        out = decompose_auto(g)
        ok, _ = exact_even_decomposable(g)
        assert out.decomposed == ok
        if ok:
            assert verify_witness(g, out.witness)

    @settings(max_examples=20)
    @given(graphs(min_n=19, max_n=30, p=0.1))
    def test_large_sparse_outcomes_are_sound(self, g):
        if g.num_edges() % 2:
            return
        out = decompose_auto(g, exact_cap=18)
        assert out.status in (Status.DECOMPOSED, Status.STUCK)
        if out.decomposed:
            assert verify_witness(g, out.witness)

    def test_constructive_path_on_planted(self):
        g = disjoint_union(*[path(4)] * 6)
        out = decompose_auto(g, exact_cap=0)
        assert out.decomposed and verify_witness(g, out.witness)
