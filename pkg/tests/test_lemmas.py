from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, strategies as st

from evendecomp import lemmas, rigs
from evendecomp.graph import Graph, bits, complete, f_gadget, is_clique, mask_of, path
from evendecomp.lemmas import (
    Removal,
    absorb_clique_with_F,
    absorb_vertex,
    greedy_removal,
    p3_absorb_dense,
    p3_absorb_sparse,
)
from evendecomp.witness import ConditionUnmet, verify_steps

from .conftest import graphs


def sets(steps):
    return [set(bits(s)) for s in steps]


def odd_in(g, rem, v):
    return (g.adj[v] & rem).bit_count() % 2 == 1


def after(g, steps, start=None):
    rem = g.full if start is None else start
    for s in steps:
        rem &= ~s
    return rem


class TestGreedy:
    def test_empty_graph(self):
        steps, term = greedy_removal(Graph.empty(4), 0b1111, 0b1111)
        assert sets(steps) == [{0}, {1}, {2}, {3}] and term == 0

    def test_k4_is_stuck(self):
        steps, term = greedy_removal(complete(4), 0b1111, 0b1111)
        assert steps == [] and term == 0b1111

    def test_path(self):
        steps, term = greedy_removal(path(3), 0b111, 0b111)
        assert sets(steps) == [{1}, {0}, {2}] and term == 0
        assert verify_steps(path(3), 0b111, steps)

    def test_subset_must_lie_in_window(self):
        with pytest.raises(ValueError):
            greedy_removal(path(3), 0b011, 0b100)

    @given(graphs(max_n=14, p=0.5), st.data())
    def test_terminal_is_odd_clique(self, g, data):
        w = data.draw(st.integers(0, g.full))
        s = data.draw(st.integers(0, g.full)) & w
        steps, term = greedy_removal(g, w, s)
        assert verify_steps(g, w, steps)
        rem = after(g, steps, w)
        assert all(step & ~s == 0 for step in steps)
        assert term == s & rem
        assert is_clique(g, term)
        assert all(odd_in(g, rem, v) for v in bits(term))


class TestAbsorbVertex:
    def test_even_v(self):
        g, a, b, v = rigs.absorb_rig(0b1111, 0b10000)
        g = Graph.from_edges(5, [(0, 2), (1, 3)] + [(x, 4) for x in range(4)])
        assert sets(absorb_vertex(g, g.full, 0b0011, 0b1100, 4)) == [{4}]

    def test_claim_odd_non_neighbor(self):
        g = Graph.from_edges(5, [(0, 2), (1, 3), (0, 4)])
        assert sets(absorb_vertex(g, g.full, 0b0011, 0b1100, 4)) == [{2, 4}]

    def test_all_odd_case(self):
        g, a, b, v = rigs.absorb_rig(0b1111, 0b11111)
        steps = absorb_vertex(g, g.full, a, b, v)
        assert sets(steps) == [{2, 3}, {0}, {4}]
        assert verify_steps(g, g.full, steps)

    def test_cross_edge_condition(self):
        g = Graph.from_edges(5, [(0, 2), (0, 3), (1, 3)])  # 0 is complete to B
        with pytest.raises(ConditionUnmet) as info:
            absorb_vertex(g, g.full, 0b0011, 0b1100, 4)
        assert info.value.condition == "cross-edge condition"

    @pytest.mark.parametrize("case", list(rigs.absorb_cases()))
    def test_exhaustive_rigs(self, case):
        r = rigs.check_absorb(*case)
        assert r.ok, r.detail

    @given(st.integers(2, 4), st.integers(2, 4), st.integers(0, 2**32))
    def test_random_bipartite_rigs(self, na, nb, seed):
        rnd = random.Random(seed)
        a_set = list(range(na))
        b_set = list(range(na, na + nb))
        v = na + nb
        while True:
            cross = [(x, y) for x in a_set for y in b_set if rnd.random() < 0.5]
            ok = all(0 < sum((x, y) in cross for y in b_set) < nb for x in a_set) and all(
                0 < sum((x, y) in cross for x in a_set) < na for y in b_set
            )
            if ok:
                break
        edges = cross + [(x, v) for x in a_set + b_set if rnd.random() < 0.5]
        want = {u: rnd.random() < 0.5 for u in range(v + 1)}
        g = rigs._with_pendants(v + 1, edges, want)
        steps = absorb_vertex(g, g.full, mask_of(a_set), mask_of(b_set), v)
        assert verify_steps(g, g.full, steps)
        gone = g.full & ~after(g, steps)
        assert gone >> v & 1
        assert (gone & mask_of(a_set)).bit_count() <= 2 and (gone & mask_of(b_set)).bit_count() <= 2
        assert gone & ~(mask_of(a_set) | mask_of(b_set) | 1 << v) == 0


class TestAbsorbF:
    def test_empty_clique(self):
        g = f_gadget()
        steps, new = absorb_clique_with_F(g, g.full, g.full, 0)
        assert verify_steps(g, g.full, steps) and new.bit_count() <= 2

    @pytest.mark.parametrize("m, bound", [(5, 4), (1, 2)])
    def test_planted_complete_clique(self, m, bound):
        f = f_gadget()
        edges = list(f.edges()) + list(itertools.combinations(range(20, 20 + m), 2))
        edges += [(x, k) for x in range(20) for k in range(20, 20 + m)]
        g = Graph.from_edges(20 + m, edges)
        c = mask_of(range(20, 20 + m))
        steps, new = absorb_clique_with_F(g, g.full, (1 << 20) - 1, c)
        assert verify_steps(g, g.full, steps)
        rem = after(g, steps)
        assert new.bit_count() <= bound and is_clique(g, new)
        assert all(odd_in(g, rem, v) for v in bits(new))

    def test_gadget_shape(self):
        g = complete(25)
        with pytest.raises(ConditionUnmet) as info:
            absorb_clique_with_F(g, g.full, (1 << 20) - 1, 0)
        assert info.value.condition == "gadget shape"

    @given(st.integers(0, 8), st.integers(0, 10_000))
    def test_random_rigs(self, m, seed):
        r = rigs.check_f(m, seed)
        assert r.ok, r.detail


class TestP3:
    def test_table_covers_all_signatures(self):
        for sig in rigs.ALL_SIGNATURES:
            seq = lemmas.dense_sequence(sig)
            letters = "".join(seq).replace("k", "")
            assert len(set(letters)) == len(letters) and set(letters) <= set("abcd")
            assert seq.count("k") == 2

    def test_dense_eeee_sequence(self):
        rig = rigs.p3_rig("eeee", 3, dense=True)
        steps, new = p3_absorb_dense(rig.g, rig.g.full, rig.r, rig.c)
        assert sets(steps[:5]) == [{1}, {4}, {2}, {5}, {0, 3}]
        assert verify_steps(rig.g, rig.g.full, steps) and new.bit_count() <= 2

    def test_dense_oooo_stage3(self):
        rig = rigs.p3_rig("oooo", 2, dense=True)
        run = Removal(rig.g)
        new = lemmas.dense_stage3(run, rig.r, rig.c)
        assert sets(run.steps[:3]) == [{0, 3}, {1}, {4}]
        assert rig.c & run.remaining == 0 and new.bit_count() <= 2

    def test_dense_empty_clique(self):
        rig = rigs.p3_rig("eoeo", 0, dense=True)
        steps, new = p3_absorb_dense(rig.g, rig.g.full, rig.r, 0)
        assert all(s & ~rig.r == 0 for s in steps) and new.bit_count() <= 2

    def test_dense_needs_completeness(self):
        rig = rigs.p3_rig("eeee", 3, dense=False)
        with pytest.raises(ConditionUnmet) as info:
            p3_absorb_dense(rig.g, rig.g.full, rig.r, rig.c)
        assert info.value.condition == "R complete to C"

    def test_sparse_all_even(self):
        rig = rigs.p3_rig("eeee", 3, dense=False)
        steps, new = p3_absorb_sparse(rig.g, rig.g.full, rig.r, rig.c)
        assert sets(steps[:3]) == [{0, 2}, {3, 4}, {5}]
        assert verify_steps(rig.g, rig.g.full, steps) and new.bit_count() <= 2

    def test_sparse_one_odd_stage3(self):
        rig = rigs.p3_rig("eeoe", 2, dense=False)
        steps, new = p3_absorb_sparse(rig.g, rig.g.full, rig.r, rig.c)
        assert sets(steps[:2]) == [{2, 4}, {5}]
        assert rig.c & after(rig.g, steps) == 0

    def test_sparse_empty_clique(self):
        rig = rigs.p3_rig("oeeo", 0, dense=False)
        steps, new = p3_absorb_sparse(rig.g, rig.g.full, rig.r, 0)
        assert all(s & ~rig.r == 0 for s in steps) and new.bit_count() <= 2

    def test_sparse_needs_no_edges(self):
        rig = rigs.p3_rig("eeee", 3, dense=True)
        with pytest.raises(ConditionUnmet) as info:
            p3_absorb_sparse(rig.g, rig.g.full, rig.r, rig.c)
        assert info.value.condition == "R disjoint from C's neighborhood"

    def test_not_a_p3(self):
        g = complete(6)
        with pytest.raises(ConditionUnmet):
            p3_absorb_dense(g, g.full, 0b1111, 0b110000)

    @pytest.mark.parametrize("dense", [True, False])
    @pytest.mark.parametrize("sig", rigs.ALL_SIGNATURES)
    def test_all_rigs(self, sig, dense):
        for m in range(0, 6):
            for stage in ((2, 3) if m <= 2 else (2,)):
                if stage == 2 and m < 2:
                    continue
                r = rigs.check_p3(sig, m, dense, stage)
                assert r.ok, r.detail
            # the dispatching wrappers must also succeed at every size
            rig = rigs.p3_rig(sig, m, dense)
            fn = p3_absorb_dense if dense else p3_absorb_sparse
            steps, new = fn(rig.g, rig.g.full, rig.r, rig.c)
            assert verify_steps(rig.g, rig.g.full, steps)
            limit = m - 1 if dense and m >= 2 else max(m - 1, 2)
            assert new.bit_count() <= limit


def test_verify_lemmas_suite_passes():
    results = rigs.verify_lemmas(f_seeds=5)
    assert results and all(r.ok for r in results), [r for r in results if not r.ok][:3]


def test_mutated_table_is_caught(monkeypatch):
    monkeypatch.setitem(lemmas.DENSE_TABLE, "eeee", ("k", "b", "c", "k", "ad"))
    assert not rigs.check_p3("eeee", 3, True, 2).ok
