from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from evendecomp.graph import Graph, complete, complete_bipartite, cycle
from evendecomp.hamilton import has_hamilton_cycle_bruteforce, hamilton_cycle_dirac, is_hamilton_cycle
from evendecomp.witness import ConditionUnmet


def test_k4():
    cyc = hamilton_cycle_dirac(complete(4))
    assert is_hamilton_cycle(complete(4), cyc)


def test_k33_alternates():
    g = complete_bipartite(3, 3)
    cyc = hamilton_cycle_dirac(g)
    assert is_hamilton_cycle(g, cyc)
    assert all((cyc[i] < 3) != (cyc[(i + 1) % 6] < 3) for i in range(6))
    assert has_hamilton_cycle_bruteforce(g)


def test_c5_fails_gate():
    with pytest.raises(ConditionUnmet) as info:
        hamilton_cycle_dirac(cycle(5))
    assert info.value.condition == "Dirac degree bound"


def test_too_small():
    with pytest.raises(ConditionUnmet):
        hamilton_cycle_dirac(complete(2))


def test_bruteforce_oracle():
    assert has_hamilton_cycle_bruteforce(cycle(7))
    assert not has_hamilton_cycle_bruteforce(complete_bipartite(2, 3))


@st.composite
def dirac_graphs(draw):
    n = draw(st.integers(3, 10))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    g = Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])
    # top up low-degree vertices until the degree bound holds
    edges = set(g.edges())
    for v in range(n):
        for u in range(n):
            if 2 * sum(1 for e in edges if v in e) >= n:
                break
            if u != v:
                edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, edges)


@given(dirac_graphs())
def test_dirac_graphs(g):
    assert all(2 * g.degree(v) >= g.n for v in range(g.n))
    cyc = hamilton_cycle_dirac(g)
    assert is_hamilton_cycle(g, cyc)
    assert has_hamilton_cycle_bruteforce(g)
