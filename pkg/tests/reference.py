"""Slow, obviously-correct reference deciders used as test oracles."""

from __future__ import annotations

import itertools
from functools import lru_cache

from evendecomp.graph import Graph


def edges_within(g: Graph, verts) -> int:
    vs = list(verts)
    return sum(1 for u, v in itertools.combinations(vs, 2) if g.has_edge(u, v))


def decomposable(g: Graph) -> bool:
    """Definition-level search: nested sets with even edge counts and independent differences."""
    n = g.n

    @lru_cache(maxsize=None)
    def good(w: frozenset) -> bool:
        if not w:
            return True
        if edges_within(g, w) % 2:
            return False
        items = sorted(w)
        for k in range(1, len(items) + 1):
            for s in itertools.combinations(items, k):
                if edges_within(g, s):
                    continue
                rest = w - set(s)
                if edges_within(g, rest) % 2 == 0 and good(rest):
                    return True
        return False

    return good(frozenset(range(n)))


def degenerate(g: Graph) -> bool:
    """Try every ordering."""
    n = g.n
    for perm in itertools.permutations(range(n)):
        ok = True
        for i in range(n - 2):
            later = perm[i + 1 :]
            if sum(g.has_edge(perm[i], u) for u in later) % 2:
                ok = False
                break
        if ok:
            return True
    return n == 0


def all_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for i, e in enumerate(pairs) if mask >> i & 1])
