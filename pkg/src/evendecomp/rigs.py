"""Parity rigs, planted instances, and the lemma verification suite.

A parity rig is a small graph whose designated vertices get a prescribed
degree parity from pendant vertices hung off them.  Pendants sit outside the
gadget/clique window, so the operations under test never touch them.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import lemmas
from .graph import Graph, bits, is_clique, lowest, mask_of
from .lemmas import DENSE_TABLE, Removal
from .witness import replay_problem

SIGNATURES = tuple(DENSE_TABLE)
ALL_SIGNATURES = tuple("".join(s) for s in itertools.product("eo", repeat=4))


def _with_pendants(n: int, edges: list[tuple[int, int]], want_odd: dict[int, bool]) -> Graph:
    """Attach one pendant to each listed vertex whose degree parity is wrong."""
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    edges = list(edges)
    extra = n
    for v, odd in sorted(want_odd.items()):
        if deg[v] % 2 != int(odd):
            edges.append((v, extra))
            extra += 1
    return Graph.from_edges(extra, edges)


@dataclass(frozen=True)
class P3Rig:
    g: Graph
    r: int
    c: int
    order: tuple[int, int, int, int]


def p3_rig(sig: str, m: int, dense: bool) -> P3Rig:
    """Induced path 0-1-2-3 plus an m-clique on 4..; R complete to C (dense) or
    edge-free to C (sparse).  Degrees of a,b,c,d follow ``sig``; C is all odd."""
    cverts = list(range(4, 4 + m))
    edges = [(0, 1), (1, 2), (2, 3)]
    edges += list(itertools.combinations(cverts, 2))
    if dense:
        edges += [(x, k) for x in range(4) for k in cverts]
    want = {i: ch == "o" for i, ch in enumerate(sig)}
    want.update({k: True for k in cverts})
    g = _with_pendants(4 + m, edges, want)
    return P3Rig(g, 0b1111, mask_of(cverts), (0, 1, 2, 3))


def absorb_rig(v_nbrs: int, odd_mask: int, cross: tuple[tuple[int, int], ...] = ((0, 2), (1, 3))) -> tuple[Graph, int, int, int]:
    """A = {0,1}, B = {2,3} with ``cross`` edges, v = 4 adjacent to ``v_nbrs``;
    bit i of ``odd_mask`` sets the parity of vertex i (0..4)."""
    edges = list(cross) + [(x, 4) for x in bits(v_nbrs)]
    want = {i: bool(odd_mask >> i & 1) for i in range(5)}
    g = _with_pendants(5, edges, want)
    return g, 0b0011, 0b1100, 4


def f_rig(m: int, rng: random.Random, cross_p: float = 0.5, parity: int | None = None) -> tuple[Graph, int, int]:
    """F gadget on 0..19 plus an m-clique, random gadget-clique edges, optional parity pendants."""
    cverts = list(range(20, 20 + m))
    edges = []
    for i in range(5):
        for j in range(5):
            edges.append((i, 5 + j))
            edges.append((10 + i, 15 + j))
    edges += list(itertools.combinations(cverts, 2))
    edges += [(x, k) for x in range(20) for k in cverts if rng.random() < cross_p]
    if parity is None:
        want = {v: rng.random() < 0.5 for v in range(20 + m)}
    else:
        want = {v: bool(parity >> v & 1) for v in range(20 + m)}
    g = _with_pendants(20 + m, edges, want)
    return g, (1 << 20) - 1, mask_of(cverts)


# ---------------------------------------------------------------- checks


@dataclass
class CaseResult:
    name: str
    ok: bool
    detail: str = ""


def _check_run(run: Removal, start: int, window: int, new: int | None) -> str | None:
    problem = replay_problem(run.g, start, run.steps)
    if problem:
        return problem
    touched = start & ~run.remaining
    if touched & ~window:
        return f"touched vertices outside the window: {sorted(bits(touched & ~window))}"
    if new is not None:
        if new & ~run.remaining:
            return "returned clique contains removed vertices"
        if not is_clique(run.g, new):
            return "returned set is not a clique"
        if any(not run.odd(v) for v in bits(new)):
            return "returned clique has an even-degree vertex"
    return None


def check_p3(sig: str, m: int, dense: bool, stage: int) -> CaseResult:
    regime = "dense" if dense else "sparse"
    name = f"{regime} stage {stage} sig={sig} |C|={m}"
    rig = p3_rig(sig, m, dense)
    run = Removal(rig.g)
    start = run.remaining
    try:
        if stage == 2:
            fn = lemmas.dense_stage2 if dense else lemmas.sparse_stage2
        else:
            fn = lemmas.dense_stage3 if dense else lemmas.sparse_stage3
        new = fn(run, rig.r, rig.c)
    except (AssertionError, lemmas.ConditionUnmet) as exc:
        return CaseResult(name, False, f"{type(exc).__name__}: {exc}")
    problem = _check_run(run, start, rig.r | rig.c, new)
    if problem is None:
        limit = (m - 1 if dense else max(m - 1, 2)) if stage == 2 else 2
        if new.bit_count() > limit:
            problem = f"clique of {new.bit_count()} exceeds {limit}"
        elif stage == 3 and rig.c & run.remaining:
            problem = "clique vertices survived stage 3"
        elif stage == 3 and new & ~rig.r:
            problem = "stage 3 clique not inside R"
    return CaseResult(name, problem is None, problem or "")


def check_absorb(v_nbrs: int, odd_mask: int, cross) -> CaseResult:
    name = f"absorb v~{sorted(bits(v_nbrs))} odd={odd_mask:05b} cross={list(cross)}"
    g, a_set, b_set, v = absorb_rig(v_nbrs, odd_mask, cross)
    run = Removal(g)
    start = run.remaining
    try:
        lemmas.absorb(run, a_set, b_set, v)
    except (AssertionError, lemmas.ConditionUnmet) as exc:
        return CaseResult(name, False, f"{type(exc).__name__}: {exc}")
    problem = _check_run(run, start, a_set | b_set | 1 << v, None)
    gone = start & ~run.remaining
    if problem is None and gone >> v & 1 == 0:
        problem = "v was not removed"
    if problem is None and ((gone & a_set).bit_count() > 2 or (gone & b_set).bit_count() > 2):
        problem = "more than two vertices taken from A or B"
    return CaseResult(name, problem is None, problem or "")


def check_f(m: int, seed: int) -> CaseResult:
    rng = random.Random(seed)
    name = f"F absorption |C|={m} seed={seed}"
    g, r, c = f_rig(m, rng)
    run = Removal(g)
    start = run.remaining
    try:
        new = lemmas.absorb_f(run, r, c)
    except (AssertionError, lemmas.ConditionUnmet) as exc:
        return CaseResult(name, False, f"{type(exc).__name__}: {exc}")
    problem = _check_run(run, start, r | c, new)
    if problem is None and new.bit_count() > max(m - 1, 2):
        problem = f"clique of {new.bit_count()} exceeds max(m-1, 2)"
    return CaseResult(name, problem is None, problem or "")


def absorb_cases():
    crosses = (((0, 2), (1, 3)), ((0, 3), (1, 2)))
    for cross in crosses:
        for v_nbrs in range(16):
            for odd_mask in range(32):
                yield v_nbrs, odd_mask, cross


def verify_lemmas(f_seeds: int = 20, signatures=SIGNATURES) -> list[CaseResult]:
    """Run every rig family; one result per case."""
    out = []
    for dense in (True, False):
        for sig in signatures:
            for m in (2, 3, 4, 5):
                out.append(check_p3(sig, m, dense, 2))
            for m in (0, 1, 2):
                out.append(check_p3(sig, m, dense, 3))
    for case in absorb_cases():
        out.append(check_absorb(*case))
    for m in range(0, 7):
        for seed in range(f_seeds):
            out.append(check_f(m, seed))
    return out


# ---------------------------------------------------------------- planted instances


def _fix_parity(edges: set, n: int, rng: random.Random, protected) -> None:
    """Toggle one unprotected pair if the edge count is odd."""
    if len(edges) % 2 == 0:
        return
    while True:
        u, v = sorted(rng.sample(range(n), 2))
        if protected(u, v):
            continue
        edges.symmetric_difference_update({(u, v)})
        return


def planted_uniform(rng: random.Random) -> tuple[Graph, list[int], int]:
    """2-3 induced F copies plus random edges that keep the clique number at most t.

    Returns (G, gadget vertex sets, t); the uniform-regime hypotheses hold by construction.
    """
    t = rng.randint(2, 3)
    n = rng.randint(20 * t, min(64, 20 * t + 12))
    perm = list(range(n))
    rng.shuffle(perm)
    gadgets = []
    inside = {}
    adj = [0] * n
    edges = set()

    def add(u, v):
        edges.add((min(u, v), max(u, v)))
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    for i in range(t):
        base = 20 * i
        for x in range(5):
            for y in range(5):
                for off in (0, 10):
                    add(perm[base + off + x], perm[base + off + 5 + y])
        members = [perm[base + j] for j in range(20)]
        gadgets.append(mask_of(members))
        for v in members:
            inside[v] = i

    def protected(u, v):
        return u in inside and inside.get(v) == inside[u]

    p = rng.choice((0.02, 0.05, 0.1, 0.2))
    for u in range(n):
        for v in range(u + 1, n):
            if protected(u, v) or rng.random() >= p:
                continue
            common = adj[u] & adj[v]
            # t = 2: no triangle through uv; t = 3: no K4 through uv
            if t == 2 and common:
                continue
            if t == 3 and any(adj[w] & common for w in bits(common)):
                continue
            add(u, v)
    if len(edges) % 2:
        # drop an edge outside the gadgets, or add an isolated-safe one
        spare = [e for e in sorted(edges) if not protected(*e)]
        if spare:
            edges.discard(rng.choice(spare))
        else:
            outside = [v for v in range(n) if v not in inside]
            u = outside[0] if outside else perm[0]
            # an edge from u to a vertex of another gadget's far side keeps cliques at size 2
            v = next(w for w in range(n) if not protected(u, w) and w != u and not adj[u] >> w & 1 and not adj[u] & adj[w])
            edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, edges), gadgets, t


def planted_sparse(rng: random.Random) -> tuple[Graph, list[int]]:
    """Disjoint induced P3s, a planted clique, and a few random edges."""
    k = rng.randint(3, 12)
    m = rng.randint(0, 5)
    n = min(64, 4 * k + m + rng.randint(0, 10))
    perm = list(range(n))
    rng.shuffle(perm)
    edges = set()
    gadgets = []
    owner = {}
    for i in range(k):
        a, b, c, d = (perm[4 * i + j] for j in range(4))
        edges |= {tuple(sorted(e)) for e in ((a, b), (b, c), (c, d))}
        gadgets.append(mask_of((a, b, c, d)))
        for v in (a, b, c, d):
            owner[v] = i
    clique = [perm[4 * k + j] for j in range(m)]
    edges |= {tuple(sorted(e)) for e in itertools.combinations(clique, 2)}
    for _ in range(rng.randint(0, n // 4)):
        u, v = sorted(rng.sample(range(n), 2))
        if u in owner and owner.get(v) == owner[u]:
            continue
        edges.add((u, v))
    _fix_parity(edges, n, rng, lambda u, v: u in owner and owner.get(v) == owner[u])
    return Graph.from_edges(n, edges), gadgets


def planted_dense(rng: random.Random) -> tuple[Graph, list[int]]:
    """Complement of a sparse planted instance (P3 is self-complementary), parity fixed."""
    g, gadgets = planted_sparse(rng)
    h = g.complement()
    if h.num_edges() % 2:
        owner = {}
        for i, r in enumerate(gadgets):
            for v in bits(r):
                owner[v] = i
        edges = set(h.edges())
        _fix_parity(edges, h.n, rng, lambda u, v: u in owner and owner.get(v) == owner[u])
        h = Graph.from_edges(h.n, edges)
    return h, gadgets

