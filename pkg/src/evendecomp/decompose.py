"""Three-regime constructive decomposers and the dispatcher.

Each decomposer checks its hypotheses, then runs the staged absorption
argument on a :class:`~evendecomp.lemmas.Removal`.  Every Decomposed outcome
is re-checked by the independent replay verifier before it is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import lemmas
from .graph import (
    Graph,
    Pattern,
    PatternPacking,
    bits,
    clique_number,
    find_disjoint_induced,
    has_clique_of_size,
    lowest,
    mask_of,
)
from .hamilton import hamilton_cycle_dirac
from .witness import ConditionUnmet, DecompositionWitness, EngineOutcome, Status, verify_witness


@dataclass(frozen=True)
class Thresholds:
    """Hypothesis parameters: P3 packing size, forbidden clique size, degree cap.

    ``degree_cap`` bounds complement degrees for the dense decomposer and
    ordinary degrees for the sparse one.
    """

    packing: int
    clique_cap: int
    degree_cap: int

    @classmethod
    def fractions(cls, n: int, packing: float = 1e-2, clique: float = 5e-3, degree: float = 1e-5) -> "Thresholds":
        return cls(math.ceil(packing * n), math.ceil(clique * n), math.floor(degree * n))

    def to_dict(self) -> dict:
        return {"tau1": self.packing, "tau2": self.clique_cap, "tau3": self.degree_cap}


def _condition(name: str, trace=()) -> EngineOutcome:
    return EngineOutcome(Status.CONDITION_UNMET, condition=name, trace=tuple(trace))


def _finish(g: Graph, run: lemmas.Removal) -> EngineOutcome:
    """Remove the final remainder (at most two vertices) and certify."""
    rest = run.remaining
    if rest:
        # e(G) even and every step preserves parity, so the remainder spans no edge
        if rest.bit_count() > 2:
            raise AssertionError(f"remainder {sorted(bits(rest))} has more than two vertices")
        run.remove(rest, "remainder")
    w = DecompositionWitness(tuple(run.steps), g.full)
    if not verify_witness(g, w):
        raise AssertionError("constructed witness failed independent verification")
    return EngineOutcome(Status.DECOMPOSED, witness=w, trace=tuple(run.trace))


def _packing_masks(packing) -> list[int]:
    if isinstance(packing, PatternPacking):
        sets = packing.vertex_sets()
    else:
        sets = list(packing)
    masks = [s if isinstance(s, int) else mask_of(s) for s in sets]
    seen = 0
    for m in masks:
        if m & seen:
            raise ValueError("packing copies overlap")
        seen |= m
    return masks


# ---------------------------------------------------------------- F gadget regime


def decompose_uniform(g: Graph, packing, t: int) -> EngineOutcome:
    if g.num_edges() % 2:
        return _condition("odd edge count")
    gadgets = _packing_masks(packing)
    if len(gadgets) < t:
        return _condition("packing")
    if has_clique_of_size(g, t + 1):
        return _condition("clique bound")
    gadgets = gadgets[:t]
    run = lemmas.Removal(g)
    covered = 0
    for r in gadgets:
        covered |= r
    c = lemmas.greedy(run, g.full & ~covered)
    try:
        for r in gadgets:
            c = lemmas.absorb_f(run, r, c)
    except ConditionUnmet as exc:
        return _condition(exc.condition, run.trace)
    return _finish(g, run)


# ---------------------------------------------------------------- P3 regimes


def _p3_hypotheses(g: Graph, cfg: Thresholds, dense: bool, packing=None) -> tuple[list[int] | None, str | None]:
    if g.num_edges() % 2:
        return None, "odd edge count"
    n = g.n
    if dense:
        worst = max((n - 1 - g.degree(v) for v in range(n)), default=0)
        if worst > cfg.degree_cap:
            return None, "complement degree cap"
    else:
        worst = max((g.degree(v) for v in range(n)), default=0)
        if worst > cfg.degree_cap:
            return None, "degree cap"
    if cfg.clique_cap <= n and has_clique_of_size(g, cfg.clique_cap):
        return None, "clique bound"
    if packing is None:
        packing = find_disjoint_induced(g, Pattern.P3, cfg.packing)
    masks = _packing_masks(packing)
    if len(masks) < cfg.packing:
        return None, "packing"
    for r in masks:
        lemmas.p3_order(g, r)  # raises on a copy that is not an induced P3
    return masks[: cfg.packing], None


def _linked(g: Graph, x: int, y: int, dense: bool) -> bool:
    """Dense: x complete to y.  Sparse: no edges between x and y."""
    adj = g.adj
    for v in bits(x):
        if dense and adj[v] & y != y:
            return False
        if not dense and adj[v] & y:
            return False
    return True


def _decompose_p3(g: Graph, cfg: Thresholds, dense: bool, packing) -> EngineOutcome:
    try:
        gadgets, problem = _p3_hypotheses(g, cfg, dense, packing)
    except ConditionUnmet:
        return _condition("packing")
    if problem:
        return _condition(problem)
    run = lemmas.Removal(g)
    covered = 0
    for r in gadgets:
        covered |= r
    # stage 1
    c = lemmas.greedy(run, g.full & ~covered)
    # stage 2: shrink the clique three vertices at a time
    pool = list(gadgets)
    while c.bit_count() > 2:
        k3 = mask_of(list(bits(c))[:3])
        pick = next((i for i, r in enumerate(pool) if _linked(g, r, k3, dense)), None)
        if pick is None:
            return _condition("stage 2: no gadget for the clique", run.trace)
        r = pool.pop(pick)
        size = c.bit_count()
        try:
            if dense:
                new = lemmas.dense_stage2(run, r, k3)
            else:
                new = lemmas.sparse_stage2(run, r, k3)
        except ConditionUnmet as exc:
            return _condition(f"stage 2: {exc.condition}", run.trace)
        c = lemmas.greedy(run, new | (c & ~k3))
        if c.bit_count() > size - 1:
            raise AssertionError("stage 2 did not shrink the clique")
    # stage 3: walk a Hamilton cycle of the auxiliary graph starting at the clique
    if pool:
        order = _stage3_order(g, pool, c, dense)
        if order is None:
            return _condition("stage 3: Dirac degree bound", run.trace)
        for r in order:
            try:
                if dense:
                    c = lemmas.dense_stage3(run, r, c)
                else:
                    c = lemmas.sparse_stage3(run, r, c)
            except ConditionUnmet as exc:
                return _condition(f"stage 3: {exc.condition}", run.trace)
    return _finish(g, run)


def _stage3_order(g: Graph, pool: list[int], d: int, dense: bool) -> list[int] | None:
    """Gadgets in the order of a Hamilton cycle of L, starting next to D (node 0)."""
    nodes = [d] + pool
    m = len(nodes)
    if m == 2:
        return pool if _linked(g, pool[0], d, dense) else None
    adj = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if _linked(g, nodes[i], nodes[j], dense):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    try:
        cyc = hamilton_cycle_dirac(Graph(m, tuple(adj)))
    except ConditionUnmet:
        return None
    at = cyc.index(0)
    cyc = cyc[at:] + cyc[:at]
    return [nodes[i] for i in cyc[1:]]


def decompose_dense(g: Graph, cfg: Thresholds, packing=None) -> EngineOutcome:
    """``packing`` overrides the built-in P3 search (vertex sets of induced P3 copies)."""
    return _decompose_p3(g, cfg, True, packing)


def decompose_sparse(g: Graph, cfg: Thresholds, packing=None) -> EngineOutcome:
    return _decompose_p3(g, cfg, False, packing)


# ---------------------------------------------------------------- dispatcher


def decompose_auto(g: Graph, exact_cap: int = 18, f_budget: int = 2_000) -> EngineOutcome:
    """Exact oracle for small graphs; otherwise sparse, dense, uniform, then plain greedy."""
    if g.num_edges() % 2:
        return _condition("odd edge count")
    if g.n <= exact_cap:
        from .oracle import exact_even_decomposable

        ok, w = exact_even_decomposable(g)
        if not ok:
            return EngineOutcome(Status.NON_DECOMPOSABLE, trace=("exact oracle",))
        if not verify_witness(g, w):
            raise AssertionError("exact oracle witness failed verification")
        return EngineOutcome(Status.DECOMPOSED, witness=w, trace=("exact oracle",))

    omega = clique_number(g)
    n = g.n
    p3 = find_disjoint_induced(g, Pattern.P3, n // 4)
    if len(p3):
        sparse_cfg = Thresholds(len(p3), omega + 1, max(g.degree(v) for v in range(n)))
        out = decompose_sparse(g, sparse_cfg)
        if out.decomposed:
            return out
        dense_cfg = Thresholds(len(p3), omega + 1, max(n - 1 - g.degree(v) for v in range(n)))
        out = decompose_dense(g, dense_cfg)
        if out.decomposed:
            return out
    fpack = find_disjoint_induced(g, Pattern.F, n // 20, budget=f_budget)
    if len(fpack) and len(fpack) >= omega:
        out = decompose_uniform(g, fpack, len(fpack))
        if out.decomposed:
            return out

    run = lemmas.Removal(g)
    left = lemmas.greedy(run, g.full)
    if left:
        return EngineOutcome(Status.STUCK, remaining=left, trace=tuple(run.trace))
    return _finish(g, run)
