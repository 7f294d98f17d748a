"""Admissible-removal primitives and the gadget absorption lemmas.

Every routine acts on a :class:`Removal`, which tracks the remaining vertex
set and refuses any step that is not simple admissible.  Degrees always mean
degrees in the remaining graph.
"""

from __future__ import annotations

from .graph import Graph, bits, is_clique, is_independent, lowest, mask_of
from .witness import ConditionUnmet


class InadmissibleStep(AssertionError):
    pass


class Removal:
    def __init__(self, g: Graph, remaining: int | None = None):
        self.g = g
        self.remaining = g.full if remaining is None else remaining
        self.steps: list[int] = []
        self.trace: list[str] = []

    def deg(self, v: int) -> int:
        return (self.g.adj[v] & self.remaining).bit_count()

    def odd(self, v: int) -> bool:
        return bool(self.deg(v) & 1)

    def alive(self, v: int) -> bool:
        return bool(self.remaining >> v & 1)

    def remove(self, s: int, note: str = "") -> None:
        if not s or s & ~self.remaining:
            raise InadmissibleStep(f"bad step {sorted(bits(s))}: not a nonempty remaining set")
        adj = self.g.adj
        cross = 0
        for v in bits(s):
            if adj[v] & s:
                raise InadmissibleStep(f"step {sorted(bits(s))} is not independent")
            cross += (adj[v] & self.remaining).bit_count()
        if cross & 1:
            raise InadmissibleStep(f"step {sorted(bits(s))} has odd cross degree")
        self.remaining &= ~s
        self.steps.append(s)
        if note:
            self.trace.append(f"{note}: {sorted(bits(s))}")

    def remove_vertices(self, *vs: int, note: str = "") -> None:
        self.remove(mask_of(vs), note)


def _assert_odd_clique(run: Removal, s: int, what: str) -> None:
    if not is_clique(run.g, s):
        raise AssertionError(f"{what}: {sorted(bits(s))} is not a clique")
    for v in bits(s):
        if not run.odd(v):
            raise AssertionError(f"{what}: vertex {v} has even degree")


# ---------------------------------------------------------------- greedy


def greedy(run: Removal, s: int) -> int:
    """Remove even vertices and non-adjacent odd pairs of ``s`` until stuck.

    Returns what is left of ``s``: a clique whose vertices all have odd degree.
    """
    adj = run.g.adj
    while True:
        live = s & run.remaining
        for v in bits(live):
            if not run.odd(v):
                run.remove(1 << v, "greedy")
                break
        else:
            for u in bits(live):
                later = live & ~adj[u] & ~((2 << u) - 1)
                if later:
                    run.remove(1 << u | later & -later, "greedy")
                    break
            else:
                _assert_odd_clique(run, live, "greedy terminal")
                return live


def greedy_removal(g: Graph, w: int, s: int) -> tuple[list[int], int]:
    if s & ~w:
        raise ValueError("S must be a subset of W")
    run = Removal(g, w)
    terminal = greedy(run, s)
    return run.steps, terminal


# ---------------------------------------------------------------- one-vertex absorption


def _claim(run: Removal, order, v: int) -> bool:
    """Remove v plus at most one x from ``order`` if some x allows it (v odd)."""
    for x in order:
        if not run.alive(x):
            continue
        edge = run.g.has_edge(x, v)
        if edge and not run.odd(x):
            run.remove_vertices(x, note="claim")
            run.remove_vertices(v, note="claim")
            return True
        if not edge and run.odd(x):
            run.remove_vertices(x, v, note="claim")
            return True
    return False


def _check_absorb_vertex(run: Removal, a_set: int, b_set: int, v: int) -> None:
    g = run.g
    if a_set & b_set or (a_set | b_set) & ~run.remaining:
        raise ConditionUnmet("A and B must be disjoint remaining sets")
    if a_set.bit_count() < 2 or b_set.bit_count() < 2:
        raise ConditionUnmet("A and B need at least two vertices")
    if not is_independent(g, a_set) or not is_independent(g, b_set):
        raise ConditionUnmet("A and B must be independent")
    if not run.alive(v) or (a_set | b_set) >> v & 1:
        raise ConditionUnmet("v must be a remaining vertex outside A and B")
    for x in bits(a_set):
        if not g.adj[x] & b_set or not b_set & ~g.adj[x]:
            raise ConditionUnmet("cross-edge condition")
    for x in bits(b_set):
        if not g.adj[x] & a_set or not a_set & ~g.adj[x]:
            raise ConditionUnmet("cross-edge condition")


def absorb(run: Removal, a_set: int, b_set: int, v: int) -> None:
    """Admissibly remove v, taking at most two vertices from each of A and B."""
    _check_absorb_vertex(run, a_set, b_set, v)
    adj = run.g.adj
    if not run.odd(v):
        run.remove_vertices(v, note="absorb: even v")
        return
    order = list(bits(b_set)) + list(bits(a_set))
    if _claim(run, order, v):
        return
    # now xv is an edge exactly when x has odd degree
    for x in order:
        if not run.odd(x):
            other = a_set if b_set >> x & 1 else b_set
            y = lowest(adj[x] & other & run.remaining)
            run.remove_vertices(x, note="absorb: flip")
            if not _claim(run, [y], v):
                raise InadmissibleStep("degree flip did not enable the claim")
            return
    a = lowest(a_set)
    b1 = lowest(adj[a] & b_set)
    b2 = lowest(b_set & ~adj[a])
    run.remove_vertices(b1, b2, note="absorb: all odd")
    run.remove_vertices(a, note="absorb: all odd")
    run.remove_vertices(v, note="absorb: all odd")


def absorb_vertex(g: Graph, w: int, a_set: int, b_set: int, v: int) -> list[int]:
    run = Removal(g, w)
    absorb(run, a_set, b_set, v)
    return run.steps


# ---------------------------------------------------------------- F gadget


def f_sides(g: Graph, r: int) -> tuple[int, int]:
    """Split an induced copy of F into (A, B) = (T1 | T2, S1 | S2)."""
    if r.bit_count() != 20:
        raise ConditionUnmet("gadget shape")
    adj = g.adj
    left = r
    a_side = b_side = 0
    comps = 0
    while left:
        t = lowest(left)
        s_part = adj[t] & r
        if not s_part:
            raise ConditionUnmet("gadget shape")
        t_part = adj[lowest(s_part)] & r
        comp = s_part | t_part
        if comp & ~left or s_part.bit_count() != 5 or t_part.bit_count() != 5:
            raise ConditionUnmet("gadget shape")
        for x in bits(t_part):
            if adj[x] & r != s_part:
                raise ConditionUnmet("gadget shape")
        for x in bits(s_part):
            if adj[x] & r != t_part:
                raise ConditionUnmet("gadget shape")
        a_side |= t_part
        b_side |= s_part
        left &= ~comp
        comps += 1
    if comps != 2:
        raise ConditionUnmet("gadget shape")
    return a_side, b_side


def absorb_f(run: Removal, r: int, c: int) -> int:
    """Shrink the clique C using an F gadget on R; returns the new clique."""
    if r & ~run.remaining or c & ~run.remaining or r & c:
        raise ConditionUnmet("R and C must be disjoint remaining sets")
    a_side, b_side = f_sides(run.g, r)
    if not is_clique(run.g, c):
        raise ConditionUnmet("C is not a clique")
    m = c.bit_count()
    for v in list(bits(c))[:3]:
        absorb(run, a_side & run.remaining, b_side & run.remaining, v)
    greedy(run, a_side)
    greedy(run, b_side)
    new = greedy(run, c | r)
    if new.bit_count() > max(m - 1, 2):
        raise AssertionError(f"F absorption left {new.bit_count()} vertices from a {m}-clique")
    return new


def absorb_clique_with_F(g: Graph, w: int, r: int, c: int) -> tuple[list[int], int]:
    run = Removal(g, w)
    new = absorb_f(run, r, c)
    return run.steps, new


# ---------------------------------------------------------------- P3 gadget

# Removal orders for the ten degree-parity classes of (a, b, c, d); "k" is the
# next clique vertex, and the remaining six classes follow by reversal.
DENSE_TABLE: dict[str, tuple[str, ...]] = {
    "eeee": ("b", "k", "c", "k", "ad"),
    "eeeo": ("b", "k", "c", "k", "d"),
    "eeoe": ("b", "k", "a", "k", "c"),
    "eeoo": ("b", "k", "a", "k", "c"),
    "oooo": ("ad", "b", "k", "c", "k"),
    "oooe": ("d", "k", "b", "k", "a"),
    "ooeo": ("c", "k", "a", "k", "d"),
    "oeoe": ("d", "k", "a", "k", "c"),
    "oeeo": ("b", "k", "c", "k", "a"),
    "eooe": ("a", "k", "c", "k", "bd"),
}

_REVERSE = str.maketrans("abcd", "dcba")


def canonical_signature(sig: str) -> tuple[str, bool]:
    """Map a parity signature to its table entry; flag whether it was reversed."""
    if sig in DENSE_TABLE:
        return sig, False
    return sig[::-1], True


def dense_sequence(sig: str) -> tuple[str, ...]:
    key, flipped = canonical_signature(sig)
    seq = DENSE_TABLE[key]
    if flipped:
        seq = tuple(tok.translate(_REVERSE) for tok in seq)
    return seq


def p3_order(g: Graph, r: int) -> tuple[int, int, int, int]:
    """Path order (a, b, c, d) of an induced P3 on R, with a < d."""
    if r.bit_count() != 4:
        raise ConditionUnmet("gadget shape")
    adj = g.adj
    ends = [v for v in bits(r) if (adj[v] & r).bit_count() == 1]
    if len(ends) != 2 or sum((adj[v] & r).bit_count() for v in bits(r)) != 6:
        raise ConditionUnmet("gadget shape")
    a, d = ends
    b = lowest(adj[a] & r)
    c = lowest(adj[b] & r & ~(1 << a))
    if not adj[c] >> d & 1 or adj[a] >> c & 1 or adj[b] >> d & 1:
        raise ConditionUnmet("gadget shape")
    return a, b, c, d


def signature(run: Removal, order) -> str:
    return "".join("o" if run.odd(v) else "e" for v in order)


def _check_p3_setup(run: Removal, r: int, c: int, *, complete: bool) -> tuple[int, int, int, int]:
    if r & ~run.remaining or c & ~run.remaining or r & c:
        raise ConditionUnmet("R and C must be disjoint remaining sets")
    order = p3_order(run.g, r)
    if not is_clique(run.g, c):
        raise ConditionUnmet("C is not a clique")
    for k in bits(c):
        if not run.odd(k):
            raise ConditionUnmet("C has a vertex of even degree")
    adj = run.g.adj
    for x in bits(r):
        if complete and adj[x] & c != c:
            raise ConditionUnmet("R complete to C")
        if not complete and adj[x] & c:
            raise ConditionUnmet("R disjoint from C's neighborhood")
    return order


def _play(run: Removal, seq, named: dict[str, int], c: int, stop_when_c_gone: bool, note: str) -> None:
    for tok in seq:
        if stop_when_c_gone and not c & run.remaining:
            return
        if tok == "k":
            run.remove(run.remaining & c & -(run.remaining & c), note)
        else:
            run.remove(mask_of(named[ch] for ch in tok), note)


def dense_stage2(run: Removal, r: int, c: int) -> int:
    order = _check_p3_setup(run, r, c, complete=True)
    m = c.bit_count()
    if m < 2:
        raise ConditionUnmet("clique needs at least two vertices")
    named = dict(zip("abcd", order))
    _play(run, dense_sequence(signature(run, order)), named, c, False, "dense stage 2")
    new = greedy(run, c | r)
    if new.bit_count() > m - 1:
        raise AssertionError("dense stage 2 did not shrink the clique")
    return new


def dense_stage3(run: Removal, r: int, c: int) -> int:
    order = _check_p3_setup(run, r, c, complete=True)
    if c.bit_count() > 2:
        raise ConditionUnmet("clique has more than two vertices")
    named = dict(zip("abcd", order))
    _play(run, dense_sequence(signature(run, order)), named, c, True, "dense stage 3")
    if c & run.remaining:
        raise AssertionError("dense stage 3 left clique vertices behind")
    return greedy(run, r)


def sparse_stage2(run: Removal, r: int, c: int) -> int:
    order = _check_p3_setup(run, r, c, complete=False)
    m = c.bit_count()
    if m < 2:
        raise ConditionUnmet("clique needs at least two vertices")
    a, b, cc, d = order
    odd = [v for v in sorted(order) if run.odd(v)]
    if odd:
        run.remove_vertices(odd[0], lowest(c), note="sparse stage 2")
    else:
        run.remove_vertices(a, cc, note="sparse stage 2")
        k1 = lowest(c & run.remaining)
        run.remove_vertices(d, k1, note="sparse stage 2")
        run.remove_vertices(lowest(c & run.remaining), note="sparse stage 2")
    new = greedy(run, c | r)
    if new.bit_count() > max(m - 1, 2):
        raise AssertionError("sparse stage 2 did not shrink the clique")
    return new


def sparse_stage3(run: Removal, r: int, c: int) -> int:
    order = _check_p3_setup(run, r, c, complete=False)
    if c.bit_count() > 2:
        raise ConditionUnmet("clique has more than two vertices")
    a, b, cc, d = order
    odd = [v for v in sorted(order) if run.odd(v)]
    if odd:
        plan = [(odd[0], "k"), ("k",)]
    else:
        plan = [(a, cc), (d, "k"), ("k",)]
    for group in plan:
        if not c & run.remaining:
            break
        verts = [lowest(c & run.remaining) if x == "k" else x for x in group]
        run.remove_vertices(*verts, note="sparse stage 3")
    if c & run.remaining:
        raise AssertionError("sparse stage 3 left clique vertices behind")
    return greedy(run, r)


def absorb_p3(run: Removal, r: int, c: int, *, dense: bool) -> int:
    m = c.bit_count()
    if dense:
        return dense_stage2(run, r, c) if m >= 2 else dense_stage3(run, r, c)
    return sparse_stage2(run, r, c) if m >= 3 else sparse_stage3(run, r, c)


def p3_absorb_dense(g: Graph, w: int, r: int, c: int) -> tuple[list[int], int]:
    run = Removal(g, w)
    new = absorb_p3(run, r, c, dense=True)
    return run.steps, new


def p3_absorb_sparse(g: Graph, w: int, r: int, c: int) -> tuple[list[int], int]:
    run = Removal(g, w)
    new = absorb_p3(run, r, c, dense=False)
    return run.steps, new
