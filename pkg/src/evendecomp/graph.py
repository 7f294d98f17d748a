"""Bitmask graphs on at most 64 labelled vertices.

A graph is a tuple of adjacency rows; row ``v`` is an int whose bit ``u`` is
set iff ``uv`` is an edge.  Vertex sets are plain ints used as bitmasks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64

VertexSet = int


class GraphParseError(ValueError):
    """Raised on malformed graph6 or edge-list input."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> VertexSet:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside [0, {MAX_VERTICES}]")
        if len(self.adj) != self.n:
            raise ValueError("adjacency row count does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {v} has bits beyond n")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric pair {u},{v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u},{v} out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @property
    def full(self) -> VertexSet:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1)):
                yield u, u + 1 + v

    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def complement(self) -> "Graph":
        full = self.full
        return Graph(self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph induced on ``vertices``, relabelled 0..k-1 in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        return Graph.from_edges(
            len(vertices),
            ((index[u], index[v]) for u, v in self.edges() if u in index and v in index),
        )

    def to_graph6(self) -> str:
        return emit_graph6(self)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, g6={emit_graph6(self)!r})"


# ---------------------------------------------------------------- constructors


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph.from_edges(offset, edges)


def f_gadget() -> Graph:
    """Two disjoint copies of K_{5,5}; sides are 0-4|5-9 and 10-14|15-19."""
    return disjoint_union(complete_bipartite(5, 5), complete_bipartite(5, 5))


# ---------------------------------------------------------------- graph6


def _g6_size_header(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])


def emit_graph6(g: Graph) -> str:
    out = bytearray(_g6_size_header(g.n))
    acc = nbits = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return out.decode("ascii")


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    base = 0
    if s.startswith(">>graph6<<"):
        base = len(">>graph6<<")
        s = s[base:]
    if not s:
        raise GraphParseError("empty graph6 word", base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphParseError(f"character {ch!r} outside graph6 range 63..126", base + i)
    data = s.encode("ascii")
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    else:
        if len(data) < 4:
            raise GraphParseError("truncated long-form size header", base + len(data))
        if data[1] == 126:
            raise GraphParseError("graph too large for this library", base + 1)
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        pos = 4
    if n > MAX_VERTICES:
        raise GraphParseError(f"graph has {n} vertices, cap is {MAX_VERTICES}", base)
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) < need:
        raise GraphParseError(
            f"expected {need} data bytes for n={n}, got {len(body)}", base + len(data)
        )
    if len(body) > need:
        raise GraphParseError("trailing garbage after graph6 word", base + pos + need)
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] - 63) >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def parse_edge_list(text: str) -> Graph:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphParseError("edge list is empty")
    try:
        n = int(lines[0])
    except ValueError:
        raise GraphParseError(f"first line must be the vertex count, got {lines[0]!r}") from None
    if not 0 <= n <= MAX_VERTICES:
        raise GraphParseError(f"vertex count {n} outside [0, {MAX_VERTICES}]")
    rows = [0] * n
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise GraphParseError(f"line {lineno}: expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"line {lineno}: non-numeric token in {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"line {lineno}: vertex out of range for n={n}")
        if u == v:
            raise GraphParseError(f"line {lineno}: self-loop at {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


# ---------------------------------------------------------------- predicates


def edge_parity(g: Graph, w: VertexSet) -> int:
    """e(G[W]) mod 2."""
    total = 0
    for v in bits(w):
        total += (g.adj[v] & w).bit_count()
    return (total // 2) & 1


def is_independent(g: Graph, s: VertexSet) -> bool:
    for v in bits(s):
        if g.adj[v] & s:
            return False
    return True


def degree_in(g: Graph, w: VertexSet, v: int) -> int:
    if not w >> v & 1:
        raise ValueError(f"vertex {v} is not in the given set")
    return (g.adj[v] & w).bit_count()


def is_clique(g: Graph, s: VertexSet) -> bool:
    for v in bits(s):
        if (g.adj[v] | 1 << v) & s != s:
            return False
    return True


def _color_order(adj: Sequence[int], cand: int) -> list[tuple[int, int]]:
    """Greedy colouring of ``cand``; returns (vertex, colour) in colour order."""
    out = []
    colour = 0
    rest = cand
    while rest:
        colour += 1
        avail = rest
        while avail:
            v = lowest(avail)
            out.append((v, colour))
            rest &= ~(1 << v)
            avail &= ~(1 << v) & ~adj[v]
    return out


def _clique_search(adj: Sequence[int], cand: int, size: int, target: int) -> bool:
    order = _color_order(adj, cand)
    for v, colour in reversed(order):
        if size + colour < target:
            return False
        if size + 1 >= target:
            return True
        if _clique_search(adj, cand & adj[v], size + 1, target):
            return True
        cand &= ~(1 << v)
    return False


def has_clique_of_size(g: Graph, k: int) -> bool:
    """True iff G contains a clique on k vertices (branch and bound)."""
    if k <= 0:
        return True
    if k > g.n:
        return False
    return _clique_search(g.adj, g.full, 0, k)


def clique_number(g: Graph) -> int:
    k = 0
    while k < g.n and has_clique_of_size(g, k + 1):
        k += 1
    return k


def max_degree(g: Graph) -> int:
    return max((row.bit_count() for row in g.adj), default=0)


# ---------------------------------------------------------------- pattern packing


class Pattern(str, Enum):
    P3 = "P3"
    F = "F"


_F = f_gadget()
_P3_EDGES = {(0, 1), (1, 2), (2, 3)}


def induces_pattern(g: Graph, verts: Sequence[int], pattern: Pattern) -> bool:
    """Naive pairwise check that ``verts`` (in canonical order) induces the pattern."""
    k = 4 if pattern is Pattern.P3 else 20
    if len(verts) != k or len(set(verts)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            if pattern is Pattern.P3:
                want = (i, j) in _P3_EDGES
            else:
                want = _F.has_edge(i, j)
            if g.has_edge(verts[i], verts[j]) != want:
                return False
    return True


@dataclass(frozen=True)
class PatternPacking:
    pattern: Pattern
    copies: tuple[tuple[int, ...], ...]
    budget_exhausted: bool = False
    checks: int = field(default=0, compare=False)

    def __len__(self) -> int:
        return len(self.copies)

    def vertex_sets(self) -> list[VertexSet]:
        return [mask_of(c) for c in self.copies]


def _pack_p3(g: Graph, target: int, budget: int) -> PatternPacking:
    adj = g.adj
    free = g.full
    copies: list[tuple[int, ...]] = []
    checks = 0
    for a in range(g.n):
        if len(copies) >= target or checks >= budget:
            break
        if not free >> a & 1:
            continue
        hit = None
        for b in bits(adj[a] & free):
            for c in bits(adj[b] & free & ~adj[a] & ~(1 << a)):
                checks += 1
                ds = adj[c] & free & ~adj[a] & ~adj[b] & ~(1 << a) & ~(1 << b)
                if ds:
                    hit = (a, b, c, lowest(ds))
                    break
                if checks >= budget:
                    break
            if hit or checks >= budget:
                break
        if hit:
            copies.append(hit)
            free &= ~mask_of(hit)
    exhausted = len(copies) < target and checks >= budget
    return PatternPacking(Pattern.P3, tuple(copies), exhausted, checks)


def _find_k55(g: Graph, free: int, rng: random.Random) -> tuple[list[int], list[int]] | None:
    """One randomised attempt at an induced K_{5,5} inside ``free``."""
    adj = g.adj
    pool = [v for v in bits(free) if (adj[v] & free).bit_count() >= 5]
    if len(pool) < 10:
        return None
    x0 = rng.choice(pool)
    ys: list[int] = []
    common = free
    cand = list(bits(adj[x0] & free))
    rng.shuffle(cand)
    for y in cand:
        if len(ys) == 5:
            break
        if any(adj[y] >> z & 1 for z in ys):
            continue
        nxt = common & adj[y]
        # repair: skip y if the other side could no longer reach five vertices
        if nxt.bit_count() < 5:
            continue
        ys.append(y)
        common = nxt
    if len(ys) < 5:
        return None
    xs = [x0]
    cand = list(bits(common & ~(1 << x0)))
    rng.shuffle(cand)
    for x in cand:
        if len(xs) == 5:
            break
        if any(adj[x] >> z & 1 for z in xs):
            continue
        xs.append(x)
    if len(xs) < 5:
        return None
    xs.sort()
    ys.sort()
    return xs, ys


def _union_adj(adj: Sequence[int], vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= adj[v]
    return m


def _pack_f(g: Graph, target: int, budget: int, seed: int) -> PatternPacking:
    rng = random.Random(seed)
    adj = g.adj
    free = g.full
    halves: list[tuple[list[int], list[int]]] = []
    copies: list[tuple[int, ...]] = []
    attempts = 0
    while len(copies) < target and attempts < budget:
        attempts += 1
        found = _find_k55(g, free, rng)
        if found is None:
            continue
        xs, ys = found
        members = mask_of(xs) | mask_of(ys)
        free &= ~members
        # pair with an earlier half that has no edges to this one
        for i, (xs2, ys2) in enumerate(halves):
            other = mask_of(xs2) | mask_of(ys2)
            if not (_union_adj(adj, bits(members)) & other):
                first, second = sorted([(xs, ys), (xs2, ys2)])
                verts = tuple(first[0] + first[1] + second[0] + second[1])
                if induces_pattern(g, verts, Pattern.F):
                    copies.append(verts)
                    halves.pop(i)
                    break
        else:
            halves.append((xs, ys))
    exhausted = len(copies) < target
    return PatternPacking(Pattern.F, tuple(copies), exhausted, attempts)


def find_disjoint_induced(
    g: Graph,
    pattern: Pattern | str,
    target: int,
    budget: int = 1_000_000,
    seed: int = 0,
) -> PatternPacking:
    """Greedily pack up to ``target`` vertex-disjoint induced copies of a pattern.

    P3 copies are returned in path order a, b, c, d.  F copies are returned as
    (side X1, side Y1, side X2, side Y2), each side sorted.  Running out of
    budget yields a partial packing with ``budget_exhausted`` set.
    """
    pattern = Pattern(pattern)
    if target <= 0:
        return PatternPacking(pattern, ())
    if pattern is Pattern.P3:
        return _pack_p3(g, target, budget)
    return _pack_f(g, target, budget, seed)
