"""Even-degenerate orderings: verifier, smallest-label greedy, exact search."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .graph import Graph
from .oracle import graph_rows
from .witness import DecompositionWitness, ResourceCapError

log = logging.getLogger(__name__)

DEGEN_CAP = 24


@dataclass(frozen=True)
class Ordering:
    perm: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("ordering is not a permutation of 0..n-1")

    def to_json(self) -> str:
        return json.dumps(list(self.perm))


@dataclass(frozen=True)
class Stuck:
    """Greedy failure point: the remaining set, every vertex of odd degree."""

    remaining: int

    def vertices(self) -> list[int]:
        return [v for v in range(self.remaining.bit_length()) if self.remaining >> v & 1]


def verify_ordering(g: Graph, o: Ordering) -> bool:
    n = g.n
    if len(o.perm) != n:
        return False
    later = g.full
    parity = g.num_edges() & 1
    suffix_edges = g.num_edges()
    for i, v in enumerate(o.perm):
        later &= ~(1 << v)
        k = (g.adj[v] & later).bit_count()
        if i <= n - 3 and k % 2:
            return False
        suffix_edges -= k
        # removing an even-degree vertex keeps the suffix edge parity fixed
        if i <= n - 3 and suffix_edges % 2 != parity:
            raise AssertionError("suffix edge parity drifted on an accepted prefix")
    return True


def greedy_ordering(g: Graph) -> Ordering | Stuck:
    """Remove the smallest-labeled even-degree vertex until at most two remain."""
    rem = g.full
    perm = []
    while rem.bit_count() > 2:
        for v in range(g.n):
            if rem >> v & 1 and (g.adj[v] & rem).bit_count() % 2 == 0:
                perm.append(v)
                rem &= ~(1 << v)
                break
        else:
            return Stuck(rem)
    perm.extend(v for v in range(g.n) if rem >> v & 1)
    return Ordering(tuple(perm))


def exact_even_degenerate(g: Graph, cap: int = DEGEN_CAP) -> tuple[bool, Ordering | None]:
    n = g.n
    if n > cap:
        raise ResourceCapError(f"exact degeneracy is capped at n={cap}, got n={n}")
    if n <= 2:
        return True, Ordering(tuple(range(n)))
    size = 1 << n
    bad = np.zeros(size, dtype=np.uint8)
    touched = np.zeros(min(size, 1 << 20), dtype=np.int64)
    order = np.zeros(n, dtype=np.int64)
    if not K.degenerate_search(graph_rows(g), n, bad, touched, order):
        return False, None
    return True, Ordering(tuple(int(v) for v in order))


def ordering_witness(g: Graph, o: Ordering) -> DecompositionWitness:
    """Singleton steps along the ordering, with the last two vertices as one step when non-adjacent.

    Only meaningful when e(G) is even and ``o`` is valid.
    """
    perm = o.perm
    steps = [1 << v for v in perm[:-2]]
    tail = perm[-2:]
    if len(tail) == 2 and not g.has_edge(*tail):
        steps.append(1 << tail[0] | 1 << tail[1])
    else:
        steps.extend(1 << v for v in tail)
    return DecompositionWitness(tuple(steps), g.full)
