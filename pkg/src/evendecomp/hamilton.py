from __future__ import annotations

from .graph import Graph, bits, lowest
from .witness import ConditionUnmet


def _extend(adj, path: list[int], on: int) -> int:
    while True:
        grow = adj[path[-1]] & ~on
        if grow:
            v = lowest(grow)
            path.append(v)
            on |= 1 << v
            continue
        grow = adj[path[0]] & ~on
        if grow:
            v = lowest(grow)
            path.insert(0, v)
            on |= 1 << v
            continue
        return on


def hamilton_cycle_dirac(h: Graph) -> list[int]:
    """Hamilton cycle of a graph meeting Dirac's bound, by path extension and rotation.

    The returned list visits every vertex once; consecutive entries (and the
    last/first pair) are adjacent.
    """
    n = h.n
    if n < 3 or any(2 * h.degree(v) < n for v in range(n)):
        raise ConditionUnmet("Dirac degree bound")
    adj = h.adj
    path = [0]
    on = 1
    while True:
        on = _extend(adj, path, on)
        first, last = path[0], path[-1]
        if len(path) == n and adj[first] >> last & 1:
            return path
        # rotation: a crossing pair v0~v_{i+1}, vk~v_i closes the path into a cycle
        for i in range(len(path) - 1):
            if adj[first] >> path[i + 1] & 1 and adj[last] >> path[i] & 1:
                cyc = path[: i + 1] + path[i + 1 :][::-1]
                break
        else:
            raise AssertionError("no crossing pair on a maximal path under Dirac's bound")
        if len(cyc) == n:
            return cyc
        # the graph is connected, so some outside vertex hangs off the cycle
        for j, u in enumerate(cyc):
            out = adj[u] & ~on
            if out:
                w = lowest(out)
                path = cyc[j + 1 :] + cyc[: j + 1] + [w]
                on |= 1 << w
                break
        else:
            raise AssertionError("graph under Dirac's bound is disconnected")


def is_hamilton_cycle(h: Graph, cyc: list[int]) -> bool:
    if sorted(cyc) != list(range(h.n)) or h.n < 3:
        return False
    return all(h.has_edge(cyc[i], cyc[(i + 1) % h.n]) for i in range(h.n))


def has_hamilton_cycle_bruteforce(h: Graph) -> bool:
    """Subset DP over paths from vertex 0; for small graphs only."""
    n = h.n
    if n < 3:
        return False
    adj = h.adj
    reach = [0] * (1 << n)  # reach[S]: endpoints of paths from 0 covering S
    reach[1] = 1
    for s in range(1, 1 << n):
        if not s & 1 or not reach[s]:
            continue
        for v in bits(reach[s]):
            for u in bits(adj[v] & ~s):
                reach[s | 1 << u] |= 1 << u
    return bool(reach[(1 << n) - 1] & adj[0])
