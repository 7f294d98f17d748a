"""Reproducible random graph samplers.

Pair (i, j) of sample ``stream`` is decided by a counter-based hash of
(seed, tag, stream, attempt, pair index), so any pair bit can be recomputed
alone and parallel workers never share generator state.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import _kernels as K
from .graph import MAX_VERTICES, Graph

MAX_ATTEMPTS = 1 << 16


@dataclass(frozen=True)
class SamplerSpec:
    n: int
    p: float
    seed: int
    stream: int = 0

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"n must be in [0, {MAX_VERTICES}]")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if not 0 <= self.seed < 1 << 64 or not 0 <= self.stream < 1 << 64:
            raise ValueError("seed and stream must be unsigned 64-bit integers")

    def to_dict(self) -> dict:
        return asdict(self)


def _graph(n: int, rows: np.ndarray) -> Graph:
    return Graph(n, tuple(int(rows[v]) for v in range(n)))


def _rows(n: int) -> np.ndarray:
    return np.zeros(max(n, 1), dtype=np.uint64)


def sample_gnp(spec: SamplerSpec) -> Graph:
    rows = _rows(spec.n)
    K.gnp_rows(spec.n, spec.p, np.uint64(spec.seed), K.TAG_GNP, np.uint64(spec.stream), 0, rows)
    return _graph(spec.n, rows)


def sample_gnp_even(spec: SamplerSpec) -> Graph:
    """G(n, p) conditioned on an even edge count, by rejection."""
    pairs = spec.n * (spec.n - 1) // 2
    if spec.p == 1.0 and pairs % 2:
        raise ValueError(f"G({spec.n}, 1) always has {pairs} edges, an odd number")
    rows = _rows(spec.n)
    used = K.gnp_even_rows(spec.n, spec.p, np.uint64(spec.seed), K.TAG_GNP, np.uint64(spec.stream), rows, MAX_ATTEMPTS)
    if used < 0:
        raise RuntimeError("even-edge rejection sampling did not terminate")
    return _graph(spec.n, rows)


def sample_linked_pair(n_total: int, s: int, parity: bool, seed: int, stream: int = 0) -> tuple[Graph, Graph]:
    """G ~ G(n, 1/2) and G' sharing G[{0..s-1}], other pairs redrawn.

    With ``parity`` the redraw is conditioned on e(G') = e(G) mod 2.
    """
    if not 0 <= s <= n_total <= MAX_VERTICES:
        raise ValueError("need 0 <= s <= n_total <= 64")
    g_rows = _rows(n_total)
    h_rows = _rows(n_total)
    used = K.linked_pair_rows(n_total, s, parity, np.uint64(seed), np.uint64(stream), g_rows, h_rows, MAX_ATTEMPTS)
    if used < 0:
        raise RuntimeError("parity-linked rejection sampling did not terminate")
    return _graph(n_total, g_rows), _graph(n_total, h_rows)
