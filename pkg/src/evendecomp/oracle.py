"""Exact deciders and the exhaustive labeled-graph census."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from . import _kernels as K
from ._parallel import map_ordered
from .graph import Graph, emit_graph6
from .witness import DecompositionWitness, ResourceCapError

DECOMP_CAP = 18
CENSUS_DECOMP_CAP = 7
CENSUS_DEGEN_CAP = 8
CENSUS_CHUNKS = 64


def graph_rows(g: Graph) -> np.ndarray:
    rows = np.zeros(max(g.n, 1), dtype=np.uint64)
    for v, row in enumerate(g.adj):
        rows[v] = row
    return rows


def exact_even_decomposable(g: Graph, cap: int = DECOMP_CAP) -> tuple[bool, DecompositionWitness | None]:
    """Decide even-decomposability by a memoized DP over vertex subsets."""
    n = g.n
    if n > cap:
        raise ResourceCapError(f"exact decomposability is capped at n={cap}, got n={n}")
    if g.num_edges() % 2:
        return False, None
    size = 1 << n
    indep = np.zeros(size, dtype=np.uint8)
    par = np.zeros(size, dtype=np.uint8)
    memo = np.zeros(size, dtype=np.uint8)
    choice = np.zeros(size, dtype=np.int64)
    rows = graph_rows(g)
    K.decomp_tables(rows, n, indep, par)
    if not K.decomp_search(n, indep, par, memo, choice):
        return False, None
    steps = np.zeros(max(n, 1), dtype=np.int64)
    k = K.extract_steps(n, choice, steps)
    return True, DecompositionWitness(tuple(int(s) for s in steps[:k]), g.full)


def graph_from_index(n: int, index: int) -> Graph:
    """Labeled graph whose pair (i, j), i < j, is bit j(j-1)/2 + i of ``index``."""
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if index >> k & 1:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


@dataclass
class CensusReport:
    n: int
    total: int
    even_edge: int
    even_decomposable: int | None = None
    even_degenerate: int | None = None
    non_even_degenerate: int | None = None
    k4free_even: int | None = None
    k4free_even_nondecomposable: int | None = None
    degenerate_even_nondecomposable: int | None = None
    nondegenerate_not_all_odd: int | None = None
    greedy_incomplete: int | None = None
    exemplars: dict[str, list[str]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def csv_rows(self) -> list[dict]:
        d = self.to_dict()
        d.pop("exemplars")
        return [d]

    def to_csv(self) -> str:
        rows = self.csv_rows()
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()


def _census_chunk(n: int, lo: int, hi: int, decomp: bool, degen: bool, k: int):
    counts = np.zeros(K.N_CENSUS, dtype=np.int64)
    ex1 = np.zeros(k, dtype=np.int64)
    ex2 = np.zeros(k, dtype=np.int64)
    n1, n2 = K.census_range(n, lo, hi, decomp, degen, counts, ex1, ex2)
    return counts, [int(x) for x in ex1[:n1]], [int(x) for x in ex2[:n2]]


def census(
    n: int,
    decomposability: bool = True,
    degeneracy: bool = True,
    exemplars: int = 0,
    workers: int | None = None,
) -> CensusReport:
    """Exact counts over all 2^C(n,2) labeled graphs on n vertices."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if decomposability and n > CENSUS_DECOMP_CAP:
        raise ResourceCapError(f"decomposability census is capped at n={CENSUS_DECOMP_CAP}")
    if degeneracy and n > CENSUS_DEGEN_CAP:
        raise ResourceCapError(f"degeneracy census is capped at n={CENSUS_DEGEN_CAP}")
    total = 1 << (n * (n - 1) // 2)
    step = -(-total // CENSUS_CHUNKS)
    jobs = [(n, lo, min(lo + step, total), decomposability, degeneracy, exemplars) for lo in range(0, total, step)]
    parts = map_ordered(_census_chunk, jobs, workers)
    counts = np.zeros(K.N_CENSUS, dtype=np.int64)
    ex1: list[int] = []
    ex2: list[int] = []
    for c, e1, e2 in parts:
        counts += c
        ex1.extend(e1)
        ex2.extend(e2)
    c = [int(x) for x in counts]
    report = CensusReport(n=n, total=c[K.C_TOTAL], even_edge=c[K.C_EVEN])
    if decomposability:
        report.even_decomposable = c[K.C_EVEN_DECOMP]
        report.k4free_even = c[K.C_K4FREE_EVEN]
        report.k4free_even_nondecomposable = c[K.C_K4FREE_EVEN_NONDECOMP]
    if degeneracy:
        report.even_degenerate = c[K.C_DEGEN]
        report.non_even_degenerate = c[K.C_NONDEGEN]
        report.nondegenerate_not_all_odd = c[K.C_NONDEGEN_NOT_ALL_ODD]
        report.greedy_incomplete = c[K.C_GREEDY_INCOMPLETE]
    if decomposability and degeneracy:
        report.degenerate_even_nondecomposable = c[K.C_DEGEN_EVEN_NONDECOMP]
    if exemplars:
        if decomposability:
            report.exemplars["even_nondecomposable"] = [emit_graph6(graph_from_index(n, i)) for i in ex1[:exemplars]]
        if degeneracy:
            report.exemplars["non_even_degenerate"] = [emit_graph6(graph_from_index(n, i)) for i in ex2[:exemplars]]
    return report
