"""Even-decomposable and even-degenerate graphs."""

from __future__ import annotations

from .decompose import Thresholds, decompose_auto, decompose_dense, decompose_sparse, decompose_uniform
from .degeneracy import Ordering, Stuck, exact_even_degenerate, greedy_ordering, verify_ordering
from .graph import Graph, GraphParseError, Pattern, find_disjoint_induced, parse_edge_list, parse_graph6
from .oracle import CensusReport, census, exact_even_decomposable
from .randgraph import SamplerSpec, sample_gnp, sample_gnp_even, sample_linked_pair
from .witness import (
    ConditionUnmet,
    DecompositionWitness,
    EngineOutcome,
    ResourceCapError,
    Status,
    verify_witness,
)

__version__ = "0.1.0"
