"""Decomposition witnesses, engine outcomes, and the replay verifier.

The verifier works directly on adjacency rows and deliberately shares no
helpers with the code that produces witnesses.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from enum import Enum

from .graph import Graph

log = logging.getLogger(__name__)


class ResourceCapError(RuntimeError):
    """An input exceeds the size cap of an exact procedure."""


class ConditionUnmet(Exception):
    """A hypothesis of a constructive lemma does not hold for the input."""

    def __init__(self, condition: str):
        super().__init__(condition)
        self.condition = condition


@dataclass(frozen=True)
class DecompositionWitness:
    steps: tuple[int, ...]
    initial: int

    def step_lists(self) -> list[list[int]]:
        return [[v for v in range(s.bit_length()) if s >> v & 1] for s in self.steps]

    def to_json(self) -> str:
        return json.dumps(self.step_lists())

    @classmethod
    def from_json(cls, text: str, initial: int | None = None) -> "DecompositionWitness":
        steps = []
        for group in json.loads(text):
            m = 0
            for v in group:
                m |= 1 << int(v)
            steps.append(m)
        if initial is None:
            initial = 0
            for s in steps:
                initial |= s
        return cls(tuple(steps), initial)


class Status(str, Enum):
    DECOMPOSED = "decomposed"
    STUCK = "stuck"
    CONDITION_UNMET = "condition-unmet"
    NON_DECOMPOSABLE = "non-decomposable"


@dataclass(frozen=True)
class EngineOutcome:
    status: Status
    witness: DecompositionWitness | None = None
    remaining: int = 0
    condition: str | None = None
    trace: tuple[str, ...] = ()

    @property
    def decomposed(self) -> bool:
        return self.status is Status.DECOMPOSED

    def to_dict(self) -> dict:
        out: dict = {"status": self.status.value}
        if self.witness is not None:
            out["witness"] = self.witness.step_lists()
        if self.status is Status.STUCK:
            out["remaining"] = [v for v in range(self.remaining.bit_length()) if self.remaining >> v & 1]
        if self.condition is not None:
            out["condition"] = self.condition
        return out


def is_simple_admissible(g: Graph, w: int, s: int) -> bool:
    """S independent in G[W] with an even number of edges from S to W minus S."""
    if not s or s & ~w:
        raise ValueError("S must be a nonempty subset of W")
    cross = 0
    for v in range(g.n):
        if s >> v & 1:
            if g.adj[v] & s:
                return False
            cross += bin(g.adj[v] & w).count("1")
    return cross % 2 == 0


def replay_problem(g: Graph, remaining: int, steps) -> str | None:
    """Replay ``steps`` from ``remaining``; return a reason string on the first bad step."""
    adj = g.adj
    for i, s in enumerate(steps):
        if s == 0:
            return f"step {i} is empty"
        if s & ~remaining:
            return f"step {i} removes vertices that are already gone"
        cross = 0
        x = s
        while x:
            low = x & -x
            v = low.bit_length() - 1
            x ^= low
            if adj[v] & s:
                return f"step {i} is not independent"
            cross += bin(adj[v] & remaining).count("1")
        if cross % 2:
            return f"step {i} sends an odd number of edges to the rest"
        remaining &= ~s
    return None


def verify_steps(g: Graph, remaining: int, steps) -> bool:
    return replay_problem(g, remaining, steps) is None


def witness_problem(g: Graph, w: DecompositionWitness) -> str | None:
    full = (1 << g.n) - 1
    if w.initial != full:
        return "initial set is not the whole vertex set"
    degree_sum = sum(bin(row).count("1") for row in g.adj)
    if degree_sum // 2 % 2:
        return "graph has an odd number of edges"
    reason = replay_problem(g, full, w.steps)
    if reason:
        return reason
    left = full
    for s in w.steps:
        left &= ~s
    if left:
        return "vertices remain after the last step"
    return None


def verify_witness(g: Graph, w: DecompositionWitness) -> bool:
    reason = witness_problem(g, w)
    if reason:
        log.debug("witness rejected: %s", reason)
        return False
    return True
