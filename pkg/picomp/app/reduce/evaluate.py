from __future__ import annotations

import logging
import random
from collections import deque
from dataclasses import dataclass, field

from pydantic import BaseModel, Field

from ..config import GRAPH_BUDGET, STEP_BUDGET
from ..kernel.alpha import alpha_key
from ..kernel.congruence import congruence_key
from ..kernel.names import NameSupply
from ..typecheck.context import Calculus
from .redexes import RedexDescriptor, Rule, find_redexes
from .step import step_at

logger = logging.getLogger(__name__)


class StepBudget(BaseModel):
    max_steps: int = Field(default=STEP_BUDGET, ge=1)
    max_nodes: int = Field(default=GRAPH_BUDGET, ge=1)


@dataclass(frozen=True)
class Leftmost:
    pass


@dataclass(frozen=True)
class EnumerateAll:
    pass


@dataclass(frozen=True)
class Seeded:
    seed: int


Strategy = Leftmost | EnumerateAll | Seeded


def parse_strategy(text: str, seed: int = 0) -> Strategy:
    """``leftmost``, ``all`` or ``seeded`` (optionally ``seeded:<n>``)."""
    name, _, suffix = text.partition(":")
    if name == "leftmost":
        return Leftmost()
    if name in ("all", "enumerate"):
        return EnumerateAll()
    if name == "seeded":
        return Seeded(int(suffix) if suffix else seed)
    raise ValueError(f"unknown strategy {text!r}")


@dataclass(frozen=True)
class TraceStep:
    index: int
    rule: Rule
    path: tuple
    term: object


@dataclass(frozen=True)
class NormalForm:
    term: object
    steps: int
    trace: tuple[TraceStep, ...] = ()


@dataclass(frozen=True)
class BudgetExhausted:
    term: object
    steps: int
    trace: tuple[TraceStep, ...] = ()


@dataclass
class ReductionGraph:
    nodes: list = field(default_factory=list)
    edges: list[tuple[int, int, RedexDescriptor]] = field(default_factory=list)
    complete: bool = True

    def successors(self, node: int) -> list[int]:
        return [target for source, target, _ in self.edges if source == node]

    def normal_forms(self) -> list[int]:
        sources = {source for source, _, _ in self.edges}
        return [index for index in range(len(self.nodes)) if index not in sources]


Outcome = NormalForm | BudgetExhausted | ReductionGraph


def node_key(term, which: Calculus):
    if which.is_lambda:
        return alpha_key(term)
    return congruence_key(term)


def evaluate(
    term,
    which: Calculus | str,
    strategy: Strategy | None = None,
    budget: StepBudget | None = None,
    *,
    record: bool = True,
) -> Outcome:
    which = Calculus(which)
    strategy = strategy or Leftmost()
    budget = budget or StepBudget()
    if isinstance(strategy, EnumerateAll):
        return _enumerate(term, which, budget)
    chooser = random.Random(strategy.seed) if isinstance(strategy, Seeded) else None
    supply = NameSupply.avoiding(term)
    trace: list[TraceStep] = []
    steps = 0
    while True:
        redexes = find_redexes(term, which)
        if not redexes:
            return NormalForm(term, steps, tuple(trace))
        if steps >= budget.max_steps:
            logger.info("step budget of %d exhausted", budget.max_steps)
            return BudgetExhausted(term, steps, tuple(trace))
        redex = chooser.choice(redexes) if chooser else redexes[0]
        term = step_at(term, redex, supply)
        steps += 1
        if record:
            trace.append(TraceStep(steps, redex.rule, redex.path, term))


def _enumerate(term, which: Calculus, budget: StepBudget) -> ReductionGraph:
    graph = ReductionGraph(nodes=[term])
    index = {node_key(term, which): 0}
    queue = deque([0])
    while queue:
        source = queue.popleft()
        current = graph.nodes[source]
        for redex in find_redexes(current, which):
            successor = step_at(current, redex)
            key = node_key(successor, which)
            target = index.get(key)
            if target is None:
                if len(graph.nodes) >= budget.max_nodes:
                    graph.complete = False
                    continue
                target = len(graph.nodes)
                index[key] = target
                graph.nodes.append(successor)
                queue.append(target)
            graph.edges.append((source, target, redex))
    return graph
