from .evaluate import (
    BudgetExhausted,
    EnumerateAll,
    Leftmost,
    NormalForm,
    ReductionGraph,
    Seeded,
    StepBudget,
    TraceStep,
    evaluate,
    node_key,
    parse_strategy,
)
from .redexes import RedexDescriptor, Rule, find_redexes, get_at, render_path, replace_at
from .step import step_at

__all__ = [
    "BudgetExhausted",
    "EnumerateAll",
    "Leftmost",
    "NormalForm",
    "RedexDescriptor",
    "ReductionGraph",
    "Rule",
    "Seeded",
    "StepBudget",
    "TraceStep",
    "evaluate",
    "find_redexes",
    "get_at",
    "node_key",
    "parse_strategy",
    "render_path",
    "replace_at",
    "step_at",
]
