from .campaign import check_item, item_seed, report_json, report_text, run_campaign, shrink
from .diagrams import check_diagram, guess_calculus
from .generate import gen_typed_term
from .models import (
    CampaignReport,
    CounterExample,
    CounterExampleRecord,
    DiagramKind,
    GenConfig,
    GeneratedTerm,
    KindSummary,
    Pass,
    UsagePolicy,
)

__all__ = [
    "CampaignReport",
    "CounterExample",
    "CounterExampleRecord",
    "DiagramKind",
    "GenConfig",
    "GeneratedTerm",
    "KindSummary",
    "Pass",
    "UsagePolicy",
    "check_diagram",
    "check_item",
    "gen_typed_term",
    "guess_calculus",
    "item_seed",
    "report_json",
    "report_text",
    "run_campaign",
    "shrink",
]
