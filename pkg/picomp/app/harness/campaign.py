from __future__ import annotations

import json
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from functools import partial
from typing import Iterable, NamedTuple, Sequence

from ..config import WORKERS
from ..errors import DiagramNotApplicable, PicompError, TypingError
from ..event_logger import (
    CAMPAIGN_FINISHED,
    CAMPAIGN_STARTED,
    COUNTEREXAMPLE_FOUND,
    ITEM_CHECKED,
    EventLogger,
)
from ..kernel.terms import AdmDecl
from ..schemas import validate_campaign_report
from ..surface.printer import show
from ..typecheck.checker import infer_type
from .diagrams import check_diagram
from .generate import gen_typed_term
from .models import (
    CampaignReport,
    CounterExample,
    CounterExampleRecord,
    DiagramKind,
    GenConfig,
    KindSummary,
    Pass,
)

logger = logging.getLogger(__name__)


class KindOutcome(NamedTuple):
    kind: DiagramKind
    verdict: Pass | CounterExample | None  # None when not applicable


class ItemOutcome(NamedTuple):
    item: int
    seed: int
    term: str
    outcomes: tuple[KindOutcome, ...]


def item_seed(seed: int, item: int) -> int:
    """Per-item generator seed; a pure function of the campaign seed and the item index."""
    return random.Random(f"{seed}:{item}").getrandbits(63)


def check_item(kinds: Sequence[DiagramKind], cfg: GenConfig, item: int) -> ItemOutcome:
    seed = item_seed(cfg.seed, item)
    term, ctx, ty = gen_typed_term(cfg.model_copy(update={"seed": seed}))
    outcomes = []
    for kind in kinds:
        verdict = _run(kind, term, ctx, ty, cfg)
        if isinstance(verdict, CounterExample):
            term_text, verdict = shrink(kind, term, ctx, ty, cfg, verdict)
            outcomes.append(KindOutcome(kind, verdict._replace(trace=(term_text, *verdict.trace))))
            continue
        outcomes.append(KindOutcome(kind, verdict))
    return ItemOutcome(item, seed, show(term), tuple(outcomes))


def _run(kind: DiagramKind, term, ctx, ty, cfg: GenConfig) -> Pass | CounterExample | None:
    try:
        return check_diagram(kind, term, ctx, ty, cfg.calculus)
    except DiagramNotApplicable as exc:
        logger.debug("%s not applicable: %s", kind.value, exc)
        return None
    except PicompError as exc:
        return CounterExample(f"{exc.kind}: {exc}")


def shrink(kind: DiagramKind, term, ctx, ty, cfg: GenConfig, verdict: CounterExample):
    """Drop top-level bindings while the term stays typed and the diagram still fails."""
    if not isinstance(term, AdmDecl):
        return show(term), verdict
    current = term
    progress = True
    while progress:
        progress = False
        for index in range(len(current.bindings)):
            bindings = current.bindings[:index] + current.bindings[index + 1 :]
            candidate = replace(current, bindings=bindings)
            try:
                if infer_type(ctx, candidate, cfg.calculus) != ty:
                    continue
            except TypingError:
                continue
            found = _run(kind, candidate, ctx, ty, cfg)
            if isinstance(found, CounterExample):
                current, verdict, progress = candidate, found, True
                break
    return show(current), verdict


def _outcomes(
    kinds: Sequence[DiagramKind], corpus_size: int, cfg: GenConfig, workers: int
) -> Iterable[ItemOutcome]:
    task = partial(check_item, tuple(kinds), cfg)
    if workers <= 1 or corpus_size <= 1:
        return map(task, range(corpus_size))
    executor = ProcessPoolExecutor(max_workers=workers)

    def ordered():
        with executor:
            yield from executor.map(task, range(corpus_size), chunksize=8)

    return ordered()


def run_campaign(
    kinds: Sequence[DiagramKind | str],
    corpus_size: int,
    cfg: GenConfig,
    *,
    workers: int = WORKERS,
    events: EventLogger | None = None,
) -> CampaignReport:
    kinds = [DiagramKind(kind) for kind in kinds]
    if corpus_size < 0:
        raise ValueError("corpus size must be non-negative")
    summaries = {kind: KindSummary(kind=kind) for kind in kinds}
    counterexamples: list[CounterExampleRecord] = []
    if events:
        events.log(
            CAMPAIGN_STARTED,
            {
                "seed": cfg.seed,
                "calculus": cfg.calculus.value,
                "kinds": [kind.value for kind in kinds],
                "corpus_size": corpus_size,
            },
        )
    for outcome in _outcomes(kinds, corpus_size, cfg, workers):
        for kind, verdict in outcome.outcomes:
            summary = summaries[kind]
            if verdict is None:
                summary.not_applicable += 1
                continue
            summary.total += 1
            if isinstance(verdict, Pass):
                summary.passed += 1
                summary.max_depth_used = max(summary.max_depth_used, verdict.depth)
                continue
            term, *trace = verdict.trace
            record = CounterExampleRecord(
                kind=kind,
                item=outcome.item,
                seed=outcome.seed,
                term=term,
                reason=verdict.reason,
                trace=trace,
            )
            counterexamples.append(record)
            logger.warning(
                "counterexample for %s at item %d: %s", kind.value, outcome.item, record.reason
            )
            if events:
                events.log(COUNTEREXAMPLE_FOUND, record.model_dump(mode="json"))
        if events:
            events.log(ITEM_CHECKED, {"item": outcome.item, "seed": outcome.seed})
    report = CampaignReport(
        seed=cfg.seed,
        calculus=cfg.calculus,
        usage_policy=cfg.usage_policy,
        corpus_size=corpus_size,
        max_size=cfg.max_size,
        status="FAILED" if counterexamples else "PASSED",
        kinds=list(summaries.values()),
        counterexamples=counterexamples,
    )
    if events:
        events.log(CAMPAIGN_FINISHED, {"status": report.status, "summary": report.summary_lines()})
    return report


def report_json(report: CampaignReport) -> str:
    payload = report.model_dump(mode="json")
    validate_campaign_report(payload)
    return json.dumps(payload, indent=2, ensure_ascii=False)


def report_text(report: CampaignReport) -> str:
    lines = report.summary_lines()
    for record in report.counterexamples:
        lines.append(f"counterexample {record.kind.value} item={record.item} seed={record.seed}")
        lines.append(f"  term: {record.term}")
        lines.append(f"  reason: {record.reason}")
        lines.extend(f"  | {step}" for step in record.trace)
    lines.append(report.status)
    return "\n".join(lines)
