"""Deliberately broken reductions and translations must be caught by the diagrams."""

import pytest

from picomp.app.harness import (
    CounterExample,
    DiagramKind,
    GenConfig,
    Pass,
    UsagePolicy,
    check_diagram,
    run_campaign,
)
from picomp.app.kernel.terms import Usage
from picomp.app.kernel.types import BEHAVIOR, CH_UNIT
from picomp.app.surface import parse_context, parse_term

CHAINED = "let[inf] f = \\y:Ch[Unit]. y in let[inf] g = \\z:Ch[Unit]. @(f, z) in @(g, a)"
SINGLE_USE = "let[1] f = \\y:Ch[Unit]. @(o, y) in @(f, a)"
CORPUS = 500

MIXED = GenConfig(seed=17, calculus="adm-par", usage_policy=UsagePolicy.MIXED)
FUNCTIONAL = GenConfig(seed=17, calculus="adm")


def never_decremented(usage):
    return Usage.INFINITE


def test_growing_usage_is_reported(monkeypatch):
    decl = parse_term(SINGLE_USE, "adm-par")
    ctx = parse_context("o:Ch[Ch[Unit] -> #b], a:Ch[Unit]")
    monkeypatch.setattr("picomp.app.reduce.step.decrement_usage", never_decremented)
    verdict = check_diagram(DiagramKind.TERMINATION, decl, ctx, BEHAVIOR, "adm-par")
    assert isinstance(verdict, CounterExample)
    assert "grew from 1 to inf" in verdict.reason


def test_outermost_first_readback_is_reported(monkeypatch):
    decl = parse_term(CHAINED, "adm")
    ctx = parse_context("a:Ch[Unit]")
    monkeypatch.setattr("picomp.app.translate.adm.binding_order", list)
    verdict = check_diagram(DiagramKind.ADM_SIMULATION, decl, ctx, CH_UNIT, "adm")
    assert isinstance(verdict, CounterExample)
    assert "no readback counterpart" in verdict.reason


def test_unmutated_checks_pass():
    decl = parse_term(CHAINED, "adm")
    verdict = check_diagram(DiagramKind.CPS_SIMULATION, decl, parse_context("a:Ch[Unit]"), CH_UNIT)
    assert isinstance(verdict, Pass)


def _failures(kind: DiagramKind, cfg: GenConfig) -> int:
    report = run_campaign([kind], CORPUS, cfg, workers=1)
    (summary,) = report.kinds
    assert summary.total > 0
    return len(report.counterexamples)


@pytest.mark.slow
def test_campaign_catches_a_dropped_administrative_step(monkeypatch):
    monkeypatch.setattr("picomp.app.harness.diagrams.CPS_SEARCH_DEPTH", 1)
    assert _failures(DiagramKind.CPS_SIMULATION, MIXED) >= 1


@pytest.mark.slow
def test_campaign_catches_outermost_first_readback(monkeypatch):
    monkeypatch.setattr("picomp.app.translate.adm.binding_order", list)
    assert _failures(DiagramKind.ADM_SIMULATION, FUNCTIONAL) >= 1


@pytest.mark.slow
def test_campaign_catches_a_missing_usage_decrement(monkeypatch):
    monkeypatch.setattr("picomp.app.reduce.step.decrement_usage", never_decremented)
    assert _failures(DiagramKind.TERMINATION, MIXED) >= 1


@pytest.mark.slow
def test_unmutated_campaign_finds_nothing():
    report = run_campaign([DiagramKind.CPS_SIMULATION], CORPUS, MIXED, workers=1)
    assert report.status == "PASSED"
