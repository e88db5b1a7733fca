"""Executable commuting diagrams between the calculi.

Each check takes a generated term with its context and type and returns a
:class:`Pass` carrying the deepest search it needed, or a
:class:`CounterExample`.  Inputs outside a diagram's hypotheses raise
:class:`DiagramNotApplicable`.
"""

from __future__ import annotations

import logging
from typing import Callable

from ..config import SEEDED_RUNS
from ..errors import (
    CannotSaturate,
    DiagramNotApplicable,
    PicompError,
    TypingError,
    UntypablePi,
)
from ..kernel.alpha import alpha_equal
from ..kernel.congruence import congruent
from ..kernel.names import NameSupply
from ..kernel.terms import AdmDecl, Usage, is_adm, is_lam, is_pi
from ..reduce.evaluate import BudgetExhausted, Leftmost, Seeded, evaluate, node_key
from ..reduce.redexes import find_redexes, get_at, render_path
from ..reduce.step import step_at
from ..surface.printer import show
from ..translate.adm import (
    is_saturated,
    readback,
    readback_context,
    readback_type,
    to_admin,
    to_admin_context,
    to_admin_type,
)
from ..translate.cps import answer_type, cps_context, cps_transform, target_calculus
from ..translate.embed import embed_context, embed_parallel
from ..translate.pi_bridge import erase_dead_values, from_pi, to_pi
from ..translate.saturate import saturate_usages
from ..typecheck.checker import OK, infer_type, is_monadic_typing
from ..typecheck.context import Calculus, TypingContext
from .models import CounterExample, DiagramKind, Pass, Verdict

logger = logging.getLogger(__name__)

# target steps allowed per source step in the CPS diagram
CPS_SEARCH_DEPTH = 2

_USAGE_RANK = {Usage.ZERO: 0, Usage.ONE: 1, Usage.INFINITE: 2}


def check_diagram(
    kind: DiagramKind | str,
    term,
    ctx: TypingContext,
    ty,
    which: Calculus | str | None = None,
) -> Verdict:
    kind = DiagramKind(kind)
    which = Calculus(which) if which is not None else guess_calculus(term)
    check = _CHECKS[kind]
    return check(term, ctx, ty, which)


def guess_calculus(term) -> Calculus:
    if is_lam(term):
        return Calculus.LAM_PAR
    if is_pi(term):
        return Calculus.PI
    return Calculus.ADM_PAR


# helpers


def _require_typed(term, ctx: TypingContext, which: Calculus, ty=None):
    try:
        found = infer_type(ctx, term, which)
    except TypingError as exc:
        raise DiagramNotApplicable(f"ill-typed input: {exc}", subject=exc.subject) from exc
    if ty is not None and found != ty and found != OK:
        raise DiagramNotApplicable(f"input has type {found}, not {ty}")
    return found


def _as_admin(term, ctx: TypingContext, which: Calculus):
    """The administrative counterpart of a λ or administrative input."""
    if which in (Calculus.LAM, Calculus.LAM_PAR):
        _require_typed(term, ctx, which)
        target = Calculus.ADM_PAR if which is Calculus.LAM_PAR else Calculus.ADM
        return to_admin(term), to_admin_context(ctx), target
    if which in (Calculus.ADM, Calculus.ADM_PAR) and is_adm(term):
        _require_typed(term, ctx, which)
        decl = term if isinstance(term, AdmDecl) else AdmDecl((), term)
        return decl, ctx, which
    raise DiagramNotApplicable(f"no administrative counterpart in {which.value}")


def _lam_calculus(which: Calculus) -> Calculus:
    return Calculus.LAM_PAR if which.is_parallel else Calculus.LAM


def _successors(term, which: Calculus) -> list:
    supply = NameSupply.avoiding(term)
    return [step_at(term, redex, supply) for redex in find_redexes(term, which)]


def _search(start, matches: Callable[[object], bool], which: Calculus, depth: int) -> int | None:
    """Fewest (at least one) steps from ``start`` to a term satisfying ``matches``."""
    frontier = [start]
    seen = {node_key(start, which)}
    for level in range(1, depth + 1):
        following = []
        for node in frontier:
            for successor in _successors(node, which):
                if matches(successor):
                    return level
                key = node_key(successor, which)
                if key not in seen:
                    seen.add(key)
                    following.append(successor)
        frontier = following
    return None


def _failure(reason: str, *terms) -> CounterExample:
    return CounterExample(reason, tuple(show(term) for term in terms))


# the diagrams


def retraction(term, ctx: TypingContext, ty, which: Calculus) -> Verdict:
    if not which.is_lambda or not is_lam(term):
        raise DiagramNotApplicable("retraction starts from a λ term")
    _require_typed(term, ctx, which, ty)
    back = readback(to_admin(term))
    if alpha_equal(back, term):
        return Pass(0)
    return _failure("readback of the administrative form differs", term, back)


def adm_simulation(term, ctx: TypingContext, ty, which: Calculus) -> Verdict:
    decl, _, adm = _as_admin(term, ctx, which)
    if not is_saturated(decl):
        raise DiagramNotApplicable("readback needs every usage to be inf")
    lam = _lam_calculus(adm)
    source = readback(decl)
    deepest = 0
    for redex in find_redexes(decl, adm):
        reduct = step_at(decl, redex)
        target = readback(reduct)
        arity = len(get_at(decl, redex.path).args)
        depth = _search(source, lambda m: alpha_equal(m, target), lam, arity + 1)
        if depth is None:
            return _failure(
                f"step at {render_path(redex.path)} has no readback counterpart within "
                f"{arity + 1} steps",
                decl,
                reduct,
                source,
                target,
            )
        deepest = max(deepest, depth)
    return Pass(deepest)


def monadic_lifting(term, ctx: TypingContext, ty, which: Calculus) -> Verdict:
    decl, adm_ctx, adm = _as_admin(term, ctx, which)
    if not is_saturated(decl) or not is_monadic_typing(adm_ctx, decl, adm):
        raise DiagramNotApplicable("lifting needs a monadic, saturated declaration")
    source = readback(decl)
    reducts = [step_at(decl, redex) for redex in find_redexes(decl, adm)]
    for redex in find_redexes(source, _lam_calculus(adm)):
        target = step_at(source, redex)
        matching = [reduct for reduct in reducts if alpha_equal(readback(reduct), target)]
        if len(matching) != 1:
            return _failure(
                f"λ step at {render_path(redex.path)} is matched by {len(matching)} "
                "administrative steps",
                source,
                target,
                decl,
            )
    return Pass(1 if reducts else 0)


def cps_simulation(term, ctx: TypingContext, ty, which: Calculus) -> Verdict:
    decl, adm_ctx, adm = _as_admin(term, ctx, which)
    k = NameSupply.avoiding(decl, adm_ctx).fresh("k")
    target_which = target_calculus(adm)
    image = cps_transform(decl, k, adm_ctx, adm)
    depth_bound = CPS_SEARCH_DEPTH
    deepest = 0
    for redex in find_redexes(decl, adm):
        reduct = step_at(decl, redex)
        expected = cps_transform(reduct, k, adm_ctx, adm)
        depth = _search(image, lambda d: congruent(d, expected), target_which, depth_bound)
        if depth is None:
            return _failure(
                f"step at {render_path(redex.path)} is not simulated within {depth_bound} "
                "continuation-passing steps",
                decl,
                reduct,
                image,
                expected,
            )
        deepest = max(deepest, depth)
    return Pass(deepest)


def _cps_source(term, ctx: TypingContext, which: Calculus):
    if which is Calculus.CPS_PAR:
        _require_typed(term, ctx, which)
        return term, ctx
    if which in (Calculus.LAM_PAR, Calculus.ADM_PAR):
        decl, adm_ctx, adm = _as_admin(term, ctx, which)
        ty = infer_type(adm_ctx, decl, adm)
        k = NameSupply.avoiding(decl, adm_ctx).fresh("k")
        return cps_transform(decl, k, adm_ctx, adm), cps_context(adm_ctx, k, ty, adm)
    raise DiagramNotApplicable(f"π only corresponds to concurrent terms, not {which.value}")


def pi_roundtrip(term, ctx: TypingContext, ty, which: Calculus) -> Verdict:
    if which is Calculus.PI:
        try:
            decl = from_pi(term, ctx)
        except UntypablePi as exc:
            raise DiagramNotApplicable(str(exc)) from exc
        back = to_pi(decl)
        if congruent(back, term):
            return Pass(0)
        return _failure("to_pi(from_pi(P)) is not congruent to P", term, decl, back)
    decl, cps_ctx = _cps_source(term, ctx, which)
    proc = to_pi(decl)
    try:
        back = from_pi(proc, cps_ctx)
    except UntypablePi as exc:
        return _failure(f"π image is untypable: {exc}", decl, proc)
    if not congruent(erase_dead_values(back), erase_dead_values(decl)):
        return _failure("from_pi(to_pi(D)) is not congruent to D", decl, proc, back)
    successors = _successors(proc, Calculus.PI)
    for redex in find_redexes(decl, Calculus.CPS_PAR):
        expected = to_pi(step_at(decl, redex))
        if not any(congruent(candidate, expected) for candidate in successors):
            return _failure(
                f"step at {render_path(redex.path)} has no π counterpart", decl, proc, expected
            )
    return Pass(1 if successors else 0)


def typing_preservation(term, ctx: TypingContext, ty, which: Calculus) -> Verdict:
    _require_typed(term, ctx, which, ty)
    try:
        if which.is_lambda:
            _lambda_images(term, ctx, ty, which)
        elif which is Calculus.PI:
            infer_type(ctx, from_pi(term, ctx), Calculus.CPS_PAR)
        else:
            _admin_images(term, ctx, ty, which)
        for reduct in _successors(term, which):
            _expect(infer_type(ctx, reduct, which), ty, "reduct", which)
    except PicompError as exc:
        return CounterExample(f"{exc.kind}: {exc}", (show(term),))
    return Pass(0)


def _expect(found, expected, label: str, which: Calculus) -> None:
    if which is Calculus.PI or found == expected:
        return
    raise TypingError(f"{label} has type {found}, predicted {expected}")


def _lambda_images(term, ctx: TypingContext, ty, which: Calculus) -> None:
    if which is Calculus.LAM_P:
        return
    adm = Calculus.ADM_PAR if which is Calculus.LAM_PAR else Calculus.ADM
    image = to_admin(term)
    image_ctx = to_admin_context(ctx)
    _expect(infer_type(image_ctx, image, adm), to_admin_type(ty), "administrative image", adm)
    if not is_monadic_typing(image_ctx, image, adm):
        raise TypingError("administrative image leaves the monadic fragment")
    _expect(infer_type(ctx, readback(image), which), ty, "readback image", which)
    if which is Calculus.LAM_PAR:
        embedded = embed_parallel(term)
        lam_p = Calculus.LAM_P
        _expect(infer_type(embed_context(ctx), embedded, lam_p), ty, "embedding", lam_p)


def _admin_images(term, ctx: TypingContext, ty, which: Calculus) -> None:
    if which.is_cps:
        if which is Calculus.CPS_PAR:
            infer_type(ctx, to_pi(term), Calculus.PI)
        return
    if is_saturated(term):
        lam = _lam_calculus(which)
        back_ty = readback_type(ty)
        found = infer_type(readback_context(ctx), readback(term), lam)
        _expect(found, back_ty, "readback image", lam)
    k = NameSupply.avoiding(term, ctx).fresh("k")
    target = target_calculus(which)
    image = cps_transform(term, k, ctx, which)
    found = infer_type(cps_context(ctx, k, ty, which), image, target)
    _expect(found, answer_type(which), "continuation-passing image", target)
    if which is Calculus.ADM_PAR:
        try:
            saturated = saturate_usages(term, ctx)
        except CannotSaturate:
            logger.debug("no saturation for a dead behavior definition")
        else:
            _expect(infer_type(ctx, saturated, which), ty, "saturated image", which)


def termination(term, ctx: TypingContext, ty, which: Calculus) -> Verdict:
    _require_typed(term, ctx, which)
    strategies = [Leftmost()] + [Seeded(index) for index in range(SEEDED_RUNS)]
    longest = 0
    for strategy in strategies:
        outcome = evaluate(term, which, strategy)
        if isinstance(outcome, BudgetExhausted):
            return _failure(f"no normal form under {strategy} within budget", term)
        problem = _usage_increase(outcome.trace, term)
        if problem is not None:
            return _failure(problem, term)
        longest = max(longest, outcome.steps)
    return Pass(longest)


def _usage_increase(trace, start) -> str | None:
    if not isinstance(start, AdmDecl):
        return None
    previous = {binding.name: binding.usage for binding in start.bindings}
    for step in trace:
        current = {binding.name: binding.usage for binding in step.term.bindings}
        for name, usage in current.items():
            before = previous.get(name)
            if before is not None and _USAGE_RANK[usage] > _USAGE_RANK[before]:
                return (
                    f"usage of {name} grew from {before.value} to {usage.value} "
                    f"at step {step.index}"
                )
        previous = current
    return None


def embed_simulation(term, ctx: TypingContext, ty, which: Calculus) -> Verdict:
    if which not in (Calculus.LAM, Calculus.LAM_PAR):
        raise DiagramNotApplicable("the parallel embedding starts from λ_∥")
    _require_typed(term, ctx, which, ty)
    embedded = embed_parallel(term)
    successors = _successors(embedded, Calculus.LAM_P)
    for redex in find_redexes(term, which):
        expected = embed_parallel(step_at(term, redex))
        if not any(alpha_equal(candidate, expected) for candidate in successors):
            return _failure(
                f"step at {render_path(redex.path)} is not one λ_p step", term, embedded, expected
            )
    return Pass(1 if successors else 0)


_CHECKS: dict[DiagramKind, Callable[..., Verdict]] = {
    DiagramKind.RETRACTION: retraction,
    DiagramKind.ADM_SIMULATION: adm_simulation,
    DiagramKind.MONADIC_LIFTING: monadic_lifting,
    DiagramKind.CPS_SIMULATION: cps_simulation,
    DiagramKind.PI_ROUNDTRIP: pi_roundtrip,
    DiagramKind.TYPING_PRESERVATION: typing_preservation,
    DiagramKind.TERMINATION: termination,
    DiagramKind.EMBED_SIMULATION: embed_simulation,
}
