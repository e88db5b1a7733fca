from __future__ import annotations

from dataclasses import replace

from ..errors import StaleRedex
from ..kernel.alpha import freshen
from ..kernel.congruence import join_spine, split_spine
from ..kernel.names import NameSupply
from ..kernel.scope import free_vars
from ..kernel.subst import substitute
from ..kernel.terms import Abs, AdmDecl, App, Nu, Out, PolyAbs, PolyApp, Usage, Var, is_value
from ..kernel.types import BEHAVIOR, chan_type
from .redexes import RedexDescriptor, Rule, get_at, replace_at


def decrement_usage(usage: Usage) -> Usage:
    return usage.decrement()


def step_at(term, redex: RedexDescriptor, supply: NameSupply | None = None):
    """Contract exactly the redex ``redex`` describes."""
    supply = supply or NameSupply.avoiding(term)
    if redex.rule is Rule.BETA_V:
        return _beta(term, redex, supply)
    if redex.rule is Rule.BETA_V_ADM:
        return _beta_adm(term, redex, supply)
    return _pi_call(term, redex, supply)


def _beta(term, redex: RedexDescriptor, supply: NameSupply):
    target = get_at(term, redex.path)
    if not (isinstance(target, App) and isinstance(target.fn, Abs) and is_value(target.arg)):
        raise StaleRedex(f"no β-redex at {redex.path}")
    fn = target.fn
    return replace_at(term, redex.path, substitute(fn.body, {fn.param: target.arg}, supply))


def _beta_adm(decl, redex: RedexDescriptor, supply: NameSupply):
    if not isinstance(decl, AdmDecl) or not redex.definition_site or redex.path[:1] != ("body",):
        raise StaleRedex("administrative redexes live in the body of a declaration")
    site = redex.definition_site[-1]
    if not isinstance(site, int) or site >= len(decl.bindings):
        raise StaleRedex(f"no binding at {redex.definition_site}")
    if {later.name for later in decl.bindings[site + 1 :]} & free_vars(decl.bindings[site].value):
        # the copy is appended below these bindings and would be captured
        decl = freshen(decl, supply)
    binding = decl.bindings[site]
    call = get_at(decl, redex.path)
    value = binding.value
    if (
        not isinstance(call, PolyApp)
        or call.fn != Var(binding.name)
        or not all(isinstance(arg, Var) for arg in call.args)
        or not isinstance(value, PolyAbs)
        or len(value.params) != len(call.args)
        or not binding.usage.callable
        or any(later.name == binding.name for later in decl.bindings[site + 1 :])
    ):
        raise StaleRedex(f"call at {redex.path} does not match the binding of {binding.name}")
    copy = freshen(value.body, supply)
    copy = substitute(
        copy, {param: arg.name for param, arg in zip(value.param_names, call.args)}, supply
    )
    bindings = list(decl.bindings)
    bindings[site] = replace(binding, usage=decrement_usage(binding.usage))
    body = replace_at(decl.body, redex.path[1:], copy.body)
    return AdmDecl(tuple(bindings) + copy.bindings, body)


def _pi_call(proc, redex: RedexDescriptor, supply: NameSupply):
    if redex.definition_site is None:
        raise StaleRedex("π redexes need a definition site")
    definition = get_at(proc, redex.definition_site)
    call = get_at(proc, redex.path)
    if (
        not isinstance(definition, Nu)
        or definition.guard is None
        or not isinstance(call, Out)
        or call.channel != definition.name
        or len(call.args) != len(definition.guard.params)
        or definition.guard.replicated != (redex.rule is Rule.PI_BANG)
    ):
        raise StaleRedex(f"output at {redex.path} does not match its definition")
    guard = definition.guard
    copy = freshen(guard.body, supply)
    copy = substitute(copy, dict(zip(guard.param_names, call.args)), supply)
    headers, tail = split_spine(copy)
    result = replace_at(proc, redex.path, tail)
    if headers:
        anchor = _deepest_restriction(result, redex.path)
        node = get_at(result, anchor)
        result = replace_at(result, anchor, replace(node, rest=join_spine(headers, node.rest)))
    if redex.rule is Rule.PI_ONCE:
        node = get_at(result, redex.definition_site)
        annotation = node.annotation
        if annotation is None and all(ty is not None for _, ty in guard.params):
            annotation = chan_type((ty for _, ty in guard.params), BEHAVIOR)
        result = replace_at(
            result, redex.definition_site, Nu(node.name, None, node.rest, annotation)
        )
    return result


def _deepest_restriction(proc, path) -> tuple:
    anchor: tuple = ()
    node = proc
    for depth, selector in enumerate(path):
        if isinstance(node, Nu):
            anchor = tuple(path[:depth])
        node = get_at(node, (selector,))
    return anchor
