"""Usage saturation: every binding becomes unrestricted.

Single-use bindings only change their usage.  Dead bindings hold values that
were never typed, so each gets a synthesized inhabitant of its declared type.
"""

from __future__ import annotations

import logging
from dataclasses import replace

from ..errors import CannotSaturate
from ..kernel.alpha import rename_apart
from ..kernel.desugar import desugar, is_core
from ..kernel.names import NameSupply
from ..kernel.terms import AdmBinding, AdmDecl, PolyAbs, PolyApp, Star, Usage, Var
from ..kernel.types import CH_UNIT, Behavior, TypeExpr, channel_signature
from ..typecheck.checker import binding_type
from ..typecheck.context import EMPTY, Calculus, TypingContext

logger = logging.getLogger(__name__)

SEARCH_DEPTH = 4


def saturate_usages(
    decl, ctx: TypingContext | None = None, supply: NameSupply | None = None
) -> AdmDecl:
    ctx = ctx if ctx is not None else EMPTY
    if not isinstance(decl, AdmDecl):
        decl = AdmDecl((), decl)
    if not is_core(decl):
        decl = desugar(decl)
    decl = rename_apart(decl, ctx.domain)
    supply = supply or NameSupply.avoiding(decl, ctx)
    return _Saturator(supply).decl(ctx, decl)


def inhabit(
    ty: TypeExpr,
    env: TypingContext,
    supply: NameSupply,
    depth: int = SEARCH_DEPTH,
) -> AdmDecl:
    """A closed-over-``env`` declaration of type ``ty`` built from unit and abstractions.

    Variables of the exact type are preferred, most recently bound first.
    """
    for name, candidate in reversed(env.items()):
        if candidate == ty:
            return AdmDecl((), Var(name))
    if ty == CH_UNIT:
        unit = supply.fresh("u")
        return AdmDecl((AdmBinding(Usage.INFINITE, unit, Star()),), Var(unit))
    signature = channel_signature(ty)
    if signature is not None:
        domain, codomain = signature
        params = tuple((supply.fresh("y"), part) for part in domain)
        body = inhabit(codomain, env.extend_many(params), supply, depth)
        fn = supply.fresh("f")
        return AdmDecl((AdmBinding(Usage.INFINITE, fn, PolyAbs(params, body)),), Var(fn))
    if isinstance(ty, Behavior):
        return _behavior(env, supply, depth)
    raise CannotSaturate(f"no inhabitant of {ty}")


def _behavior(env: TypingContext, supply: NameSupply, depth: int) -> AdmDecl:
    if depth <= 0:
        raise CannotSaturate("search depth exhausted looking for a behavior")
    for name, candidate in reversed(env.items()):
        signature = channel_signature(candidate)
        if signature is None or not isinstance(signature[1], Behavior):
            continue
        try:
            args = [inhabit(part, env, supply, depth - 1) for part in signature[0]]
        except CannotSaturate:
            continue
        bindings = tuple(binding for arg in args for binding in arg.bindings)
        return AdmDecl(bindings, PolyApp(Var(name), tuple(arg.body for arg in args)))
    raise CannotSaturate("no definition in scope returns a behavior")


class _Saturator:
    def __init__(self, supply: NameSupply):
        self.supply = supply

    def decl(self, ctx: TypingContext, decl: AdmDecl) -> AdmDecl:
        bindings = []
        for binding in decl.bindings:
            ty = binding_type(ctx, binding, Calculus.ADM_PAR)
            bindings.append(self.binding(ctx, binding, ty))
            ctx = ctx.extend(binding.name, ty)
        return AdmDecl(tuple(bindings), decl.body)

    def binding(self, ctx: TypingContext, binding: AdmBinding, ty: TypeExpr) -> AdmBinding:
        value = binding.value
        if isinstance(value, Star):
            return replace(binding, usage=Usage.INFINITE)
        if binding.usage is Usage.ZERO:
            logger.debug("synthesizing a value for dead binding %s", binding.name)
            try:
                value = self.synthesize(ctx, value, ty)
            except CannotSaturate as exc:
                raise CannotSaturate(
                    f"cannot replace the dead value of {binding.name}: {exc}", subject=binding.name
                ) from exc
            return AdmBinding(Usage.INFINITE, binding.name, value, ty)
        body = self.decl(ctx.extend_many(value.params), value.body)
        return replace(binding, usage=Usage.INFINITE, value=PolyAbs(value.params, body))

    def synthesize(self, ctx: TypingContext, value: PolyAbs, ty: TypeExpr) -> PolyAbs:
        domain, codomain = channel_signature(ty)
        if value.param_types == domain:
            params = value.params
        else:
            params = tuple((self.supply.fresh("y"), part) for part in domain)
        return PolyAbs(params, inhabit(codomain, ctx.extend_many(params), self.supply))
