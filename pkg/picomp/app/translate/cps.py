"""Optimized CPS translation from administrative form into its CPS fragment.

Functional sources answer ``#R``; concurrent sources answer ``#b`` and their
continuation bindings are single-use.
"""

from __future__ import annotations

import logging

from ..errors import NotInFragment, TypingError
from ..kernel.alpha import rename_apart
from ..kernel.desugar import desugar, is_core
from ..kernel.names import Ident, NameSupply
from ..kernel.terms import AdmBinding, AdmDecl, AdmPar, PolyAbs, PolyApp, Star, Usage, Var
from ..kernel.types import (
    BEHAVIOR,
    CH_UNIT,
    RESULT,
    Arrow,
    Behavior,
    Chan,
    Result,
    TypeExpr,
    Unit,
    chan_type,
    channel_signature,
)
from ..typecheck.checker import binding_type, infer_type
from ..typecheck.context import EMPTY, Calculus, TypingContext

logger = logging.getLogger(__name__)


def answer_type(which: Calculus | str) -> TypeExpr:
    return BEHAVIOR if Calculus(which).is_parallel else RESULT


def target_calculus(which: Calculus | str) -> Calculus:
    return Calculus.CPS_PAR if Calculus(which).is_parallel else Calculus.CPS


def cps_type(ty: TypeExpr, which: Calculus | str = Calculus.ADM_PAR) -> TypeExpr:
    answer = answer_type(which)
    match ty:
        case Chan(Unit()) | Behavior():
            return ty
        case Chan(Arrow(domain, codomain)):
            params = tuple(cps_type(part, which) for part in domain)
            return chan_type(params + (cont_type(codomain, which),), answer)
    raise NotInFragment(f"{ty} is not an administrative type")


def cont_type(ty: TypeExpr, which: Calculus | str = Calculus.ADM_PAR) -> TypeExpr:
    """K(α): the type of a continuation awaiting an α."""
    if isinstance(ty, Behavior):
        return CH_UNIT
    return chan_type((cps_type(ty, which),), answer_type(which))


def cps_context(
    ctx: TypingContext, k: Ident, ty: TypeExpr, which: Calculus | str = Calculus.ADM_PAR
) -> TypingContext:
    return ctx.map_types(lambda entry: cps_type(entry, which)).extend(k, cont_type(ty, which))


def cps_transform(
    decl,
    k: Ident,
    ctx: TypingContext | None = None,
    which: Calculus | str = Calculus.ADM_PAR,
    supply: NameSupply | None = None,
) -> AdmDecl:
    """``decl : k`` for a declaration typed in ``ctx``."""
    which = Calculus(which)
    ctx = ctx if ctx is not None else EMPTY
    if not isinstance(decl, AdmDecl):
        decl = AdmDecl((), decl)
    if not is_core(decl):
        decl = desugar(decl)
    decl = rename_apart(decl, ctx.domain | {k})
    supply = supply or NameSupply.avoiding(decl, ctx, k)
    return _Cps(which, supply).decl(ctx, decl, k)


def cps_value(value, ctx: TypingContext | None = None, which=Calculus.ADM_PAR, supply=None):
    """ψ(V)."""
    ctx = ctx if ctx is not None else EMPTY
    supply = supply or NameSupply.avoiding(value, ctx)
    return _Cps(Calculus(which), supply).value(ctx, value)


class _Cps:
    def __init__(self, which: Calculus, supply: NameSupply):
        self.which = which
        self.supply = supply
        self.answer = answer_type(which)
        self.cont_usage = Usage.ONE if which.is_parallel else Usage.INFINITE

    def _type_of(self, ctx: TypingContext, term) -> TypeExpr:
        try:
            ty = infer_type(ctx, term, self.which)
        except TypingError:
            # let₀ bodies are never typed; any annotation will do there
            return CH_UNIT
        if isinstance(ty, (Behavior, Result)):
            return CH_UNIT
        return ty

    def _body_type(self, ctx: TypingContext, body: AdmDecl) -> TypeExpr:
        try:
            return infer_type(ctx, body, self.which)
        except TypingError:
            return self.answer if self.which.is_parallel else CH_UNIT

    def _binding_type(self, ctx: TypingContext, binding: AdmBinding) -> TypeExpr:
        try:
            return binding_type(ctx, binding, self.which)
        except TypingError:
            if binding.declared is not None:
                return binding.declared
            if isinstance(binding.value, Star):
                return CH_UNIT
            return chan_type(binding.value.param_types, self.answer)

    def value(self, ctx: TypingContext, value, declared: TypeExpr | None = None):
        if isinstance(value, Star):
            return value
        inner = ctx.extend_many(value.params)
        signature = channel_signature(declared) if declared is not None else None
        if signature is not None:
            result = signature[1]
        else:
            result = self._body_type(inner, value.body)
        k = self.supply.fresh("k")
        params = tuple((name, cps_type(ty, self.which)) for name, ty in value.params)
        return PolyAbs(
            params + ((k, cont_type(result, self.which)),), self.decl(inner, value.body, k)
        )

    def decl(self, ctx: TypingContext, decl: AdmDecl, k: Ident) -> AdmDecl:
        bindings: list[AdmBinding] = []
        for binding in decl.bindings:
            declared = (
                cps_type(binding.declared, self.which) if binding.declared is not None else None
            )
            bindings.append(
                AdmBinding(
                    binding.usage,
                    binding.name,
                    self.value(ctx, binding.value, binding.declared),
                    declared,
                )
            )
            ctx = ctx.extend(binding.name, self._binding_type(ctx, binding))
        extra, body = self.term(ctx, decl.body, k)
        return AdmDecl(tuple(bindings) + tuple(extra), body)

    def term(self, ctx: TypingContext, term, k: Ident) -> tuple[list[AdmBinding], object]:
        match term:
            case Var():
                return [], PolyApp(Var(k), (term,))
            case AdmPar(left, right):
                left_bindings, left_term = self.term(ctx, left, k)
                right_bindings, right_term = self.term(ctx, right, k)
                return left_bindings + right_bindings, AdmPar(left_term, right_term)
            case PolyApp():
                items = term.items
                pending = next(
                    (i for i, item in enumerate(items) if not isinstance(item, Var)), None
                )
                if pending is None:
                    return [], PolyApp(term.fn, term.args + (Var(k),))
                nested = items[pending]
                if not isinstance(nested, PolyApp):
                    raise NotInFragment("only applications can occur inside applications")
                arg_type = self._type_of(ctx, nested)
                y = self.supply.fresh("y")
                k_next = self.supply.fresh("k")
                rest = list(items)
                rest[pending] = Var(y)
                inner_bindings, inner_term = self.term(
                    ctx.extend(y, arg_type), PolyApp(rest[0], tuple(rest[1:])), k
                )
                continuation = AdmBinding(
                    self.cont_usage,
                    k_next,
                    PolyAbs(
                        ((y, cps_type(arg_type, self.which)),),
                        AdmDecl(tuple(inner_bindings), inner_term),
                    ),
                )
                nested_bindings, nested_term = self.term(ctx, nested, k_next)
                return [continuation] + nested_bindings, nested_term
        raise NotInFragment(f"cannot translate {term!r}")
