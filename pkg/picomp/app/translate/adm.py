"""Administrative-form translation and its readback."""

from __future__ import annotations

from typing import Sequence

from ..errors import NotInFragment, UsageNotInfinite
from ..kernel.names import NameSupply
from ..kernel.subst import substitute
from ..kernel.terms import (
    Abs,
    AdmBinding,
    AdmDecl,
    AdmPar,
    App,
    Par,
    PolyAbs,
    PolyApp,
    Star,
    Usage,
    Var,
)
from ..kernel.types import Arrow, Behavior, Chan, TypeExpr, Unit, chan_type, fn_type
from ..typecheck.context import TypingContext


def to_admin(term, supply: NameSupply | None = None) -> AdmDecl:
    supply = supply or NameSupply.avoiding(term)
    return _adm(term, supply)


def _adm(term, supply: NameSupply) -> AdmDecl:
    match term:
        case Var():
            return AdmDecl((), term)
        case Star():
            name = supply.fresh("x")
            return AdmDecl((AdmBinding(Usage.INFINITE, name, Star()),), Var(name))
        case Abs(param, annotation, body):
            name = supply.fresh("f")
            value = PolyAbs(((param, to_admin_type(annotation)),), _adm(body, supply))
            return AdmDecl((AdmBinding(Usage.INFINITE, name, value),), Var(name))
        case App(fn, arg):
            left, right = _adm(fn, supply), _adm(arg, supply)
            return AdmDecl(left.bindings + right.bindings, PolyApp(left.body, (right.body,)))
        case Par(left, right):
            first, second = _adm(left, supply), _adm(right, supply)
            return AdmDecl(first.bindings + second.bindings, AdmPar(first.body, second.body))
    raise NotInFragment(f"not a λ term: {term!r}")


def to_admin_type(ty: TypeExpr) -> TypeExpr:
    match ty:
        case Unit():
            return Chan(Unit())
        case Behavior():
            return ty
        case Arrow((domain,), codomain):
            return chan_type((to_admin_type(domain),), to_admin_type(codomain))
    raise NotInFragment(f"{ty} is not a λ type")


def to_admin_context(ctx: TypingContext) -> TypingContext:
    return ctx.map_types(to_admin_type)


def binding_order(bindings: Sequence[AdmBinding]) -> list[AdmBinding]:
    """Order in which readback substitutes bindings: innermost first."""
    return list(reversed(bindings))


def readback(decl, supply: NameSupply | None = None):
    """Substitute every let-bound value for its name; curry polyadic calls."""
    supply = supply or NameSupply.avoiding(decl)
    return _rb(decl, supply)


def _rb(term, supply: NameSupply):
    match term:
        case AdmDecl(bindings, body):
            result = _rb(body, supply)
            for binding in binding_order(bindings):
                if binding.usage is not Usage.INFINITE:
                    raise UsageNotInfinite(
                        f"{binding.name} has usage {binding.usage.value}; readback needs inf",
                        subject=binding.name,
                    )
                value = _rb_value(binding.value, supply)
                result = substitute(result, {binding.name: value}, supply)
            return result
        case Var():
            return term
        case PolyApp(fn, args):
            result = _rb(fn, supply)
            for arg in args:
                result = App(result, _rb(arg, supply))
            return result
        case AdmPar(left, right):
            return Par(_rb(left, supply), _rb(right, supply))
    raise NotInFragment(f"not an administrative term: {term!r}")


def _rb_value(value, supply: NameSupply):
    if isinstance(value, Star):
        return value
    result = _rb(value.body, supply)
    for name, annotation in reversed(value.params):
        result = Abs(name, readback_type(annotation), result)
    return result


def readback_type(ty: TypeExpr) -> TypeExpr:
    match ty:
        case Chan(Unit()):
            return Unit()
        case Behavior():
            return ty
        case Chan(Arrow(domain, codomain)):
            result = readback_type(codomain)
            for part in reversed(domain):
                result = fn_type(readback_type(part), result)
            return result
    raise NotInFragment(f"{ty} has no λ counterpart")


def readback_context(ctx: TypingContext) -> TypingContext:
    return ctx.map_types(readback_type)


def is_saturated(term) -> bool:
    """All usages are inf, recursively."""
    match term:
        case AdmDecl(bindings, _):
            return all(
                binding.usage is Usage.INFINITE and is_saturated(binding.value)
                for binding in bindings
            )
        case PolyAbs(_, body):
            return is_saturated(body)
    return True
