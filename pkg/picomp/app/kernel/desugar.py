from __future__ import annotations

from dataclasses import replace

from ..errors import MalformedTerm
from .alpha import freshen
from .names import NameSupply
from .terms import AdmBinding, AdmDecl, AdmPar, Hole, PolyAbs, PolyApp, Star, Var


def desugar(decl: AdmDecl, supply: NameSupply | None = None) -> AdmDecl:
    """Lift declarations in argument position out to the enclosing binding list.

    ``@(D0, ..., Dn)`` becomes the concatenation of the (freshened) let-prefixes,
    left to right, above ``@(M0, ..., Mn)``.
    """
    if isinstance(decl, (Var, PolyApp, AdmPar)):
        decl = AdmDecl((), decl)
    supply = supply or NameSupply.avoiding(decl)
    bindings = [replace(binding, value=_value(binding.value, supply)) for binding in decl.bindings]
    lifted, body = _lift(decl.body, supply)
    return AdmDecl(tuple(bindings) + lifted, body)


def is_core(term) -> bool:
    """True when no declaration sits in term position."""
    match term:
        case AdmDecl(bindings, body):
            return all(is_core(b.value) for b in bindings) and _core_term(body)
        case PolyAbs(_, body):
            return is_core(body)
        case _:
            return True


def _core_term(term) -> bool:
    match term:
        case AdmDecl():
            return False
        case PolyApp(fn, args):
            return all(_core_term(item) for item in (fn, *args))
        case AdmPar(left, right):
            return _core_term(left) and _core_term(right)
        case _:
            return True


def _value(value, supply: NameSupply):
    if isinstance(value, Star):
        return value
    return PolyAbs(value.params, desugar(value.body, supply))


def _lift(term, supply: NameSupply) -> tuple[tuple[AdmBinding, ...], object]:
    match term:
        case Var() | Hole():
            return (), term
        case PolyApp(fn, args):
            lifted, items = [], []
            for item in (fn, *args):
                bindings, core = _lift(item, supply)
                lifted.extend(bindings)
                items.append(core)
            return tuple(lifted), PolyApp(items[0], tuple(items[1:]))
        case AdmPar(left, right):
            left_bindings, left_core = _lift(left, supply)
            right_bindings, right_core = _lift(right, supply)
            return left_bindings + right_bindings, AdmPar(left_core, right_core)
        case AdmDecl():
            inner = _freshen_prefix(desugar(term, supply), supply)
            return inner.bindings, inner.body
    raise MalformedTerm(f"not an administrative term: {term!r}")


def _freshen_prefix(decl: AdmDecl, supply: NameSupply) -> AdmDecl:
    """Rename the top-level binders of ``decl`` so they can be hoisted anywhere."""
    return freshen(decl, supply)


def plug(context: AdmDecl, decl: AdmDecl, supply: NameSupply | None = None) -> AdmDecl:
    """E[D]: the bindings of D go after E's let-prefix, D's body fills the hole."""
    supply = supply or NameSupply.avoiding(context, decl)
    inner = _freshen_prefix(desugar(decl, supply), supply)
    filled, count = _fill(context.body, inner.body)
    if count != 1:
        raise MalformedTerm(f"evaluation context must contain exactly one hole, found {count}")
    return AdmDecl(context.bindings + inner.bindings, filled)


def _fill(term, body) -> tuple[object, int]:
    match term:
        case Hole():
            return body, 1
        case PolyApp(fn, args):
            items, total = [], 0
            for item in (fn, *args):
                filled, count = _fill(item, body)
                items.append(filled)
                total += count
            return PolyApp(items[0], tuple(items[1:])), total
        case AdmPar(left, right):
            new_left, left_count = _fill(left, body)
            new_right, right_count = _fill(right, body)
            return AdmPar(new_left, new_right), left_count + right_count
        case _:
            return term, 0
