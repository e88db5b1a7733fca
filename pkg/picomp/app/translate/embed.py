"""Embedding of λ_∥ into the Par-free λ_p, where parallel composition is a constant."""

from __future__ import annotations

from ..errors import MalformedTerm, NotInFragment
from ..kernel.alpha import rename_apart
from ..kernel.names import Ident
from ..kernel.scope import free_vars
from ..kernel.terms import Abs, App, Par, Star, Var
from ..kernel.types import BEHAVIOR, TypeExpr, fn_type
from ..typecheck.context import TypingContext

PAR_CONSTANT = Ident("p")

PAR_TYPE: TypeExpr = fn_type(BEHAVIOR, fn_type(BEHAVIOR, BEHAVIOR))


def embed_parallel(term, p: Ident = PAR_CONSTANT):
    if p in free_vars(term):
        raise MalformedTerm(f"{p} already occurs free in the term", subject=p)
    return _embed(rename_apart(term, {p}), p)


def _embed(term, p: Ident):
    match term:
        case Star() | Var():
            return term
        case Abs(param, annotation, body):
            return Abs(param, annotation, _embed(body, p))
        case App(fn, arg):
            return App(_embed(fn, p), _embed(arg, p))
        case Par(left, right):
            return App(App(Var(p), _embed(left, p)), _embed(right, p))
    raise NotInFragment(f"not a λ term: {term!r}")


def embed_context(ctx: TypingContext, p: Ident = PAR_CONSTANT) -> TypingContext:
    return ctx.extend(p, PAR_TYPE)
