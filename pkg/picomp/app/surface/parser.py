from __future__ import annotations

from functools import cache

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, VisitError

from ..errors import ParseError, PicompError
from ..kernel.names import Ident
from ..kernel.terms import (
    Abs,
    AdmBinding,
    AdmDecl,
    AdmPar,
    App,
    InputGuard,
    Nu,
    Out,
    Par,
    PiPar,
    PolyAbs,
    PolyApp,
    Star,
    Usage,
    Var,
)
from ..kernel.types import BEHAVIOR, RESULT, UNIT, Arrow, Chan, TypeExpr, fn_type
from ..typecheck.context import Calculus, TypingContext

_STARTS = ("lam_start", "adm_start", "pi_start", "type_start", "context_start", "value_start")


@cache
def _parser() -> Lark:
    return Lark.open(
        "grammar.lark",
        rel_to=__file__,
        parser="lalr",
        start=list(_STARTS),
        maybe_placeholders=True,
    )


def _name(token: Token) -> Ident:
    return Ident.parse(str(token))


class _ToTerms(Transformer):
    def lam_start(self, children):
        return children[0]

    def pi_start(self, children):
        return children[0]

    def type_start(self, children):
        return children[0]

    def value_start(self, children):
        return children[0]

    def adm_start(self, children):
        decl = children[0]
        return decl if isinstance(decl, AdmDecl) else AdmDecl((), decl)

    def context_start(self, children):
        return TypingContext(entry for entry in children if entry is not None)

    def context_entry(self, children):
        name, ty = children
        return _name(name), ty

    # types

    def unit_type(self, _):
        return UNIT

    def behavior_type(self, _):
        return BEHAVIOR

    def result_type(self, _):
        return RESULT

    def fn_type(self, children):
        domain, codomain = children
        return fn_type(domain, codomain)

    def chan_payload(self, children):
        *domain, codomain = children
        if codomain is None:
            if domain == [UNIT]:
                return Chan(UNIT)
            codomain = BEHAVIOR
        return Chan(Arrow(tuple(domain), codomain))

    # λ

    def star(self, _):
        return Star()

    def var(self, children):
        return Var(_name(children[0]))

    def abs(self, children):
        param, annotation, body = children
        return Abs(_name(param), annotation, body)

    def app(self, children):
        return App(*children)

    def par(self, children):
        return Par(*children)

    # administrative form

    def usage_inf(self, _):
        return Usage.INFINITE

    def usage_one(self, _):
        return Usage.ONE

    def usage_zero(self, _):
        return Usage.ZERO

    def adm_binding(self, children):
        usage, name, declared, value = children
        return AdmBinding(usage, _name(name), value, declared)

    def adm_decl(self, children):
        *bindings, body = children
        if not bindings and isinstance(body, AdmDecl):
            return body
        return AdmDecl(tuple(bindings), body)

    def adm_param(self, children):
        name, ty = children
        return _name(name), ty

    def poly_abs(self, children):
        *params, body = children
        return PolyAbs(tuple(params), body)

    def adm_par(self, children):
        return AdmPar(*children)

    def poly_app(self, children):
        fn, *args = children
        return PolyApp(fn, tuple(args))

    def group(self, children):
        decl = children[0]
        if not decl.bindings:
            return decl.body
        return decl

    # π

    def pi_param(self, children):
        name, annotation = children
        return _name(name), annotation

    def replicated_guard(self, children):
        return self._guard(True, children)

    def once_guard(self, children):
        return self._guard(False, children)

    def _guard(self, replicated: bool, children) -> InputGuard:
        channel, *params, body = children
        return InputGuard(replicated, _name(channel), tuple(params), body)

    def nu(self, children):
        name, annotation, rest = children
        return Nu(_name(name), None, rest, annotation)

    def nu_guard(self, children):
        name, annotation, guard, rest = children
        return Nu(_name(name), guard, rest, annotation)

    def out(self, children):
        channel, *args = children
        return Out(_name(channel), tuple(_name(arg) for arg in args))

    def pi_par(self, children):
        return PiPar(*children)


def _parse(text: str, start: str):
    try:
        tree = _parser().parse(text, start=start)
        return _ToTerms().transform(tree)
    except VisitError as exc:
        if isinstance(exc.orig_exc, PicompError):
            raise exc.orig_exc from exc
        raise
    except UnexpectedEOF as exc:
        line, column = _end_of(text)
        message = f"unexpected end of input, expected {_expected(exc)}"
        raise ParseError(message, line, column) from exc
    except UnexpectedCharacters as exc:
        raise ParseError(f"unexpected character {exc.char!r}", exc.line, exc.column) from exc
    except UnexpectedInput as exc:
        token = getattr(exc, "token", None)
        line = getattr(exc, "line", -1)
        column = getattr(exc, "column", -1)
        if line is None or line < 0:
            line, column = _end_of(text)
        shown = "end of input" if token is None or token.type == "$END" else repr(str(token))
        raise ParseError(f"unexpected {shown}", line, column) from exc


def _expected(exc: UnexpectedEOF) -> str:
    expected = sorted(getattr(exc, "expected", None) or ())
    return ", ".join(expected) or "more input"


def _end_of(text: str) -> tuple[int, int]:
    lines = text.split("\n")
    return len(lines), len(lines[-1]) + 1


def parse_term(text: str, calculus: Calculus | str):
    """Parse a term of ``calculus``; administrative input always comes back as an AdmDecl."""
    which = Calculus(calculus)
    if which.is_lambda:
        return _parse(text, "lam_start")
    if which.is_administrative:
        return _parse(text, "adm_start")
    return _parse(text, "pi_start")


def parse_type(text: str) -> TypeExpr:
    return _parse(text, "type_start")


def parse_context(text: str) -> TypingContext:
    """Parse ``x:T, y:T``; repeated names are rejected."""
    if not text.strip():
        return TypingContext()
    return _parse(text, "context_start")


def parse_value(text: str):
    """An administrative value: ``*`` or ``\\x:T, ... . D``."""
    return _parse(text, "value_start")
