"""Surface printing for every calculus; the output parses back under ``grammar.lark``.

``erase_types`` drops λ binder annotations, which makes the output read-only.
"""

from __future__ import annotations

from ..kernel.names import Ident
from ..kernel.terms import (
    Abs,
    AdmBinding,
    AdmDecl,
    AdmPar,
    App,
    Hole,
    InputGuard,
    Nu,
    Out,
    Par,
    PiPar,
    PolyAbs,
    PolyApp,
    Star,
    Var,
)
from ..kernel.types import Arrow, Behavior, Chan, Result, TypeExpr, Unit
from ..typecheck.context import TypingContext


def show(term, erase_types: bool = False) -> str:
    match term:
        case Ident():
            return str(term)
        case Unit() | Behavior() | Result() | Arrow() | Chan():
            return show_type(term)
        case TypingContext():
            return show_context(term)
        case Abs() | App() | Par():
            return _Lam(erase_types).term(term)
        case AdmDecl():
            return _decl(term)
        case PolyAbs():
            return _value(term)
        case PolyApp() | AdmPar() | Hole():
            return _aterm(term)
        case Nu() | Out() | PiPar():
            return _proc(term)
        case Star():
            return "*"
        case Var(name):
            return str(name)
    raise TypeError(f"cannot print {type(term).__name__}")


def show_type(ty: TypeExpr) -> str:
    match ty:
        case Unit():
            return "Unit"
        case Behavior():
            return "#b"
        case Result():
            return "#R"
        case Chan(Unit()):
            return "Ch[Unit]"
        case Chan(Arrow(domain, codomain)):
            parts = ", ".join(_type_atom(part) for part in domain)
            return f"Ch[{parts} -> {show_type(codomain)}]"
        case Arrow((domain,), codomain):
            return f"{_type_atom(domain)} -> {show_type(codomain)}"
        case Arrow(domain, codomain):
            parts = ", ".join(show_type(part) for part in domain)
            return f"({parts}) -> {show_type(codomain)}"
    raise TypeError(f"not a type: {ty!r}")


def _type_atom(ty: TypeExpr) -> str:
    text = show_type(ty)
    return f"({text})" if isinstance(ty, Arrow) else text


def show_context(ctx: TypingContext) -> str:
    return ", ".join(f"{name}:{show_type(ty)}" for name, ty in ctx.items())


class _Lam:
    def __init__(self, erase_types: bool):
        self.erase_types = erase_types

    def term(self, term) -> str:
        if isinstance(term, Par):
            return f"{self.term(term.left)} | {self.seq(term.right)}"
        return self.seq(term)

    def seq(self, term) -> str:
        if isinstance(term, Abs):
            binder = str(term.param)
            if not self.erase_types:
                binder = f"{binder}:{show_type(term.annotation)}"
            return f"\\{binder}. {self.seq(term.body)}"
        if isinstance(term, Par):
            return f"({self.term(term)})"
        return self.app(term)

    def app(self, term) -> str:
        if isinstance(term, App):
            return f"{self.app(term.fn)} {self.atom(term.arg)}"
        return self.atom(term)

    def atom(self, term) -> str:
        match term:
            case Star():
                return "*"
            case Var(name):
                return str(name)
        return f"({self.term(term)})"


def _binding(binding: AdmBinding) -> str:
    declared = f" : {show_type(binding.declared)}" if binding.declared is not None else ""
    return f"let[{binding.usage.value}] {binding.name}{declared} = {_value(binding.value)} in "


def _decl(decl: AdmDecl) -> str:
    prefix = "".join(_binding(binding) for binding in decl.bindings)
    return prefix + _aterm(decl.body)


def _value(value) -> str:
    if isinstance(value, Star):
        return "*"
    params = ", ".join(f"{name}:{show_type(ty)}" for name, ty in value.params)
    return f"\\{params}. {_decl(value.body)}"


def _aterm(term) -> str:
    if isinstance(term, AdmPar):
        return f"{_aterm(term.left)} | {_aatom(term.right)}"
    return _aatom(term)


def _aatom(term) -> str:
    match term:
        case Var(name):
            return str(name)
        case PolyApp():
            return "@(" + ", ".join(_aterm(item) for item in term.items) + ")"
        case Hole():
            return "[]"
        case AdmDecl(bindings, body) if not bindings:
            return _aatom(body)
        case AdmDecl():
            return f"({_decl(term)})"
    return f"({_aterm(term)})"


def _proc(proc) -> str:
    if isinstance(proc, PiPar):
        return f"{_proc(proc.left)} | {_patom(proc.right)}"
    return _patom(proc)


def _patom(proc) -> str:
    match proc:
        case Out(channel, args):
            return f"{channel}!(" + ", ".join(str(arg) for arg in args) + ")"
        case Nu(name, guard, rest, annotation):
            header = f"new {name}"
            if annotation is not None:
                header += f" : {show_type(annotation)}"
            if guard is None:
                return f"{header} ({_proc(rest)})"
            return f"{header} ({_guard(guard)} | {_proc(rest)})"
    return f"({_proc(proc)})"


def _guard(guard: InputGuard) -> str:
    bang = "!" if guard.replicated else ""
    params = ", ".join(
        str(name) if ty is None else f"{name}:{show_type(ty)}" for name, ty in guard.params
    )
    return f"{bang}{guard.channel}({params}).{_patom(guard.body)}"
