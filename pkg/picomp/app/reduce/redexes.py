from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Union

from ..errors import StaleRedex
from ..kernel.terms import (
    Abs,
    AdmDecl,
    AdmPar,
    App,
    Nu,
    Out,
    Par,
    PiPar,
    PolyAbs,
    PolyApp,
    Var,
    is_adm,
    is_pi,
    is_value,
)
from ..typecheck.context import Calculus

Selector = Union[str, int]
Path = tuple[Selector, ...]


class Rule(str, Enum):
    BETA_V = "BetaV"
    BETA_V_ADM = "BetaVAdm"
    PI_BANG = "PiBang"
    PI_ONCE = "PiOnce"


@dataclass(frozen=True)
class RedexDescriptor:
    path: Path
    rule: Rule
    definition_site: Path | None = None


def render_path(path: Path) -> str:
    return "/" + "/".join(str(part) for part in path)


def get_at(term, path: Path):
    for selector in path:
        term = _child(term, selector)
    return term


def replace_at(term, path: Path, new):
    if not path:
        return new
    selector, rest = path[0], path[1:]
    return _with_child(term, selector, replace_at(_child(term, selector), rest, new))


def _child(term, selector: Selector):
    match term, selector:
        case App(fn, _), "fn":
            return fn
        case App(_, arg), "arg":
            return arg
        case (Par(left, _) | AdmPar(left, _) | PiPar(left, _)), "left":
            return left
        case (Par(_, right) | AdmPar(_, right) | PiPar(_, right)), "right":
            return right
        case AdmDecl(_, body), "body":
            return body
        case PolyApp(), int() as index if index < len(term.items):
            return term.items[index]
        case Nu(_, _, rest, _), "rest":
            return rest
    raise StaleRedex(f"path selector {selector!r} does not apply to {type(term).__name__}")


def _with_child(term, selector: Selector, child):
    match term, selector:
        case App(), "fn":
            return replace(term, fn=child)
        case App(), "arg":
            return replace(term, arg=child)
        case (Par() | AdmPar() | PiPar()), "left":
            return replace(term, left=child)
        case (Par() | AdmPar() | PiPar()), "right":
            return replace(term, right=child)
        case AdmDecl(), "body":
            return replace(term, body=child)
        case PolyApp(), int() as index:
            items = list(term.items)
            items[index] = child
            return PolyApp(items[0], tuple(items[1:]))
        case Nu(), "rest":
            return replace(term, rest=child)
    raise StaleRedex(f"path selector {selector!r} does not apply to {type(term).__name__}")


def find_redexes(term, which: Calculus | str) -> list[RedexDescriptor]:
    """Every contractible position under the evaluation contexts of ``which``.

    Leftmost-outermost positions come first.
    """
    which = Calculus(which)
    found: list[RedexDescriptor] = []
    if which.is_lambda:
        _lam(term, (), found, anywhere=which is Calculus.LAM_P)
    elif which is Calculus.PI or is_pi(term):
        _pi(term, (), {}, found)
    elif is_adm(term):
        _adm(term, found)
    return found


def _lam(term, path: Path, found: list[RedexDescriptor], anywhere: bool) -> None:
    match term:
        case App(fn, arg):
            if anywhere:
                if isinstance(fn, Abs) and is_value(arg):
                    found.append(RedexDescriptor(path, Rule.BETA_V))
                _lam(fn, path + ("fn",), found, anywhere)
                _lam(arg, path + ("arg",), found, anywhere)
            elif not is_value(fn):
                _lam(fn, path + ("fn",), found, anywhere)
            elif not is_value(arg):
                _lam(arg, path + ("arg",), found, anywhere)
            elif isinstance(fn, Abs):
                found.append(RedexDescriptor(path, Rule.BETA_V))
        case Par(left, right):
            _lam(left, path + ("left",), found, anywhere)
            _lam(right, path + ("right",), found, anywhere)


def definition_index(decl: AdmDecl) -> dict:
    """Name to position of its innermost binding in ``decl``'s list."""
    return {binding.name: position for position, binding in enumerate(decl.bindings)}


def _adm(decl, found: list[RedexDescriptor]) -> None:
    if not isinstance(decl, AdmDecl):
        decl = AdmDecl((), decl)
    sites = definition_index(decl)

    def walk(term, path: Path) -> None:
        match term:
            case AdmPar(left, right):
                walk(left, path + ("left",))
                walk(right, path + ("right",))
            case PolyApp():
                items = term.items
                pending = next(
                    (i for i, item in enumerate(items) if not isinstance(item, Var)), None
                )
                if pending is not None:
                    walk(items[pending], path + (pending,))
                    return
                site = sites.get(term.fn.name)
                if site is None:
                    return
                binding = decl.bindings[site]
                value = binding.value
                if (
                    isinstance(value, PolyAbs)
                    and binding.usage.callable
                    and len(value.params) == len(term.args)
                ):
                    found.append(
                        RedexDescriptor(path, Rule.BETA_V_ADM, ("bindings", site))
                    )

    walk(decl.body, ("body",))


def _pi(proc, path: Path, defs: dict, found: list[RedexDescriptor]) -> None:
    match proc:
        case Nu(name, guard, rest, _):
            inner = {key: value for key, value in defs.items() if key != name}
            if guard is not None:
                inner[name] = (path, guard)
            _pi(rest, path + ("rest",), inner, found)
        case PiPar(left, right):
            _pi(left, path + ("left",), defs, found)
            _pi(right, path + ("right",), defs, found)
        case Out(channel, args):
            definition = defs.get(channel)
            if definition is None:
                return
            site, guard = definition
            if len(guard.params) != len(args):
                return
            rule = Rule.PI_BANG if guard.replicated else Rule.PI_ONCE
            found.append(RedexDescriptor(path, rule, site))
