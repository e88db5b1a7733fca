from __future__ import annotations

from typing import Iterator

from .names import Ident
from .terms import (
    Abs,
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


def free_vars(term: object) -> frozenset[Ident]:
    """Free identifiers of a term of any calculus."""
    match term:
        case Star() | Hole():
            return frozenset()
        case Var(name):
            return frozenset({name})
        case Abs(param, _, body):
            return free_vars(body) - {param}
        case App(fn, arg):
            return free_vars(fn) | free_vars(arg)
        case Par(left, right) | AdmPar(left, right) | PiPar(left, right):
            return free_vars(left) | free_vars(right)
        case PolyAbs(params, body):
            return free_vars(body) - {name for name, _ in params}
        case PolyApp(fn, args):
            names = free_vars(fn)
            for arg in args:
                names |= free_vars(arg)
            return names
        case AdmDecl(bindings, body):
            names = free_vars(body)
            for binding in reversed(bindings):
                names = (names - {binding.name}) | free_vars(binding.value)
            return names
        case Nu(name, guard, rest, _):
            names = free_vars(rest)
            if guard is not None:
                names |= free_vars(guard)
            return names - {name}
        case InputGuard(_, channel, params, body):
            return (free_vars(body) - {name for name, _ in params}) | {channel}
        case Out(channel, args):
            return frozenset({channel, *args})
    raise TypeError(f"not a term: {term!r}")


def occurrences(term: object) -> Iterator[Ident]:
    """Free identifiers in left-to-right order of occurrence, repeats included."""
    yield from _occurrences(term, frozenset())


def _occurrences(term: object, bound: frozenset[Ident]) -> Iterator[Ident]:
    match term:
        case Star() | Hole():
            return
        case Var(name):
            if name not in bound:
                yield name
        case Abs(param, _, body):
            yield from _occurrences(body, bound | {param})
        case App(left, right) | Par(left, right) | AdmPar(left, right) | PiPar(left, right):
            yield from _occurrences(left, bound)
            yield from _occurrences(right, bound)
        case PolyAbs(params, body):
            yield from _occurrences(body, bound | {name for name, _ in params})
        case PolyApp(fn, args):
            yield from _occurrences(fn, bound)
            for arg in args:
                yield from _occurrences(arg, bound)
        case AdmDecl(bindings, body):
            inner = bound
            for binding in bindings:
                yield from _occurrences(binding.value, inner)
                inner = inner | {binding.name}
            yield from _occurrences(body, inner)
        case Nu(name, guard, rest, _):
            if guard is not None:
                yield from _occurrences(guard, bound | {name})
            yield from _occurrences(rest, bound | {name})
        case InputGuard(_, channel, params, body):
            if channel not in bound:
                yield channel
            yield from _occurrences(body, bound | {name for name, _ in params})
        case Out(channel, args):
            for name in (channel, *args):
                if name not in bound:
                    yield name
        case _:
            raise TypeError(f"not a term: {term!r}")


def first_occurrences(term: object) -> list[Ident]:
    seen: dict[Ident, None] = {}
    for name in occurrences(term):
        seen.setdefault(name, None)
    return list(seen)


def binders(term: object) -> Iterator[Ident]:
    """Every binding occurrence, in pre-order."""
    match term:
        case Star() | Var() | Hole() | Out():
            return
        case Abs(param, _, body):
            yield param
            yield from binders(body)
        case App(left, right) | Par(left, right) | AdmPar(left, right) | PiPar(left, right):
            yield from binders(left)
            yield from binders(right)
        case PolyAbs(params, body):
            for name, _ in params:
                yield name
            yield from binders(body)
        case PolyApp(fn, args):
            yield from binders(fn)
            for arg in args:
                yield from binders(arg)
        case AdmDecl(bindings, body):
            for binding in bindings:
                yield from binders(binding.value)
                yield binding.name
            yield from binders(body)
        case Nu(name, guard, rest, _):
            yield name
            if guard is not None:
                yield from binders(guard)
            yield from binders(rest)
        case InputGuard(_, _, params, body):
            for name, _ in params:
                yield name
            yield from binders(body)
        case _:
            raise TypeError(f"not a term: {term!r}")


def all_idents(term: object) -> set[Ident]:
    return set(free_vars(term)) | set(binders(term))


def size(term: object) -> int:
    """Node count, used by the generator's size budget."""
    match term:
        case Star() | Var() | Hole() | Out():
            return 1
        case Abs(_, _, body):
            return 1 + size(body)
        case App(left, right) | Par(left, right) | AdmPar(left, right) | PiPar(left, right):
            return 1 + size(left) + size(right)
        case PolyAbs(_, body):
            return 1 + size(body)
        case PolyApp(fn, args):
            return 1 + size(fn) + sum(size(arg) for arg in args)
        case AdmDecl(bindings, body):
            return sum(1 + size(binding.value) for binding in bindings) + size(body)
        case Nu(_, guard, rest, _):
            return 1 + (size(guard.body) + 1 if guard is not None else 0) + size(rest)
    raise TypeError(f"not a term: {term!r}")
