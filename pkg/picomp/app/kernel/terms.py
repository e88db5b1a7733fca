"""Abstract syntax of the λ, administrative and π calculi.

All nodes are frozen dataclasses and compare structurally.  Bound names are
ordinary :class:`Ident` values; α-equivalence lives in :mod:`.alpha`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..errors import MalformedTerm
from .names import Ident
from .types import TypeExpr


class Usage(Enum):
    INFINITE = "inf"
    ONE = "1"
    ZERO = "0"

    def decrement(self) -> Usage:
        if self is Usage.INFINITE:
            return Usage.INFINITE
        if self is Usage.ONE:
            return Usage.ZERO
        raise MalformedTerm("usage 0 cannot be decremented")

    @property
    def callable(self) -> bool:
        return self is not Usage.ZERO


# λ and λ_∥


@dataclass(frozen=True)
class Star:
    pass


@dataclass(frozen=True)
class Var:
    name: Ident


@dataclass(frozen=True)
class Abs:
    param: Ident
    annotation: TypeExpr
    body: LamTerm


@dataclass(frozen=True)
class App:
    fn: LamTerm
    arg: LamTerm


@dataclass(frozen=True)
class Par:
    left: LamTerm
    right: LamTerm


LamTerm = Star | Var | Abs | App | Par


def is_value(term: LamTerm) -> bool:
    return isinstance(term, (Star, Var, Abs))


# administrative form


@dataclass(frozen=True)
class PolyAbs:
    params: tuple[tuple[Ident, TypeExpr], ...]
    body: AdmDecl

    def __post_init__(self) -> None:
        if not self.params:
            raise MalformedTerm("abstractions need at least one parameter")

    @property
    def param_names(self) -> tuple[Ident, ...]:
        return tuple(name for name, _ in self.params)

    @property
    def param_types(self) -> tuple[TypeExpr, ...]:
        return tuple(ty for _, ty in self.params)


@dataclass(frozen=True)
class PolyApp:
    fn: AdmTerm
    args: tuple[AdmTerm, ...]

    def __post_init__(self) -> None:
        if not self.args:
            raise MalformedTerm("applications need at least one argument")

    @property
    def items(self) -> tuple[AdmTerm, ...]:
        return (self.fn, *self.args)


@dataclass(frozen=True)
class AdmPar:
    left: AdmTerm
    right: AdmTerm


@dataclass(frozen=True)
class Hole:
    """The hole of an evaluation context, used only by :func:`desugar.plug`."""


@dataclass(frozen=True)
class AdmBinding:
    usage: Usage
    name: Ident
    value: AdmValue
    declared: TypeExpr | None = None


@dataclass(frozen=True)
class AdmDecl:
    bindings: tuple[AdmBinding, ...]
    body: AdmTerm


AdmValue = Star | PolyAbs
# AdmDecl and Hole only occur in surface terms before desugaring.
AdmTerm = Var | PolyApp | AdmPar | AdmDecl | Hole


def term_decl(body: AdmTerm) -> AdmDecl:
    return AdmDecl((), body)


# π


@dataclass(frozen=True)
class InputGuard:
    replicated: bool
    channel: Ident
    params: tuple[tuple[Ident, TypeExpr | None], ...]
    body: PiProc

    def __post_init__(self) -> None:
        if not self.params:
            raise MalformedTerm("inputs need at least one parameter")

    @property
    def param_names(self) -> tuple[Ident, ...]:
        return tuple(name for name, _ in self.params)


@dataclass(frozen=True)
class Nu:
    name: Ident
    guard: InputGuard | None
    rest: PiProc
    annotation: TypeExpr | None = None

    def __post_init__(self) -> None:
        if self.guard is not None and self.guard.channel != self.name:
            raise MalformedTerm(
                f"input guard on {self.guard.channel} under restriction of {self.name}",
                subject=self.name,
            )


@dataclass(frozen=True)
class Out:
    channel: Ident
    args: tuple[Ident, ...]

    def __post_init__(self) -> None:
        if not self.args:
            raise MalformedTerm("outputs need at least one argument")


@dataclass(frozen=True)
class PiPar:
    left: PiProc
    right: PiProc


PiProc = Nu | Out | PiPar

Term = LamTerm | AdmDecl | AdmValue | AdmTerm | PiProc


def is_lam(term: object) -> bool:
    return isinstance(term, (Star, Var, Abs, App, Par))


def is_adm(term: object) -> bool:
    return isinstance(term, (AdmDecl, PolyAbs, PolyApp, AdmPar, Hole))


def is_pi(term: object) -> bool:
    return isinstance(term, (Nu, Out, PiPar))
