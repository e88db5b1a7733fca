from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..errors import MalformedTerm


@dataclass(frozen=True)
class Unit:
    pass


@dataclass(frozen=True)
class Behavior:
    pass


@dataclass(frozen=True)
class Result:
    pass


@dataclass(frozen=True)
class Arrow:
    domain: tuple[TypeExpr, ...]
    codomain: TypeExpr

    def __post_init__(self) -> None:
        if not self.domain:
            raise MalformedTerm("arrow types need at least one domain type")


@dataclass(frozen=True)
class Chan:
    payload: TypeExpr

    def __post_init__(self) -> None:
        if not isinstance(self.payload, (Unit, Arrow)):
            raise MalformedTerm("channel payload must be Unit or an arrow")


TypeExpr = Unit | Behavior | Result | Arrow | Chan

UNIT = Unit()
BEHAVIOR = Behavior()
RESULT = Result()
CH_UNIT = Chan(UNIT)


def fn_type(domain: TypeExpr, codomain: TypeExpr) -> Arrow:
    """Unary arrow of the λ calculi."""
    return Arrow((domain,), codomain)


def chan_type(domain: Iterable[TypeExpr], codomain: TypeExpr) -> Chan:
    return Chan(Arrow(tuple(domain), codomain))


def channel_signature(ty: TypeExpr) -> tuple[tuple[TypeExpr, ...], TypeExpr] | None:
    """Domain and codomain of a callable channel type, or None."""
    if isinstance(ty, Chan) and isinstance(ty.payload, Arrow):
        return ty.payload.domain, ty.payload.codomain
    return None


def mentions(ty: TypeExpr, kind: type) -> bool:
    match ty:
        case Arrow(domain, codomain):
            return any(mentions(part, kind) for part in domain) or mentions(codomain, kind)
        case Chan(payload):
            return mentions(payload, kind)
        case _:
            return isinstance(ty, kind)


def type_depth(ty: TypeExpr) -> int:
    match ty:
        case Arrow(domain, codomain):
            return 1 + max(type_depth(part) for part in (*domain, codomain))
        case Chan(payload):
            return type_depth(payload) if isinstance(payload, Arrow) else 1
        case _:
            return 1
