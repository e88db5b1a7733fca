from __future__ import annotations

from enum import Enum
from typing import Iterable, Iterator, Mapping

from ..errors import BehaviorMisuse, TypingError
from ..kernel.names import Ident
from ..kernel.types import BEHAVIOR, RESULT, Behavior, Result, TypeExpr


class Calculus(str, Enum):
    LAM = "lam"
    LAM_PAR = "lam-par"
    LAM_P = "lam-p"
    ADM = "adm"
    ADM_PAR = "adm-par"
    CPS = "cps"
    CPS_PAR = "cps-par"
    PI = "pi"

    @property
    def is_lambda(self) -> bool:
        return self in (Calculus.LAM, Calculus.LAM_PAR, Calculus.LAM_P)

    @property
    def is_administrative(self) -> bool:
        return self in (Calculus.ADM, Calculus.ADM_PAR, Calculus.CPS, Calculus.CPS_PAR)

    @property
    def is_cps(self) -> bool:
        return self in (Calculus.CPS, Calculus.CPS_PAR)

    @property
    def is_parallel(self) -> bool:
        return self in (Calculus.LAM_PAR, Calculus.ADM_PAR, Calculus.CPS_PAR, Calculus.PI)

    @property
    def result_type(self) -> TypeExpr | None:
        """The fixed answer type of the CPS calculi."""
        if self is Calculus.CPS:
            return RESULT
        if self in (Calculus.CPS_PAR, Calculus.PI):
            return BEHAVIOR
        return None


class TypingContext:
    """Finite map from identifiers to value types; extension never overwrites."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[Ident, TypeExpr] | Iterable[tuple[Ident, TypeExpr]] = ()):
        pairs = entries.items() if isinstance(entries, Mapping) else entries
        self._entries: dict[Ident, TypeExpr] = {}
        for name, ty in pairs:
            self._add(name, ty)

    def _add(self, name: Ident, ty: TypeExpr) -> None:
        if name in self._entries:
            raise TypingError(f"{name} is already in the context", subject=name)
        if isinstance(ty, (Behavior, Result)):
            raise BehaviorMisuse(f"{name} cannot have a behavior or result type", subject=name)
        self._entries[name] = ty

    def extend(self, name: Ident, ty: TypeExpr) -> TypingContext:
        extended = TypingContext(self._entries)
        extended._add(name, ty)
        return extended

    def extend_many(self, pairs: Iterable[tuple[Ident, TypeExpr]]) -> TypingContext:
        extended = TypingContext(self._entries)
        for name, ty in pairs:
            extended._add(name, ty)
        return extended

    def lookup(self, name: Ident) -> TypeExpr | None:
        return self._entries.get(name)

    @property
    def domain(self) -> frozenset[Ident]:
        return frozenset(self._entries)

    def items(self) -> list[tuple[Ident, TypeExpr]]:
        return list(self._entries.items())

    def map_types(self, fn) -> TypingContext:
        return TypingContext((name, fn(ty)) for name, ty in self._entries.items())

    def __contains__(self, name: object) -> bool:
        return name in self._entries

    def __iter__(self) -> Iterator[Ident]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TypingContext) and self._entries == other._entries

    def __hash__(self) -> int:
        return hash(frozenset(self._entries.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{name}: {ty}" for name, ty in self._entries.items())
        return f"TypingContext({inner})"


EMPTY = TypingContext()
