from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

_INDEXED = re.compile(r"^(?P<base>.+?)_(?P<index>\d+)$")


@dataclass(frozen=True, order=True)
class Ident:
    """An identifier: a readable stem plus a disambiguating index.

    Index 0 prints as the bare stem; any other index prints as ``stem_index``,
    which :meth:`parse` reads back to the same pair.
    """

    base: str
    index: int = 0

    @classmethod
    def parse(cls, text: str) -> Ident:
        match = _INDEXED.match(text)
        if match:
            return cls(match.group("base"), int(match.group("index")))
        return cls(text, 0)

    def __str__(self) -> str:
        if self.index == 0:
            return self.base
        return f"{self.base}_{self.index}"


def ident(text: str) -> Ident:
    return Ident.parse(text)


class NameSupply:
    """Monotone counter handing out identifiers unused in the terms it was built from.

    One supply belongs to one construction session; it is not meant to be shared
    between threads.
    """

    def __init__(self, start: int = 1):
        self._next = max(1, start)

    @classmethod
    def avoiding(cls, *items: object) -> NameSupply:
        supply = cls()
        supply.reserve(*items)
        return supply

    def reserve(self, *items: object) -> None:
        from .scope import all_idents

        for item in items:
            for name in _idents_of(item, all_idents):
                if name.index >= self._next:
                    self._next = name.index + 1

    def fresh(self, base: str | Ident) -> Ident:
        stem = base.base if isinstance(base, Ident) else base
        name = Ident(stem, self._next)
        self._next += 1
        return name

    @property
    def next_index(self) -> int:
        return self._next


def _idents_of(item: object, collect) -> Iterable[Ident]:
    if item is None:
        return ()
    if isinstance(item, Ident):
        return (item,)
    if isinstance(item, (list, tuple, set, frozenset)):
        names: list[Ident] = []
        for element in item:
            names.extend(_idents_of(element, collect))
        return names
    if isinstance(item, dict):
        names = []
        for key, value in item.items():
            names.extend(_idents_of(key, collect))
            names.extend(_idents_of(value, collect))
        return names
    if hasattr(item, "domain") and callable(getattr(item, "items", None)):
        return [name for name, _ in item.items()]
    return collect(item)
