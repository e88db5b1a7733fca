"""Decision procedure for structural congruence.

A term is brought to canonical form by erasing unused declarations (eq₂),
permuting independent adjacent declarations into first-use order (eq₁) and
renaming binders positionally.  Both rewrites act on binding lists: the
``bindings`` of an :class:`AdmDecl`, or the restriction spine of a π process.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Literal

from ..errors import MalformedTerm
from .alpha import alpha_equal, alpha_key, canonical, freshen
from .names import Ident, NameSupply
from .scope import first_occurrences, free_vars
from .terms import AdmDecl, InputGuard, Nu, PiPar, PolyAbs, is_adm, is_pi

PathItem = int | Literal["left", "right"]


@dataclass(frozen=True)
class CongruenceStep:
    rule: Literal["eq1", "eq2"]
    path: tuple[PathItem, ...]
    index: int


def split_spine(proc) -> tuple[list[Nu], object]:
    """Restriction headers from the root down, and the process under them."""
    headers: list[Nu] = []
    while isinstance(proc, Nu):
        headers.append(proc)
        proc = proc.rest
    return headers, proc


def join_spine(headers: list[Nu], tail):
    proc = tail
    for header in reversed(headers):
        proc = replace(header, rest=proc)
    return proc


# binding-list views


def _entries(term) -> tuple[list, object]:
    if isinstance(term, AdmDecl):
        return list(term.bindings), term.body
    return split_spine(term)


def _rebuild(term, entries: list, tail):
    if isinstance(term, AdmDecl):
        return AdmDecl(tuple(entries), tail)
    return join_spine(entries, tail)


def _name(entry) -> Ident:
    return entry.name


def _payload(entry):
    if isinstance(entry, Nu):
        return entry.guard
    return entry.value


def _uses(entry) -> frozenset[Ident]:
    payload = _payload(entry)
    if payload is None:
        return frozenset()
    return free_vars(payload) - {entry.name}


def _use_order(entry) -> list[Ident]:
    payload = _payload(entry)
    if payload is None:
        return []
    return [name for name in first_occurrences(payload) if name != entry.name]


def _with_nested(entry, nested):
    if isinstance(entry, Nu):
        return replace(entry, guard=replace(entry.guard, body=nested))
    return replace(entry, value=replace(entry.value, body=nested))


def _nested(entry):
    payload = _payload(entry)
    if isinstance(payload, (PolyAbs, InputGuard)):
        return payload.body
    return None


def _is_list_term(term) -> bool:
    return isinstance(term, AdmDecl) or isinstance(term, Nu)


# normalization


def _first_use_order(entries: list, tail) -> list[Ident]:
    index = {_name(entry): entry for entry in entries}
    placed: set[Ident] = set()
    order: list[Ident] = []

    def visit(name: Ident) -> None:
        if name in placed or name not in index:
            return
        placed.add(name)
        for dependency in _use_order(index[name]):
            visit(dependency)
        order.append(name)

    for name in first_occurrences(tail):
        visit(name)
    # Whatever the traversal missed keeps its relative order at the end.
    for entry in entries:
        if _name(entry) not in placed:
            order.append(_name(entry))
    return order


def _erase_unused(entries: list, tail, path, trace: list[CongruenceStep]) -> list:
    entries = list(entries)
    position = len(entries) - 1
    while position >= 0:
        later = set(free_vars(tail))
        for entry in entries[position + 1 :]:
            later |= _uses(entry)
        if _name(entries[position]) not in later:
            trace.append(CongruenceStep("eq2", path, position))
            del entries[position]
        position -= 1
    return entries


def _reorder(entries: list, tail, path, trace: list[CongruenceStep]) -> list:
    entries = list(entries)
    target = _first_use_order(entries, tail)
    for position, name in enumerate(target):
        current = next(i for i, entry in enumerate(entries) if _name(entry) == name)
        while current > position:
            trace.append(CongruenceStep("eq1", path, current - 1))
            entries[current - 1], entries[current] = entries[current], entries[current - 1]
            current -= 1
    return entries


def _normalize(term, path: tuple[PathItem, ...], trace: list[CongruenceStep]):
    if isinstance(term, PiPar):
        return PiPar(
            _normalize(term.left, path + ("left",), trace),
            _normalize(term.right, path + ("right",), trace),
        )
    if not _is_list_term(term):
        return term
    entries, tail = _entries(term)
    entries = [
        _with_nested(entry, _normalize(_nested(entry), path + (i,), trace))
        if _nested(entry) is not None
        else entry
        for i, entry in enumerate(entries)
    ]
    if isinstance(tail, PiPar):
        tail = _normalize(tail, path, trace)
    entries = _erase_unused(entries, tail, path, trace)
    entries = _reorder(entries, tail, path, trace)
    return _rebuild(term, entries, tail)


def normalize_with_trace(term) -> tuple[object, list[CongruenceStep]]:
    """Canonical form of ``term`` and the eq₁/eq₂ steps leading to it.

    Steps are stated against the binder-freshened input; the final positional
    renaming is an α step and is not listed.
    """
    if not (is_adm(term) or is_pi(term)):
        return canonical(term), []
    unique = freshen(term, NameSupply.avoiding(term))
    trace: list[CongruenceStep] = []
    return canonical(_normalize(unique, (), trace)), trace


def normalize_congruence(term):
    return normalize_with_trace(term)[0]


def congruent(left, right) -> bool:
    return alpha_equal(normalize_congruence(left), normalize_congruence(right))


def congruence_key(term):
    """Hashable key identifying the ≡-class of ``term``."""
    return alpha_key(normalize_congruence(term))


# replay


def _apply_at(term, path: tuple[PathItem, ...], step: CongruenceStep):
    if not path:
        return _apply_step(term, step)
    head, rest = path[0], path[1:]
    if head in ("left", "right"):
        if isinstance(term, Nu):
            entries, tail = _entries(term)
            return _rebuild(term, entries, _apply_at(tail, path, step))
        if not isinstance(term, PiPar):
            raise MalformedTerm(f"congruence step path {step.path} leaves the term")
        if head == "left":
            return PiPar(_apply_at(term.left, rest, step), term.right)
        return PiPar(term.left, _apply_at(term.right, rest, step))
    entries, tail = _entries(term)
    if not isinstance(head, int) or head >= len(entries) or _nested(entries[head]) is None:
        raise MalformedTerm(f"congruence step path {step.path} leaves the term")
    entries[head] = _with_nested(entries[head], _apply_at(_nested(entries[head]), rest, step))
    return _rebuild(term, entries, tail)


def _apply_step(term, step: CongruenceStep):
    if isinstance(term, PiPar):
        raise MalformedTerm("congruence steps apply to binding lists")
    entries, tail = _entries(term)
    i = step.index
    if step.rule == "eq2":
        later = set(free_vars(tail))
        for entry in entries[i + 1 :]:
            later |= _uses(entry)
        if _name(entries[i]) in later:
            raise MalformedTerm(f"eq2 on {_name(entries[i])}, which is still used")
        del entries[i]
    else:
        first, second = entries[i], entries[i + 1]
        if _name(first) in _uses(second) or _name(second) in _uses(first):
            raise MalformedTerm(f"eq1 swaps dependent declarations {_name(first)}, {_name(second)}")
        entries[i], entries[i + 1] = second, first
    return _rebuild(term, entries, tail)


def replay_congruence(term, trace: list[CongruenceStep]):
    """Apply a rewrite trace, checking each side condition, and α-normalize."""
    if not (is_adm(term) or is_pi(term)):
        return canonical(term)
    current = freshen(term, NameSupply.avoiding(term))
    for step in trace:
        current = _apply_at(current, step.path, step)
    return canonical(current)
