"""Capture-avoiding simultaneous substitution for every calculus."""

from __future__ import annotations

from dataclasses import replace
from typing import Mapping

from ..errors import SortMismatch
from .names import Ident, NameSupply
from .scope import free_vars
from .terms import (
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
    is_adm,
    is_pi,
)

LamSubst = dict[Ident, Star | Var | Abs]
NameSubst = dict[Ident, Ident]


def substitute(term, mapping: Mapping[Ident, object], supply: NameSupply | None = None):
    """Replace free occurrences of ``mapping``'s keys, renaming binders that would capture.

    Administrative and π terms only admit names as replacements; λ terms admit
    values (``*``, variables, abstractions).
    """
    if not mapping:
        return term
    if supply is None:
        supply = NameSupply.avoiding(term, list(mapping.keys()), list(mapping.values()))
    if is_adm(term) or is_pi(term):
        return _dispatch_names(term, _as_names(mapping), supply)
    return _lam(term, _as_values(mapping), supply)


def rename(term, mapping: Mapping[Ident, Ident], supply: NameSupply | None = None):
    """Name-for-name substitution, valid for every calculus."""
    if is_adm(term) or is_pi(term):
        return substitute(term, mapping, supply)
    return substitute(term, {key: Var(value) for key, value in mapping.items()}, supply)


def _as_names(mapping: Mapping[Ident, object]) -> NameSubst:
    names: NameSubst = {}
    for key, value in mapping.items():
        if isinstance(value, Ident):
            names[key] = value
        elif isinstance(value, Var):
            names[key] = value.name
        else:
            raise SortMismatch(
                f"only names can replace {key} in administrative or π terms", subject=key
            )
    return names


def _as_values(mapping: Mapping[Ident, object]) -> LamSubst:
    values: LamSubst = {}
    for key, value in mapping.items():
        if isinstance(value, Ident):
            values[key] = Var(value)
        elif isinstance(value, (Star, Var, Abs)):
            values[key] = value
        else:
            raise SortMismatch(f"only values can replace {key} in λ terms", subject=key)
    return values


def _dispatch_names(term, sigma: NameSubst, supply: NameSupply):
    if isinstance(term, (Nu, Out, PiPar)):
        return _pi(term, sigma, supply)
    if isinstance(term, PolyAbs):
        return _value(term, sigma, supply)
    if isinstance(term, AdmDecl):
        return _decl(term, sigma, supply)
    return _aterm(term, sigma, supply)


# λ


def _lam(term, sigma: LamSubst, supply: NameSupply):
    match term:
        case Star():
            return term
        case Var(name):
            return sigma.get(name, term)
        case App(fn, arg):
            return App(_lam(fn, sigma, supply), _lam(arg, sigma, supply))
        case Par(left, right):
            return Par(_lam(left, sigma, supply), _lam(right, sigma, supply))
        case Abs(param, annotation, body):
            inner = {key: value for key, value in sigma.items() if key != param}
            body_fv = free_vars(body)
            live = [value for key, value in inner.items() if key in body_fv]
            if not live:
                return term
            if any(param in free_vars(value) for value in live):
                fresh = supply.fresh(param)
                inner[param] = Var(fresh)
                param = fresh
            return Abs(param, annotation, _lam(body, inner, supply))
    raise SortMismatch(f"not a λ term: {term!r}")


# administrative form


def _bind(name: Ident, sigma: NameSubst, supply: NameSupply) -> tuple[Ident, NameSubst]:
    inner = {key: value for key, value in sigma.items() if key != name}
    if name in inner.values():
        fresh = supply.fresh(name)
        inner[name] = fresh
        return fresh, inner
    return name, inner


def _value(value, sigma: NameSubst, supply: NameSupply):
    if isinstance(value, Star):
        return value
    params = []
    inner = sigma
    for name, annotation in value.params:
        new_name, inner = _bind(name, inner, supply)
        params.append((new_name, annotation))
    return PolyAbs(tuple(params), _decl(value.body, inner, supply))


def _decl(decl: AdmDecl, sigma: NameSubst, supply: NameSupply) -> AdmDecl:
    bindings: list[AdmBinding] = []
    for binding in decl.bindings:
        value = _value(binding.value, sigma, supply)
        name, sigma = _bind(binding.name, sigma, supply)
        bindings.append(replace(binding, name=name, value=value))
    return AdmDecl(tuple(bindings), _aterm(decl.body, sigma, supply))


def _aterm(term, sigma: NameSubst, supply: NameSupply):
    match term:
        case Var(name):
            return Var(sigma.get(name, name))
        case Hole():
            return term
        case PolyApp(fn, args):
            return PolyApp(
                _aterm(fn, sigma, supply), tuple(_aterm(arg, sigma, supply) for arg in args)
            )
        case AdmPar(left, right):
            return AdmPar(_aterm(left, sigma, supply), _aterm(right, sigma, supply))
        case AdmDecl():
            return _decl(term, sigma, supply)
    raise SortMismatch(f"not an administrative term: {term!r}")


# π


def _pi(proc, sigma: NameSubst, supply: NameSupply):
    match proc:
        case Out(channel, args):
            return Out(sigma.get(channel, channel), tuple(sigma.get(arg, arg) for arg in args))
        case PiPar(left, right):
            return PiPar(_pi(left, sigma, supply), _pi(right, sigma, supply))
        case Nu(name, guard, rest, annotation):
            new_name, inner = _bind(name, sigma, supply)
            new_guard = None
            if guard is not None:
                params = []
                guard_sigma = inner
                for param, param_type in guard.params:
                    new_param, guard_sigma = _bind(param, guard_sigma, supply)
                    params.append((new_param, param_type))
                new_guard = InputGuard(
                    guard.replicated, new_name, tuple(params), _pi(guard.body, guard_sigma, supply)
                )
            return Nu(new_name, new_guard, _pi(rest, inner, supply), annotation)
    raise SortMismatch(f"not a π process: {proc!r}")
