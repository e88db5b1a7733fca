from __future__ import annotations

from dataclasses import replace
from typing import Callable

from .names import Ident, NameSupply
from .scope import all_idents, free_vars
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
)

Renamer = Callable[[Ident], Ident]


def rebind(term, fresh: Renamer):
    """Rename every binder of ``term`` through ``fresh``, in pre-order."""
    return _rebind(term, {}, fresh)


def _rebind(term, env: dict[Ident, Ident], fresh: Renamer):
    match term:
        case Star() | Hole():
            return term
        case Var(name):
            return Var(env.get(name, name))
        case Abs(param, annotation, body):
            new = fresh(param)
            return Abs(new, annotation, _rebind(body, {**env, param: new}, fresh))
        case App(fn, arg):
            return App(_rebind(fn, env, fresh), _rebind(arg, env, fresh))
        case Par(left, right):
            return Par(_rebind(left, env, fresh), _rebind(right, env, fresh))
        case AdmPar(left, right):
            return AdmPar(_rebind(left, env, fresh), _rebind(right, env, fresh))
        case PiPar(left, right):
            return PiPar(_rebind(left, env, fresh), _rebind(right, env, fresh))
        case PolyAbs(params, body):
            inner = dict(env)
            new_params = []
            for name, annotation in params:
                new = fresh(name)
                inner[name] = new
                new_params.append((new, annotation))
            return PolyAbs(tuple(new_params), _rebind(body, inner, fresh))
        case PolyApp(fn, args):
            return PolyApp(_rebind(fn, env, fresh), tuple(_rebind(arg, env, fresh) for arg in args))
        case AdmDecl(bindings, body):
            inner = dict(env)
            new_bindings: list[AdmBinding] = []
            for binding in bindings:
                value = _rebind(binding.value, inner, fresh)
                new = fresh(binding.name)
                inner[binding.name] = new
                new_bindings.append(replace(binding, name=new, value=value))
            return AdmDecl(tuple(new_bindings), _rebind(body, inner, fresh))
        case Out(channel, args):
            return Out(env.get(channel, channel), tuple(env.get(arg, arg) for arg in args))
        case Nu(name, guard, rest, annotation):
            new = fresh(name)
            inner = {**env, name: new}
            new_guard = None
            if guard is not None:
                guard_env = dict(inner)
                params = []
                for param, param_type in guard.params:
                    new_param = fresh(param)
                    guard_env[param] = new_param
                    params.append((new_param, param_type))
                new_guard = InputGuard(
                    guard.replicated, new, tuple(params), _rebind(guard.body, guard_env, fresh)
                )
            return Nu(new, new_guard, _rebind(rest, inner, fresh), annotation)
    raise TypeError(f"not a term: {term!r}")


def freshen(term, supply: NameSupply):
    """Give every binder a fresh name from ``supply``, keeping stems."""
    return rebind(term, supply.fresh)


def _offset(*terms) -> int:
    indices = [name.index for term in terms for name in free_vars(term)]
    return 1 + max(indices, default=0)


def canonical(term, *, keep_base: bool = True, offset: int | None = None):
    """Rename binders to position-indexed names above every free index.

    With ``keep_base`` the stems survive, which keeps printed output readable;
    without it the result is a pure function of the α-class.
    """
    counter = [_offset(term) if offset is None else offset]

    def positional(name: Ident) -> Ident:
        index = counter[0]
        counter[0] += 1
        return Ident(name.base if keep_base else "v", index)

    return rebind(term, positional)


def alpha_key(term, offset: int | None = None):
    return canonical(term, keep_base=False, offset=offset)


def alpha_equal(left, right) -> bool:
    if type(left) is not type(right):
        return False
    if free_vars(left) != free_vars(right):
        return False
    offset = _offset(left, right)
    return alpha_key(left, offset) == alpha_key(right, offset)


def needs_renaming(term, avoid: frozenset[Ident] | set[Ident] = frozenset()) -> bool:
    """True when some binder repeats, or clashes with ``avoid`` or a free name."""
    from .scope import binders

    seen: set[Ident] = set(avoid) | set(free_vars(term))
    for name in binders(term):
        if name in seen:
            return True
        seen.add(name)
    return False


def rename_apart(term, avoid: frozenset[Ident] | set[Ident] = frozenset(), supply=None):
    if not needs_renaming(term, avoid):
        return term
    supply = supply or NameSupply.avoiding(term, list(avoid))
    return freshen(term, supply)


__all__ = [
    "all_idents",
    "alpha_equal",
    "alpha_key",
    "canonical",
    "freshen",
    "needs_renaming",
    "rebind",
    "rename_apart",
]
