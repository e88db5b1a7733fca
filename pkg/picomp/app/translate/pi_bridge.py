"""Correspondence between continuation-passing declarations and typed π.

Definitions become restricted input guards, calls become outputs.  A bare
restriction is read back according to its type: ``Ch[Unit]`` names a unit
value, any other channel a dead (usage-0) definition.
"""

from __future__ import annotations

import logging
from dataclasses import replace

from ..errors import NotCpsShape, TypingError, UntypablePi
from ..kernel.alpha import rename_apart
from ..kernel.names import NameSupply
from ..kernel.terms import (
    AdmBinding,
    AdmDecl,
    AdmPar,
    InputGuard,
    Nu,
    Out,
    PiPar,
    PolyAbs,
    PolyApp,
    Star,
    Usage,
    Var,
)
from ..kernel.types import BEHAVIOR, CH_UNIT, TypeExpr, chan_type, channel_signature
from ..typecheck.checker import infer_type, is_cps_shape
from ..typecheck.context import EMPTY, Calculus, TypingContext

logger = logging.getLogger(__name__)


def to_pi(decl):
    if not isinstance(decl, AdmDecl):
        decl = AdmDecl((), decl)
    if not is_cps_shape(decl):
        raise NotCpsShape("only continuation-passing declarations have a π image")
    return _decl_to_pi(decl)


def _decl_to_pi(decl: AdmDecl):
    proc = _term_to_pi(decl.body)
    for binding in reversed(decl.bindings):
        proc = _binding_to_pi(binding, proc)
    return proc


def _binding_to_pi(binding: AdmBinding, rest):
    value = binding.value
    if isinstance(value, Star):
        return Nu(binding.name, None, rest, CH_UNIT)
    if binding.usage is Usage.ZERO:
        annotation = binding.declared or chan_type(value.param_types, BEHAVIOR)
        return Nu(binding.name, None, rest, annotation)
    guard = InputGuard(
        binding.usage is Usage.INFINITE,
        binding.name,
        tuple(value.params),
        _decl_to_pi(value.body),
    )
    return Nu(binding.name, guard, rest, binding.declared)


def _term_to_pi(term):
    match term:
        case PolyApp(Var(channel), args):
            return Out(channel, tuple(arg.name for arg in args))
        case AdmPar(left, right):
            return PiPar(_term_to_pi(left), _term_to_pi(right))
    raise NotCpsShape(f"no π image for {term!r}")


def from_pi(proc, ctx: TypingContext | None = None) -> AdmDecl:
    ctx = ctx if ctx is not None else EMPTY
    try:
        infer_type(ctx, proc, Calculus.PI)
    except TypingError as exc:
        raise UntypablePi(f"π process is not typable: {exc}", subject=exc.subject) from exc
    proc = rename_apart(proc, ctx.domain)
    return _Reader(NameSupply.avoiding(proc, ctx)).proc(proc)


class _Reader:
    def __init__(self, supply: NameSupply):
        self.supply = supply

    def proc(self, proc) -> AdmDecl:
        match proc:
            case Out(channel, args):
                return AdmDecl((), PolyApp(Var(channel), tuple(Var(arg) for arg in args)))
            case PiPar(left, right):
                # binders are distinct, so restrictions extrude past the composition
                first, second = self.proc(left), self.proc(right)
                return AdmDecl(first.bindings + second.bindings, AdmPar(first.body, second.body))
            case Nu(name, None, rest, annotation):
                inner = self.proc(rest)
                return AdmDecl((self.restriction(name, annotation),) + inner.bindings, inner.body)
            case Nu(name, guard, rest, annotation):
                value = PolyAbs(tuple(guard.params), self.proc(guard.body))
                usage = Usage.INFINITE if guard.replicated else Usage.ONE
                inner = self.proc(rest)
                binding = AdmBinding(usage, name, value, annotation)
                return AdmDecl((binding,) + inner.bindings, inner.body)
        raise UntypablePi(f"not a π process: {proc!r}")

    def restriction(self, name, annotation: TypeExpr) -> AdmBinding:
        if annotation == CH_UNIT:
            return AdmBinding(Usage.INFINITE, name, Star())
        return AdmBinding(Usage.ZERO, name, self.placeholder(annotation), annotation)

    def placeholder(self, annotation: TypeExpr) -> PolyAbs:
        """η-style value re-emitting its own parameters; never typed under usage 0."""
        domain, _ = channel_signature(annotation)
        params = tuple((self.supply.fresh("y"), ty) for ty in domain)
        first = Var(params[0][0])
        return PolyAbs(params, AdmDecl((), PolyApp(first, tuple(Var(name) for name, _ in params))))


def erase_dead_values(decl, supply: NameSupply | None = None):
    """Replace every usage-0 value by the placeholder :func:`from_pi` would build.

    Dead values are never typed or called, so two declarations that agree
    elsewhere are interchangeable.
    """
    if not isinstance(decl, AdmDecl):
        return decl
    supply = supply or NameSupply.avoiding(decl)
    reader = _Reader(supply)
    bindings = []
    for binding in decl.bindings:
        value = binding.value
        if binding.usage is Usage.ZERO and isinstance(value, PolyAbs):
            declared = binding.declared or chan_type(value.param_types, BEHAVIOR)
            bindings.append(replace(binding, value=reader.placeholder(declared), declared=declared))
        elif isinstance(value, PolyAbs):
            body = erase_dead_values(value.body, supply)
            bindings.append(replace(binding, value=PolyAbs(value.params, body)))
        else:
            bindings.append(binding)
    return AdmDecl(tuple(bindings), decl.body)
