"""Type synthesis for every calculus over annotated terms."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..errors import (
    ArityMismatch,
    BehaviorMisuse,
    MalformedTerm,
    MissingAnnotation,
    NotInFragment,
    RecursiveDefinition,
    TypeMismatch,
    TypingError,
    UnboundVariable,
    UsageViolation,
)
from ..kernel.alpha import rename_apart
from ..kernel.desugar import desugar, is_core
from ..kernel.names import Ident
from ..kernel.scope import free_vars
from ..kernel.terms import (
    Abs,
    AdmBinding,
    AdmDecl,
    AdmPar,
    App,
    Hole,
    Nu,
    Out,
    Par,
    PiPar,
    PolyAbs,
    PolyApp,
    Star,
    Usage,
    Var,
    is_pi,
)
from ..kernel.types import (
    BEHAVIOR,
    CH_UNIT,
    UNIT,
    Arrow,
    Behavior,
    Chan,
    Result,
    TypeExpr,
    Unit,
    chan_type,
    channel_signature,
    fn_type,
)
from .context import EMPTY, Calculus, TypingContext

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Ok:
    """Verdict of the π judgment, which carries no type."""


OK = Ok()


def infer_type(
    ctx: TypingContext | None,
    term,
    which: Calculus | str,
    *,
    monadic: bool = False,
):
    which = Calculus(which)
    ctx = ctx if ctx is not None else EMPTY
    if which is Calculus.PI:
        if not is_pi(term):
            raise NotInFragment("expected a π process")
        check_pi_wellformed(term)
    checker = _Checker(which, monadic)
    # definition order is judged on the names as written
    if which is Calculus.PI:
        checker.pi_scope(term, frozenset())
    elif which.is_administrative:
        checker.adm_scope(term, ctx.domain, frozenset())
    term = rename_apart(term, ctx.domain)
    if which.is_lambda:
        return checker.lam(ctx, term)
    if which is Calculus.PI:
        checker.pi(ctx, term)
        return OK
    if isinstance(term, (Star, PolyAbs)):
        return checker.binding(ctx, AdmBinding(Usage.INFINITE, Ident("_"), term), frozenset())
    if isinstance(term, AdmDecl) and not is_core(term):
        term = desugar(term)
    if which.is_cps and not is_cps_shape(term):
        raise NotInFragment("continuation-passing terms only apply variables to variables")
    if isinstance(term, AdmDecl):
        return checker.decl(ctx, term, frozenset())
    return checker.term(ctx, term, frozenset())


def binding_type(
    ctx: TypingContext, binding: AdmBinding, which: Calculus | str, *, monadic: bool = False
) -> TypeExpr:
    """Type a single binding's name would receive in ``ctx``."""
    return _Checker(Calculus(which), monadic).binding(ctx, binding, frozenset())


def well_formed_type(ty: TypeExpr, which: Calculus | str) -> bool:
    try:
        _Checker(Calculus(which), False).value_type(ty, None)
    except TypingError:
        return False
    return True


def is_monadic(ty: TypeExpr) -> bool:
    match ty:
        case Behavior():
            return True
        case Chan(Unit()):
            return True
        case Chan(Arrow(domain, codomain)):
            return len(domain) == 1 and is_monadic(domain[0]) and is_monadic(codomain)
    return False


def is_monadic_typing(ctx: TypingContext | None, decl, which: Calculus | str) -> bool:
    """The ⊢am judgment: typable with monadic types and unary applications only."""
    try:
        infer_type(ctx, decl, which, monadic=True)
    except TypingError:
        return False
    return True


def is_cps_shape(term) -> bool:
    match term:
        case AdmDecl(bindings, body):
            return all(is_cps_shape(b.value) for b in bindings) and _cps_term(body)
        case PolyAbs(_, body):
            return is_cps_shape(body)
        case Star():
            return True
        case _:
            return _cps_term(term)


def _cps_term(term) -> bool:
    match term:
        case PolyApp(fn, args):
            return isinstance(fn, Var) and all(isinstance(arg, Var) for arg in args)
        case AdmPar(left, right):
            return _cps_term(left) and _cps_term(right)
    return False


def check_pi_wellformed(proc) -> None:
    """An input guard never contains an input on the name it defines."""
    match proc:
        case Out():
            return
        case PiPar(left, right):
            check_pi_wellformed(left)
            check_pi_wellformed(right)
        case Nu(name, guard, rest, _):
            if guard is not None:
                if _defines(guard.body, name):
                    raise MalformedTerm(
                        f"the definition of {name} contains an input on {name}", subject=name
                    )
                check_pi_wellformed(guard.body)
            check_pi_wellformed(rest)


def _defines(proc, name: Ident) -> bool:
    match proc:
        case Nu(inner, guard, rest, _):
            if inner == name and guard is not None:
                return True
            return (guard is not None and _defines(guard.body, name)) or _defines(rest, name)
        case PiPar(left, right):
            return _defines(left, name) or _defines(right, name)
    return False


class _Checker:
    def __init__(self, which: Calculus, monadic: bool):
        self.which = which
        self.monadic = monadic

    # well-formedness of types

    def value_type(self, ty: TypeExpr, subject: Ident | None) -> None:
        which = self.which
        if isinstance(ty, Behavior) and which is not Calculus.LAM_P:
            raise BehaviorMisuse("behavior type in argument or context position", subject=subject)
        if isinstance(ty, Result):
            raise NotInFragment("the result type only occurs as an answer type", subject=subject)
        if which.is_lambda:
            if isinstance(ty, (Unit, Behavior)):
                return
            if isinstance(ty, Arrow) and len(ty.domain) == 1:
                self.value_type(ty.domain[0], subject)
                self.codomain(ty.codomain, subject)
                return
            raise NotInFragment(f"{ty} is not a λ type", subject=subject)
        if ty == CH_UNIT:
            return
        signature = channel_signature(ty)
        if signature is None:
            raise NotInFragment(f"{ty} is not a channel type", subject=subject)
        domain, codomain = signature
        for part in domain:
            self.value_type(part, subject)
        self.codomain(codomain, subject)

    def codomain(self, ty: TypeExpr, subject: Ident | None) -> None:
        which = self.which
        if which.is_cps or which is Calculus.PI:
            if ty != which.result_type:
                raise NotInFragment(
                    f"continuation-passing functions answer {which.result_type}, not {ty}",
                    subject=subject,
                )
            return
        if isinstance(ty, Behavior):
            if which.is_parallel or which is Calculus.LAM_P:
                return
            raise NotInFragment("behaviors only exist in the parallel calculi", subject=subject)
        self.value_type(ty, subject)

    # λ

    def lam(self, ctx: TypingContext, term) -> TypeExpr:
        match term:
            case Star():
                return UNIT
            case Var(name):
                return self._lookup(ctx, name, frozenset())
            case Abs(param, annotation, body):
                self.value_type(annotation, param)
                result = self.lam(ctx.extend(param, annotation), body)
                self.codomain(result, param)
                return fn_type(annotation, result)
            case App(fn, arg):
                fn_ty = self.lam(ctx, fn)
                arg_ty = self.lam(ctx, arg)
                if isinstance(arg_ty, Behavior) and self.which is not Calculus.LAM_P:
                    raise BehaviorMisuse("a behavior cannot be passed as an argument")
                if not isinstance(fn_ty, Arrow):
                    if isinstance(fn_ty, Behavior):
                        raise BehaviorMisuse("a behavior cannot be applied")
                    raise TypeMismatch(f"applying a term of type {fn_ty}")
                if fn_ty.domain[0] != arg_ty:
                    expected = fn_ty.domain[0]
                    raise TypeMismatch(f"expected an argument of type {expected}, got {arg_ty}")
                return fn_ty.codomain
            case Par(left, right):
                if self.which is not Calculus.LAM_PAR:
                    raise NotInFragment("parallel composition outside λ_∥")
                for side in (left, right):
                    side_ty = self.lam(ctx, side)
                    if not isinstance(side_ty, Behavior):
                        raise TypeMismatch(f"parallel components must be behaviors, got {side_ty}")
                return BEHAVIOR
        raise NotInFragment(f"not a λ term: {term!r}")

    # administrative form

    def decl(self, ctx: TypingContext, decl: AdmDecl, pending: frozenset[Ident]) -> TypeExpr:
        names = [binding.name for binding in decl.bindings]
        for position, binding in enumerate(decl.bindings):
            later = frozenset(names[position:])
            ty = self.binding(ctx, binding, pending | later)
            ctx = ctx.extend(binding.name, ty)
        return self.term(ctx, decl.body, pending)

    def binding(
        self, ctx: TypingContext, binding: AdmBinding, pending: frozenset[Ident]
    ) -> TypeExpr:
        which = self.which
        usage = binding.usage
        if not which.is_parallel and usage is not Usage.INFINITE:
            raise NotInFragment(
                "functional administrative terms carry no usages", subject=binding.name
            )
        value = binding.value
        if isinstance(value, Star):
            if usage is not Usage.INFINITE:
                raise UsageViolation(
                    f"* bound to {binding.name} needs usage inf", subject=binding.name
                )
            ty: TypeExpr = CH_UNIT
        else:
            for name, annotation in value.params:
                self.value_type(annotation, name)
            if usage is Usage.ZERO:
                ty = self._dead_type(ctx, binding, pending)
            else:
                inner = ctx.extend_many(value.params)
                result = self.decl(inner, value.body, pending)
                self.codomain(result, binding.name)
                ty = chan_type(value.param_types, result)
                if binding.declared is not None and binding.declared != ty:
                    raise TypeMismatch(
                        f"{binding.name} is declared {binding.declared} but has type {ty}",
                        subject=binding.name,
                    )
        if self.monadic and not is_monadic(ty):
            raise NotInFragment(f"{binding.name} has a non-monadic type", subject=binding.name)
        return ty

    def _dead_type(self, ctx: TypingContext, binding: AdmBinding, pending) -> TypeExpr:
        value = binding.value
        if binding.declared is not None:
            self.value_type(binding.declared, binding.name)
            if channel_signature(binding.declared) is None:
                raise TypeMismatch(
                    f"{binding.name} must be declared with a callable channel type",
                    subject=binding.name,
                )
            return binding.declared
        if self.which.result_type is not None:
            return chan_type(value.param_types, self.which.result_type)
        try:
            result = self.decl(ctx.extend_many(value.params), value.body, pending)
        except TypingError as exc:
            raise MissingAnnotation(
                f"usage-0 binding {binding.name} needs a declared type", subject=binding.name
            ) from exc
        return chan_type(value.param_types, result)

    def adm_scope(self, term, scope: frozenset[Ident], pending: frozenset[Ident]) -> None:
        """Typed values may mention neither their own name nor a name bound after them."""
        match term:
            case AdmDecl(bindings, body):
                names = [binding.name for binding in bindings]
                for position, binding in enumerate(bindings):
                    value = binding.value
                    if isinstance(value, PolyAbs) and self._typed_value(binding):
                        blocked = (pending | frozenset(names[position:])) - scope
                        clash = sorted(free_vars(value) & blocked)
                        if binding.name in clash:
                            raise RecursiveDefinition(
                                f"the definition of {binding.name} refers to itself",
                                subject=binding.name,
                            )
                        if clash:
                            raise RecursiveDefinition(
                                f"the definition of {binding.name} refers to {clash[0]}, "
                                "which is defined after it",
                                subject=clash[0],
                            )
                        self.adm_scope(value, scope, blocked)
                    scope = scope | {binding.name}
                self.adm_scope(body, scope, pending - scope)
            case PolyAbs(params, body):
                bound = frozenset(name for name, _ in params)
                self.adm_scope(body, scope | bound, pending - bound)
            case PolyApp(fn, args):
                for item in (fn, *args):
                    self.adm_scope(item, scope, pending)
            case AdmPar(left, right):
                self.adm_scope(left, scope, pending)
                self.adm_scope(right, scope, pending)

    def _typed_value(self, binding: AdmBinding) -> bool:
        if binding.usage is not Usage.ZERO:
            return True
        return binding.declared is None and self.which.result_type is None

    def term(self, ctx: TypingContext, term, pending: frozenset[Ident]) -> TypeExpr:
        match term:
            case Var(name):
                return self._lookup(ctx, name, pending)
            case PolyApp(fn, args):
                if self.monadic and len(args) != 1:
                    raise NotInFragment("monadic terms apply one argument at a time")
                fn_ty = self.term(ctx, fn, pending)
                signature = channel_signature(fn_ty)
                if signature is None:
                    if isinstance(fn_ty, Behavior):
                        raise BehaviorMisuse("a behavior cannot be applied")
                    raise TypeMismatch(f"applying a name of type {fn_ty}", subject=_head(fn))
                domain, codomain = signature
                if len(domain) != len(args):
                    raise ArityMismatch(
                        f"{_head(fn)} expects {len(domain)} argument(s), got {len(args)}",
                        subject=_head(fn),
                    )
                for expected, arg in zip(domain, args):
                    arg_ty = self.term(ctx, arg, pending)
                    if isinstance(arg_ty, Behavior):
                        raise BehaviorMisuse("a behavior cannot be passed as an argument")
                    if arg_ty != expected:
                        raise TypeMismatch(
                            f"expected an argument of type {expected}, got {arg_ty}",
                            subject=_head(arg),
                        )
                return codomain
            case AdmPar(left, right):
                if not self.which.is_parallel:
                    raise NotInFragment("parallel composition in a functional calculus")
                for side in (left, right):
                    side_ty = self.term(ctx, side, pending)
                    if not isinstance(side_ty, Behavior):
                        raise TypeMismatch(f"parallel components must be behaviors, got {side_ty}")
                return BEHAVIOR
            case AdmDecl():
                return self.decl(ctx, term, pending)
            case Hole():
                raise MalformedTerm("cannot type an evaluation context")
        raise NotInFragment(f"not an administrative term: {term!r}")

    def _lookup(self, ctx: TypingContext, name: Ident, pending: frozenset[Ident]) -> TypeExpr:
        ty = ctx.lookup(name)
        if ty is not None:
            return ty
        if name in pending:
            raise RecursiveDefinition(
                f"{name} is used inside a definition that precedes it", subject=name
            )
        raise UnboundVariable(f"unbound variable {name}", subject=name)

    # π

    def pi_scope(self, proc, pending: frozenset[Ident]) -> None:
        """Definitions must be linearly ordered: no self or forward references."""
        match proc:
            case Out():
                return
            case PiPar(left, right):
                self.pi_scope(left, pending)
                self.pi_scope(right, pending)
            case Nu():
                headers = []
                while isinstance(proc, Nu):
                    headers.append(proc)
                    proc = proc.rest
                names = [header.name for header in headers]
                for position, header in enumerate(headers):
                    if header.guard is None:
                        continue
                    blocked = pending | frozenset(names[position:])
                    used = free_vars(header.guard.body) - set(header.guard.param_names)
                    clash = sorted(used & blocked)
                    if clash:
                        if clash[0] == header.name:
                            message = f"the definition of {header.name} refers to itself"
                        else:
                            message = (
                                f"the definition of {header.name} refers to {clash[0]}, "
                                "which is defined after it"
                            )
                        raise RecursiveDefinition(message, subject=clash[0])
                    self.pi_scope(header.guard.body, blocked)
                self.pi_scope(proc, pending)

    def pi(self, ctx: TypingContext, proc) -> None:
        match proc:
            case Out(channel, args):
                channel_ty = self._lookup(ctx, channel, frozenset())
                signature = channel_signature(channel_ty)
                if signature is None:
                    raise TypeMismatch(
                        f"cannot output on {channel} of type {channel_ty}", subject=channel
                    )
                domain, _ = signature
                if len(domain) != len(args):
                    raise ArityMismatch(
                        f"{channel} carries {len(domain)} name(s), got {len(args)}", subject=channel
                    )
                for expected, arg in zip(domain, args):
                    arg_ty = self._lookup(ctx, arg, frozenset())
                    if arg_ty != expected:
                        raise TypeMismatch(
                            f"{arg} has type {arg_ty}, expected {expected}", subject=arg
                        )
            case PiPar(left, right):
                self.pi(ctx, left)
                self.pi(ctx, right)
            case Nu(name, None, rest, annotation):
                if annotation is None:
                    raise MissingAnnotation(f"restriction of {name} needs a type", subject=name)
                self.value_type(annotation, name)
                self.pi(ctx.extend(name, annotation), rest)
            case Nu(name, guard, rest, annotation):
                params = []
                for param, param_ty in guard.params:
                    if param_ty is None:
                        raise MissingAnnotation(
                            f"input parameter {param} needs a type", subject=param
                        )
                    self.value_type(param_ty, param)
                    params.append((param, param_ty))
                self.pi(ctx.extend_many(params), guard.body)
                ty = chan_type((ty for _, ty in params), BEHAVIOR)
                if annotation is not None and annotation != ty:
                    raise TypeMismatch(
                        f"{name} is declared {annotation} but has type {ty}", subject=name
                    )
                self.pi(ctx.extend(name, ty), rest)
            case _:
                raise NotInFragment(f"not a π process: {proc!r}")


def _head(term) -> Ident | None:
    while isinstance(term, PolyApp):
        term = term.fn
    return term.name if isinstance(term, Var) else None
