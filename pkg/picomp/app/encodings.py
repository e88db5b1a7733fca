"""Concurrency idioms expressed as macro-expansions into administrative form.

Each expansion is a plain declaration built from fresh names; its arguments are
typed in the encoding's stated context (:func:`encoding_context`) extended
with whatever the expansion binds around them.
"""

from __future__ import annotations

import logging
from enum import Enum
from typing import Any, Sequence

from .errors import ArityMismatch, IllTypedArgument, TypingError
from .kernel.alpha import freshen
from .kernel.names import Ident, NameSupply
from .kernel.scope import free_vars
from .kernel.subst import rename
from .kernel.terms import AdmBinding, AdmDecl, AdmPar, PolyAbs, PolyApp, Star, Usage, Var
from .kernel.types import BEHAVIOR, CH_UNIT, Behavior, TypeExpr, chan_type, channel_signature
from .typecheck.checker import infer_type
from .typecheck.context import Calculus, TypingContext

logger = logging.getLogger(__name__)


class EncodingName(str, Enum):
    OUTPUT_PREFIX = "output-prefix"
    INTERNAL_CHOICE = "internal-choice"
    EXTERNAL_CHOICE = "external-choice"
    MULTI_DEF = "multi-def"
    JOINED_DEF = "joined-def"
    LOCK_UNLOCK = "lock-unlock"
    CCS_CHANNEL = "ccs-channel"


# continuation awaiting a unit
UNIT_CONT = chan_type((CH_UNIT,), BEHAVIOR)
# a branch selector: picks one of two unit continuations
BRANCH = UNIT_CONT
BOOL = chan_type((BRANCH, BRANCH), BRANCH)
UNLOCK = UNIT_CONT
# a lock holder: the continuation that receives the unlock
HOLDER = chan_type((UNLOCK,), BEHAVIOR)
LOCK = chan_type((HOLDER,), BEHAVIOR)
# offers a unit to a continuation: the single-use y of a choice, CCS ends
OFFER = chan_type((UNIT_CONT,), BEHAVIOR)

SINK = Ident("o")
UNIT_NAME = Ident("a")
LOCK_HOLE = Ident("lock")
IN_HOLE = Ident("in_")
OUT_HOLE = Ident("out")

ENCODING_STEMS = (SINK, UNIT_NAME, LOCK_HOLE, IN_HOLE, OUT_HOLE)


def encoding_context(name: EncodingName | str) -> TypingContext:
    """Free names each expansion (and its example arguments) may rely on."""
    name = EncodingName(name)
    entries: list[tuple[Ident, TypeExpr]] = [(SINK, UNIT_CONT), (UNIT_NAME, CH_UNIT)]
    if name is EncodingName.OUTPUT_PREFIX:
        entries += [(Ident("x"), chan_type((CH_UNIT, UNIT_CONT), BEHAVIOR)), (Ident("y"), CH_UNIT)]
    elif name is EncodingName.LOCK_UNLOCK:
        entries.append((Ident("done"), UNIT_CONT))
    return TypingContext(entries)


def expand_encoding(
    name: EncodingName | str, args: Sequence[Any], ctx: TypingContext | None = None
) -> AdmDecl:
    name = EncodingName(name)
    ctx = ctx if ctx is not None else encoding_context(name)
    terms = [arg for arg in args if not isinstance(arg, bool)]
    supply = NameSupply.avoiding(terms, ctx, *ENCODING_STEMS)
    expander = _Expander(ctx, supply)
    handler = getattr(expander, name.name.lower())
    logger.debug("expanding %s with %d argument(s)", name.value, len(args))
    return handler(list(args))


def church_boolean(value: bool) -> PolyAbs:
    """``λ(a, c). a`` or ``λ(a, c). c`` over branch selectors."""
    first, second = Ident("t"), Ident("f")
    chosen = first if value else second
    return PolyAbs(((first, BRANCH), (second, BRANCH)), AdmDecl((), Var(chosen)))


def _decl(term) -> AdmDecl:
    return term if isinstance(term, AdmDecl) else AdmDecl((), term)


def _par(terms: Sequence) -> Any:
    result = terms[0]
    for term in terms[1:]:
        result = AdmPar(result, term)
    return result


def _components(term) -> list:
    if isinstance(term, AdmPar):
        return _components(term.left) + _components(term.right)
    return [term]


class _Expander:
    def __init__(self, ctx: TypingContext, supply: NameSupply):
        self.ctx = ctx
        self.supply = supply

    # argument checks

    def arity(self, args: list, expected: int, label: str, *, at_least: bool = False) -> None:
        if len(args) < expected or (not at_least and len(args) != expected):
            qualifier = "at least " if at_least else ""
            raise ArityMismatch(f"{label} takes {qualifier}{expected} argument(s), got {len(args)}")

    def behavior(self, term, scope: TypingContext, label: str) -> AdmDecl:
        if isinstance(term, (Ident, PolyAbs, Star, bool, tuple)):
            raise IllTypedArgument(f"{label} must be a declaration")
        decl = freshen(_decl(term), self.supply)
        try:
            ty = infer_type(scope, decl, Calculus.ADM_PAR)
        except TypingError as exc:
            raise IllTypedArgument(f"{label} is ill-typed: {exc}", subject=exc.subject) from exc
        if not isinstance(ty, Behavior):
            raise IllTypedArgument(f"{label} must be a behavior, got {ty}")
        return decl

    def name(self, arg, label: str) -> Ident:
        if isinstance(arg, Var):
            return arg.name
        if isinstance(arg, AdmDecl) and not arg.bindings and isinstance(arg.body, Var):
            return arg.body.name
        if not isinstance(arg, Ident):
            raise IllTypedArgument(f"{label} must be a name")
        return arg

    def lookup(self, name: Ident, label: str) -> TypeExpr:
        ty = self.ctx.lookup(name)
        if ty is None:
            raise IllTypedArgument(f"{label} {name} is not in the context", subject=name)
        return ty

    # shared building blocks

    def unit(self) -> tuple[AdmBinding, Ident]:
        x = self.supply.fresh("x")
        return AdmBinding(Usage.INFINITE, x, Star()), x

    def choice(self, branches: Sequence[AdmDecl]) -> AdmDecl:
        """One-shot internal choice: a single-use ``y`` is offered to every branch."""
        unit, x = self.unit()
        y = self.supply.fresh("y")
        k = self.supply.fresh("k")
        bindings = [
            unit,
            AdmBinding(
                Usage.ONE, y, PolyAbs(((k, UNIT_CONT),), AdmDecl((), PolyApp(Var(k), (Var(x),))))
            ),
        ]
        calls = []
        for branch in branches:
            k_i = self.supply.fresh("k")
            w = self.supply.fresh("w")
            bindings.append(AdmBinding(Usage.ONE, k_i, PolyAbs(((w, CH_UNIT),), branch)))
            calls.append(PolyApp(Var(y), (Var(k_i),)))
        return AdmDecl(tuple(bindings), _par(calls))

    def definition(self, arg, label: str) -> tuple[Ident, PolyAbs]:
        if not (isinstance(arg, tuple) and len(arg) == 2):
            raise IllTypedArgument(f"{label} must be a name with a value")
        name, value = self.name(arg[0], label), arg[1]
        if not isinstance(value, PolyAbs):
            raise IllTypedArgument(f"{label} must bind an abstraction")
        return name, freshen(value, self.supply)

    # the encodings

    def output_prefix(self, args: list) -> AdmDecl:
        self.arity(args, 3, "output-prefix")
        x, y = self.name(args[0], "channel"), self.name(args[1], "payload")
        signature = channel_signature(self.lookup(x, "channel"))
        payload_ty = self.lookup(y, "payload")
        ok = signature is not None and len(signature[0]) == 2
        continuation = channel_signature(signature[0][1]) if ok else None
        if not ok or signature[0][0] != payload_ty or continuation is None:
            raise IllTypedArgument(f"{x} cannot send a {payload_ty} with a continuation", subject=x)
        if len(continuation[0]) != 1 or not isinstance(continuation[1], Behavior):
            raise IllTypedArgument(f"{x} expects a continuation returning a behavior", subject=x)
        w = self.supply.fresh("w")
        (reply_ty,) = continuation[0]
        body = self.behavior(args[2], self.ctx.extend(w, reply_ty), "continuation body")
        k = self.supply.fresh("k")
        return AdmDecl(
            (AdmBinding(Usage.ONE, k, PolyAbs(((w, reply_ty),), body)),),
            PolyApp(Var(x), (Var(y), Var(k))),
        )

    def internal_choice(self, args: list) -> AdmDecl:
        self.arity(args, 2, "internal-choice")
        left = self.behavior(args[0], self.ctx, "left branch")
        right = self.behavior(args[1], self.ctx, "right branch")
        return self.choice([left, right])

    def external_choice(self, args: list) -> AdmDecl:
        self.arity(args, 3, "external-choice")
        bindings: list[AdmBinding] = []
        selector = args[0]
        if isinstance(selector, bool):
            name = self.supply.fresh("b")
            bindings.append(AdmBinding(Usage.INFINITE, name, church_boolean(selector)))
        else:
            name = self.name(selector, "selector")
            if self.lookup(name, "selector") != BOOL:
                raise IllTypedArgument(f"selector {name} must have type {BOOL}", subject=name)
        unit, x = self.unit()
        bindings.append(unit)
        branches = []
        for label, arg in (("left branch", args[1]), ("right branch", args[2])):
            branch = self.behavior(arg, self.ctx, label)
            k_i = self.supply.fresh("k")
            w = self.supply.fresh("w")
            bindings.append(AdmBinding(Usage.ONE, k_i, PolyAbs(((w, CH_UNIT),), branch)))
            branches.append(Var(k_i))
        y = self.supply.fresh("y")
        z = self.supply.fresh("z")
        pick = PolyApp(PolyApp(Var(z), tuple(branches)), (Var(x),))
        bindings.append(AdmBinding(Usage.ONE, y, PolyAbs(((z, BOOL),), AdmDecl((), pick))))
        return AdmDecl(tuple(bindings), PolyApp(Var(y), (Var(name),)))

    def multi_def(self, args: list) -> AdmDecl:
        """``let x = V1 or ... or x = Vn in D`` as one definition choosing a branch per call."""
        self.arity(args, 3, "multi-def", at_least=True)
        x = self.name(args[0], "defined name")
        if not all(isinstance(value, PolyAbs) for value in args[2:]):
            raise IllTypedArgument("every alternative must be an abstraction")
        values = [freshen(value, self.supply) for value in args[2:]]
        domain = values[0].param_types
        bindings: list[AdmBinding] = []
        scope = self.ctx
        for value in values:
            v = self.supply.fresh("v")
            binding = AdmBinding(Usage.INFINITE, v, value)
            try:
                ty = infer_type(scope, AdmDecl((binding,), Var(v)), Calculus.ADM_PAR)
            except TypingError as exc:
                raise IllTypedArgument(f"alternative is ill-typed: {exc}") from exc
            signature = channel_signature(ty)
            returns_behavior = signature is not None and isinstance(signature[1], Behavior)
            if not returns_behavior or signature[0] != domain:
                raise IllTypedArgument(f"alternatives must share one behavior type, got {ty}")
            bindings.append(binding)
            scope = scope.extend(v, ty)
        params = tuple((self.supply.fresh("y"), ty) for ty in domain)
        arguments = tuple(Var(param) for param, _ in params)
        branches = [AdmDecl((), PolyApp(Var(b.name), arguments)) for b in bindings]
        bindings.append(AdmBinding(Usage.INFINITE, x, PolyAbs(params, self.choice(branches))))
        body = self.behavior(args[1], scope.extend(x, chan_type(domain, BEHAVIOR)), "body")
        return AdmDecl(tuple(bindings) + body.bindings, body.body)

    def joined_def(self, args: list) -> AdmDecl:
        """Joined definitions, simulated by sequential ones."""
        self.arity(args, 2, "joined-def", at_least=True)
        definitions = [self.definition(arg, "joined definition") for arg in args[1:]]
        bindings = tuple(AdmBinding(Usage.INFINITE, name, value) for name, value in definitions)
        try:
            scope = self.ctx
            for binding in bindings:
                ty = infer_type(scope, AdmDecl((binding,), Var(binding.name)), Calculus.ADM_PAR)
                scope = scope.extend(binding.name, ty)
        except TypingError as exc:
            raise IllTypedArgument(f"joined definition is ill-typed: {exc}") from exc
        body = self.behavior(args[0], scope, "body")
        return AdmDecl(bindings + body.bindings, body.body)

    def lock_unlock(self, args: list) -> AdmDecl:
        """A lock handed from thread to thread.

        Every top-level thread of the template that calls ``lock`` gets its own
        ``unlock``/``lock`` pair, defined in the order of a joined definition.
        Such a thread starts on its turn; its first release passes the turn on.
        Threads that never call ``lock`` run at once.
        """
        self.arity(args, 1, "lock-unlock")
        done = Ident("done")
        if self.ctx.lookup(done) != UNLOCK:
            raise IllTypedArgument(f"lock-unlock needs {done} : {UNLOCK} in the context")
        unit, x = self.unit()
        lock = self.supply.fresh("lock")
        template = self.behavior(
            rename(_decl(args[0]), {LOCK_HOLE: lock}), self.ctx.extend(lock, LOCK), "threads"
        )
        for binding in template.bindings:
            if lock in free_vars(binding.value):
                raise IllTypedArgument(
                    f"{binding.name} mentions the lock outside a thread", subject=binding.name
                )
        threads = _components(template.body)
        contending = [thread for thread in threads if lock in free_vars(thread)]
        running = [thread for thread in threads if lock not in free_vars(thread)]
        logger.debug("lock is handed over between %d thread(s)", len(contending))
        bindings: list[AdmBinding] = []
        successor: Ident | None = None
        for thread in reversed(contending):
            bindings += self.turn(thread, lock, successor)
            successor = bindings[-1].name
        if successor is not None:
            running.insert(0, PolyApp(Var(successor), (Var(x),)))
        return AdmDecl((unit, *template.bindings, *bindings), _par(running))

    def turn(self, thread, lock: Ident, successor: Ident | None) -> list[AdmBinding]:
        w = self.supply.fresh("w")
        release = [PolyApp(Var(Ident("done")), (Var(w),))]
        if successor is not None:
            release.append(PolyApp(Var(successor), (Var(w),)))
        unlock = self.supply.fresh("unlock")
        own_lock = self.supply.fresh("lock")
        k = self.supply.fresh("k")
        turn = self.supply.fresh("turn")
        z = self.supply.fresh("z")
        body = rename(_decl(thread), {lock: own_lock})
        return [
            AdmBinding(Usage.INFINITE, unlock, PolyAbs(((w, CH_UNIT),), _decl(_par(release)))),
            AdmBinding(
                Usage.INFINITE,
                own_lock,
                PolyAbs(((k, HOLDER),), AdmDecl((), PolyApp(Var(k), (Var(unlock),)))),
            ),
            AdmBinding(Usage.ONE, turn, PolyAbs(((z, CH_UNIT),), body)),
        ]

    def ccs_channel(self, args: list) -> AdmDecl:
        self.arity(args, 1, "ccs-channel")
        unit, x = self.unit()
        receive = self.supply.fresh("in_")
        send = self.supply.fresh("out")
        bindings = [unit]
        for name in (receive, send):
            k = self.supply.fresh("k")
            value = PolyAbs(((k, UNIT_CONT),), AdmDecl((), PolyApp(Var(k), (Var(x),))))
            bindings.append(AdmBinding(Usage.INFINITE, name, value))
        scope = self.ctx.extend_many([(receive, OFFER), (send, OFFER)])
        threads = self.behavior(
            rename(_decl(args[0]), {IN_HOLE: receive, OUT_HOLE: send}), scope, "threads"
        )
        return AdmDecl(tuple(bindings) + threads.bindings, threads.body)
