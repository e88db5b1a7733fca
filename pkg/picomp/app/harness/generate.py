"""Type-directed random generation of well-typed terms.

Every term is built top-down against a target type inside a size budget and
then checked with the type checker; rejected drafts are retried with the same
random stream, so the output is a pure function of the configuration.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import replace

from ..errors import TypingError
from ..kernel.congruence import join_spine, split_spine
from ..kernel.names import Ident, NameSupply
from ..kernel.scope import free_vars, size
from ..kernel.terms import (
    Abs,
    AdmBinding,
    AdmDecl,
    AdmPar,
    App,
    Nu,
    Par,
    PolyAbs,
    PolyApp,
    Star,
    Usage,
    Var,
)
from ..kernel.types import (
    BEHAVIOR,
    CH_UNIT,
    UNIT,
    Arrow,
    Behavior,
    TypeExpr,
    Unit,
    chan_type,
    channel_signature,
    fn_type,
)
from ..translate.cps import answer_type, cps_context, cps_transform
from ..translate.embed import embed_context, embed_parallel
from ..translate.pi_bridge import to_pi
from ..typecheck.checker import infer_type
from ..typecheck.context import EMPTY, Calculus, TypingContext
from .models import GenConfig, GeneratedTerm, UsagePolicy

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 50

LAM_SINK = (Ident("o"), fn_type(UNIT, BEHAVIOR))
ADM_SINK = (Ident("o"), chan_type((CH_UNIT,), BEHAVIOR))


def gen_typed_term(cfg: GenConfig) -> GeneratedTerm:
    rng = random.Random(cfg.seed)
    which = cfg.calculus
    if which is Calculus.LAM_P:
        term, ctx, ty = gen_typed_term(cfg.model_copy(update={"calculus": Calculus.LAM_PAR}))
        return GeneratedTerm(embed_parallel(term), embed_context(ctx), ty)
    if which.is_cps or which is Calculus.PI:
        source = Calculus.ADM_PAR if which.is_parallel else Calculus.ADM
        decl, ctx, ty = gen_typed_term(cfg.model_copy(update={"calculus": source}))
        k = NameSupply.avoiding(decl, ctx).fresh("k")
        image = cps_transform(decl, k, ctx, source)
        target_ctx = cps_context(ctx, k, ty, source)
        if which is Calculus.CPS_PAR or which is Calculus.CPS:
            return GeneratedTerm(image, target_ctx, answer_type(source))
        return GeneratedTerm(_mutate_pi(to_pi(image), rng), target_ctx, BEHAVIOR)
    for attempt in range(MAX_ATTEMPTS):
        if which.is_lambda:
            draft = _LamGen(rng, cfg).generate()
        else:
            draft = _AdmGen(rng, cfg).generate()
        term, ctx, ty = draft
        if size(term) > cfg.max_size:
            continue
        try:
            found = infer_type(ctx, term, which)
        except TypingError as exc:
            logger.warning("generator draft rejected on attempt %d: %s", attempt, exc)
            continue
        if found != ty:
            logger.warning("generator draft has type %s, expected %s", found, ty)
            continue
        return draft
    logger.info("falling back to a unit term for seed %d", cfg.seed)
    if which.is_lambda:
        return GeneratedTerm(Star(), EMPTY, UNIT)
    unit = Ident("x", 1)
    return GeneratedTerm(
        AdmDecl((AdmBinding(Usage.INFINITE, unit, Star()),), Var(unit)), EMPTY, CH_UNIT
    )


def _mutate_pi(proc, rng: random.Random):
    """Congruence-preserving noise: an unused restriction, a swap of independent ones."""
    headers, tail = split_spine(proc)
    if len(headers) >= 2 and rng.random() < 0.4:
        position = rng.randrange(len(headers) - 1)
        first, second = headers[position], headers[position + 1]
        if _independent(first, second):
            headers[position], headers[position + 1] = second, first
    if rng.random() < 0.3:
        unused = NameSupply.avoiding(proc).fresh("u")
        headers.insert(rng.randrange(len(headers) + 1), Nu(unused, None, tail, CH_UNIT))
    return join_spine(headers, tail)


def _independent(first: Nu, second: Nu) -> bool:
    def mentions(header: Nu, name: Ident) -> bool:
        return header.guard is not None and name in free_vars(header.guard.body)

    return not mentions(first, second.name) and not mentions(second, first.name)


def _min_size(ty: TypeExpr, scope: tuple, depth: int = 4) -> float:
    """Smallest λ term of type ``ty`` over variables of the types in ``scope``."""
    if ty in scope or isinstance(ty, Unit):
        return 1
    if isinstance(ty, Arrow):
        return 1 + _min_size(ty.codomain, scope + (ty.domain[0],), depth)
    if depth <= 0:
        return math.inf
    costs = [
        2 + _min_size(candidate.domain[0], scope, depth - 1)
        for candidate in scope
        if isinstance(candidate, Arrow) and candidate.codomain == ty
    ]
    return min(costs, default=math.inf)


class _LamGen:
    def __init__(self, rng: random.Random, cfg: GenConfig):
        self.rng = rng
        self.cfg = cfg
        self.parallel = cfg.calculus is Calculus.LAM_PAR
        self.supply = NameSupply.avoiding(LAM_SINK[0])

    def generate(self) -> GeneratedTerm:
        ctx = TypingContext([LAM_SINK]) if self.parallel else EMPTY
        if self.parallel and self.rng.random() < 0.5:
            ty: TypeExpr = BEHAVIOR
        else:
            ty = self.value_type(self.cfg.type_depth_cap)
        if self.min_size(ty, ctx) > self.cfg.max_size:
            ty = UNIT
        return GeneratedTerm(self.term(ty, ctx, self.cfg.max_size), ctx, ty)

    def value_type(self, depth: int) -> TypeExpr:
        if depth <= 1 or self.rng.random() < 0.45:
            return UNIT
        return fn_type(self.value_type(depth - 1), self.codomain(depth - 1))

    def codomain(self, depth: int) -> TypeExpr:
        if self.parallel and self.rng.random() < 0.3:
            return BEHAVIOR
        return self.value_type(depth)

    def _vars(self, ty: TypeExpr, env: TypingContext) -> list[Ident]:
        return [name for name, candidate in env.items() if candidate == ty]

    def _producers(self, ty: TypeExpr, env: TypingContext) -> list[tuple[Ident, TypeExpr]]:
        return [
            (name, candidate.domain[0])
            for name, candidate in env.items()
            if isinstance(candidate, Arrow) and candidate.codomain == ty
        ]

    def min_size(self, ty: TypeExpr, env: TypingContext) -> float:
        return _min_size(ty, tuple(candidate for _, candidate in env.items()))

    def minimal(self, ty: TypeExpr, env: TypingContext):
        candidates = self._vars(ty, env)
        if candidates:
            return Var(candidates[-1])
        if isinstance(ty, Unit):
            return Star()
        if isinstance(ty, Arrow):
            param = self.supply.fresh("x")
            inner = env.extend(param, ty.domain[0])
            return Abs(param, ty.domain[0], self.minimal(ty.codomain, inner))
        name, arg = min(self._producers(ty, env), key=lambda item: self.min_size(item[1], env))
        return App(Var(name), self.minimal(arg, env))

    def term(self, ty: TypeExpr, env: TypingContext, budget: int):
        floor = self.min_size(ty, env)
        if budget <= floor or self.rng.random() < 0.15:
            return self.minimal(ty, env)
        options = []
        if self._vars(ty, env):
            options.append("var")
        if isinstance(ty, Unit):
            options.append("star")
        if isinstance(ty, Arrow):
            options += ["abs", "abs"]
        if isinstance(ty, Behavior) and budget >= 1 + 2 * floor:
            options.append("par")
        if budget >= 4:
            options += ["app", "app", "app"]
        choice = self.rng.choice(options) if options else "min"
        if choice == "var":
            return Var(self.rng.choice(self._vars(ty, env)))
        if choice == "star":
            return Star()
        if choice == "abs":
            param = self.supply.fresh("x")
            inner = env.extend(param, ty.domain[0])
            return Abs(param, ty.domain[0], self.term(ty.codomain, inner, budget - 1))
        if choice == "par":
            left_budget = self.rng.randint(int(floor), budget - 1 - int(floor))
            return Par(
                self.term(ty, env, left_budget), self.term(ty, env, budget - 1 - left_budget)
            )
        if choice == "app":
            arg_ty = self.value_type(max(1, self.cfg.type_depth_cap - 1))
            fn_ty = fn_type(arg_ty, ty)
            fn_floor, arg_floor = self.min_size(fn_ty, env), self.min_size(arg_ty, env)
            if fn_floor + arg_floor + 1 > budget:
                return self.minimal(ty, env)
            fn_budget = self.rng.randint(int(fn_floor), budget - 1 - int(arg_floor))
            return App(
                self.term(fn_ty, env, fn_budget), self.term(arg_ty, env, budget - 1 - fn_budget)
            )
        return self.minimal(ty, env)


class _AdmGen:
    """Core declarations whose bindings may call earlier bindings."""

    def __init__(self, rng: random.Random, cfg: GenConfig):
        self.rng = rng
        self.cfg = cfg
        self.parallel = cfg.calculus.is_parallel
        self.mixed = cfg.usage_policy is UsagePolicy.MIXED
        self.supply = NameSupply.avoiding(ADM_SINK[0])
        self.fuel = max(2, cfg.max_size * 2 // 3)

    def generate(self) -> GeneratedTerm:
        ctx = TypingContext([ADM_SINK]) if self.parallel else EMPTY
        if self.parallel and self.rng.random() < 0.6:
            ty: TypeExpr = BEHAVIOR
        else:
            ty = self.value_type(self.cfg.type_depth_cap)
        return GeneratedTerm(_undeclare(self.decl(ty, ctx)), ctx, ty)

    def value_type(self, depth: int) -> TypeExpr:
        if depth <= 1 or self.rng.random() < 0.4:
            return CH_UNIT
        arity = self.rng.randint(1, self.cfg.arity_cap)
        domain = tuple(self.value_type(depth - 1) for _ in range(arity))
        return chan_type(domain, self.codomain(depth - 1))

    def codomain(self, depth: int) -> TypeExpr:
        if self.parallel and self.rng.random() < 0.35:
            return BEHAVIOR
        return self.value_type(depth)

    def usage(self) -> Usage:
        if not self.mixed:
            return Usage.INFINITE
        return self.rng.choice((Usage.INFINITE, Usage.INFINITE, Usage.ONE, Usage.ZERO))

    def spend(self, amount: int = 1) -> bool:
        """Consume fuel; False once the budget is gone."""
        self.fuel -= amount
        return self.fuel > 0

    def decl(self, ty: TypeExpr, env: TypingContext) -> AdmDecl:
        bindings: list[AdmBinding] = []
        while self.fuel > 3 and len(bindings) < 3 and self.rng.random() < 0.5:
            binding = self.binding(self.value_type(self.cfg.type_depth_cap), env)
            bindings.append(binding)
            env = env.extend(binding.name, binding.declared or self._type_of(binding))
        extra, body = self.term(ty, env)
        return AdmDecl(tuple(bindings) + tuple(extra), body)

    def _type_of(self, binding: AdmBinding) -> TypeExpr:
        if isinstance(binding.value, Star):
            return CH_UNIT
        return binding.declared

    def binding(self, ty: TypeExpr, env: TypingContext) -> AdmBinding:
        """A binding whose name has type ``ty``; dead ones keep the type as a declaration."""
        self.spend()
        if ty == CH_UNIT:
            return AdmBinding(Usage.INFINITE, self.supply.fresh("x"), Star(), CH_UNIT)
        usage = self.usage()
        domain, codomain = channel_signature(ty)
        params = tuple((self.supply.fresh("y"), part) for part in domain)
        inner = env.extend_many(params)
        name = self.supply.fresh("f")
        if usage is Usage.ZERO and self.rng.random() < 0.5:
            # never typed, so any body will do
            body = self.decl(self.codomain(1), inner)
        else:
            body = self.decl(codomain, inner)
        return AdmBinding(usage, name, PolyAbs(params, body), ty)

    def _vars(self, ty: TypeExpr, env: TypingContext) -> list[Ident]:
        return [name for name, candidate in env.items() if candidate == ty]

    def _producers(self, ty: TypeExpr, env: TypingContext) -> list[tuple[Ident, tuple]]:
        found = []
        for name, candidate in env.items():
            signature = channel_signature(candidate)
            if signature is not None and signature[1] == ty:
                found.append((name, signature[0]))
        return found

    def term(self, ty: TypeExpr, env: TypingContext, depth: int = 3):
        """Extra bindings plus a core term of type ``ty``."""
        names = self._vars(ty, env)
        producers = self._producers(ty, env) if depth > 0 else []
        options = []
        if names:
            options.append("var")
        if producers and self.fuel > 1:
            options += ["call", "call", "call"]
        if isinstance(ty, Behavior) and self.parallel and self.fuel > 6 and depth > 0:
            options.append("par")
        choice = self.rng.choice(options) if options else "bind"
        self.spend()
        if choice == "var":
            return [], Var(self.rng.choice(names))
        if choice == "call":
            name, domain = self.rng.choice(producers)
            bindings, args = [], []
            for part in domain:
                extra, arg = self.argument(part, env, depth - 1)
                bindings += extra
                env = env.extend_many((b.name, self._type_of(b)) for b in extra)
                args.append(arg)
            return bindings, PolyApp(Var(name), tuple(args))
        if choice == "par":
            left_bindings, left = self.term(ty, env, depth - 1)
            env = env.extend_many((b.name, self._type_of(b)) for b in left_bindings)
            right_bindings, right = self.term(ty, env, depth - 1)
            return left_bindings + right_bindings, AdmPar(left, right)
        return self.bind(ty, env, depth)

    def argument(self, ty: TypeExpr, env: TypingContext, depth: int):
        names = self._vars(ty, env)
        if names and (self.fuel <= 2 or self.rng.random() < 0.7):
            return [], Var(self.rng.choice(names))
        return self.term(ty, env, depth)

    def bind(self, ty: TypeExpr, env: TypingContext, depth: int):
        """Introduce a definition so that a term of type ``ty`` exists."""
        if not isinstance(ty, Behavior):
            binding = self.binding(ty, env)
            if binding.usage is Usage.ZERO:
                binding = replace(binding, usage=Usage.INFINITE)
                binding = self._retyped(binding, env)
            return [binding], Var(binding.name)
        sink, sink_ty = ADM_SINK
        use_sink = depth <= 0 or self.fuel <= 4 or self.rng.random() < 0.5
        if env.lookup(sink) == sink_ty and use_sink:
            extra, arg = self.argument(CH_UNIT, env, 0)
            return extra, PolyApp(Var(sink), (arg,))
        fn_ty = chan_type((self.value_type(2),), BEHAVIOR)
        binding = self._retyped(replace(self.binding(fn_ty, env), usage=self.usage_live()), env)
        env = env.extend(binding.name, fn_ty)
        extra, arg = self.argument(channel_signature(fn_ty)[0][0], env, depth - 1)
        return [binding] + extra, PolyApp(Var(binding.name), (arg,))

    def usage_live(self) -> Usage:
        if self.mixed and self.rng.random() < 0.3:
            return Usage.ONE
        return Usage.INFINITE

    def _retyped(self, binding: AdmBinding, env: TypingContext) -> AdmBinding:
        """Rebuild a formerly dead value so that its body has the declared codomain."""
        value = binding.value
        if isinstance(value, Star):
            return binding
        _, codomain = channel_signature(binding.declared)
        body = value.body
        try:
            found = infer_type(env.extend_many(value.params), body, Calculus.ADM_PAR)
        except TypingError:
            found = None
        if found != codomain:
            body = self.decl(codomain, env.extend_many(value.params))
        return replace(binding, value=PolyAbs(value.params, body))


def _undeclare(decl: AdmDecl) -> AdmDecl:
    """Keep declared types only where typing needs them: on dead bindings."""
    bindings = []
    for binding in decl.bindings:
        value = binding.value
        if isinstance(value, PolyAbs):
            value = PolyAbs(value.params, _undeclare(value.body))
        declared = binding.declared if binding.usage is Usage.ZERO else None
        bindings.append(replace(binding, value=value, declared=declared))
    return AdmDecl(tuple(bindings), decl.body)
