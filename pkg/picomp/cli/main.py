from __future__ import annotations

import argparse
import logging
import re
import sys
from enum import Enum
from pathlib import Path
from typing import NamedTuple, Sequence

from pydantic import BaseModel, Field, model_validator

from picomp.app import config
from picomp.app.encodings import EncodingName, expand_encoding
from picomp.app.errors import ParseError, PicompError
from picomp.app.event_logger import EventLogger
from picomp.app.harness import (
    DiagramKind,
    GenConfig,
    UsagePolicy,
    gen_typed_term,
    report_json,
    report_text,
    run_campaign,
)
from picomp.app.kernel.names import Ident
from picomp.app.reduce import (
    BudgetExhausted,
    ReductionGraph,
    StepBudget,
    evaluate,
    parse_strategy,
    render_path,
)
from picomp.app.surface import parse_context, parse_term, parse_value, show, show_type
from picomp.app.translate import (
    cps_transform,
    embed_parallel,
    from_pi,
    readback,
    saturate_usages,
    to_admin,
    to_pi,
)
from picomp.app.typecheck.checker import OK, infer_type
from picomp.app.typecheck.context import Calculus

logger = logging.getLogger(__name__)


class Verb(str, Enum):
    CHECK = "check"
    EVAL = "eval"
    ADM = "adm"
    READBACK = "readback"
    CPS = "cps"
    TO_PI = "to-pi"
    FROM_PI = "from-pi"
    EMBED = "embed"
    SATURATE = "saturate"
    EXPAND = "expand"
    VERIFY = "verify"
    GEN = "gen"


class OutputFormat(str, Enum):
    PRETTY = "pretty"
    TRACE = "trace"
    SUMMARY = "summary"
    JSON = "json"


# translation verbs and the calculi their input may come from; the first is the default
_SOURCES: dict[Verb, tuple[Calculus, ...]] = {
    Verb.ADM: (Calculus.LAM_PAR, Calculus.LAM),
    Verb.READBACK: (Calculus.ADM_PAR, Calculus.ADM),
    Verb.CPS: (Calculus.ADM_PAR, Calculus.ADM),
    Verb.TO_PI: (Calculus.CPS_PAR,),
    Verb.FROM_PI: (Calculus.PI,),
    Verb.EMBED: (Calculus.LAM_PAR,),
    Verb.SATURATE: (Calculus.ADM_PAR,),
    Verb.EXPAND: (Calculus.ADM_PAR,),
}

_NEEDS_INPUT = frozenset(Verb) - {Verb.EXPAND, Verb.VERIFY, Verb.GEN}


class Command(BaseModel):
    verb: Verb
    calculus: Calculus | None = None
    path: Path | None = None
    text: str | None = None
    context: str = ""
    strategy: str = "leftmost"
    budget: int = Field(default=config.STEP_BUDGET, ge=1)
    seed: int = Field(default=0, ge=0)
    corpus_size: int = Field(default=config.CORPUS_SIZE, ge=0)
    max_size: int = Field(default=config.MAX_SIZE, ge=1)
    usage_policy: UsagePolicy = UsagePolicy.ALL_INFINITE
    kinds: list[DiagramKind] = Field(default_factory=list)
    output_format: OutputFormat = OutputFormat.PRETTY
    erase_types: bool = False
    encoding: EncodingName | None = None
    args: list[str] = Field(default_factory=list)
    events: Path | None = None
    k: str = "k"
    p: str = "p"
    workers: int = Field(default=config.WORKERS, ge=1)

    @model_validator(mode="after")
    def verb_fits_input(self) -> Command:
        allowed = _SOURCES.get(self.verb)
        if self.calculus is None:
            self.calculus = allowed[0] if allowed else Calculus.LAM_PAR
        elif allowed and self.calculus not in allowed:
            names = ", ".join(which.value for which in allowed)
            raise ValueError(f"{self.verb.value} reads {names} input, not {self.calculus.value}")
        if self.verb in _NEEDS_INPUT and (self.path is None) == (self.text is None):
            raise ValueError(f"{self.verb.value} needs exactly one of a file or --text")
        if self.verb is Verb.EXPAND and self.encoding is None:
            raise ValueError("expand needs an encoding name")
        return self


class CommandResult(NamedTuple):
    code: int
    out: str
    err: str = ""


def _source(command: Command) -> str:
    if command.text is not None:
        return command.text
    return command.path.read_text(encoding="utf-8")


def _locate(source: str, subject) -> str:
    if not isinstance(subject, Ident):
        return ""
    match = re.search(rf"(?<![\w']){re.escape(str(subject))}(?![\w'])", source)
    if match is None:
        return ""
    line = source.count("\n", 0, match.start()) + 1
    column = match.start() - (source.rfind("\n", 0, match.start()) + 1) + 1
    return f" at {line}:{column}"


def _trace_line(step) -> str:
    return f"{step.index:>4} {step.rule.value:<9} {render_path(step.path)} {show(step.term)}"


def _render_outcome(outcome, fmt: OutputFormat) -> str:
    if isinstance(outcome, ReductionGraph):
        lines = [f"{len(outcome.nodes)} states, {len(outcome.edges)} steps"]
        if not outcome.complete:
            lines.append("BudgetExhausted: graph truncated")
        for index in outcome.normal_forms():
            lines.append(f"normal form: {show(outcome.nodes[index])}")
        return "\n".join(lines)
    lines = [_trace_line(step) for step in outcome.trace] if fmt is OutputFormat.TRACE else []
    if isinstance(outcome, BudgetExhausted):
        lines.append(f"BudgetExhausted after {outcome.steps} steps")
        if fmt is not OutputFormat.SUMMARY:
            lines.append(show(outcome.term))
        return "\n".join(lines)
    if fmt is OutputFormat.SUMMARY:
        lines.append(f"normal form after {outcome.steps} steps")
    else:
        lines.append(show(outcome.term))
    return "\n".join(lines)


def _encoding_arg(text: str):
    stripped = text.strip()
    if stripped in ("true", "false"):
        return stripped == "true"
    if re.fullmatch(r"[A-Za-z][\w']*", stripped):
        return Ident.parse(stripped)
    definition = re.fullmatch(r"([A-Za-z][\w']*)\s*=\s*(\\.*)", stripped, re.DOTALL)
    if definition:
        return Ident.parse(definition.group(1)), parse_value(definition.group(2))
    if stripped.startswith("\\") or stripped == "*":
        return parse_value(stripped)
    return parse_term(stripped, Calculus.ADM_PAR)


def _gen_config(command: Command) -> GenConfig:
    seed = config.SEED_OVERRIDE if config.SEED_OVERRIDE is not None else command.seed
    return GenConfig(
        seed=seed,
        max_size=command.max_size,
        calculus=command.calculus,
        usage_policy=command.usage_policy,
    )


def _verify(command: Command) -> CommandResult:
    kinds = command.kinds or list(DiagramKind)
    events = EventLogger(command.events) if command.events else None
    report = run_campaign(
        kinds, command.corpus_size, _gen_config(command), workers=command.workers, events=events
    )
    if command.output_format is OutputFormat.JSON:
        out = report_json(report)
    elif command.output_format is OutputFormat.SUMMARY:
        out = "\n".join([*report.summary_lines(), report.status])
    else:
        out = report_text(report)
    return CommandResult(0 if report.ok else 1, out)


def _translate(command: Command, term, ctx) -> object:
    match command.verb:
        case Verb.ADM:
            return to_admin(term)
        case Verb.READBACK:
            return readback(term)
        case Verb.CPS:
            return cps_transform(term, Ident.parse(command.k), ctx, command.calculus)
        case Verb.TO_PI:
            return to_pi(term)
        case Verb.FROM_PI:
            return from_pi(term, ctx)
        case Verb.EMBED:
            return embed_parallel(term, Ident.parse(command.p))
        case Verb.SATURATE:
            return saturate_usages(term, ctx)
    raise ValueError(f"{command.verb.value} is not a translation")


def run_command(command: Command) -> CommandResult:
    source = ""
    try:
        if command.verb is Verb.VERIFY:
            return _verify(command)
        ctx = parse_context(command.context)
        if command.verb is Verb.GEN:
            term, gen_ctx, ty = gen_typed_term(_gen_config(command))
            lines = [show(term, command.erase_types), f": {show_type(ty)}"]
            if gen_ctx.domain:
                lines.insert(0, f"{show(gen_ctx)} |-")
            return CommandResult(0, "\n".join(lines))
        if command.verb is Verb.EXPAND:
            args = [_encoding_arg(arg) for arg in command.args]
            decl = expand_encoding(command.encoding, args, ctx if command.context else None)
            return CommandResult(0, show(decl))
        source = _source(command)
        term = parse_term(source, command.calculus)
        if command.verb is Verb.CHECK:
            ty = infer_type(ctx, term, command.calculus)
            return CommandResult(0, "ok" if ty == OK else show_type(ty))
        if command.verb is Verb.EVAL:
            strategy = parse_strategy(command.strategy, command.seed)
            budget = StepBudget(max_steps=command.budget)
            outcome = evaluate(term, command.calculus, strategy, budget)
            return CommandResult(0, _render_outcome(outcome, command.output_format))
        image = _translate(command, term, ctx)
        return CommandResult(0, show(image, command.erase_types))
    except ParseError as exc:
        return CommandResult(1, "", f"ParseError: {exc}")
    except PicompError as exc:
        return CommandResult(1, "", f"{exc.kind}: {exc}{_locate(source, exc.subject)}")
    except (ValueError, OSError) as exc:
        return CommandResult(1, "", f"{type(exc).__name__}: {exc}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="picomp",
        description="Compile, decompile and check λ, administrative and π terms",
        epilog=(
            "Printed terms keep their type annotations so that they parse back; "
            "readback --erase-types prints the untyped λ term, e.g. (\\z. z) (\\z. z)."
        ),
    )
    parser.add_argument("verb", choices=[verb.value for verb in Verb])
    parser.add_argument("target", nargs="?", help="input file, or the encoding name for expand")
    parser.add_argument("--text", help="inline input instead of a file")
    parser.add_argument("--calculus", choices=[which.value for which in Calculus])
    parser.add_argument("--context", default="", help='free variable types, "x:T, y:T"')
    parser.add_argument("--strategy", default="leftmost", help="leftmost, all or seeded[:n]")
    parser.add_argument("--budget", type=int, default=config.STEP_BUDGET)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--corpus-size", type=int, default=config.CORPUS_SIZE)
    parser.add_argument("--max-size", type=int, default=config.MAX_SIZE)
    parser.add_argument("--usage-policy", choices=[policy.value for policy in UsagePolicy])
    kinds = [kind.value for kind in DiagramKind]
    parser.add_argument("--kind", action="append", default=[], choices=kinds)
    parser.add_argument("--format", default="pretty", choices=[fmt.value for fmt in OutputFormat])
    parser.add_argument(
        "--erase-types",
        action="store_true",
        help="drop type annotations from the printed term (output no longer parses)",
    )
    parser.add_argument("--arg", action="append", default=[], help="encoding argument")
    parser.add_argument("--events", help="directory for the campaign event log")
    parser.add_argument("--workers", type=int, default=config.WORKERS)
    parser.add_argument("--k", default="k", help="continuation name for cps")
    parser.add_argument("--p", default="p", help="parallel constant for embed")
    return parser


def command_from_args(args: argparse.Namespace) -> Command:
    verb = Verb(args.verb)
    is_expand = verb is Verb.EXPAND
    path = Path(args.target) if args.target and not is_expand else None
    events = args.events or (str(config.EVENTS_DIR) if config.EVENTS_DIR else None)
    return Command(
        verb=verb,
        calculus=args.calculus,
        path=path,
        text=args.text,
        context=args.context,
        strategy=args.strategy,
        budget=args.budget,
        seed=args.seed,
        corpus_size=args.corpus_size,
        max_size=args.max_size,
        usage_policy=args.usage_policy or UsagePolicy.ALL_INFINITE,
        kinds=args.kind,
        output_format=args.format,
        erase_types=args.erase_types,
        encoding=args.target if is_expand else None,
        args=args.arg,
        events=events,
        k=args.k,
        p=args.p,
        workers=args.workers,
    )


def main(argv: Sequence[str] | None = None) -> None:
    logging.basicConfig(
        level=config.LOG_LEVEL, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        command = command_from_args(args)
    except ValueError as exc:
        parser.error(str(exc))
    result = run_command(command)
    if result.out:
        print(result.out)
    if result.err:
        print(result.err, file=sys.stderr)
    if result.code:
        raise SystemExit(result.code)


if __name__ == "__main__":
    main()
