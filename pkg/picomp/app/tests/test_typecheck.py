import pytest

from picomp.app.errors import (
    ArityMismatch,
    BehaviorMisuse,
    MissingAnnotation,
    NotInFragment,
    RecursiveDefinition,
    TypeMismatch,
    TypingError,
    UnboundVariable,
    UsageViolation,
)
from picomp.app.kernel.names import ident
from picomp.app.kernel.terms import Star
from picomp.app.kernel.types import BEHAVIOR, CH_UNIT, RESULT, UNIT, chan_type, fn_type
from picomp.app.surface import parse_context, parse_term, parse_type
from picomp.app.typecheck.checker import (
    OK,
    infer_type,
    is_cps_shape,
    is_monadic,
    is_monadic_typing,
    well_formed_type,
)
from picomp.app.typecheck.context import TypingContext

P1 = "new x (!x(y:Ch[Unit]).x!(y) | x!(z))"
P2 = "new x (!x(y:Ch[Unit]).x'!(y) | new x' (!x'(y:Ch[Unit]).x!(y) | x!(z)))"
UNIT_CONT = chan_type((CH_UNIT,), BEHAVIOR)


def test_unit_and_identity():
    assert infer_type(None, Star(), "lam") == UNIT
    assert infer_type(None, parse_term("\\x:Unit. x", "lam"), "lam") == fn_type(UNIT, UNIT)
    assert infer_type(None, parse_term("(\\x:Unit. x) *", "lam"), "lam") == UNIT


def test_lambda_application_mismatch():
    term = parse_term("(\\x:Unit -> Unit. x) *", "lam")
    with pytest.raises(TypeMismatch):
        infer_type(None, term, "lam")


def test_unbound_variable():
    with pytest.raises(UnboundVariable):
        infer_type(None, parse_term("x", "lam"), "lam")


def test_parallel_composition_needs_the_parallel_calculus():
    ctx = parse_context("o:Unit -> #b")
    term = parse_term("o * | o *", "lam-par")
    assert infer_type(ctx, term, "lam-par") == BEHAVIOR
    with pytest.raises(NotInFragment):
        infer_type(ctx, term, "lam")


def test_behaviors_cannot_be_passed():
    ctx = parse_context("o:Unit -> #b")
    term = parse_term("(\\f:Unit -> Unit. f) (o *)", "lam-par")
    with pytest.raises(BehaviorMisuse):
        infer_type(ctx, term, "lam-par")


def test_behavior_never_enters_a_context():
    with pytest.raises(BehaviorMisuse):
        TypingContext([(ident("b"), BEHAVIOR)])


def test_administrative_application():
    ctx = parse_context("z:Ch[Unit]")
    decl = parse_term("let[inf] f = \\y:Ch[Unit]. y in @(f, z)", "adm")
    assert infer_type(ctx, decl, "adm") == CH_UNIT


def test_administrative_arity():
    ctx = parse_context("z:Ch[Unit]")
    decl = parse_term("let[inf] f = \\y:Ch[Unit]. y in @(f, z, z)", "adm")
    with pytest.raises(ArityMismatch):
        infer_type(ctx, decl, "adm")


def test_usages_need_the_parallel_calculus():
    ctx = parse_context("z:Ch[Unit]")
    decl = parse_term("let[1] f = \\y:Ch[Unit]. y in @(f, z)", "adm-par")
    assert infer_type(ctx, decl, "adm-par") == CH_UNIT
    with pytest.raises(NotInFragment):
        infer_type(ctx, decl, "adm")


def test_unit_needs_infinite_usage():
    with pytest.raises(UsageViolation):
        infer_type(None, parse_term("let[1] u = * in u", "adm-par"), "adm-par")


def test_definitions_are_not_recursive():
    decl = parse_term("let[inf] f = \\y:Ch[Unit]. @(f, y) in f", "adm")
    with pytest.raises(RecursiveDefinition):
        infer_type(None, decl, "adm")


FORWARD = (
    "let[inf] f = \\y:Ch[Unit]. @(g, y) in "
    "let[inf] g = \\z:Ch[Unit]. z in @(f, a)"
)


@pytest.mark.parametrize("calculus", ["adm", "adm-par"])
def test_self_reference_is_named(calculus):
    decl = parse_term("let[inf] f = \\y:Ch[Unit]. @(f, y) in f", calculus)
    with pytest.raises(RecursiveDefinition, match="the definition of f refers to itself"):
        infer_type(None, decl, calculus)


@pytest.mark.parametrize("calculus", ["adm", "adm-par"])
def test_forward_reference_is_recursive(calculus):
    decl = parse_term(FORWARD, calculus)
    ctx = parse_context("a:Ch[Unit]")
    with pytest.raises(RecursiveDefinition, match="refers to g, which is defined after it"):
        infer_type(ctx, decl, calculus)


def test_forward_reference_inside_a_nested_definition():
    text = (
        "let[inf] f = \\y:Ch[Unit]. let[inf] h = \\w:Ch[Unit]. @(g, w) in @(h, y) in "
        "let[inf] g = \\z:Ch[Unit]. z in @(f, a)"
    )
    with pytest.raises(RecursiveDefinition, match="defined after it"):
        infer_type(parse_context("a:Ch[Unit]"), parse_term(text, "adm"), "adm")


def test_shadowed_context_name_is_not_recursive():
    ctx = parse_context("f:Ch[Ch[Unit] -> Ch[Unit]], a:Ch[Unit]")
    decl = parse_term("let[inf] f = \\y:Ch[Unit]. @(f, y) in @(f, a)", "adm")
    assert infer_type(ctx, decl, "adm") == CH_UNIT


def test_earlier_definition_may_be_rebound_later():
    text = (
        "let[inf] f = \\y:Ch[Unit]. y in let[inf] g = \\z:Ch[Unit]. @(f, z) in "
        "let[inf] f = \\w:Ch[Unit]. @(g, w) in @(f, a)"
    )
    assert infer_type(parse_context("a:Ch[Unit]"), parse_term(text, "adm"), "adm") == CH_UNIT


def test_dead_binding_value_is_not_typed():
    ctx = parse_context("o:Ch[Ch[Unit] -> #b]")
    decl = parse_term(
        "let[inf] x = * in let[0] g : Ch[Ch[Unit] -> #b] = \\y:Ch[Unit]. @(y, y) in @(g, x)",
        "cps-par",
    )
    assert infer_type(ctx, decl, "cps-par") == BEHAVIOR


def test_dead_binding_without_type_needs_annotation():
    decl = parse_term("let[inf] x = * in let[0] g = \\y:Ch[Unit]. @(y, y) in @(g, x)", "adm-par")
    with pytest.raises(MissingAnnotation):
        infer_type(None, decl, "adm-par")


def test_cps_calculus_requires_applied_variables():
    ctx = parse_context("z:Ch[Unit]")
    with pytest.raises(NotInFragment):
        infer_type(ctx, parse_term("z", "cps-par"), "cps-par")


def test_functional_cps_answers_result():
    ctx = parse_context("z:Ch[Unit], k:Ch[Ch[Unit] -> #R]")
    assert infer_type(ctx, parse_term("@(k, z)", "cps"), "cps") == RESULT


def test_looping_processes_are_rejected():
    ctx = parse_context("z:Ch[Unit]")
    with pytest.raises(RecursiveDefinition, match="refers to itself"):
        infer_type(ctx, parse_term(P1, "pi"), "pi")
    with pytest.raises(RecursiveDefinition, match="defined after it"):
        infer_type(ctx, parse_term(P2, "pi"), "pi")


def test_well_typed_process():
    ctx = parse_context("o:Ch[Ch[Unit] -> #b], z:Ch[Unit]")
    proc = parse_term("new x (!x(y:Ch[Unit]).o!(y) | x!(z))", "pi")
    assert infer_type(ctx, proc, "pi") is OK


def test_bare_restriction_needs_annotation():
    with pytest.raises(MissingAnnotation):
        infer_type(parse_context("o:Ch[Ch[Unit] -> #b]"), parse_term("new a (o!(a))", "pi"), "pi")
    ctx = parse_context("o:Ch[Ch[Unit] -> #b]")
    assert infer_type(ctx, parse_term("new a : Ch[Unit] (o!(a))", "pi"), "pi") is OK


def test_output_arity_in_pi():
    ctx = parse_context("o:Ch[Ch[Unit] -> #b], z:Ch[Unit]")
    with pytest.raises(ArityMismatch):
        infer_type(ctx, parse_term("o!(z, z)", "pi"), "pi")


def test_process_check_rejects_lambda_terms():
    with pytest.raises(NotInFragment):
        infer_type(None, Star(), "pi")


def test_monadic_types():
    assert is_monadic(parse_type("Ch[Unit]"))
    assert is_monadic(parse_type("Ch[Ch[Unit] -> Ch[Unit]]"))
    assert not is_monadic(parse_type("Ch[Ch[Unit], Ch[Unit] -> Ch[Unit]]"))


def test_monadic_typing_rejects_polyadic_calls():
    ctx = parse_context("z:Ch[Unit]")
    unary = parse_term("let[inf] f = \\y:Ch[Unit]. y in @(f, z)", "adm")
    binary = parse_term("let[inf] f = \\y:Ch[Unit], w:Ch[Unit]. y in @(f, z, z)", "adm")
    assert is_monadic_typing(ctx, unary, "adm")
    assert not is_monadic_typing(ctx, binary, "adm")


def test_well_formed_types_per_calculus():
    assert well_formed_type(parse_type("Ch[Ch[Unit] -> #b]"), "cps-par")
    assert not well_formed_type(parse_type("Ch[Ch[Unit] -> Ch[Unit]]"), "cps-par")
    assert not well_formed_type(BEHAVIOR, "adm-par")


def test_cps_shape():
    assert is_cps_shape(parse_term("let[inf] x = * in @(k, x)", "cps-par"))
    assert not is_cps_shape(parse_term("let[inf] x = * in x", "adm-par"))
    assert not is_cps_shape(parse_term("@(f, @(g, a))", "adm-par"))


def test_typing_errors_share_a_base():
    with pytest.raises(TypingError):
        infer_type(None, parse_term("x", "lam"), "lam")
