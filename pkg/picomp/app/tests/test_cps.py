from picomp.app.kernel.names import ident
from picomp.app.kernel.terms import Usage
from picomp.app.kernel.types import BEHAVIOR, CH_UNIT, RESULT
from picomp.app.surface import parse_context, parse_term, parse_type
from picomp.app.translate.cps import (
    answer_type,
    cont_type,
    cps_context,
    cps_transform,
    cps_type,
    target_calculus,
)
from picomp.app.typecheck.checker import infer_type, is_cps_shape
from picomp.app.typecheck.context import Calculus

k = ident("k")
CTX = "f:Ch[Ch[Unit] -> Ch[Unit]], g:Ch[Ch[Unit] -> Ch[Unit]], a:Ch[Unit]"


def test_variable_is_returned_to_the_continuation():
    image = cps_transform(parse_term("a", "adm-par"), k, parse_context(CTX))
    assert image == parse_term("@(k, a)", "cps-par")


def test_call_of_variables_passes_the_continuation():
    image = cps_transform(parse_term("@(f, a)", "adm-par"), k, parse_context(CTX))
    assert image == parse_term("@(f, a, k)", "cps-par")


def test_nested_call_gets_a_single_use_continuation():
    ctx = parse_context(CTX)
    image = cps_transform(parse_term("@(f, @(g, a))", "adm-par"), k, ctx)
    expected = parse_term("let[1] k_2 = \\y_1:Ch[Unit]. @(f, y_1, k) in @(g, a, k_2)", "cps-par")
    assert image == expected
    assert infer_type(cps_context(ctx, k, CH_UNIT), image, "cps-par") == BEHAVIOR


def test_functional_continuations_are_unrestricted():
    ctx = parse_context(CTX)
    image = cps_transform(parse_term("@(f, @(g, a))", "adm"), k, ctx, "adm")
    assert image.bindings[0].usage is Usage.INFINITE
    assert infer_type(cps_context(ctx, k, CH_UNIT, "adm"), image, "cps") == RESULT


def test_parallel_composition_distributes():
    ctx = parse_context(CTX)
    image = cps_transform(parse_term("@(f, a) | @(g, a)", "adm-par"), k, ctx)
    assert image == parse_term("@(f, a, k) | @(g, a, k)", "cps-par")


def test_definitions_take_an_extra_continuation():
    ctx = parse_context("a:Ch[Unit]")
    decl = parse_term("let[inf] h = \\y:Ch[Unit]. y in @(h, a)", "adm-par")
    image = cps_transform(decl, k, ctx)
    assert is_cps_shape(image)
    (binding,) = image.bindings
    assert len(binding.value.params) == 2
    assert binding.value.params[1][1] == cont_type(CH_UNIT)
    assert infer_type(cps_context(ctx, k, CH_UNIT), image, "cps-par") == BEHAVIOR


def test_type_translation():
    assert cont_type(BEHAVIOR) == CH_UNIT
    assert cont_type(CH_UNIT) == parse_type("Ch[Ch[Unit] -> #b]")
    assert cps_type(parse_type("Ch[Ch[Unit] -> Ch[Unit]]"), "adm") == parse_type(
        "Ch[Ch[Unit], Ch[Ch[Unit] -> #R] -> #R]"
    )
    assert cps_type(parse_type("Ch[Ch[Unit] -> #b]")) == parse_type("Ch[Ch[Unit], Ch[Unit] -> #b]")


def test_answer_types():
    assert answer_type("adm") == RESULT
    assert answer_type("adm-par") == BEHAVIOR
    assert target_calculus("adm") is Calculus.CPS
    assert target_calculus("lam-par") is Calculus.CPS_PAR
