import pytest

from picomp.app.errors import UsageNotInfinite
from picomp.app.kernel.alpha import alpha_equal
from picomp.app.kernel.terms import PolyAbs, Star
from picomp.app.kernel.types import BEHAVIOR, UNIT, fn_type
from picomp.app.surface import parse_context, parse_term, parse_type, show
from picomp.app.translate.adm import (
    is_saturated,
    readback,
    readback_context,
    readback_type,
    to_admin,
    to_admin_context,
    to_admin_type,
)
from picomp.app.typecheck.checker import infer_type


def lam(text: str):
    return parse_term(text, "lam-par")


def adm(text: str):
    return parse_term(text, "adm-par")


def test_unit_gets_a_name():
    assert to_admin(Star()) == adm("let[inf] x_1 = * in x_1")


def test_abstraction_gets_a_name():
    assert to_admin(lam("\\z:Unit. z")) == adm("let[inf] f_1 = \\z:Ch[Unit]. z in f_1")


def test_application_of_values_makes_two_copies():
    decl = to_admin(lam("(\\z:Unit. z) (\\z:Unit. z)"))
    first, second = decl.bindings
    assert first.name != second.name
    assert first.value == second.value
    assert isinstance(first.value, PolyAbs)
    assert show(decl.body) == f"@({first.name}, {second.name})"


def test_parallel_composition_is_translated_componentwise():
    decl = to_admin(lam("o * | o *"))
    assert decl == adm("let[inf] x_1 = * in let[inf] x_2 = * in @(o, x_1) | @(o, x_2)")


def test_type_translation():
    assert to_admin_type(fn_type(UNIT, UNIT)) == parse_type("Ch[Ch[Unit] -> Ch[Unit]]")
    assert to_admin_type(BEHAVIOR) == BEHAVIOR
    assert readback_type(parse_type("Ch[Ch[Unit] -> #b]")) == fn_type(UNIT, BEHAVIOR)


def test_context_translation_round_trips():
    ctx = parse_context("o:Unit -> #b, z:Unit")
    assert readback_context(to_admin_context(ctx)) == ctx


def test_readback_substitutes_and_curries():
    decl = parse_term("let[inf] x = \\z:Ch[Unit]. z in @(x,x)", "adm")
    back = readback(decl)
    assert show(back, erase_types=True) == "(\\z. z) (\\z. z)"
    assert back == parse_term("(\\z:Unit. z) (\\z:Unit. z)", "lam")


def test_readback_retracts_the_translation():
    term = lam("(\\x:Unit. x) *")
    assert readback(to_admin(term)) == term
    assert alpha_equal(readback(to_admin(term)), term)


def test_readback_of_nested_bindings():
    decl = adm("let[inf] u = * in let[inf] f = \\a:Ch[Unit], b:Ch[Unit]. b in @(f, u, u)")
    assert readback(decl) == lam("(\\a:Unit. \\b:Unit. b) * *")


def test_readback_needs_infinite_usages():
    with pytest.raises(UsageNotInfinite):
        readback(adm("let[1] x = \\y:Ch[Unit]. y in @(x, z)"))


def test_translation_preserves_types():
    ctx = parse_context("o:Unit -> #b")
    term = lam("(\\x:Unit. o x) * | o *")
    ty = infer_type(ctx, term, "lam-par")
    image = to_admin(term)
    assert infer_type(to_admin_context(ctx), image, "adm-par") == to_admin_type(ty)
    assert infer_type(ctx, readback(image), "lam-par") == ty


def test_saturation_predicate():
    assert is_saturated(adm("let[inf] x = \\y:Ch[Unit]. y in @(x, z)"))
    assert not is_saturated(adm("let[inf] f = \\y:Ch[Unit]. let[1] g = * in g in @(f, z)"))
