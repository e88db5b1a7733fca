import pytest

from picomp.app.errors import NotCpsShape, UntypablePi
from picomp.app.kernel.congruence import congruent
from picomp.app.kernel.terms import Nu, Usage
from picomp.app.kernel.types import CH_UNIT
from picomp.app.surface import parse_context, parse_term, parse_type
from picomp.app.translate.pi_bridge import erase_dead_values, from_pi, to_pi
from picomp.app.typecheck.checker import OK, infer_type

CTX = "k:Ch[Ch[Unit] -> #b], z:Ch[Unit]"


def cps(text: str):
    return parse_term(text, "cps-par")


def pi(text: str):
    return parse_term(text, "pi")


def test_unrestricted_definition_becomes_replicated_input():
    proc = to_pi(cps("let[inf] x = \\y:Ch[Unit]. @(k, y) in @(x, z)"))
    assert proc == pi("new x (!x(y:Ch[Unit]).k!(y) | x!(z))")


def test_single_use_definition_becomes_linear_input():
    proc = to_pi(cps("let[1] x = \\y:Ch[Unit]. @(k, y) in @(x, z)"))
    assert proc == pi("new x (x(y:Ch[Unit]).k!(y) | x!(z))")


def test_unit_becomes_typed_restriction():
    proc = to_pi(cps("let[inf] u = * in @(k, u)"))
    assert proc == Nu(proc.name, None, pi("k!(u)"), CH_UNIT)
    assert infer_type(parse_context(CTX), proc, "pi") is OK


def test_dead_definition_becomes_bare_restriction():
    proc = to_pi(cps("let[inf] u = * in let[0] g = \\y:Ch[Unit]. @(y, y) in @(g, u)"))
    inner = proc.rest
    assert inner.guard is None
    assert inner.annotation == parse_type("Ch[Ch[Unit] -> #b]")


def test_only_continuation_passing_terms_translate():
    with pytest.raises(NotCpsShape):
        to_pi(parse_term("let[inf] x = * in x", "adm-par"))


def test_restriction_type_decides_the_reading():
    ctx = parse_context("o:Ch[Ch[Unit] -> #b]")
    assert from_pi(pi("new u : Ch[Unit] (o!(u))"), ctx) == cps("let[inf] u = * in @(o, u)")
    ctx = parse_context("o:Ch[Ch[Unit] -> #b], a:Ch[Unit]")
    decl = from_pi(pi("new g : Ch[Ch[Unit] -> #b] (o!(a))"), ctx)
    (binding,) = decl.bindings
    assert binding.usage is Usage.ZERO
    assert binding.declared == parse_type("Ch[Ch[Unit] -> #b]")


def test_input_guards_become_definitions():
    decl = from_pi(pi("new x (x(y:Ch[Unit]).k!(y) | x!(z))"), parse_context(CTX))
    assert decl == cps("let[1] x = \\y:Ch[Unit]. @(k, y) in @(x, z)")


def test_round_trip_through_pi():
    decl = cps("let[inf] x = \\y:Ch[Unit]. @(k, y) in @(x, z) | @(x, z)")
    back = from_pi(to_pi(decl), parse_context(CTX))
    assert back == decl
    assert congruent(to_pi(back), to_pi(decl))


def test_untypable_processes_have_no_reading():
    with pytest.raises(UntypablePi):
        from_pi(pi("new x (!x(y:Ch[Unit]).x!(y) | x!(z))"), parse_context("z:Ch[Unit]"))


def test_dead_values_are_interchangeable():
    left = cps("let[inf] u = * in let[0] g = \\y:Ch[Unit]. @(y, y) in @(g, u)")
    right = cps("let[inf] u = * in let[0] g = \\w:Ch[Unit]. @(w, w, w) in @(g, u)")
    assert not congruent(left, right)
    assert congruent(erase_dead_values(left), erase_dead_values(right))
