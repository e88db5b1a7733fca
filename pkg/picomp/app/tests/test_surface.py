import pytest

from picomp.app.errors import ParseError, TypingError
from picomp.app.kernel.terms import Star
from picomp.app.kernel.types import CH_UNIT, Chan
from picomp.app.surface import (
    parse_context,
    parse_term,
    parse_type,
    parse_value,
    show,
    show_context,
    show_type,
)


@pytest.mark.parametrize(
    "text, calculus",
    [
        ("\\x:Unit. x", "lam"),
        ("(\\x:Unit. x) *", "lam"),
        ("o * | o *", "lam-par"),
        ("\\x:Unit. (o x | o x)", "lam-par"),
        ("let[inf] f = \\y:Ch[Unit]. y in @(f, a)", "adm"),
        ("let[1] x : Ch[Ch[Unit] -> #b] = \\y:Ch[Unit]. @(o, y) in @(x, z)", "adm-par"),
        ("@(f, @(g, a))", "adm"),
        ("let[0] k = \\w:Ch[Unit]. @(o, w) in @(f, a, k) | @(g, a, k)", "cps-par"),
        ("new x (!x(y:Ch[Unit]).k!(y) | x!(z))", "pi"),
        ("new u : Ch[Unit] (o!(u))", "pi"),
        ("new x (x(y:Ch[Unit]).k!(y) | x!(z) | x!(z))", "pi"),
    ],
)
def test_printed_terms_parse_back(text, calculus):
    term = parse_term(text, calculus)
    assert show(term) == text
    assert parse_term(show(term), calculus) == term


@pytest.mark.parametrize(
    "text",
    ["Unit", "Unit -> #b", "(Unit -> Unit) -> Unit", "Ch[Ch[Unit], Ch[Unit] -> #b]", "Ch[Unit]"],
)
def test_types_print_as_parsed(text):
    assert show_type(parse_type(text)) == text


def test_channel_payload_defaults_to_behavior():
    assert parse_type("Ch[Unit]") == CH_UNIT
    ty = parse_type("Ch[Ch[Unit]]")
    assert isinstance(ty, Chan)
    assert show_type(ty) == "Ch[Ch[Unit] -> #b]"


def test_contexts():
    ctx = parse_context("x:Unit, y:Ch[Unit]")
    assert show_context(ctx) == "x:Unit, y:Ch[Unit]"
    assert len(parse_context("  ")) == 0
    with pytest.raises(TypingError):
        parse_context("x:Unit, x:Unit")


def test_group_without_bindings_is_transparent():
    assert parse_term("(let[inf] x = * in x)", "adm") == parse_term("let[inf] x = * in x", "adm")
    assert parse_term("(a)", "adm") == parse_term("a", "adm")


def test_values_and_comments():
    assert parse_value("*") == Star()
    value = parse_value("\\y:Ch[Unit], k:Ch[Ch[Unit] -> #b]. @(k, y)")
    assert len(value.params) == 2
    assert parse_term("-- the unit\n*", "lam") == Star()


def test_erased_types_are_for_reading_only():
    term = parse_term("(\\z:Unit. z) (\\z:Unit. z)", "lam")
    assert show(term, erase_types=True) == "(\\z. z) (\\z. z)"
    with pytest.raises(ParseError):
        parse_term(show(term, erase_types=True), "lam")


def test_parse_errors_carry_a_position():
    with pytest.raises(ParseError) as excinfo:
        parse_term("\\x:Unit x", "lam")
    assert (excinfo.value.line, excinfo.value.column) == (1, 9)
    with pytest.raises(ParseError) as excinfo:
        parse_term("let[inf] x = *\nin %", "adm")
    assert (excinfo.value.line, excinfo.value.column) == (2, 4)
    assert "'%'" in str(excinfo.value)


def test_truncated_input():
    with pytest.raises(ParseError, match="end of input"):
        parse_term("@(f, a", "adm")


@pytest.mark.parametrize("text", ["\\let:Unit. let", "\\in:Unit. in", "new new (x!(y))"])
def test_keywords_are_not_identifiers(text):
    calculus = "pi" if text.startswith("new") else "lam"
    with pytest.raises(ParseError):
        parse_term(text, calculus)


def test_words_starting_with_a_keyword_are_identifiers():
    text = "@(lets, in_, inner, newx, info)"
    assert show(parse_term(text, "adm")) == text
    assert show(parse_term("\\inf':Unit. inf'", "lam")) == "\\inf':Unit. inf'"


def test_declaration_as_an_argument_needs_a_group():
    grouped = parse_term("@(f, (let[inf] x = * in x))", "adm")
    assert show(grouped) == "@(f, (let[inf] x = * in x))"
    with pytest.raises(ParseError, match="'let'"):
        parse_term("@(f, let[inf] x = * in x)", "adm")
