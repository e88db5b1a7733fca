import pytest

from picomp.app.encodings import (
    BOOL,
    EncodingName,
    church_boolean,
    encoding_context,
    expand_encoding,
)
from picomp.app.errors import ArityMismatch, IllTypedArgument
from picomp.app.kernel.names import ident
from picomp.app.kernel.scope import occurrences
from picomp.app.kernel.terms import AdmPar, Usage
from picomp.app.kernel.types import BEHAVIOR
from picomp.app.reduce.evaluate import EnumerateAll, NormalForm, evaluate
from picomp.app.surface import parse_term, parse_value, show
from picomp.app.typecheck.checker import infer_type


def adm(text: str):
    return parse_term(text, "adm-par")


M = "@(o, a)"
N = "@(o, a) | @(o, a)"
HOLDS = "let[inf] c = \\u:Ch[Ch[Unit] -> #b]. @(u, a) in @(lock, c)"
CONTENDING = (
    "let[inf] c1 = \\u:Ch[Ch[Unit] -> #b]. @(u, a) in "
    "let[inf] c2 = \\u:Ch[Ch[Unit] -> #b]. @(u, a) in @(lock, c1) | @(lock, c2)"
)

EXAMPLES = {
    EncodingName.OUTPUT_PREFIX: lambda: [ident("x"), ident("y"), adm(M)],
    EncodingName.INTERNAL_CHOICE: lambda: [adm(M), adm(N)],
    EncodingName.EXTERNAL_CHOICE: lambda: [True, adm(M), adm(N)],
    EncodingName.MULTI_DEF: lambda: [
        ident("x"),
        adm("@(x, a)"),
        parse_value("\\w:Ch[Unit]. @(o, w)"),
        parse_value("\\w:Ch[Unit]. @(o, a) | @(o, w)"),
    ],
    EncodingName.JOINED_DEF: lambda: [
        adm("@(g, a)"),
        (ident("f"), parse_value("\\w:Ch[Unit]. @(o, w)")),
        (ident("g"), parse_value("\\w:Ch[Unit]. @(f, w)")),
    ],
    EncodingName.LOCK_UNLOCK: lambda: [adm(CONTENDING)],
    EncodingName.CCS_CHANNEL: lambda: [
        adm("let[inf] c = \\w:Ch[Unit]. @(o, w) in @(in_, c) | @(out, c)")
    ],
}


@pytest.mark.parametrize("name", list(EncodingName))
def test_every_encoding_expands_to_a_behavior(name):
    decl = expand_encoding(name, EXAMPLES[name]())
    assert infer_type(encoding_context(name), decl, "adm-par") == BEHAVIOR


def test_output_prefix_shape():
    decl = expand_encoding(EncodingName.OUTPUT_PREFIX, [ident("x"), ident("y"), adm(M)])
    assert decl == adm("let[1] k_2 = \\w_1:Ch[Unit]. @(o, a) in @(x, y, k_2)")


def test_internal_choice_offers_one_use_to_both_branches():
    decl = expand_encoding(EncodingName.INTERNAL_CHOICE, [adm(M), adm(N)])
    assert [binding.usage for binding in decl.bindings] == [
        Usage.INFINITE,
        Usage.ONE,
        Usage.ONE,
        Usage.ONE,
    ]
    assert isinstance(decl.body, AdmPar)


def test_internal_choice_commits_to_either_branch():
    decl = expand_encoding(EncodingName.INTERNAL_CHOICE, [adm(M), adm(N)])
    graph = evaluate(decl, "adm-par", EnumerateAll())
    assert graph.complete
    finals = [graph.nodes[index] for index in graph.normal_forms()]
    assert sorted(show(node.body).count(M) for node in finals) == [1, 2]


@pytest.mark.parametrize("value, fired", [(True, M), (False, N)])
def test_external_choice_follows_the_selector(value, fired):
    decl = expand_encoding(EncodingName.EXTERNAL_CHOICE, [value, adm(M), adm(N)])
    outcome = evaluate(decl, "adm-par")
    assert isinstance(outcome, NormalForm)
    assert outcome.term.body == adm(fired).body


def test_lock_is_taken_in_turn():
    decl = expand_encoding(EncodingName.LOCK_UNLOCK, [adm(HOLDS)])
    assert [binding.usage for binding in decl.bindings] == [
        Usage.INFINITE,
        Usage.INFINITE,
        Usage.INFINITE,
        Usage.INFINITE,
        Usage.ONE,
    ]
    outcome = evaluate(decl, "adm-par")
    assert isinstance(outcome, NormalForm)
    assert outcome.steps == 4
    assert show(outcome.term.body) == "@(done, a)"


def _holders(term) -> int:
    return sum(1 for name in occurrences(term.body) if name.base == "unlock")


def test_contending_threads_each_hold_the_lock_alone():
    decl = expand_encoding(EncodingName.LOCK_UNLOCK, [adm(CONTENDING)])
    graph = evaluate(decl, "adm-par", EnumerateAll())
    assert graph.complete
    assert max(_holders(node) for node in graph.nodes) == 1
    finals = [graph.nodes[index] for index in graph.normal_forms()]
    assert finals
    for node in finals:
        assert show(node.body) == "@(done, a) | @(done, a)"


def test_threads_without_the_lock_run_at_once():
    text = "let[inf] c = \\u:Ch[Ch[Unit] -> #b]. @(u, a) in @(lock, c) | @(o, a)"
    decl = expand_encoding(EncodingName.LOCK_UNLOCK, [adm(text)])
    assert show(decl.body).endswith(" | @(o, a)")
    assert infer_type(encoding_context(EncodingName.LOCK_UNLOCK), decl, "adm-par") == BEHAVIOR


def test_lock_is_only_called_from_threads():
    text = (
        "let[inf] c = \\u:Ch[Ch[Unit] -> #b]. @(u, a) in "
        "let[inf] g = \\k:Ch[Ch[Ch[Unit] -> #b] -> #b]. @(lock, k) in @(g, c)"
    )
    with pytest.raises(IllTypedArgument, match="mentions the lock outside a thread"):
        expand_encoding(EncodingName.LOCK_UNLOCK, [adm(text)])


def test_church_booleans_pick_a_branch():
    assert show(church_boolean(True)) == "\\t:Ch[Ch[Unit] -> #b], f:Ch[Ch[Unit] -> #b]. t"
    ctx = encoding_context(EncodingName.EXTERNAL_CHOICE).extend(ident("s"), BOOL)
    decl = expand_encoding(EncodingName.EXTERNAL_CHOICE, [ident("s"), adm(M), adm(N)], ctx)
    assert infer_type(ctx, decl, "adm-par") == BEHAVIOR


def test_arity_is_checked():
    with pytest.raises(ArityMismatch):
        expand_encoding(EncodingName.INTERNAL_CHOICE, [adm(M)])


def test_branches_must_be_behaviors():
    with pytest.raises(IllTypedArgument):
        expand_encoding(EncodingName.INTERNAL_CHOICE, [adm("a"), adm(M)])
    with pytest.raises(IllTypedArgument):
        expand_encoding(EncodingName.INTERNAL_CHOICE, [adm("@(o, nowhere)"), adm(M)])


def test_output_prefix_checks_the_channel():
    with pytest.raises(IllTypedArgument):
        expand_encoding(EncodingName.OUTPUT_PREFIX, [ident("y"), ident("y"), adm(M)])
