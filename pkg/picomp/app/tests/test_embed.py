import pytest

from picomp.app.errors import MalformedTerm
from picomp.app.kernel.names import ident
from picomp.app.kernel.types import BEHAVIOR
from picomp.app.surface import parse_context, parse_term
from picomp.app.translate.embed import PAR_TYPE, embed_context, embed_parallel
from picomp.app.typecheck.checker import infer_type


def test_parallel_composition_becomes_a_constant():
    embedded = embed_parallel(parse_term("o * | o *", "lam-par"))
    assert embedded == parse_term("p (o *) (o *)", "lam")


def test_functional_terms_are_unchanged():
    term = parse_term("\\x:Unit. x", "lam")
    assert embed_parallel(term) == term


def test_embedding_under_abstraction():
    term = parse_term("\\x:Unit. (o x | o x)", "lam-par")
    assert embed_parallel(term) == parse_term("\\x:Unit. p (o x) (o x)", "lam")


def test_constant_must_be_fresh():
    with pytest.raises(MalformedTerm):
        embed_parallel(parse_term("p * | p *", "lam-par"))
    other = embed_parallel(parse_term("p * | p *", "lam-par"), ident("q"))
    assert other == parse_term("q (p *) (p *)", "lam")


def test_embedding_preserves_types():
    ctx = parse_context("o:Unit -> #b")
    term = parse_term("(\\x:Unit. o x) * | o *", "lam-par")
    ty = infer_type(ctx, term, "lam-par")
    assert ty == BEHAVIOR
    assert embed_context(ctx).lookup(ident("p")) == PAR_TYPE
    assert infer_type(embed_context(ctx), embed_parallel(term), "lam-p") == ty
