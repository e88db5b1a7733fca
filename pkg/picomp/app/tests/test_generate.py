import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from picomp.app.harness import GenConfig, UsagePolicy, gen_typed_term
from picomp.app.kernel.scope import free_vars
from picomp.app.kernel.terms import Star, Usage, is_adm, is_lam, is_pi
from picomp.app.kernel.types import UNIT
from picomp.app.typecheck.checker import OK, infer_type
from picomp.app.typecheck.context import Calculus


def test_generation_is_deterministic():
    cfg = GenConfig(seed=42, max_size=12, calculus="adm-par", usage_policy="mixed")
    assert gen_typed_term(cfg) == gen_typed_term(cfg)


def test_smallest_budget_gives_the_unit():
    term, ctx, ty = gen_typed_term(GenConfig(seed=3, max_size=1, calculus="lam"))
    assert term == Star()
    assert len(ctx) == 0
    assert ty == UNIT


def test_mixed_usages_need_a_parallel_calculus():
    with pytest.raises(ValidationError):
        GenConfig(calculus="adm", usage_policy="mixed")
    with pytest.raises(ValidationError):
        GenConfig(max_size=0)


@pytest.mark.parametrize(
    "calculus, shape",
    [("lam", is_lam), ("lam-par", is_lam), ("adm", is_adm), ("adm-par", is_adm), ("pi", is_pi)],
)
def test_output_belongs_to_the_calculus(calculus, shape):
    term, ctx, _ = gen_typed_term(GenConfig(seed=7, max_size=10, calculus=calculus))
    assert shape(term)
    assert free_vars(term) <= ctx.domain


def test_all_infinite_policy_has_no_other_usages():
    for seed in range(10):
        cfg = GenConfig(seed=seed, max_size=12, calculus="adm-par")
        decl = gen_typed_term(cfg).term
        assert all(binding.usage is Usage.INFINITE for binding in decl.bindings)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32), calculus=st.sampled_from(["lam", "lam-par"]))
def test_generated_lambda_terms_have_their_type(seed, calculus):
    term, ctx, ty = gen_typed_term(GenConfig(seed=seed, max_size=10, calculus=calculus))
    assert infer_type(ctx, term, calculus) == ty


@settings(max_examples=30, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2**32),
    policy=st.sampled_from(list(UsagePolicy)),
)
def test_generated_declarations_have_their_type(seed, policy):
    cfg = GenConfig(seed=seed, max_size=12, calculus=Calculus.ADM_PAR, usage_policy=policy)
    term, ctx, ty = gen_typed_term(cfg)
    assert infer_type(ctx, term, "adm-par") == ty


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32))
def test_generated_processes_are_typed(seed):
    term, ctx, _ = gen_typed_term(GenConfig(seed=seed, max_size=10, calculus="pi"))
    assert infer_type(ctx, term, "pi") is OK
