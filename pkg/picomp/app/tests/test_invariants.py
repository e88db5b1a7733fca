"""Laws of the kernel, the checker and reduction over generated terms."""

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from picomp.app.harness import GenConfig, UsagePolicy, gen_typed_term
from picomp.app.kernel.alpha import alpha_equal, freshen
from picomp.app.kernel.congruence import congruence_key, normalize_congruence
from picomp.app.kernel.names import NameSupply
from picomp.app.kernel.scope import free_vars
from picomp.app.kernel.subst import rename
from picomp.app.kernel.types import CH_UNIT, UNIT
from picomp.app.reduce.redexes import find_redexes
from picomp.app.reduce.step import step_at
from picomp.app.surface import parse_term, show
from picomp.app.typecheck.checker import infer_type

SEEDS = st.integers(min_value=0, max_value=2**32)
LAMBDA = [("lam", UsagePolicy.ALL_INFINITE), ("lam-par", UsagePolicy.ALL_INFINITE)]
LISTED = [
    ("adm", UsagePolicy.ALL_INFINITE),
    ("adm-par", UsagePolicy.ALL_INFINITE),
    ("adm-par", UsagePolicy.MIXED),
    ("cps-par", UsagePolicy.MIXED),
    ("pi", UsagePolicy.ALL_INFINITE),
    ("pi", UsagePolicy.MIXED),
]
EVERY = LAMBDA + LISTED


def generated(seed: int, pair, max_size: int = 12):
    calculus, policy = pair
    cfg = GenConfig(seed=seed, max_size=max_size, calculus=calculus, usage_policy=policy)
    return (*gen_typed_term(cfg), calculus)


@settings(max_examples=40, deadline=None)
@given(seed=SEEDS, pair=st.sampled_from(LISTED))
def test_normal_form_is_a_fixed_point(seed, pair):
    term, _, _, _ = generated(seed, pair)
    once = normalize_congruence(term)
    assert alpha_equal(normalize_congruence(once), once)


@settings(max_examples=40, deadline=None)
@given(seed=SEEDS, pair=st.sampled_from(LISTED))
def test_normalizing_never_adds_free_names(seed, pair):
    term, _, _, _ = generated(seed, pair)
    # erasing an unused definition can drop the names only it mentioned
    assert free_vars(normalize_congruence(term)) <= free_vars(term)


@settings(max_examples=40, deadline=None)
@given(seed=SEEDS, pair=st.sampled_from(EVERY))
def test_renaming_respects_alpha_equivalence(seed, pair):
    term, ctx, _, _ = generated(seed, pair)
    names = sorted(free_vars(term), key=str)
    assume(names)
    supply = NameSupply.avoiding(term, ctx)
    target = names[-1] if len(names) > 1 else supply.fresh("v")
    mapping = {names[0]: target}
    renamed = rename(term, mapping)
    assert alpha_equal(rename(freshen(term, supply), mapping), renamed)
    assert names[0] not in free_vars(renamed)


@settings(max_examples=40, deadline=None)
@given(seed=SEEDS, pair=st.sampled_from(EVERY))
def test_typing_ignores_binder_names(seed, pair):
    term, ctx, ty, calculus = generated(seed, pair)
    expected = infer_type(ctx, term, calculus)
    fresh = freshen(term, NameSupply.avoiding(term, ctx))
    assert infer_type(ctx, fresh, calculus) == expected
    if calculus not in ("pi", "cps-par"):
        assert expected == ty


@settings(max_examples=40, deadline=None)
@given(seed=SEEDS, pair=st.sampled_from(LISTED))
def test_typing_ignores_congruence(seed, pair):
    term, ctx, _, calculus = generated(seed, pair)
    expected = infer_type(ctx, term, calculus)
    assert infer_type(ctx, normalize_congruence(term), calculus) == expected


@settings(max_examples=40, deadline=None)
@given(seed=SEEDS, pair=st.sampled_from(EVERY))
def test_unused_context_entries_do_not_change_types(seed, pair):
    term, ctx, _, calculus = generated(seed, pair)
    extra = NameSupply.avoiding(term, ctx).fresh("unused")
    wider = ctx.extend(extra, UNIT if calculus.startswith("lam") else CH_UNIT)
    assert infer_type(wider, term, calculus) == infer_type(ctx, term, calculus)


def _reduct_classes(term, calculus: str) -> set:
    return {congruence_key(step_at(term, redex)) for redex in find_redexes(term, calculus)}


@settings(max_examples=30, deadline=None)
@given(seed=SEEDS, pair=st.sampled_from(LISTED))
def test_congruent_terms_reduce_alike(seed, pair):
    term, _, _, calculus = generated(seed, pair, max_size=10)
    normal = normalize_congruence(term)
    assert _reduct_classes(term, calculus) == _reduct_classes(normal, calculus)


@settings(max_examples=40, deadline=None)
@given(seed=SEEDS, pair=st.sampled_from(EVERY))
def test_printed_generated_terms_parse_back(seed, pair):
    term, _, _, calculus = generated(seed, pair)
    assert alpha_equal(parse_term(show(term), calculus), term)
