"""Axiom checkers, vacuous-truth discipline, rule registry, search harness."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prefaxiom import (
    Assumption1,
    AxiomReport,
    EpsilonPolicy,
    ExhaustiveComplete,
    ORDINAL_AXIOMS,
    PROBABILISTIC_AXIOMS,
    RandomComplete,
    Ranking,
    ResponseDistribution,
    RuleKind,
    SpaceTooLargeError,
    TiePolicy,
    apply_permutation,
    check_condorcet,
    check_group_preference_matching,
    check_majority,
    check_pairwise_majority,
    check_pareto,
    check_preference_equivalence,
    check_preference_matching,
    complete_profile,
    counterexample_search,
    equally_preferred,
    generalized_profile,
    generate_complete,
    iter_profiles,
    make_rule,
    profile_from_pairs,
    rank_by_scores,
    run_check,
    space_size,
    tally,
    weights_copeland,
    weights_standard,
)

FIXTURE_GAP = 0.07063496451193108  # fixed-point oracle for the 4-voter profile


# ---------------------------------------------------------------- report type

def test_report_vacuous_discipline_enforced():
    with pytest.raises(ValueError):
        AxiomReport("pareto", applicable=False, satisfied=False)
    r = AxiomReport.vacuous("pareto")
    assert r.satisfied and not r.applicable and not r.violated
    assert r.to_json_dict()["axiom"] == "pareto"


# -------------------------------------------------------------------- checkers

def test_pareto_violated_by_cyclic_unanimity():
    profile = generalized_profile(
        ["a", "b", "c"], {"v1": [("a", "b"), ("b", "c"), ("c", "a")]}
    )
    tied = Ranking((0, 1, 2), ((0, 1, 2),))
    rep = check_pareto(profile, tied)
    assert rep.applicable and not rep.satisfied
    assert tuple(rep.witness["pair"]) in ((0, 1), (1, 2), (2, 0))


def test_pareto_satisfied_on_unanimous_profile():
    p = complete_profile(["a", "b"], [["a", "b"], ["a", "b"]])
    rep = check_pareto(p, Ranking((0, 1)))
    assert rep.applicable and rep.satisfied


def test_pareto_vacuous_without_unanimous_pair(paradox):
    rep = check_pareto(paradox, Ranking((0, 1, 2)))
    assert not rep.applicable and rep.satisfied


def test_majority_checker():
    p = complete_profile(
        ["a", "b", "c"], [["a", "b", "c"], ["a", "c", "b"], ["b", "a", "c"]]
    )
    assert check_majority(p, Ranking((0, 1, 2))).satisfied
    bad = check_majority(p, Ranking((1, 0, 2)))
    assert bad.applicable and not bad.satisfied and bad.witness["majority_winner"] == 0
    # no strict majority of first places -> vacuous
    vac = check_majority(
        complete_profile(["a", "b"], [["a", "b"], ["b", "a"]]), Ranking((0, 1))
    )
    assert not vac.applicable and vac.satisfied


def test_majority_vacuous_on_generalized_profiles():
    p = generalized_profile(["a", "b"], {"v1": [("a", "b")]})
    rep = check_majority(p, Ranking((0, 1)))
    assert not rep.applicable and rep.satisfied


def test_pairwise_majority_checker(four_voter):
    p = generate_complete(4, 1, 8)
    want = p.voters[0].ranking
    assert check_pairwise_majority(tally(p), want).satisfied
    wrong = Ranking(tuple(reversed(want.order)))
    rep = check_pairwise_majority(tally(p), wrong)
    assert rep.applicable and not rep.satisfied
    # majority relation has a tie -> not a strict linear order -> vacuous
    assert not check_pairwise_majority(tally(four_voter), Ranking((0, 1, 2))).applicable


def test_condorcet_checker(paradox):
    p = complete_profile(
        ["a", "b", "c"], [["a", "b", "c"], ["a", "c", "b"], ["b", "a", "c"]]
    )
    assert check_condorcet(tally(p), Ranking((0, 1, 2))).satisfied
    tied_top = Ranking((0, 1, 2), ((0, 1), (2,)))
    rep = check_condorcet(tally(p), tied_top)
    assert rep.applicable and not rep.satisfied
    assert not check_condorcet(tally(paradox), Ranking((0, 1, 2))).applicable


def test_preference_matching_checker():
    # n=2, props 3/4: embeddable; p = (3/4, 1/4) matches exactly
    p = complete_profile(
        ["a", "b"], [["a", "b"], ["a", "b"], ["a", "b"], ["b", "a"]]
    )
    good = check_preference_matching(tally(p), ResponseDistribution((0.75, 0.25)))
    assert good.applicable and good.satisfied
    bad = check_preference_matching(tally(p), ResponseDistribution((0.5, 0.5)))
    assert bad.applicable and not bad.satisfied


def test_preference_matching_vacuous_on_cycle(paradox):
    rep = check_preference_matching(tally(paradox), ResponseDistribution.uniform(3))
    assert not rep.applicable and rep.satisfied


def test_equally_preferred_and_equivalence_checker():
    sym = complete_profile(
        ["a", "b", "c"], [["a", "b", "c"], ["b", "a", "c"]]
    )
    assert equally_preferred(sym, 0, 1)
    assert not equally_preferred(sym, 0, 2)
    rep = check_preference_equivalence(sym, ResponseDistribution((0.4, 0.4, 0.2)))
    assert rep.applicable and rep.satisfied
    rep2 = check_preference_equivalence(sym, ResponseDistribution((0.5, 0.3, 0.2)))
    assert rep2.applicable and not rep2.satisfied
    assert tuple(rep2.witness["pair"]) == (0, 1)


def test_gpm_checker_fixture_gap(four_voter):
    dist = make_rule("mle-standard", RuleKind.PROBABILISTIC)(four_voter)
    rep = check_group_preference_matching(four_voter, dist)
    assert rep.applicable and not rep.satisfied
    assert abs(rep.witness["linf_gap"] - FIXTURE_GAP) < 1e-9
    # gpmd itself matches trivially
    ok = check_group_preference_matching(four_voter, make_rule("gpmd-limit", RuleKind.PROBABILISTIC)(four_voter))
    assert ok.satisfied


@given(st.integers(2, 5), st.integers(1, 6), st.integers(0, 10**6), st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_checker_verdicts_are_permutation_equivariant(n, m, seed, pseed):
    profile = generate_complete(n, m, seed)
    pi = list(range(n))
    random.Random(pseed).shuffle(pi)
    permuted = apply_permutation(profile, tuple(pi))
    for name in ("borda", "copeland"):
        rule = make_rule(name, RuleKind.ORDINAL)
        out = rule(profile)
        pout = rule(permuted)
        for axiom in ORDINAL_AXIOMS:
            a = run_check(axiom, profile, out, tol=1e-6, epsilon_policy=None)
            b = run_check(axiom, permuted, pout, tol=1e-6, epsilon_policy=None)
            assert (a.applicable, a.satisfied) == (b.applicable, b.satisfied)


@given(st.integers(2, 4), st.integers(1, 5), st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_vacuous_discipline_holds_everywhere(n, m, seed):
    profile = generate_complete(n, m, seed)
    ranking = make_rule("borda", RuleKind.ORDINAL)(profile)
    dist = make_rule("gpmd-limit", RuleKind.PROBABILISTIC)(profile)
    for axiom in ORDINAL_AXIOMS:
        rep = run_check(axiom, profile, ranking, tol=1e-6, epsilon_policy=None)
        if not rep.applicable:
            assert rep.satisfied
    for axiom in PROBABILISTIC_AXIOMS:
        rep = run_check(axiom, profile, dist, tol=1e-6, epsilon_policy=None)
        if not rep.applicable:
            assert rep.satisfied


# -------------------------------------------------------------------- registry

def test_make_rule_registry():
    for name in ("borda", "copeland", "mle-standard", "mle-copeland"):
        rule = make_rule(name, RuleKind.ORDINAL)
        assert rule.kind is RuleKind.ORDINAL and rule.name == name
    for name in ("mle-standard", "mle-copeland", "mle-gpm", "gpmd-limit"):
        rule = make_rule(name, RuleKind.PROBABILISTIC)
        assert rule.kind is RuleKind.PROBABILISTIC
    with pytest.raises(ValueError):
        make_rule("schulze", RuleKind.ORDINAL)
    with pytest.raises(ValueError):
        make_rule("gpmd-limit", RuleKind.ORDINAL)
    with pytest.raises(ValueError):
        make_rule("borda", RuleKind.PROBABILISTIC)


def test_rules_are_deterministic(four_voter):
    for name, kind in (
        ("borda", RuleKind.ORDINAL),
        ("mle-standard", RuleKind.PROBABILISTIC),
        ("gpmd-limit", RuleKind.PROBABILISTIC),
    ):
        rule = make_rule(name, kind)
        a, b = rule(four_voter), rule(four_voter)
        if kind is RuleKind.ORDINAL:
            assert a.order == b.order and a.classes() == b.classes()
        else:
            assert a.p == b.p


def test_mle_rules_coincide_on_assumption1_tournaments():
    # one labeler per pair, outcomes 0/1: standard and indicator weights agree
    pairs = list(itertools.combinations(range(4), 2))
    for code in range(2**6):
        winners = [
            (i, j) if code >> k & 1 else (j, i) for k, (i, j) in enumerate(pairs)
        ]
        profile = profile_from_pairs(4, winners)
        t = tally(profile)
        std = rank_by_scores(weights_standard(t))
        cop = rank_by_scores(weights_copeland(t, TiePolicy.HALF_POINT))
        assert std.order == cop.order and std.classes() == cop.classes()


# ---------------------------------------------------------------------- spaces

def test_space_sizes():
    assert space_size(ExhaustiveComplete(3, 3)) == 216
    assert space_size(Assumption1(4)) == 64
    assert space_size(RandomComplete(3, 3, 500, seed=1)) == 500


def test_exhaustive_space_yields_distinct_profiles():
    seen = set()
    for profile in iter_profiles(ExhaustiveComplete(3, 2)):
        seen.add(tuple(v.ranking.order for v in profile.voters))
    assert len(seen) == 36


def test_exhaustive_space_too_large():
    with pytest.raises(SpaceTooLargeError):
        list(iter_profiles(ExhaustiveComplete(6, 10)))


def test_random_space_requires_seed():
    with pytest.raises(ValueError):
        list(iter_profiles(RandomComplete(3, 3, 10, seed=None)))


def test_random_space_deterministic():
    a = [tuple(v.ranking.order for v in p.voters) for p in iter_profiles(RandomComplete(3, 4, 20, seed=5))]
    b = [tuple(v.ranking.order for v in p.voters) for p in iter_profiles(RandomComplete(3, 4, 20, seed=5))]
    assert a == b


# ---------------------------------------------------------------------- search

def test_borda_condorcet_counterexample_found_early():
    rule = make_rule("borda", RuleKind.ORDINAL)
    out = counterexample_search(rule, "condorcet", ExhaustiveComplete(3, 3))
    assert out.found and out.index == 3 and out.examined == 4
    assert out.report.violated
    # the witness profile really has a Condorcet winner Borda does not rank top
    t = tally(out.profile)
    from prefaxiom import borda_scores, condorcet_winner, ranking_from_scores

    w = condorcet_winner(t)
    assert w is not None
    assert ranking_from_scores(borda_scores(t)).top_class() != (w,)


def test_copeland_passes_ordinal_axioms_exhaustive():
    rule = make_rule("copeland", RuleKind.ORDINAL)
    for axiom in ORDINAL_AXIOMS:
        out = counterexample_search(rule, axiom, ExhaustiveComplete(3, 3))
        assert not out.found and out.examined == 216


def test_search_is_parallel_deterministic():
    rule = make_rule("borda", RuleKind.ORDINAL)
    seq = counterexample_search(rule, "condorcet", RandomComplete(3, 4, 300, seed=11))
    par = counterexample_search(rule, "condorcet", RandomComplete(3, 4, 300, seed=11), jobs=4)
    assert seq.found == par.found and seq.index == par.index
    if seq.found:
        assert tally(seq.profile).wins == tally(par.profile).wins


def test_search_budget_caps_examined():
    rule = make_rule("copeland", RuleKind.ORDINAL)
    out = counterexample_search(rule, "condorcet", ExhaustiveComplete(3, 3), budget=50)
    assert not out.found and out.examined == 50


def test_search_rejects_mismatched_kind():
    rule = make_rule("borda", RuleKind.ORDINAL)
    with pytest.raises(ValueError):
        counterexample_search(rule, "gpm", ExhaustiveComplete(3, 3))


def test_search_gpm_alias():
    rule = make_rule("gpmd-limit", RuleKind.PROBABILISTIC)
    out = counterexample_search(
        rule, "group-preference-matching", ExhaustiveComplete(3, 2), tol=1e-9
    )
    # gpmd matches itself everywhere
    assert not out.found and out.examined == 36


def test_run_check_rejects_unknown_axiom(four_voter):
    with pytest.raises(ValueError):
        run_check("iia", four_voter, Ranking((0, 1, 2)), tol=1e-6, epsilon_policy=None)
