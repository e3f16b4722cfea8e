"""Mechanical checkers for ordinal and distributional consistency properties.

Each checker returns an AxiomReport separating applicability (does the
profile satisfy the axiom's premise?) from satisfaction (does the rule output
honor the conclusion?).  A report with applicable=False always carries
satisfied=True: axioms hold vacuously where their premise fails, and search
treats such instances as non-witnesses.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator, Mapping

from .distributions import ResponseDistribution
from .errors import NotCompleteProfileError, SpaceTooLargeError
from .gpmd import EpsilonPolicy, gpmd
from .profiles import (
    PairwiseTally,
    PreferenceProfile,
    ProfileKind,
    Ranking,
    TiePolicy,
    apply_permutation,
    generate_assumption1,
    generate_complete,
    profile_from_pairs,
    profiles_equal_as_multisets,
    tally,
)
from .reward import (
    SolverConfig,
    bt_embeddable,
    rank_by_scores,
    softmax,
    solve_mle,
    weights_copeland,
    weights_gpm,
    weights_standard,
)
from .rules import (
    TieBreak,
    borda_scores,
    condorcet_winner,
    copeland_scores,
    majority_winner,
    pm_consistent_ranking,
    ranking_from_scores,
)

ENUMERATION_BOUND = 10**7


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    applicable: bool
    satisfied: bool
    witness: Mapping | None = None

    def __post_init__(self):
        if not self.applicable and not self.satisfied:
            raise ValueError("a non-applicable axiom holds vacuously")

    @classmethod
    def vacuous(cls, axiom: str) -> "AxiomReport":
        return cls(axiom, applicable=False, satisfied=True)

    @property
    def violated(self) -> bool:
        return self.applicable and not self.satisfied

    def to_json_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "applicable": self.applicable,
            "satisfied": self.satisfied,
            "witness": dict(self.witness) if self.witness is not None else None,
        }


def check_pareto(profile: PreferenceProfile, ranking: Ranking) -> AxiomReport:
    """Unanimously preferred candidates must be ranked strictly higher.

    Applicable iff some compared pair is unanimous; a tie class containing
    both members of a unanimous pair violates.
    """
    t = tally(profile)
    n = t.n
    unanimous = []
    for i in range(n):
        for j in range(n):
            if i != j and t.total(i, j) > 0 and t.prop(i, j) == 1:
                unanimous.append((i, j))
    if not unanimous:
        return AxiomReport.vacuous("pareto")
    for i, j in unanimous:
        if not ranking.strictly_above(i, j):
            return AxiomReport(
                "pareto",
                applicable=True,
                satisfied=False,
                witness={"pair": [i, j], "note": "unanimous pair not strictly separated"},
            )
    return AxiomReport("pareto", applicable=True, satisfied=True)


def check_majority(profile: PreferenceProfile, ranking: Ranking) -> AxiomReport:
    """A candidate ranked first by over half the voters must be the unique top."""
    try:
        winner = majority_winner(profile)
    except NotCompleteProfileError:
        return AxiomReport.vacuous("majority")
    if winner is None:
        return AxiomReport.vacuous("majority")
    top = ranking.top_class()
    if top == (winner,):
        return AxiomReport("majority", applicable=True, satisfied=True)
    return AxiomReport(
        "majority",
        applicable=True,
        satisfied=False,
        witness={"majority_winner": winner, "top_class": list(top)},
    )


def check_pairwise_majority(t: PairwiseTally, ranking: Ranking) -> AxiomReport:
    """When the majority relation is a strict linear order, return exactly it."""
    expected = pm_consistent_ranking(t)
    if expected is None:
        return AxiomReport.vacuous("pairwise-majority")
    if ranking.is_strict and ranking.order == expected.order:
        return AxiomReport("pairwise-majority", applicable=True, satisfied=True)
    return AxiomReport(
        "pairwise-majority",
        applicable=True,
        satisfied=False,
        witness={
            "expected_order": list(expected.order),
            "actual_order": list(ranking.order),
            "actual_has_ties": not ranking.is_strict,
        },
    )


def check_condorcet(t: PairwiseTally, ranking: Ranking) -> AxiomReport:
    """A candidate beating every other by majority must be the unique top."""
    winner = condorcet_winner(t)
    if winner is None:
        return AxiomReport.vacuous("condorcet")
    top = ranking.top_class()
    if top == (winner,):
        return AxiomReport("condorcet", applicable=True, satisfied=True)
    return AxiomReport(
        "condorcet",
        applicable=True,
        satisfied=False,
        witness={"condorcet_winner": winner, "top_class": list(top)},
    )


def check_preference_matching(
    t: PairwiseTally, dist: ResponseDistribution, tol: float = 1e-6
) -> AxiomReport:
    """On BT-embeddable tallies, p_i / (p_i + p_j) must reproduce each proportion."""
    axiom = "preference-matching"
    if not t.defined_on_all_pairs:
        return AxiomReport.vacuous(axiom)
    if bt_embeddable(t) is None:
        return AxiomReport.vacuous(axiom)
    n = t.n
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            target = float(t.prop(i, j))
            denom = float(dist[i]) + float(dist[j])
            if denom == 0.0:
                return AxiomReport(
                    axiom,
                    applicable=True,
                    satisfied=False,
                    witness={"pair": [i, j], "note": "both probabilities are zero"},
                )
            actual = float(dist[i]) / denom
            if abs(actual - target) > tol:
                return AxiomReport(
                    axiom,
                    applicable=True,
                    satisfied=False,
                    witness={"pair": [i, j], "target": target, "actual": actual},
                )
    return AxiomReport(axiom, applicable=True, satisfied=True)


def equally_preferred(profile: PreferenceProfile, i: int, j: int) -> bool:
    """Whether swapping candidates i and j maps the electorate onto itself."""
    if profile.kind is not ProfileKind.COMPLETE:
        raise NotCompleteProfileError("preference equivalence needs full rankings")
    if i == j:
        raise ValueError("need two distinct candidates")
    perm = list(range(profile.n))
    perm[i], perm[j] = perm[j], perm[i]
    return profiles_equal_as_multisets(profile, apply_permutation(profile, perm))


def check_preference_equivalence(
    profile: PreferenceProfile, dist: ResponseDistribution, tol: float = 1e-6
) -> AxiomReport:
    """Equally-preferred candidates must receive equal probability."""
    axiom = "preference-equivalence"
    pairs = [
        (i, j)
        for i in range(profile.n)
        for j in range(i + 1, profile.n)
        if equally_preferred(profile, i, j)
    ]
    if not pairs:
        return AxiomReport.vacuous(axiom)
    for i, j in pairs:
        if abs(float(dist[i]) - float(dist[j])) > tol:
            return AxiomReport(
                axiom,
                applicable=True,
                satisfied=False,
                witness={"pair": [i, j], "p_i": float(dist[i]), "p_j": float(dist[j])},
            )
    return AxiomReport(axiom, applicable=True, satisfied=True)


def check_group_preference_matching(
    profile: PreferenceProfile,
    dist: ResponseDistribution,
    epsilon_policy: EpsilonPolicy | None = None,
    tol: float = 1e-6,
) -> AxiomReport:
    """The distribution must equal the group matching distribution within tol."""
    axiom = "gpm"
    policy = epsilon_policy or EpsilonPolicy.limit()
    target = gpmd(profile, policy)
    gap = dist.linf_distance(target)
    if gap <= tol:
        return AxiomReport(axiom, applicable=True, satisfied=True)
    return AxiomReport(
        axiom,
        applicable=True,
        satisfied=False,
        witness={
            "linf_gap": gap,
            "target": [float(x) for x in target],
            "actual": [float(x) for x in dist],
        },
    )


ORDINAL_AXIOMS = ("pareto", "majority", "pairwise-majority", "condorcet")
PROBABILISTIC_AXIOMS = ("preference-matching", "preference-equivalence", "gpm")


class RuleKind(Enum):
    ORDINAL = "ordinal"
    PROBABILISTIC = "probabilistic"


@dataclass(frozen=True)
class RuleUnderTest:
    """A named map from profiles to rankings (ordinal) or distributions."""

    name: str
    kind: RuleKind
    fn: Callable[[PreferenceProfile], "Ranking | ResponseDistribution"]

    def __call__(self, profile: PreferenceProfile):
        return self.fn(profile)


RULE_NAMES = ("borda", "copeland", "mle-standard", "mle-copeland", "mle-gpm", "gpmd-limit")


def _mle_distribution(weights, config: SolverConfig | None, ridge_fallback: float):
    solution = solve_mle(weights, config)
    if not solution.converged:
        # boundary proportions push rewards to infinity; the regularized
        # solve pins a finite representative with the same ordering
        solution = solve_mle(weights, config, ridge=ridge_fallback)
    return softmax(solution)


def make_rule(
    name: str,
    kind: RuleKind,
    *,
    tie_policy: TiePolicy = TiePolicy.HALF_POINT,
    tie_break: TieBreak = TieBreak.GROUP_TIES,
    epsilon_policy: EpsilonPolicy | None = None,
    solver_config: SolverConfig | None = None,
    ridge_fallback: float = 1e-8,
) -> RuleUnderTest:
    """Construct a registry rule; raises ValueError for unsupported pairings.

    Ordinal MLE rules route through the exact score shortcut (rank_by_scores),
    the sanctioned path for axiom verdicts.  Probabilistic MLE rules softmax
    the converged solve and fall back to an explicit ridge solve when the
    plain MLE diverges.
    """
    policy = epsilon_policy or EpsilonPolicy.finite()
    if kind is RuleKind.ORDINAL:
        table: dict[str, Callable] = {
            "borda": lambda p: ranking_from_scores(borda_scores(tally(p)), tie_break),
            "copeland": lambda p: ranking_from_scores(
                copeland_scores(tally(p), tie_policy), tie_break
            ),
            "mle-standard": lambda p: rank_by_scores(weights_standard(tally(p)), tie_break),
            "mle-copeland": lambda p: rank_by_scores(
                weights_copeland(tally(p), tie_policy), tie_break
            ),
            "mle-gpm": lambda p: rank_by_scores(weights_gpm(gpmd(p, policy)), tie_break),
        }
    else:
        table = {
            "mle-standard": lambda p: _mle_distribution(
                weights_standard(tally(p)), solver_config, ridge_fallback
            ),
            "mle-copeland": lambda p: _mle_distribution(
                weights_copeland(tally(p), tie_policy), solver_config, ridge_fallback
            ),
            "mle-gpm": lambda p: _mle_distribution(
                weights_gpm(gpmd(p, policy)), solver_config, ridge_fallback
            ),
            "gpmd-limit": lambda p: gpmd(p, EpsilonPolicy.limit()),
        }
    if name not in table:
        raise ValueError(f"rule {name!r} has no {kind.value} form")
    return RuleUnderTest(name, kind, table[name])


@dataclass(frozen=True)
class ExhaustiveComplete:
    """Every m-tuple of strict rankings over n candidates, lexicographic."""

    n: int
    m: int


@dataclass(frozen=True)
class RandomComplete:
    """Seeded uniform complete profiles; trial t uses seed*1000003 + t."""

    n: int
    m: int
    trials: int
    seed: int


@dataclass(frozen=True)
class Assumption1:
    """Tournaments: exhaustive over all orientations when trials is None."""

    n: int
    trials: int | None = None
    seed: int | None = None


SearchSpace = "ExhaustiveComplete | RandomComplete | Assumption1"


def _derive(seed: int, t: int) -> int:
    return seed * 1_000_003 + t


def space_size(space) -> int:
    if isinstance(space, ExhaustiveComplete):
        return math.factorial(space.n) ** space.m
    if isinstance(space, RandomComplete):
        return space.trials
    if isinstance(space, Assumption1):
        if space.trials is not None:
            return space.trials
        return 2 ** (space.n * (space.n - 1) // 2)
    raise TypeError(f"unknown search space {space!r}")


def iter_profiles(space) -> Iterator[PreferenceProfile]:
    """Deterministic profile stream for a search space.

    Exhaustive spaces larger than the enumeration bound (10^7) are refused;
    random spaces require a seed.
    """
    size = space_size(space)
    if isinstance(space, (ExhaustiveComplete, Assumption1)) and (
        not isinstance(space, Assumption1) or space.trials is None
    ):
        if size > ENUMERATION_BOUND:
            raise SpaceTooLargeError(
                f"{size} instances exceed the enumeration bound {ENUMERATION_BOUND}"
            )
    if isinstance(space, (RandomComplete,)) and space.seed is None:
        raise ValueError("random spaces need a seed")
    if isinstance(space, Assumption1) and space.trials is not None and space.seed is None:
        raise ValueError("random spaces need a seed")

    if isinstance(space, ExhaustiveComplete):
        return _iter_exhaustive_complete(space.n, space.m)
    if isinstance(space, RandomComplete):
        return (
            generate_complete(space.n, space.m, _derive(space.seed, t))
            for t in range(space.trials)
        )
    if isinstance(space, Assumption1):
        if space.trials is None:
            return _iter_tournaments(space.n)
        return (
            generate_assumption1(space.n, _derive(space.seed, t))
            for t in range(space.trials)
        )
    raise TypeError(f"unknown search space {space!r}")


def _iter_exhaustive_complete(n: int, m: int) -> Iterator[PreferenceProfile]:
    from .profiles import CandidateSet, Ranking as _Ranking, Voter, default_labels

    cset = CandidateSet(default_labels(n))
    perms = sorted(itertools.permutations(range(n)))
    for combo in itertools.product(perms, repeat=m):
        voters = tuple(
            Voter(id=f"v{k + 1}", ranking=_Ranking(order)) for k, order in enumerate(combo)
        )
        yield PreferenceProfile(cset, voters)


def _iter_tournaments(n: int) -> Iterator[PreferenceProfile]:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for code in range(2 ** len(pairs)):
        winners = []
        for bit, (i, j) in enumerate(pairs):
            if code >> bit & 1:
                winners.append((i, j))
            else:
                winners.append((j, i))
        yield profile_from_pairs(n, winners)


def run_check(
    axiom: str,
    profile: PreferenceProfile,
    output: "Ranking | ResponseDistribution",
    *,
    tol: float = 1e-6,
    epsilon_policy: EpsilonPolicy | None = None,
) -> AxiomReport:
    """Dispatch one axiom checker on a rule output."""
    if axiom == "pareto":
        return check_pareto(profile, output)
    if axiom == "majority":
        return check_majority(profile, output)
    if axiom == "pairwise-majority":
        return check_pairwise_majority(tally(profile), output)
    if axiom == "condorcet":
        return check_condorcet(tally(profile), output)
    if axiom == "preference-matching":
        return check_preference_matching(tally(profile), output, tol)
    if axiom == "preference-equivalence":
        return check_preference_equivalence(profile, output, tol)
    if axiom in ("gpm", "group-preference-matching"):
        return check_group_preference_matching(profile, output, epsilon_policy, tol)
    raise ValueError(f"unknown axiom {axiom!r}")


@dataclass(frozen=True)
class SearchOutcome:
    """Either a first violation (lowest index) or an exhaustion proof."""

    found: bool
    examined: int
    index: int | None = None
    profile: PreferenceProfile | None = None
    report: AxiomReport | None = None


def counterexample_search(
    rule: RuleUnderTest,
    axiom: str,
    space,
    *,
    tol: float = 1e-6,
    epsilon_policy: EpsilonPolicy | None = None,
    budget: int | None = None,
    jobs: int = 1,
) -> SearchOutcome:
    """Scan a space for the first profile where the rule violates the axiom.

    Instances are processed in deterministic index order; with jobs > 1 the
    evaluation of fixed-size batches is parallelized and the lowest violating
    index in a batch wins, so results never depend on the worker count.
    """
    if axiom in ORDINAL_AXIOMS and rule.kind is not RuleKind.ORDINAL:
        raise ValueError(f"axiom {axiom!r} needs an ordinal rule")
    if axiom in PROBABILISTIC_AXIOMS and rule.kind is not RuleKind.PROBABILISTIC:
        raise ValueError(f"axiom {axiom!r} needs a probabilistic rule")

    def evaluate(item: tuple[int, PreferenceProfile]):
        idx, profile = item
        output = rule(profile)
        report = run_check(axiom, profile, output, tol=tol, epsilon_policy=epsilon_policy)
        return idx, profile, report

    stream = enumerate(iter_profiles(space))
    if budget is not None:
        stream = itertools.islice(stream, budget)

    examined = 0
    if jobs <= 1:
        for item in stream:
            idx, profile, report = evaluate(item)
            examined += 1
            if report.violated:
                return SearchOutcome(True, examined, idx, profile, report)
        return SearchOutcome(False, examined)

    batch_size = 128
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        while True:
            batch = list(itertools.islice(stream, batch_size))
            if not batch:
                return SearchOutcome(False, examined)
            results = list(pool.map(evaluate, batch))
            examined += len(batch)
            hits = [(idx, p, rep) for idx, p, rep in results if rep.violated]
            if hits:
                idx, profile, report = min(hits, key=lambda h: h[0])
                examined = idx + 1
                return SearchOutcome(True, examined, idx, profile, report)


def profiles_equivalent(a: PreferenceProfile, b: PreferenceProfile) -> tuple[int, ...] | None:
    """Find a candidate permutation mapping profile a onto profile b, if any.

    Brute force over all n! permutations; refused above n = 8.  Utility only:
    the preference-equivalence axiom itself uses single transpositions.
    """
    if a.n != b.n or a.m != b.m:
        return None
    if a.n > 8:
        raise SpaceTooLargeError("isomorphism search is limited to n <= 8")
    for perm in itertools.permutations(range(a.n)):
        if profiles_equal_as_multisets(apply_permutation(a, perm), b):
            return perm
    return None
