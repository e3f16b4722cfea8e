"""Ordinal aggregation rules on pairwise tallies: Borda, Copeland, majority notions."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .distributions import ResponseDistribution
from .errors import NotCompleteProfileError
from .profiles import (
    Outcome,
    PairwiseTally,
    PreferenceProfile,
    ProfileKind,
    Ranking,
    TiePolicy,
    majority_relation,
)


@dataclass(frozen=True)
class ScoreVector:
    """Exact per-candidate scores plus a tag naming the producing rule."""

    values: tuple[Fraction, ...]
    rule_tag: str

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    @property
    def n(self) -> int:
        return len(self.values)


class TieBreak(Enum):
    """How equal scores turn into a ranking: grouped classes or index order."""

    GROUP_TIES = "group"
    LEXICOGRAPHIC = "lex"


def borda_scores(t: PairwiseTally) -> ScoreVector:
    """Sum of win proportions against every opponent (unnormalized)."""
    t.require_all_pairs()
    n = t.n
    values = tuple(
        sum((t.prop(i, j) for j in range(n) if j != i), Fraction(0)) for i in range(n)
    )
    return ScoreVector(values, "borda")


def copeland_scores(t: PairwiseTally, tie_policy: TiePolicy = TiePolicy.HALF_POINT) -> ScoreVector:
    """One point per majority win; exact half-splits score per the tie policy."""
    t.require_all_pairs()
    rel = majority_relation(t, tie_policy)
    n = t.n
    tie_value = Fraction(1, 2) if tie_policy is TiePolicy.HALF_POINT else Fraction(0)
    values = []
    for i in range(n):
        s = Fraction(0)
        for j in range(n):
            if j == i:
                continue
            out = rel.outcomes[i][j]
            if out is Outcome.WIN:
                s += 1
            elif out is Outcome.TIE:
                s += tie_value
        values.append(s)
    return ScoreVector(tuple(values), "copeland")


def condorcet_winner(t: PairwiseTally) -> int | None:
    """Candidate beating every other by strict majority, or None."""
    t.require_all_pairs()
    rel = majority_relation(t)
    for i in range(t.n):
        if all(rel.outcomes[i][j] is Outcome.WIN for j in range(t.n) if j != i):
            return i
    return None


def majority_winner(profile: PreferenceProfile) -> int | None:
    """Candidate ranked first by a strict majority of voters, or None."""
    if profile.kind is not ProfileKind.COMPLETE:
        raise NotCompleteProfileError("majority winner needs full rankings")
    counts = [0] * profile.n
    for v in profile.voters:
        counts[v.ranking.top()] += 1
    for i, c in enumerate(counts):
        if 2 * c > profile.m:
            return i
    return None


def pm_consistent_ranking(t: PairwiseTally) -> Ranking | None:
    """The majority relation itself as a ranking, when it is a strict linear order."""
    t.require_all_pairs()
    rel = majority_relation(t)
    if not rel.is_strict_linear_order():
        return None
    order = tuple(sorted(range(t.n), key=lambda i: -rel.win_count(i)))
    return Ranking(order)


def ranking_from_scores(scores: ScoreVector, tie_break: TieBreak = TieBreak.GROUP_TIES) -> Ranking:
    """Descending-score ranking; equal scores grouped or broken by candidate index."""
    order = tuple(sorted(range(scores.n), key=lambda i: (-scores.values[i], i)))
    if tie_break is TieBreak.LEXICOGRAPHIC:
        return Ranking(order)
    classes: list[list[int]] = []
    for i in order:
        if classes and scores.values[classes[-1][0]] == scores.values[i]:
            classes[-1].append(i)
        else:
            classes.append([i])
    return Ranking(order, tuple(tuple(c) for c in classes))


def first_place_shares(profile: PreferenceProfile) -> ResponseDistribution:
    """Fraction of voters ranking each candidate first, as exact rationals."""
    if profile.kind is not ProfileKind.COMPLETE:
        raise NotCompleteProfileError("first-place shares need full rankings")
    counts = [0] * profile.n
    for v in profile.voters:
        counts[v.ranking.top()] += 1
    m = profile.m
    return ResponseDistribution(tuple(Fraction(c, m) for c in counts))
