"""Group preference matching distributions.

A single strict ranking admits an exact geometric matching distribution under
an epsilon-smoothed Bradley-Terry model: adjacent candidates are preferred
with probability 1 - epsilon, so position k carries probability proportional
to c^(k-1) with c = epsilon / (1 - epsilon).  The group distribution averages
the per-voter distributions; in the epsilon -> 0 limit it collapses to the
first-place shares.  Partition-based computation exists to exercise the
uniqueness claim: any split of the electorate into embeddable blocks must
reproduce the same distribution.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .distributions import ResponseDistribution
from .errors import (
    BlockNotEmbeddableError,
    NotCompleteProfileError,
    TiesNotAllowedError,
)
from .profiles import PairwiseTally, PreferenceProfile, ProfileKind, Ranking, tally
from .reward import RewardVector, SolverConfig, bt_embeddable, softmax, solve_mle, weights_gpm
from .rules import first_place_shares


@dataclass(frozen=True)
class EpsilonPolicy:
    """Finite smoothing level, or the exact epsilon -> 0 limit when None."""

    epsilon: Fraction | None

    def __post_init__(self):
        if self.epsilon is not None:
            eps = Fraction(self.epsilon)
            if not 0 < eps < Fraction(1, 2):
                raise ValueError("epsilon must lie in (0, 1/2)")
            object.__setattr__(self, "epsilon", eps)

    @classmethod
    def finite(cls, epsilon: "Fraction | float" = Fraction(1, 1000)) -> "EpsilonPolicy":
        return cls(Fraction(epsilon))

    @classmethod
    def limit(cls) -> "EpsilonPolicy":
        return cls(None)

    @property
    def is_limit(self) -> bool:
        return self.epsilon is None


def pm_geometric(ranking: Ranking, epsilon: "Fraction | float") -> ResponseDistribution:
    """Exact matching distribution of one strict ranking at smoothing epsilon.

    The candidate at position k (1-based) receives
    (1 - c) * c^(k-1) / (1 - c^n) with c = epsilon / (1 - epsilon), which makes
    every adjacent win probability exactly 1 - epsilon.
    """
    if not ranking.is_strict:
        raise TiesNotAllowedError("geometric matching needs a strict ranking")
    eps = Fraction(epsilon)
    if not 0 < eps < Fraction(1, 2):
        raise ValueError("epsilon must lie in (0, 1/2)")
    c = eps / (1 - eps)
    n = ranking.n
    norm = (1 - c) / (1 - c**n)
    probs = [Fraction(0)] * n
    for k, candidate in enumerate(ranking.order):
        probs[candidate] = norm * c**k
    return ResponseDistribution(tuple(probs))


def _limit_pm(ranking: Ranking) -> ResponseDistribution:
    if not ranking.is_strict:
        raise TiesNotAllowedError("limit matching needs a strict ranking")
    return ResponseDistribution.point_mass(ranking.n, ranking.top())


def gpmd(profile: PreferenceProfile, policy: EpsilonPolicy) -> ResponseDistribution:
    """Per-voter average of individual matching distributions, exact throughout."""
    if profile.kind is not ProfileKind.COMPLETE:
        raise NotCompleteProfileError("group matching needs full rankings")
    if policy.is_limit:
        return first_place_shares(profile)
    m = profile.m
    acc = [Fraction(0)] * profile.n
    for v in profile.voters:
        part = pm_geometric(v.ranking, policy.epsilon)
        for i, x in enumerate(part):
            acc[i] += Fraction(x, m)
    return ResponseDistribution(tuple(acc))


@dataclass(frozen=True)
class Partition:
    """Disjoint non-empty blocks of voter indices, held in canonical order."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        if any(len(b) == 0 for b in blocks):
            raise ValueError("blocks must be non-empty")
        blocks = tuple(sorted(blocks, key=lambda b: b[0]))
        object.__setattr__(self, "blocks", blocks)
        flat = list(itertools.chain.from_iterable(blocks))
        if len(set(flat)) != len(flat):
            raise ValueError("blocks must be disjoint")

    @classmethod
    def singletons(cls, m: int) -> "Partition":
        return cls(tuple((k,) for k in range(m)))

    def covers(self, m: int) -> bool:
        return sorted(itertools.chain.from_iterable(self.blocks)) == list(range(m))


def _block_profile(profile: PreferenceProfile, block: Sequence[int]) -> PreferenceProfile:
    voters = tuple(profile.voters[k] for k in block)
    return PreferenceProfile(profile.candidates, voters)


def limit_embeddable(t: PairwiseTally) -> bool:
    """Whether the tally is a limit of Bradley-Terry models.

    Exact test: candidates split into totally ordered tiers with unanimous
    proportions (0 or 1) across tiers, and strictly interior, multiplicatively
    consistent odds inside each tier.  Single rankings and unanimous pools pass
    (each candidate its own tier); majority cycles on interior proportions fail.
    """
    t.require_all_pairs()
    n = t.n
    interior = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                p = t.prop(i, j)
                interior[i][j] = 0 < p < 1

    # connected components of the interior graph
    comp = [-1] * n
    comps: list[list[int]] = []
    for start in range(n):
        if comp[start] != -1:
            continue
        queue = deque([start])
        comp[start] = len(comps)
        members = [start]
        while queue:
            u = queue.popleft()
            for v in range(n):
                if v != u and interior[u][v] and comp[v] == -1:
                    comp[v] = comp[start]
                    members.append(v)
                    queue.append(v)
        comps.append(sorted(members))

    # tiers must be interior cliques
    for members in comps:
        for a, b in itertools.combinations(members, 2):
            if not interior[a][b]:
                return False

    # across tiers: unanimous direction, and the tier tournament transitive
    k = len(comps)
    beats = [[False] * k for _ in range(k)]
    for x in range(k):
        for y in range(x + 1, k):
            directions = {t.prop(a, b) for a in comps[x] for b in comps[y]}
            if directions == {Fraction(1)}:
                beats[x][y] = True
            elif directions == {Fraction(0)}:
                beats[y][x] = True
            else:
                return False
    outdeg = sorted(sum(beats[x]) for x in range(k))
    if outdeg != list(range(k)):
        return False

    # inside each tier: odds ratios must factor through per-candidate weights
    for members in comps:
        if len(members) < 3:
            continue
        anchor = members[0]
        rho = {anchor: Fraction(1)}
        for a in members[1:]:
            p = t.prop(a, anchor)
            rho[a] = p / (1 - p)
        for a, b in itertools.combinations(members, 2):
            p = t.prop(a, b)
            if p / (1 - p) != rho[a] / rho[b]:
                return False
    return True


def _identical_rankings(profile: PreferenceProfile) -> Ranking | None:
    first = profile.voters[0].ranking
    if first is None:
        return None
    if all(v.ranking == first for v in profile.voters):
        return first
    return None


def block_embeddable(
    profile: PreferenceProfile, block: Sequence[int], policy: EpsilonPolicy
) -> bool:
    """Whether a voter block can stand alone in a partition under the policy."""
    if len(block) == 1:
        return True
    sub = _block_profile(profile, block)
    if policy.is_limit:
        return limit_embeddable(tally(sub))
    if _identical_rankings(sub) is not None:
        return True
    return bt_embeddable(tally(sub)) is not None


def block_pm_distribution(
    profile: PreferenceProfile, block: Sequence[int], policy: EpsilonPolicy
) -> ResponseDistribution:
    """Matching distribution of one block.

    Limit policy: the block's first-place shares (the epsilon -> 0 limit of the
    member average, exact).  Finite policy: the geometric closed form when all
    members agree, else the softmax of the pooled tally's recovered rewards;
    pooled tallies with boundary proportions are rejected.
    """
    sub = _block_profile(profile, block)
    if len(block) == 1:
        ranking = sub.voters[0].ranking
        if ranking is None:
            raise NotCompleteProfileError("blocks need ranking voters")
        return _limit_pm(ranking) if policy.is_limit else pm_geometric(ranking, policy.epsilon)
    if policy.is_limit:
        if not limit_embeddable(tally(sub)):
            raise BlockNotEmbeddableError(tuple(block), "pooled tally is not a BT limit")
        return first_place_shares(sub)
    common = _identical_rankings(sub)
    if common is not None:
        return pm_geometric(common, policy.epsilon)
    recovered = bt_embeddable(tally(sub))
    if recovered is None:
        raise BlockNotEmbeddableError(tuple(block), "pooled proportions are not BT-consistent")
    return softmax(recovered)


def gpmd_via_partition(
    profile: PreferenceProfile, partition: Partition, policy: EpsilonPolicy
) -> ResponseDistribution:
    """Block-size-weighted average of block matching distributions."""
    if profile.kind is not ProfileKind.COMPLETE:
        raise NotCompleteProfileError("group matching needs full rankings")
    if not partition.covers(profile.m):
        raise ValueError("partition must cover every voter exactly once")
    n = profile.n
    m = profile.m
    exact = all(
        policy.is_limit or len(b) == 1 or _identical_rankings(_block_profile(profile, b))
        for b in partition.blocks
    )
    acc = [Fraction(0) if exact else 0.0] * n
    for block in partition.blocks:
        part = block_pm_distribution(profile, block, policy)
        share = Fraction(len(block), m)
        for i, x in enumerate(part):
            acc[i] = acc[i] + (share * Fraction(x) if exact else float(share) * float(x))
    return ResponseDistribution(tuple(acc))


def partition_discrepancy(
    profile: PreferenceProfile, partition: Partition, policy: EpsilonPolicy
) -> float:
    """Worst gap between a block's pooled distribution and its member average.

    The uniqueness argument treats these as equal; at finite epsilon that is
    an approximation for genuinely mixed blocks, so the gap is surfaced as a
    diagnostic instead of being assumed away.
    """
    worst = 0.0
    for block in partition.blocks:
        pooled = block_pm_distribution(profile, block, policy)
        sub = _block_profile(profile, block)
        averaged = gpmd(sub, policy)
        worst = max(worst, pooled.linf_distance(averaged))
    return worst


def enumerate_embeddable_partitions(
    profile: PreferenceProfile, policy: EpsilonPolicy, budget: int = 64
) -> list[Partition]:
    """Valid partitions found by greedy pairwise block merges, up to `budget`.

    Always contains the all-singleton partition; every further entry arises by
    merging two blocks of an already-found partition when the pooled block
    stays embeddable under the policy.
    """
    if profile.kind is not ProfileKind.COMPLETE:
        raise NotCompleteProfileError("group matching needs full rankings")
    if budget < 1:
        raise ValueError("budget must be positive")
    start = Partition.singletons(profile.m)
    found = [start]
    seen = {start.blocks}
    queue = deque([start])
    while queue and len(found) < budget:
        current = queue.popleft()
        blocks = current.blocks
        for a, b in itertools.combinations(range(len(blocks)), 2):
            merged_block = tuple(sorted(blocks[a] + blocks[b]))
            rest = tuple(blk for k, blk in enumerate(blocks) if k not in (a, b))
            candidate = Partition(rest + (merged_block,))
            if candidate.blocks in seen:
                continue
            if block_embeddable(profile, merged_block, policy):
                seen.add(candidate.blocks)
                found.append(candidate)
                queue.append(candidate)
            else:
                seen.add(candidate.blocks)  # cache the rejection
            if len(found) >= budget:
                break
    return found


class GpmPipelineResult(NamedTuple):
    target: ResponseDistribution
    fitted: RewardVector
    recovered: ResponseDistribution


def gpm_pipeline(
    profile: PreferenceProfile,
    policy: EpsilonPolicy,
    solver_config: SolverConfig | None = None,
) -> GpmPipelineResult:
    """Target distribution -> GPM-weighted loss -> solved rewards -> softmax.

    The stationary point of the weighted loss is log(target) up to a constant,
    so the recovered softmax must reproduce the target (checked by callers;
    a zero target entry under the limit policy is an error from the weights).
    """
    target = gpmd(profile, policy)
    fitted = solve_mle(weights_gpm(target), solver_config)
    recovered = softmax(fitted)
    return GpmPipelineResult(target, fitted, recovered)
