#!/usr/bin/env python3
"""Measure how far MLE-fitted response probabilities sit from the group
matching distribution, and hunt for profiles where the gap is large.

Prints the canonical 4-voter example first (its gap has a closed fixed-point
characterization), then scans a seeded random space and reports the profile
with the largest L-infinity gap found.

Usage:
    python3 scripts/gap_search.py
    python3 scripts/gap_search.py --n 4 --m 6 --trials 5000 --seed 3
"""
from __future__ import annotations

import argparse
from fractions import Fraction

from prefaxiom import (
    EpsilonPolicy,
    RandomComplete,
    RuleKind,
    complete_profile,
    gpmd,
    iter_profiles,
    make_rule,
)

FOUR_VOTER = complete_profile(
    ["y1", "y2", "y3"],
    [["y1", "y2", "y3"], ["y1", "y2", "y3"], ["y2", "y3", "y1"], ["y3", "y1", "y2"]],
)


def fmt(dist) -> str:
    return "(" + ", ".join(f"{float(x):.6f}" for x in dist) + ")"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3, help="candidates")
    ap.add_argument("--m", type=int, default=4, help="voters")
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    rule = make_rule("mle-standard", RuleKind.PROBABILISTIC)

    print("## Canonical 4-voter example (3 candidates)")
    print()
    fitted = rule(FOUR_VOTER)
    for policy, label in [
        (EpsilonPolicy.limit(), "limit"),
        (EpsilonPolicy.finite(Fraction(1, 100)), "epsilon=1/100"),
        (EpsilonPolicy.finite(Fraction(1, 1000)), "epsilon=1/1000"),
    ]:
        target = gpmd(FOUR_VOTER, policy)
        gap = fitted.linf_distance(target)
        print(f"- target @ {label}: {fmt(target)}  gap to MLE fit {fmt(fitted)}: {gap:.6f}")
    print()

    print(f"## Random scan: n={args.n}, m={args.m}, trials={args.trials}, seed={args.seed}")
    print()
    best_gap, best_profile, best_index = -1.0, None, -1
    space = RandomComplete(args.n, args.m, args.trials, seed=args.seed)
    for index, profile in enumerate(iter_profiles(space)):
        gap = rule(profile).linf_distance(gpmd(profile, EpsilonPolicy.limit()))
        if gap > best_gap:
            best_gap, best_profile, best_index = gap, profile, index
    print(f"largest gap {best_gap:.6f} at trial {best_index} of {args.trials}")
    print(f"- MLE fit: {fmt(rule(best_profile))}")
    print(f"- group matching (limit): {fmt(gpmd(best_profile, EpsilonPolicy.limit()))}")
    print("- profile:")
    names = best_profile.candidates.names
    for voter in best_profile.voters:
        print(f"    {voter.id}: {' > '.join(names[k] for k in voter.ranking.order)}")


if __name__ == "__main__":
    main()
