"""Shared fixtures and small helpers for the test suite."""
from __future__ import annotations

import pytest

from prefaxiom import PreferenceProfile, Ranking, complete_profile


@pytest.fixture
def paradox() -> PreferenceProfile:
    # the three cyclic rotations: every pairwise proportion is 2/3
    return complete_profile(
        ["y1", "y2", "y3"],
        [["y1", "y2", "y3"], ["y2", "y3", "y1"], ["y3", "y1", "y2"]],
    )


@pytest.fixture
def four_voter() -> PreferenceProfile:
    # 2 voters y1>y2>y3, 1 voter y2>y3>y1, 1 voter y3>y1>y2; props 3/4, 3/4, 1/2
    return complete_profile(
        ["y1", "y2", "y3"],
        [
            ["y1", "y2", "y3"],
            ["y1", "y2", "y3"],
            ["y2", "y3", "y1"],
            ["y3", "y1", "y2"],
        ],
    )


def reward_ranking(values, tol: float = 1e-8) -> Ranking:
    """Group near-equal rewards into indifference classes, best first.

    Members inside a class are listed ascending so groupings compare equal
    regardless of float noise below tol.
    """
    by_value = sorted(range(len(values)), key=lambda i: (-values[i], i))
    classes: list[list[int]] = []
    for i in by_value:
        if classes and abs(values[classes[-1][-1]] - values[i]) <= tol:
            classes[-1].append(i)
        else:
            classes.append([i])
    canon = tuple(tuple(sorted(c)) for c in classes)
    return Ranking(tuple(i for c in canon for i in c), canon)
