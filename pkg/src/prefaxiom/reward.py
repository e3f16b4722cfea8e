"""Weighted pairwise-logistic reward estimation.

The loss is the negative log likelihood of a Bradley-Terry model under
arbitrary nonnegative pair weights,

    L(r) = -sum_{i<j} [ w_ij * log sigma(r_i - r_j) + w_ji * log sigma(r_j - r_i) ],

convex in r and invariant under adding a constant to every reward.  When every
pair carries the same total weight, the minimizer orders candidates exactly by
the normalized row sums of the weight matrix, so converged solves can be
cross-checked against exact rational scores.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from .distributions import ResponseDistribution
from .errors import (
    DimensionMismatchError,
    DisconnectedGraphError,
    NotConstantTotalError,
    NotConvergedError,
    ZeroProbabilityError,
)
from .profiles import PairwiseTally, Ranking, TiePolicy
from .rules import ScoreVector, TieBreak, ranking_from_scores


@dataclass(frozen=True)
class WeightMatrix:
    """Nonnegative per-ordered-pair weights, exact, with optional constant pair total.

    `pair_total` is the common value of w[i][j] + w[j][i] when it is the same
    for every pair, else None (unconstrained mode: the score shortcut is
    unavailable but the solver still applies).
    """

    w: tuple[tuple[Fraction, ...], ...]
    pair_total: Fraction | None

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.w)
        object.__setattr__(self, "w", rows)
        n = len(rows)
        if n < 2 or any(len(row) != n for row in rows):
            raise ValueError("weights must form a square matrix over >= 2 candidates")
        if any(rows[i][i] != 0 for i in range(n)):
            raise ValueError("diagonal weights must be zero")
        if any(x < 0 for row in rows for x in row):
            raise ValueError("weights must be nonnegative")
        if self.pair_total is not None:
            total = Fraction(self.pair_total)
            object.__setattr__(self, "pair_total", total)
            for i in range(n):
                for j in range(i + 1, n):
                    if rows[i][j] + rows[j][i] != total:
                        raise ValueError(
                            f"pair ({i}, {j}) total {rows[i][j] + rows[j][i]} != {total}"
                        )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence["Fraction | int | float"]]) -> "WeightMatrix":
        """Build a matrix, inferring constant-total mode when it holds."""
        w = tuple(tuple(Fraction(x) for x in row) for row in rows)
        n = len(w)
        totals = {w[i][j] + w[j][i] for i in range(n) for j in range(i + 1, n)}
        total = None
        if len(totals) == 1:
            candidate = next(iter(totals))
            if candidate > 0:
                total = candidate
        return cls(w, total)

    @property
    def n(self) -> int:
        return len(self.w)

    @property
    def is_constant_total(self) -> bool:
        return self.pair_total is not None

    def dense(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.w], dtype=float)


class SolverMethod(Enum):
    NEWTON_REDUCED = "newton"
    GRADIENT_DESCENT_LINE_SEARCH = "gradient-descent"


@dataclass(frozen=True)
class SolverConfig:
    grad_tol: float = 1e-10
    max_iters: int = 10_000
    divergence_radius: float = 30.0
    method: SolverMethod = SolverMethod.NEWTON_REDUCED


class StatusKind(Enum):
    CONVERGED = "converged"
    DIVERGED = "diverged"
    MAX_ITERS = "max-iters"


@dataclass(frozen=True)
class SolverStatus:
    kind: StatusKind
    grad_norm: float
    iterations: int
    drift_up: tuple[int, ...] = ()
    drift_down: tuple[int, ...] = ()


@dataclass(frozen=True)
class RewardVector:
    """Per-candidate rewards in the sum-zero gauge, plus solver status."""

    r: tuple[float, ...]
    status: SolverStatus

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(float(x) for x in self.r))
        if self.status.kind is StatusKind.CONVERGED and abs(sum(self.r)) > 1e-12:
            raise ValueError("converged rewards must sum to zero within 1e-12")

    @property
    def n(self) -> int:
        return len(self.r)

    @property
    def converged(self) -> bool:
        return self.status.kind is StatusKind.CONVERGED


def _as_vector(r: "Sequence[float] | RewardVector", n: int) -> np.ndarray:
    values = r.r if isinstance(r, RewardVector) else r
    arr = np.asarray(values, dtype=float)
    if arr.shape != (n,):
        raise DimensionMismatchError(f"reward vector must have length {n}")
    return arr


def _sigmoid(d: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(0.5 * d))


def _drift_sets(r: np.ndarray, radius: float) -> tuple[tuple[int, ...], tuple[int, ...]]:
    half = radius / 2.0
    up = tuple(int(i) for i in np.nonzero(r > half)[0])
    down = tuple(int(i) for i in np.nonzero(r < -half)[0])
    return up, down


def loss(weights: WeightMatrix, r: "Sequence[float] | RewardVector") -> float:
    """Negative log likelihood under the weighted pairwise-logistic model."""
    arr = _as_vector(r, weights.n)
    w = weights.dense()
    d = arr[:, None] - arr[None, :]
    # -log sigma(d) == softplus(-d), stable in both tails
    softplus_neg = np.logaddexp(0.0, -d)
    np.fill_diagonal(softplus_neg, 0.0)
    return float((w * softplus_neg).sum())


def gradient(weights: WeightMatrix, r: "Sequence[float] | RewardVector") -> tuple[float, ...]:
    """dL/dr_k = -sum_{j != k} [ w_kj - (w_kj + w_jk) * sigma(r_k - r_j) ]."""
    arr = _as_vector(r, weights.n)
    w = weights.dense()
    t = w + w.T
    d = arr[:, None] - arr[None, :]
    s = _sigmoid(d)
    g = t * s - w
    np.fill_diagonal(g, 0.0)
    return tuple(g.sum(axis=1))


def _reachable(adj: list[list[int]], start: int) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def _check_connected(weights: WeightMatrix) -> None:
    n = weights.n
    adj = [
        [j for j in range(n) if j != i and weights.w[i][j] + weights.w[j][i] > 0]
        for i in range(n)
    ]
    seen = _reachable(adj, 0)
    if len(seen) != n:
        missing = sorted(set(range(n)) - seen)
        raise DisconnectedGraphError(
            f"comparison graph splits; candidates {missing} unreachable from 0"
        )


def minimizer_exists(weights: WeightMatrix) -> bool:
    """Whether the loss attains a finite minimum (Ford's condition).

    A finite minimizer exists iff the digraph with an edge i -> j whenever
    w_ij > 0 is strongly connected; otherwise some dominant candidate set
    never loses weight across the cut and its rewards drift to infinity.
    """
    n = weights.n
    fwd = [[j for j in range(n) if j != i and weights.w[i][j] > 0] for i in range(n)]
    bwd = [[j for j in range(n) if j != i and weights.w[j][i] > 0] for i in range(n)]
    return len(_reachable(fwd, 0)) == n and len(_reachable(bwd, 0)) == n


def solve_mle(
    weights: WeightMatrix,
    config: SolverConfig | None = None,
    *,
    ridge: float = 0.0,
) -> RewardVector:
    """Minimize the loss over the sum-zero gauge.

    Newton steps solve the reduced system through a rank-one shift along the
    all-ones null direction, with Armijo backtracking; gradient descent is the
    configurable fallback.  Divergence (boundary proportions pushing rewards to
    +-infinity) is reported once any reward leaves the divergence radius while
    the loss is still decreasing, with the drifting candidate sets attached.

    `ridge` > 0 adds an explicit Tikhonov term ridge * sum(r_k^2), which makes
    the objective strictly convex so otherwise-divergent instances converge;
    divergence detection is disabled in that case.
    """
    cfg = config or SolverConfig()
    if ridge < 0:
        raise ValueError("ridge must be nonnegative")
    _check_connected(weights)
    # without a ridge term the loss attains its minimum only when the
    # positive-weight digraph is strongly connected; otherwise the gradient
    # tolerance could fire on a drifting iterate, so disable that stop
    can_converge = ridge > 0.0 or minimizer_exists(weights)
    n = weights.n
    w = weights.dense()
    t = w + w.T

    def objective(r: np.ndarray) -> float:
        d = r[:, None] - r[None, :]
        sp = np.logaddexp(0.0, -d)
        np.fill_diagonal(sp, 0.0)
        return float((w * sp).sum() + ridge * (r * r).sum())

    def grad(r: np.ndarray) -> np.ndarray:
        d = r[:, None] - r[None, :]
        s = _sigmoid(d)
        g = t * s - w
        np.fill_diagonal(g, 0.0)
        return g.sum(axis=1) + 2.0 * ridge * r

    r = np.zeros(n)
    gnorm = float(np.max(np.abs(grad(r))))
    status = None
    iters = 0
    for iters in range(1, cfg.max_iters + 1):
        g = grad(r)
        gnorm = float(np.max(np.abs(g)))
        if can_converge and gnorm <= cfg.grad_tol:
            status = SolverStatus(StatusKind.CONVERGED, gnorm, iters - 1)
            break

        direction = None
        if cfg.method is SolverMethod.NEWTON_REDUCED:
            d = r[:, None] - r[None, :]
            s = _sigmoid(d)
            curv = t * s * (1.0 - s)
            np.fill_diagonal(curv, 0.0)
            hess = np.diag(curv.sum(axis=1)) - curv + 2.0 * ridge * np.eye(n)
            # rank-one shift along the all-ones null direction keeps the
            # system nonsingular without disturbing sum-zero solutions
            shift = max(float(np.trace(hess)) / n, 1e-12)
            try:
                direction = np.linalg.solve(hess + shift * np.ones((n, n)) / n, -g)
            except np.linalg.LinAlgError:
                direction = None
            if direction is not None and not np.all(np.isfinite(direction)):
                direction = None
        if direction is None:
            direction = -g
        direction = direction - direction.mean()
        slope = float(g @ direction)
        if slope >= 0.0:
            direction = -(g - g.mean())
            slope = float(g @ direction)
        stalled = slope >= 0.0
        if not stalled:
            base = objective(r)
            # near the optimum the true decrease sinks below the objective's
            # float resolution; without this slack Armijo rejects full Newton
            # steps on roundoff noise and the iterate crawls
            slack = 16.0 * np.finfo(float).eps * (1.0 + abs(base))
            alpha = 1.0
            while objective(r + alpha * direction) > base + 1e-4 * alpha * slope + slack:
                alpha *= 0.5
                if alpha < 1e-14:
                    break
            stalled = alpha < 1e-14
        if stalled:
            if can_converge:
                status = SolverStatus(StatusKind.MAX_ITERS, gnorm, iters)
            else:
                status = SolverStatus(
                    StatusKind.DIVERGED, gnorm, iters, *_drift_sets(r, cfg.divergence_radius)
                )
            break
        r = r + alpha * direction
        r = r - r.mean()

        if ridge == 0.0 and float(np.max(np.abs(r))) > cfg.divergence_radius:
            g = grad(r)
            status = SolverStatus(
                StatusKind.DIVERGED,
                float(np.max(np.abs(g))),
                iters,
                *_drift_sets(r, cfg.divergence_radius),
            )
            break
    if status is None:
        status = SolverStatus(StatusKind.MAX_ITERS, gnorm, cfg.max_iters)
    if status.kind is StatusKind.CONVERGED:
        r = r - r.mean()
    return RewardVector(tuple(float(x) for x in r), status)


def scores(weights: WeightMatrix) -> ScoreVector:
    """Exact normalized row sums m_k = sum_j w_kj / pair_total.

    In constant-total mode the loss minimizer orders candidates exactly by
    these scores, so they stand in for the solver wherever only the ordering
    matters.
    """
    if weights.pair_total is None:
        raise NotConstantTotalError("scores need a constant per-pair total")
    n = weights.n
    values = tuple(
        sum((weights.w[k][j] for j in range(n) if j != k), Fraction(0)) / weights.pair_total
        for k in range(n)
    )
    return ScoreVector(values, "general")


def rank_by_scores(weights: WeightMatrix, tie_break: TieBreak = TieBreak.GROUP_TIES) -> Ranking:
    """The MLE ordering via the exact score shortcut (constant-total mode only)."""
    return ranking_from_scores(scores(weights), tie_break)


def softmax(r: "RewardVector | Sequence[float]") -> ResponseDistribution:
    """Softmax of rewards; RewardVector inputs must be converged."""
    if isinstance(r, RewardVector):
        if not r.converged:
            raise NotConvergedError("softmax needs a converged reward vector")
        values = np.asarray(r.r, dtype=float)
    else:
        values = np.asarray(r, dtype=float)
    shifted = values - values.max()
    e = np.exp(shifted)
    p = e / e.sum()
    return ResponseDistribution(tuple(float(x) for x in p))


def weights_standard(t: PairwiseTally) -> WeightMatrix:
    """Raw win counts as weights; constant-total mode when per-pair totals agree."""
    return WeightMatrix.from_rows(t.wins)


def weights_copeland(
    t: PairwiseTally, tie_policy: TiePolicy = TiePolicy.HALF_POINT
) -> WeightMatrix:
    """Majority indicators as weights: 1 to the majority side, half each on ties.

    Under STRICT_ONLY, tied pairs get weight 0 both ways, which leaves
    constant-total mode only when no pair is tied.
    """
    t.require_all_pairs()
    n = t.n
    half = Fraction(1, 2)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            p = t.prop(i, j)
            if p > half:
                rows[i][j] = Fraction(1)
            elif p < half:
                rows[j][i] = Fraction(1)
            elif tie_policy is TiePolicy.HALF_POINT:
                rows[i][j] = half
                rows[j][i] = half
    return WeightMatrix.from_rows(rows)


def weights_gpm(pstar: ResponseDistribution) -> WeightMatrix:
    """w_ij = p_i / (p_i + p_j): the loss whose stationary point is r = log p*."""
    if any(x <= 0 for x in pstar):
        raise ZeroProbabilityError("GPM weights need strictly positive probabilities")
    p = [Fraction(x) for x in pstar]
    n = len(p)
    rows = [
        [Fraction(0) if i == j else p[i] / (p[i] + p[j]) for j in range(n)] for i in range(n)
    ]
    return WeightMatrix(tuple(tuple(row) for row in rows), Fraction(1))


def _log_odds(t: PairwiseTally) -> "list[list[float]] | None":
    """Float log-odds matrix, or None if any proportion sits on the boundary."""
    t.require_all_pairs()
    n = t.n
    s = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            p = t.prop(i, j)
            if p == 0 or p == 1:
                return None
            s[i][j] = math.log(p.numerator) - math.log(p.denominator - p.numerator)
    return s


def embedding_residual(t: PairwiseTally) -> float | None:
    """Worst additive inconsistency of the log-odds under the anchored embedding.

    None when some proportion is 0 or 1 (no finite embedding exists at all).
    """
    s = _log_odds(t)
    if s is None:
        return None
    n = t.n
    r = [s[i][0] for i in range(n)]
    return max(
        abs(s[i][j] - (r[i] - r[j])) for i in range(n) for j in range(n) if i != j
    )


def bt_embeddable(t: PairwiseTally, tol: float = 1e-8) -> RewardVector | None:
    """Recover rewards with sigma(r_i - r_j) = P_ij, or None if impossible.

    All proportions must be strictly interior and their log-odds additively
    consistent within `tol` (anchored at candidate 0, checked on every pair).
    The returned vector is re-centered to the sum-zero gauge; its status
    records the residual in grad_norm.
    """
    s = _log_odds(t)
    if s is None:
        return None
    n = t.n
    r = [s[i][0] for i in range(n)]
    residual = max(
        abs(s[i][j] - (r[i] - r[j])) for i in range(n) for j in range(n) if i != j
    )
    if residual > tol:
        return None
    mean = sum(r) / n
    centered = [x - mean for x in r]
    shift = sum(centered) / n  # second pass kills the last rounding drift
    centered = tuple(x - shift for x in centered)
    return RewardVector(centered, SolverStatus(StatusKind.CONVERGED, residual, 0))
