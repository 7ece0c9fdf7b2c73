"""Optimal one-to-one prediction/target matching.

The assignment minimizes focal-classification cost plus permutation-
minimized mean Manhattan distance. Among equal-cost optima the
lexicographically smallest pair list wins, which makes results
reproducible regardless of solver internals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .losses import LabelSpace, LossWeights, PredictedElement, TargetElement, focal_loss, point_l1_min_perm

_REL_TIE_TOL = 1e-9


@dataclass(frozen=True)
class Assignment:
    """Matched (prediction, target) pairs plus leftover predictions."""

    pairs: tuple[tuple[int, int], ...]
    unmatched_predictions: tuple[int, ...]
    total_cost: float

    def target_for(self) -> dict[int, int]:
        return {p: t for p, t in self.pairs}


def _check_cost_matrix(cost: np.ndarray) -> np.ndarray:
    cost = np.asarray(cost, dtype=np.float64)
    if cost.ndim != 2:
        raise ValueError("cost matrix must be 2-D")
    if not np.all(np.isfinite(cost)):
        raise ValueError("cost matrix contains non-finite entries")
    if cost.shape[0] < cost.shape[1]:
        raise ValueError(
            f"cost matrix needs rows >= cols, got {cost.shape}; transpose first"
        )
    return cost


def _pairs_cost(cost: np.ndarray, pairs) -> float:
    # fsum gives an exactly-rounded canonical total independent of pair order.
    return math.fsum(float(cost[r, c]) for r, c in pairs)


def _optimal_completion(cost, rows, cols) -> float:
    """Minimal cost of assigning all of `cols` within the given rows."""
    if not cols:
        return 0.0
    sub = cost[np.ix_(rows, cols)]
    ri, ci = linear_sum_assignment(sub)
    return _pairs_cost(sub, zip(ri, ci))


def hungarian(cost) -> Assignment:
    """Minimum-cost one-to-one assignment of every column to some row.

    Ties between optimal assignments break toward the lexicographically
    smallest (row, col) pair list.
    """
    cost = _check_cost_matrix(cost)
    n_rows, n_cols = cost.shape
    if n_cols == 0:
        return Assignment((), tuple(range(n_rows)), 0.0)

    ri, ci = linear_sum_assignment(cost)
    best_total = _pairs_cost(cost, zip(ri, ci))
    tol = _REL_TIE_TOL * max(1.0, abs(best_total))

    pairs: list[tuple[int, int]] = []
    used_cols: list[int] = []
    for row in range(n_rows):
        if len(pairs) == n_cols:
            break
        free_cols = [c for c in range(n_cols) if c not in used_cols]
        rows_after = list(range(row + 1, n_rows))
        chosen = None
        for col in free_cols:
            rest = [c for c in free_cols if c != col]
            if len(rest) > len(rows_after):
                continue
            total = (
                _pairs_cost(cost, pairs)
                + float(cost[row, col])
                + _optimal_completion(cost, rows_after, rest)
            )
            if total <= best_total + tol:
                chosen = col
                break
        if chosen is not None:
            pairs.append((row, chosen))
            used_cols.append(chosen)
        # Otherwise this row stays unmatched in every optimal completion
        # extending the current prefix.

    matched_rows = {r for r, _ in pairs}
    unmatched = tuple(r for r in range(n_rows) if r not in matched_rows)
    return Assignment(tuple(pairs), unmatched, _pairs_cost(cost, pairs))


def matching_cost(
    pred: PredictedElement,
    target: TargetElement,
    weights: LossWeights,
    labels: LabelSpace,
    focal_alpha: float = 0.25,
    focal_gamma: float = 2.0,
) -> float:
    """Focal class cost plus permutation-minimized mean Manhattan distance."""
    if len(pred.points) != len(target.points):
        raise ValueError(
            f"prediction has {len(pred.points)} points, target {len(target.points)}"
        )
    p_true = float(pred.scores[labels.index(target.label)])
    class_cost = focal_loss(p_true, positive=True, alpha=focal_alpha, gamma=focal_gamma)
    distance, _ = point_l1_min_perm(pred.points, target.points, target.group)
    return weights.class_weight * class_cost + weights.distance_weight * distance


def assign(
    preds: list[PredictedElement],
    targets: list[TargetElement],
    weights: LossWeights,
    labels: LabelSpace,
    focal_alpha: float = 0.25,
    focal_gamma: float = 2.0,
) -> Assignment:
    """Cost matrix from matching_cost, solved by hungarian."""
    if len(targets) > len(preds):
        raise ValueError("query budget exceeded")
    if not targets:
        return Assignment((), tuple(range(len(preds))), 0.0)
    cost = np.empty((len(preds), len(targets)), dtype=np.float64)
    for i, pred in enumerate(preds):
        for j, target in enumerate(targets):
            cost[i, j] = matching_cost(
                pred, target, weights, labels, focal_alpha, focal_gamma
            )
    return hungarian(cost)
