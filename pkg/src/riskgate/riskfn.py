# Copyright 2026 riskgate contributors
#
# MIT License

"""
Empirical risk functions of a single constraint and their generalized
inverses.

For constraint j and prefix thresholds lambda_1..lambda_{j-1}, the loss of row
i is

    L_j^(i) = V_j^(i) I(S_1^(i) <= lambda_1, ..., S_{j-1}^(i) <= lambda_{j-1},
                       S_j^(i) > lambda_j).

As a function of lambda_j, the average loss is a non-increasing,
right-continuous step function whose jumps sit at the j-th scores of the rows
that pass the prefix filters. A RiskFunction stores those scores sorted, with
suffix sums of their costs, so each evaluation is a binary search. Three
variants share the representation:

* empirical: (1/n) sum over n calibration rows
* bumped:    (1/(n+1)) (sum over n calibration rows + V^max_j)
* symmetric: (1/(n+1)) sum over n calibration rows plus the test row

The inverses are computed exactly by evaluating the function at the candidate
points (the domain endpoints and the jump points inside the domain), because
the step function is constant between consecutive candidates.

Comparisons against the budget use exact '<=' and '>' without tolerance. A
budget computed with rounding error can therefore land on the other side of a
step.
"""

from typing import Any
from typing import Optional
from typing import Sequence

import numpy as np
from typing_extensions import Literal

from .common import Interval
from .common import ValidationError
from .dataset import CalibrationSet

RiskVariant = Literal['empirical', 'bumped', 'symmetric']

VARIANT_EMPIRICAL: RiskVariant = 'empirical'
VARIANT_BUMPED: RiskVariant = 'bumped'
VARIANT_SYMMETRIC: RiskVariant = 'symmetric'


class RiskFunction:
    """The risk g_j(. ; lambda_{1:(j-1)}) of constraint 'j' (1-based) as a
    step function of lambda_j. Immutable after construction.
    """

    def __init__(
        self,
        scores_j: Any,
        costs_j: Any,
        denominator: int,
        bump: float,
        constraint_index: int,
        prefix_thresholds: Sequence[float],
        variant: RiskVariant,
    ):
        order = np.argsort(scores_j, kind='stable')
        sorted_scores = np.asarray(scores_j, dtype=float)[order]
        sorted_costs = np.asarray(costs_j, dtype=float)[order]

        # suffix_cost_sums[k] = sum of the costs of sorted rows k, k+1, ...
        suffix = np.zeros(sorted_costs.size + 1)
        suffix[:-1] = np.cumsum(sorted_costs[::-1])[::-1]

        sorted_scores.setflags(write=False)
        suffix.setflags(write=False)
        self.sorted_scores = sorted_scores
        self.suffix_cost_sums = suffix
        self.jump_points = np.unique(sorted_scores)
        self.denominator = denominator
        self.bump = bump
        self.constraint_index = constraint_index
        self.prefix_thresholds = tuple(float(x) for x in prefix_thresholds)
        self.variant = variant

    @property
    def active_count(self) -> int:
        """Number of rows which pass the prefix filters."""
        return int(self.sorted_scores.size)

    def evaluate(self, lambda_j: Any) -> Any:
        """Evaluate at a scalar or an array of thresholds."""
        index = np.searchsorted(self.sorted_scores, lambda_j, side='right')
        return (self.suffix_cost_sums[index] + self.bump) / self.denominator

    def __call__(self, lambda_j: float) -> float:
        return float(self.evaluate(lambda_j))

    def __repr__(self) -> str:
        return (
            f'RiskFunction(j={self.constraint_index}; '
            f'variant={self.variant}; '
            f'prefix={self.prefix_thresholds}; '
            f'active={self.active_count}/{self.denominator})'
        )


def active_rows(data: CalibrationSet, prefix: Sequence[float]) -> Any:
    """Boolean mask of rows with S_l <= prefix[l] for every prefix entry."""
    if len(prefix) == 0:
        return np.ones(data.n, dtype=bool)
    limits = np.asarray(prefix, dtype=float)
    return np.all(data.scores[:, :len(prefix)] <= limits, axis=1)


def _build(
    data: CalibrationSet,
    j: int,
    prefix: Sequence[float],
    denominator: int,
    bump: float,
    variant: RiskVariant,
) -> RiskFunction:
    if not 1 <= j <= data.m:
        raise ValidationError(f'constraint index {j} outside 1..{data.m}')
    if len(prefix) != j - 1:
        raise ValidationError(
            f'constraint {j} needs {j - 1} prefix thresholds, '
            f'got {len(prefix)}')
    mask = active_rows(data, prefix)
    return RiskFunction(
        data.scores[mask, j - 1],
        data.costs[mask, j - 1],
        denominator,
        bump,
        j,
        prefix,
        variant,
    )


def empirical_risk(
    calib: CalibrationSet,
    j: int,
    prefix: Sequence[float] = (),
) -> RiskFunction:
    """g_j: the average constraint-j loss over the n calibration rows."""
    return _build(calib, j, prefix, calib.n, 0.0, VARIANT_EMPIRICAL)


def bumped_risk(
    calib: CalibrationSet,
    j: int,
    v_max_j: float,
    prefix: Sequence[float] = (),
) -> RiskFunction:
    """g_j^+: the calibration losses plus V^max_j standing in for the unseen
    test loss, averaged over n+1.
    """
    return _build(
        calib, j, prefix, calib.n + 1, float(v_max_j), VARIANT_BUMPED)


def symmetric_risk(
    calib: CalibrationSet,
    test: CalibrationSet,
    j: int,
    prefix: Sequence[float] = (),
) -> RiskFunction:
    """g_j^sym: the average loss over the n calibration rows and the single
    test row. Needs the test row, so it is only usable in simulations.
    """
    if test.n != 1:
        raise ValidationError(f'symmetric risk needs 1 test row, got {test.n}')
    combined = calib.concat(test)
    return _build(
        combined, j, prefix, combined.n, 0.0, VARIANT_SYMMETRIC)


def candidate_points(scores_j: Any, domain: Interval) -> Any:
    """Sorted, de-duplicated {lo, hi} together with the scores inside
    [lo, hi]. A step function with jumps only at 'scores_j' is constant
    between consecutive candidates.
    """
    scores = np.asarray(scores_j, dtype=float)
    inside = scores[(scores >= domain.lo) & (scores <= domain.hi)]
    return np.unique(np.concatenate([[domain.lo, domain.hi], inside]))


def _first_at_or_below(
    f: RiskFunction,
    beta: float,
    points: Any,
) -> Optional[int]:
    """Index of the first point where f <= beta, or None."""
    ok = np.flatnonzero(f.evaluate(points) <= beta)
    return int(ok[0]) if ok.size else None


def _infimum(f: RiskFunction, beta: float, domain: Interval) -> float:
    """inf{lambda in domain : f(lambda) <= beta}, where the infimum of the
    empty set is domain.hi. By right-continuity the infimum is attained at a
    candidate point.
    """
    points = candidate_points(f.jump_points, domain)
    index = _first_at_or_below(f, beta, points)
    return domain.hi if index is None else float(points[index])


def _check_variant(f: RiskFunction, variant: RiskVariant) -> None:
    if f.variant != variant:
        raise ValidationError(
            f'expected a {variant} risk function, got {f.variant}')


def gen_inverse_base(
    f: RiskFunction,
    beta: float,
    domain: Interval,
) -> float:
    """U_j: the smallest threshold in the domain whose empirical risk is at
    most beta, or domain.hi if there is none.
    """
    _check_variant(f, VARIANT_EMPIRICAL)
    return _infimum(f, beta, domain)


def gen_inverse_bumped(
    f: RiskFunction,
    beta: float,
    domain: Interval,
) -> float:
    """U_j^+: same convention as gen_inverse_base(), applied to g_j^+."""
    _check_variant(f, VARIANT_BUMPED)
    return _infimum(f, beta, domain)


def gen_inverse_sym(
    f: RiskFunction,
    beta: float,
    domain: Interval,
) -> float:
    """U_j^sym = sup{lambda in domain : g^sym(lambda) > beta}, where the
    supremum of the empty set is domain.lo.

    If the strict inequality holds at candidate c_k and fails at the next
    candidate c_{k+1}, the set is [lo, c_{k+1}) and its supremum is c_{k+1}.
    If it holds at every candidate, the supremum is domain.hi.
    """
    _check_variant(f, VARIANT_SYMMETRIC)
    points = candidate_points(f.jump_points, domain)
    above = np.flatnonzero(f.evaluate(points) > beta)
    if above.size == 0:
        return domain.lo
    last = int(above[-1])
    if last + 1 >= points.size:
        return domain.hi
    return float(points[last + 1])


def gen_inverse_grid(f: RiskFunction, beta: float, grid: Any) -> float:
    """The first point of a sorted grid where f <= beta, or the last grid
    point if there is none. When the grid contains every candidate point of
    the domain, this equals the exact inverse.
    """
    points = np.asarray(grid, dtype=float)
    if points.size == 0:
        raise ValidationError('empty threshold grid')
    index = _first_at_or_below(f, beta, points)
    return float(points[-1] if index is None else points[index])


def objective_risk(data: CalibrationSet, thresholds: Sequence[float]) -> float:
    """Empirical objective (1/n) sum V_{m+1} I(S_l <= lambda_l for all l),
    the average cost of the rows which pass every filter.
    """
    if len(thresholds) != data.m:
        raise ValidationError(
            f'expected {data.m} thresholds, got {len(thresholds)}')
    mask = active_rows(data, thresholds)
    return float(np.sum(data.objective_costs[mask])) / data.n
