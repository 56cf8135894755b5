# Copyright 2026 riskgate contributors
#
# MIT License

"""
Deployment-side evaluation of a ThresholdSet on test rows. Each row triggers
exactly one of m+1 behaviors: behavior j <= m is the first constraint whose
score exceeds its threshold, and behavior m+1 means every filter passed.
"""

from typing import Any
from typing import Dict
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from .calibrate import ThresholdSet
from .calibrate import lower_bound_slack
from .common import ValidationError
from .dataset import BudgetSpec
from .dataset import CalibrationSet
from .dataset import CostBounds


def decide_behavior(
    scores: Sequence[float],
    thresholds: Sequence[float],
) -> int:
    """Return the smallest 1-based j with scores[j] > thresholds[j], or m+1
    if there is none.
    """
    if len(scores) != len(thresholds):
        raise ValidationError(
            f'{len(scores)} scores but {len(thresholds)} thresholds')
    for j, (s, lam) in enumerate(zip(scores, thresholds), start=1):
        if s > lam:
            return j
    return len(scores) + 1


def behaviors(data: CalibrationSet, thresholds: Sequence[float]) -> Any:
    """decide_behavior() for every row, as an integer array."""
    if len(thresholds) != data.m:
        raise ValidationError(
            f'data has m={data.m} but {len(thresholds)} thresholds')
    exceeds = data.scores > np.asarray(thresholds, dtype=float)
    first = np.argmax(exceeds, axis=1) + 1
    return np.where(exceeds.any(axis=1), first, data.m + 1)


class ConstraintReport(NamedTuple):
    j: int
    risk: float  # empirical test risk
    budget: float
    slack: float  # budget - risk
    # budget - A_j/(n+1), or None where A_j is undefined (V^min_l = 0, l < j)
    tightness_lower: Optional[float]
    infeasible: bool


class RiskReport(NamedTuple):
    algorithm: str
    thresholds: Tuple[float, ...]
    n_test: int
    constraints: Tuple[ConstraintReport, ...]
    objective: float
    behavior_counts: Tuple[int, ...]  # rows triggering behaviors 1..m+1

    def to_json(self) -> Dict[str, Any]:
        return {
            'algorithm': self.algorithm,
            'lambda': list(self.thresholds),
            'n_test': self.n_test,
            'constraints': [c._asdict() for c in self.constraints],
            'objective': self.objective,
            'behavior_counts': list(self.behavior_counts),
        }


def evaluate_test_risks(
    thresholds: ThresholdSet,
    test: CalibrationSet,
    spec: BudgetSpec,
    bounds: CostBounds,
) -> RiskReport:
    """Empirical constraint and objective risks of 'thresholds' on the test
    rows. The constraint-j risk is the mean over all rows of V_j for the rows
    whose behavior is j.
    """
    m = thresholds.m
    if test.m != m:
        raise ValidationError(f'test data has m={test.m}, thresholds m={m}')
    spec.validate(m)
    bounds.validate(m)
    for j, (lam, domain) in enumerate(
            zip(thresholds.thresholds, spec.domains), start=1):
        if not domain.lo <= lam <= domain.hi:
            raise ValidationError(
                f'threshold of constraint {j} ({lam}) outside its domain '
                f'[{domain.lo}, {domain.hi}]')

    chosen = behaviors(test, thresholds.thresholds)
    counts = np.bincount(chosen, minlength=m + 2)[1:]
    assert int(counts.sum()) == test.n

    constraints: List[ConstraintReport] = []
    for j in range(1, m + 1):
        risk = float(np.sum(test.costs[chosen == j, j - 1])) / test.n
        beta = spec.budgets[j - 1]
        if j == 1 or all(v > 0 for v in bounds.v_min[:j - 1]):
            lower: Optional[float] = (
                beta - lower_bound_slack(bounds, j, thresholds.n))
        else:
            lower = None
        flag = (
            thresholds.infeasible[j - 1] if thresholds.infeasible else False)
        constraints.append(
            ConstraintReport(j, risk, beta, beta - risk, lower, flag))

    objective = float(np.sum(test.objective_costs[chosen == m + 1])) / test.n
    return RiskReport(
        algorithm=thresholds.algorithm,
        thresholds=thresholds.thresholds,
        n_test=test.n,
        constraints=tuple(constraints),
        objective=objective,
        behavior_counts=tuple(int(c) for c in counts),
    )
