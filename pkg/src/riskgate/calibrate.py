# Copyright 2026 riskgate contributors
#
# MIT License

"""
Threshold selection by dynamic programming over the prioritized constraints.

multirisk_base() sets each threshold at the point where the empirical risk of
its constraint, given the thresholds already chosen, first drops to the
budget. It is simple and close to optimal for large n, but its test risk is not
controlled.

multirisk() replaces the empirical risks by bumped risks and shrinks the
budgets by delta_j = (V^max_j - V^min_j)/(n+1) per level. Thresholds of
constraint j at level 2k are computed with the prefix thresholds of level
2k+2:

    lambda_1^(2k) = U_1^+(beta_1^(k-1))                          k = 1..m
    lambda_j^(2k) = U_j^+(lambda_{1:(j-1)}^(2k+2); beta_j^(k-1))  k = 1..m-j+1

and the deployed thresholds are lambda_j^(2). For m = 3 the table is

    lambda_1^(2)  lambda_1^(4)  lambda_1^(6)
    lambda_2^(2)  lambda_2^(4)
    lambda_3^(2)

where each entry of row j depends on the entries of rows 1..j-1 one column to
its right. The table does not depend on m beyond its size, so adding a
constraint leaves the earlier thresholds unchanged.

Usage:
    spec = make_budget_spec([0.1, 0.2], [[0, 1], [0, 1]])
    bounds = estimate_cost_bounds(calib)
    thresholds = multirisk(calib, spec, bounds)
    thresholds.thresholds  # (lambda_1, lambda_2)
"""

import json
import logging
from typing import Dict
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from .common import Interval
from .common import ValidationError
from .common import read_json
from .config_types import ThresholdsDict
from .dataset import BudgetSpec
from .dataset import CalibrationSet
from .dataset import CostBounds
from .riskfn import bumped_risk
from .riskfn import candidate_points
from .riskfn import empirical_risk
from .riskfn import gen_inverse_base
from .riskfn import gen_inverse_bumped
from .riskfn import objective_risk

ALGORITHM_BASE = 'base'
ALGORITHM_MULTIRISK = 'multirisk'
ALGORITHM_CONFORMAL = 'conformal_m1'
ALGORITHM_LTT = 'ltt'

# (constraint j, level 2k) -> lambda_j^(2k)
AuxTable = Dict[Tuple[int, int], float]


class ThresholdSet(NamedTuple):
    """Thresholds selected by one algorithm.

    * thresholds: the deployed lambda_1..lambda_m
    * aux: the full lambda_j^(2k) table (multirisk only)
    * infeasible: True for constraint j if no threshold in its domain met
      the budget, so the threshold fell back to lambda_j^max
    * n: size of the calibration set used
    """
    algorithm: str
    thresholds: Tuple[float, ...]
    aux: AuxTable
    infeasible: Tuple[bool, ...]
    n: int

    @property
    def m(self) -> int:
        return len(self.thresholds)

    def chain(self, j: int) -> List[float]:
        """Return [lambda_j^(2), lambda_j^(4), ...] from the aux table."""
        levels = sorted(level for (jj, level) in self.aux if jj == j)
        return [self.aux[(j, level)] for level in levels]

    def to_json(self) -> ThresholdsDict:
        return {
            'algorithm': self.algorithm,
            'n': self.n,
            'lambda': list(self.thresholds),
            'aux': {f'{j},{level}': v for (j, level), v in self.aux.items()},
            'infeasible': list(self.infeasible),
        }


def thresholds_from_json(doc: ThresholdsDict) -> ThresholdSet:
    """Inverse of ThresholdSet.to_json(). Raises ValidationError naming the
    offending field.
    """
    if not isinstance(doc, dict):
        raise ValidationError('thresholds document must be a JSON object')
    lambdas = doc.get('lambda')
    if not isinstance(lambdas, list) or not lambdas:
        raise ValidationError("'lambda' must be a non-empty list")
    for i, x in enumerate(lambdas):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise ValidationError(f"'lambda[{i}]' must be a number")
    aux: AuxTable = {}
    raw_aux = doc.get('aux', {})
    if not isinstance(raw_aux, dict):
        raise ValidationError("'aux' must be an object")
    for key, value in raw_aux.items():
        try:
            j, level = (int(x) for x in key.split(','))
        except ValueError:
            raise ValidationError(f"'aux' key '{key}' is not 'j,2k'")
        aux[(j, level)] = float(value)
    infeasible = doc.get('infeasible', [False] * len(lambdas))
    if not isinstance(infeasible, list) or len(infeasible) != len(lambdas):
        raise ValidationError("'infeasible' must have one flag per threshold")
    n = doc.get('n', 0)
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValidationError("'n' must be a non-negative integer")
    return ThresholdSet(
        algorithm=str(doc.get('algorithm', '')),
        thresholds=tuple(float(x) for x in lambdas),
        aux=aux,
        infeasible=tuple(bool(x) for x in infeasible),
        n=n,
    )


def save_thresholds(
    thresholds: ThresholdSet,
    path: str,
    shifts: Sequence[float] = (),
) -> None:
    """Write the thresholds file read by load_thresholds(). Cost shifts
    applied before calibration are recorded so that test data can be shifted
    the same way.
    """
    doc = thresholds.to_json()
    doc['shifts'] = [float(x) for x in shifts]
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(doc, f, indent=2)
        f.write('\n')


def load_thresholds(path: str) -> Tuple[ThresholdSet, List[float]]:
    """Read a thresholds file, returning the ThresholdSet and the recorded
    cost shifts (empty if none were applied).
    """
    doc = read_json(path)
    thresholds = thresholds_from_json(doc)
    shifts = doc.get('shifts', [])
    if not isinstance(shifts, list):
        raise ValidationError(f"{path}: 'shifts' must be a list")
    return thresholds, [float(x) for x in shifts]


class TightenedBudgets(NamedTuple):
    """beta_j^(k) = beta_j - k delta_j for k = 0..m-j, keyed by (j, k)."""
    table: Dict[Tuple[int, int], float]
    deltas: Tuple[float, ...]


def tightened_budgets(
    spec: BudgetSpec,
    bounds: CostBounds,
    n: int,
) -> TightenedBudgets:
    m = spec.m
    deltas = tuple(
        (bounds.v_max[j] - bounds.v_min[j]) / (n + 1) for j in range(m))
    table: Dict[Tuple[int, int], float] = {}
    for j in range(1, m + 1):
        for k in range(0, m - j + 1):
            table[(j, k)] = spec.budgets[j - 1] - k * deltas[j - 1]
    return TightenedBudgets(table, deltas)


def multirisk_base(
    calib: CalibrationSet,
    spec: BudgetSpec,
    debug: bool = False,
    warn: bool = True,
) -> ThresholdSet:
    """Set lambda_j = U_j(lambda_{1:(j-1)}; beta_j) for j = 1..m using the
    plain empirical risks.
    """
    spec.validate(calib.m)
    thresholds: List[float] = []
    infeasible: List[bool] = []
    for j in range(1, calib.m + 1):
        f = empirical_risk(calib, j, thresholds)
        domain = spec.domains[j - 1]
        beta = spec.budgets[j - 1]
        lambda_j = gen_inverse_base(f, beta, domain)
        thresholds.append(lambda_j)
        infeasible.append(f(lambda_j) > beta)
        if debug:
            logging.info(
                'multirisk_base(): j=%d; lambda=%r; risk=%r; %s',
                j, lambda_j, f(lambda_j), f)
    if debug:
        logging.info(
            'multirisk_base(): objective=%r',
            objective_risk(calib, thresholds))

    if warn:
        _warn_infeasible(ALGORITHM_BASE, infeasible)
    return ThresholdSet(
        algorithm=ALGORITHM_BASE,
        thresholds=tuple(thresholds),
        aux={},
        infeasible=tuple(infeasible),
        n=calib.n,
    )


def multirisk(
    calib: CalibrationSet,
    spec: BudgetSpec,
    bounds: CostBounds,
    debug: bool = False,
    warn: bool = True,
) -> ThresholdSet:
    """Select thresholds whose expected test risks are at most the budgets,
    for exchangeable calibration and test data with costs in 'bounds'.

    Raises ValidationError if a calibration cost lies outside the bounds.
    """
    m = calib.m
    spec.validate(m)
    bounds.check_costs(calib)
    budgets = tightened_budgets(spec, bounds, calib.n)
    if debug:
        logging.info('multirisk(): n=%d; m=%d; deltas=%s',
                     calib.n, m, budgets.deltas)

    aux: AuxTable = {}
    for j in range(1, m + 1):
        for k in range(1, m - j + 2):
            prefix = [aux[(ell, 2 * k + 2)] for ell in range(1, j)]
            f = bumped_risk(calib, j, bounds.v_max[j - 1], prefix)
            beta = budgets.table[(j, k - 1)]
            aux[(j, 2 * k)] = gen_inverse_bumped(f, beta, spec.domains[j - 1])
            if debug:
                logging.info(
                    'multirisk(): lambda_%d^(%d)=%r; beta=%r; %s',
                    j, 2 * k, aux[(j, 2 * k)], beta, f)

    thresholds = tuple(aux[(j, 2)] for j in range(1, m + 1))
    infeasible: List[bool] = []
    for j in range(1, m + 1):
        prefix = [aux[(ell, 4)] for ell in range(1, j)]
        f = bumped_risk(calib, j, bounds.v_max[j - 1], prefix)
        infeasible.append(f(thresholds[j - 1]) > spec.budgets[j - 1])
    if debug:
        logging.info(
            'multirisk(): thresholds=%s; objective=%r',
            list(thresholds), objective_risk(calib, thresholds))

    if warn:
        _warn_infeasible(ALGORITHM_MULTIRISK, infeasible)
    return ThresholdSet(
        algorithm=ALGORITHM_MULTIRISK,
        thresholds=thresholds,
        aux=aux,
        infeasible=tuple(infeasible),
        n=calib.n,
    )


def conformal_risk_control(
    calib: CalibrationSet,
    beta: float,
    v_max: float,
    domain: Interval,
) -> ThresholdSet:
    """Single-constraint conformal risk control threshold

        inf{lambda in domain : (n g_1(lambda) + V^max) / (n+1) <= beta},

    computed from the sums of the calibration losses. Equals multirisk() for
    m = 1.
    """
    BudgetSpec((float(beta),), (domain,)).validate(calib.m)
    CostBounds((0.0,), (float(v_max),)).check_costs(calib)
    f = empirical_risk(calib, 1)
    n = calib.n
    chosen: Optional[float] = None
    for lam in candidate_points(f.jump_points, domain):
        # n g_1(lambda): the losses of the rows scoring above lambda
        index = np.searchsorted(f.sorted_scores, lam, side='right')
        total = float(f.suffix_cost_sums[index])
        if (total + v_max) / (n + 1) <= beta:
            chosen = float(lam)
            break
    return ThresholdSet(
        algorithm=ALGORITHM_CONFORMAL,
        thresholds=(domain.hi if chosen is None else chosen,),
        aux={},
        infeasible=(chosen is None,),
        n=n,
    )


def _warn_infeasible(algorithm: str, infeasible: List[bool]) -> None:
    for j, flag in enumerate(infeasible, start=1):
        if flag:
            logging.warning(
                '%s: constraint %d infeasible within its domain; '
                'threshold set to lambda_max', algorithm, j)


# ---------------------------------------------------------------------------
# Slack quantities of the tightness guarantee.
# ---------------------------------------------------------------------------

def h_recursion(bounds: CostBounds, j: int, t: int) -> float:
    """h_1(t) = 0, and for j >= 2

        h_j(t) = V^max_j sum_{l<j} (t (V^max_l - V^min_l) + V^max_l + h_l(t))
                 / V^min_l.

    Needs V^min_l > 0 for every l < j.
    """
    m = len(bounds.v_max)
    if not 1 <= j <= m:
        raise ValidationError(f'constraint index {j} outside 1..{m}')
    if t < 0:
        raise ValidationError(f't must be non-negative, got {t}')
    for ell in range(1, j):
        if bounds.v_min[ell - 1] <= 0:
            raise ValidationError(
                f'h_{j} needs positive cost lower bounds (V^min_l > 0 for '
                f'l < {j}); V^min_{ell} = {bounds.v_min[ell - 1]}')

    h: List[float] = [0.0]
    for jj in range(2, j + 1):
        total = 0.0
        for ell in range(1, jj):
            v_lo = bounds.v_min[ell - 1]
            v_hi = bounds.v_max[ell - 1]
            total += (t * (v_hi - v_lo) + v_hi + h[ell - 1]) / v_lo
        h.append(bounds.v_max[jj - 1] * total)
    return h[j - 1]


def lower_bound_slack(bounds: CostBounds, j: int, n: int) -> float:
    """A_j / (n+1), where A_j = 2 V^max_j - V^min_j + h_j(2). The expected
    test risk of constraint j under multirisk() is at least beta_j minus this
    amount when the tightness conditions hold.

    For j = 1 this is (2 V^max_1 - V^min_1)/(n+1), which for V^min_1 = 0 is
    the 2 V^max_1/(n+1) bound known for single-constraint conformal risk
    control.
    """
    a_j = (
        2 * bounds.v_max[j - 1]
        - bounds.v_min[j - 1]
        + h_recursion(bounds, j, 2)
    )
    return a_j / (n + 1)


def base_violation_floor(p: float, v_max: float, n: int) -> float:
    """(1-p)^n p V^max: the expected constraint-1 test risk of
    multirisk_base() is at least this much when the cost is V^max with
    probability p and 0 otherwise, and the budget is below p V^max. With
    probability (1-p)^n no calibration cost is positive, so the base
    threshold sits at lambda_min and the test row is filtered with its full
    cost.
    """
    if not 0 <= p <= 1:
        raise ValidationError(f'p must be in [0, 1], got {p}')
    if n < 1:
        raise ValidationError(f'n must be >= 1, got {n}')
    return (1 - p) ** n * p * v_max
