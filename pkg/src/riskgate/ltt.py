# Copyright 2026 riskgate contributors
#
# MIT License

"""
Learn-Then-Test baseline. Every configuration of a finite threshold grid is
tested against the m null hypotheses 'E L_j(lambda) > beta~_j' with CLT
p-values. A configuration is accepted when all its p-values are at most
delta/(G m), where G is the number of grid configurations (Bonferroni over
every tested hypothesis). Among the accepted configurations, the one with the
smallest empirical objective is returned.

The constraint losses of the j-th threshold only depend on lambda_1..lambda_j,
so the grid is scanned depth first: the p-values of all grid values of
lambda_j are computed at once for a given prefix, and prefixes with a rejected
constraint are pruned. The scan order is lexicographic, and ties in the
objective go to the first configuration in that order.
"""

import logging
import math
from typing import Any
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np
from scipy.stats import norm

from .calibrate import ALGORITHM_LTT
from .calibrate import ThresholdSet
from .common import ValidationError
from .dataset import BudgetSpec
from .dataset import CalibrationSet

SELECTION_MIN_OBJECTIVE = 'min_empirical_objective'

# Points per threshold dimension used when none is configured.
DEFAULT_GRID_SIZE = 31


class LttConfig(NamedTuple):
    """Options of ltt_select(). If 'budgets_tilde' is None, the budgets of
    the BudgetSpec are tested directly.
    """
    delta: float
    grid_sizes: Tuple[int, ...]
    budgets_tilde: Optional[Tuple[float, ...]] = None
    selection: str = SELECTION_MIN_OBJECTIVE

    def validate(self, m: int) -> None:
        if not 0 < self.delta < 1:
            raise ValidationError(
                f'LTT delta must be in (0, 1), got {self.delta}')
        if len(self.grid_sizes) != m:
            raise ValidationError(
                f'LTT needs {m} grid sizes, got {len(self.grid_sizes)}')
        for j, size in enumerate(self.grid_sizes, start=1):
            if size < 2:
                raise ValidationError(
                    f'LTT grid size of constraint {j} must be >= 2, '
                    f'got {size}')
        if self.budgets_tilde is not None and len(self.budgets_tilde) != m:
            raise ValidationError(
                f'LTT needs {m} budgets, got {len(self.budgets_tilde)}')
        if self.selection != SELECTION_MIN_OBJECTIVE:
            raise ValidationError(
                f"unknown LTT selection rule '{self.selection}'")


def make_ltt_config(
    delta: float,
    m: int,
    grid_size: int = DEFAULT_GRID_SIZE,
    budgets_tilde: Optional[Sequence[float]] = None,
) -> LttConfig:
    """Build an LttConfig with the same grid size in every dimension."""
    config = LttConfig(
        delta=float(delta),
        grid_sizes=tuple(int(grid_size) for _ in range(m)),
        budgets_tilde=(
            None if budgets_tilde is None
            else tuple(float(b) for b in budgets_tilde)
        ),
    )
    config.validate(m)
    return config


def _clt_pvalues(losses: Any, beta: float) -> Any:
    """CLT p-values of the columns of the (n, K) 'losses' matrix."""
    n = losses.shape[0]
    means = losses.mean(axis=0)
    if n > 1:
        sigmas = losses.std(axis=0, ddof=1)
    else:
        sigmas = np.zeros_like(means)

    pvalues = np.empty_like(means)
    flat = sigmas == 0
    spread = ~flat
    if spread.any():
        z = (beta - means[spread]) / (sigmas[spread] / math.sqrt(n))
        pvalues[spread] = norm.sf(z)
    pvalues[flat & (means > beta)] = 1.0
    pvalues[flat & (means == beta)] = 0.5
    pvalues[flat & (means < beta)] = 0.0
    return pvalues


def clt_pvalue(losses: Sequence[float], beta: float) -> float:
    """p = 1 - Phi((beta - mean)/(sigma/sqrt(n))), with the Bessel-corrected
    sigma. If sigma is 0 (which includes n = 1), p is 1, 0.5 or 0 when the
    mean is above, at or below beta.
    """
    values = np.asarray(losses, dtype=float)
    if values.ndim != 1 or values.size == 0:
        raise ValidationError('clt_pvalue() needs a non-empty list of losses')
    return float(_clt_pvalues(values[:, None], beta)[0])


def convert_budgets(
    budgets: Sequence[float],
    delta: float,
    v_max_hat: Sequence[float],
) -> List[float]:
    """Solve beta_j = (1 - delta) beta~_j + delta V^max_j for beta~_j, so
    that LTT's high-probability guarantee at level beta~_j implies an
    expected risk of at most beta_j.
    """
    if not 0 < delta < 1:
        raise ValidationError(f'LTT delta must be in (0, 1), got {delta}')
    if len(budgets) != len(v_max_hat):
        raise ValidationError(
            f'{len(budgets)} budgets but {len(v_max_hat)} cost bounds')
    result: List[float] = []
    for j, (beta, v_max) in enumerate(zip(budgets, v_max_hat), start=1):
        beta_tilde = (beta - delta * v_max) / (1 - delta)
        if beta_tilde < 0:
            raise ValidationError(
                f'LTT budget of constraint {j} is negative ({beta_tilde}) '
                f'for delta={delta}; use a smaller delta (need '
                f'beta > delta * V^max = {delta * v_max})')
        result.append(beta_tilde)
    return result


def threshold_grids(spec: BudgetSpec, grid_sizes: Sequence[int]) -> List[Any]:
    """Equally spaced grid of each domain, both endpoints included."""
    return [
        np.linspace(domain.lo, domain.hi, size)
        for domain, size in zip(spec.domains, grid_sizes)
    ]


class _Scan:
    """State of the depth-first grid scan."""

    def __init__(
        self,
        calib: CalibrationSet,
        grids: List[Any],
        budgets: Sequence[float],
        alpha: float,
    ):
        self.calib = calib
        self.grids = grids
        self.budgets = budgets
        self.alpha = alpha
        self.best_objective = math.inf
        self.best: Optional[Tuple[float, ...]] = None
        self.accepted = 0
        self.tested = 0

    def run(self, prefix: List[float], mask: Any) -> None:
        j = len(prefix)
        scores = self.calib.scores[:, j]
        grid = self.grids[j]

        # (n, K) losses of constraint j+1 for every grid value of lambda_j.
        fires = mask[:, None] & (scores[:, None] > grid[None, :])
        losses = np.where(fires, self.calib.costs[:, j][:, None], 0.0)
        pvalues = _clt_pvalues(losses, self.budgets[j])
        self.tested += grid.size

        last = j == self.calib.m - 1
        for k in np.flatnonzero(pvalues <= self.alpha):
            lam = float(grid[k])
            passing = mask & (scores <= lam)
            if last:
                self.accepted += 1
                objective = float(
                    np.sum(self.calib.objective_costs[passing])) / self.calib.n
                if objective < self.best_objective:
                    self.best_objective = objective
                    self.best = tuple(prefix + [lam])
            else:
                self.run(prefix + [lam], passing)


def ltt_select(
    calib: CalibrationSet,
    spec: BudgetSpec,
    config: LttConfig,
    debug: bool = False,
) -> ThresholdSet:
    """Return the accepted grid configuration with the smallest empirical
    objective. If no configuration is accepted, return lambda^max with every
    constraint flagged infeasible.
    """
    m = calib.m
    spec.validate(m)
    config.validate(m)
    budgets = (
        config.budgets_tilde if config.budgets_tilde is not None
        else spec.budgets
    )

    grids = threshold_grids(spec, config.grid_sizes)
    total = int(np.prod(config.grid_sizes))
    alpha = config.delta / (total * m)

    scan = _Scan(calib, grids, budgets, alpha)
    scan.run([], np.ones(calib.n, dtype=bool))
    if debug:
        logging.info(
            'ltt_select(): G=%d; alpha=%r; p-values computed=%d; '
            'accepted=%d; objective=%r',
            total, alpha, scan.tested, scan.accepted, scan.best_objective)

    if scan.best is None:
        logging.warning(
            '%s: no grid configuration accepted at delta=%r; thresholds set '
            'to lambda_max', ALGORITHM_LTT, config.delta)
        return ThresholdSet(
            algorithm=ALGORITHM_LTT,
            thresholds=tuple(domain.hi for domain in spec.domains),
            aux={},
            infeasible=tuple(True for _ in range(m)),
            n=calib.n,
        )
    return ThresholdSet(
        algorithm=ALGORITHM_LTT,
        thresholds=scan.best,
        aux={},
        infeasible=tuple(False for _ in range(m)),
        n=calib.n,
    )
