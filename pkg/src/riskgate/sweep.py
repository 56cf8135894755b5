# Copyright 2026 riskgate contributors
#
# MIT License

"""
Budget sweeps on real data. The calibration and test files are pooled and
reshuffled n_splits times; each shuffle gives a calibration split of n_cal rows
and a test split with the rest. One budget is varied over the grid

    (lo + (hi - lo)(k-1)/(n_budgets-1)) * base_fraction * V^max_j,
    k = 1..n_budgets,

with (lo, hi) = (1, 5) and base_fraction = 0.10 by default, while the other
budgets stay at base_fraction * V^max_l. Every algorithm runs on every split,
and its test risks are averaged over the splits.

The cost bounds V^max are the column maxima of the pooled data. They bound the
costs of every calibration split, so multirisk() can check them, and every
budget grid is the same for all splits.

LTT runs once per configured delta, under the label 'ltt@<delta>', with budgets
converted by convert_budgets(). A delta which leaves a held budget with an LTT
budget of 0 or less is rejected up front. Swept budget values where the
conversion gives a negative LTT budget are skipped for that delta.
"""

from concurrent.futures import ThreadPoolExecutor
import csv
import json
import logging
import math
from typing import Any
from typing import Dict
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from .algorithms import check_algorithms
from .algorithms import run_algorithm
from .calibrate import ALGORITHM_BASE
from .calibrate import ALGORITHM_LTT
from .calibrate import ALGORITHM_MULTIRISK
from .common import Interval
from .common import ValidationError
from .common import format_float
from .common import thread_count
from .dataset import BudgetSpec
from .dataset import CalibrationSet
from .dataset import CostBounds
from .dataset import estimate_cost_bounds
from .evaluate import evaluate_test_risks
from .ltt import DEFAULT_GRID_SIZE
from .ltt import convert_budgets
from .ltt import make_ltt_config
from .simulate import batch_rng


class SweepConfig(NamedTuple):
    j: int  # 1-based index of the swept constraint
    n_cal: int  # calibration rows per split
    n_budgets: int = 101
    n_splits: int = 10
    base_fraction: float = 0.10
    multipliers: Tuple[float, float] = (1.0, 5.0)
    algorithms: Tuple[str, ...] = (ALGORITHM_MULTIRISK, ALGORITHM_BASE)
    ltt_deltas: Tuple[float, ...] = ()
    ltt_grid_size: int = DEFAULT_GRID_SIZE
    seed: int = 0

    def validate(self, m: int, n_pooled: int) -> None:
        if not 1 <= self.j <= m:
            raise ValidationError(f'swept constraint {self.j} outside 1..{m}')
        if self.n_budgets < 1:
            raise ValidationError(
                f'n_budgets must be >= 1, got {self.n_budgets}')
        if self.n_splits < 1:
            raise ValidationError(
                f'n_splits must be >= 1, got {self.n_splits}')
        if not 1 <= self.n_cal < n_pooled:
            raise ValidationError(
                f'insufficient data: n_cal={self.n_cal} needs at least '
                f'n_cal+1 pooled rows, got {n_pooled}')
        if self.base_fraction <= 0:
            raise ValidationError(
                f'base_fraction must be > 0, got {self.base_fraction}')
        lo, hi = self.multipliers
        if not 0 < lo <= hi:
            raise ValidationError(
                f'multipliers must satisfy 0 < lo <= hi, got {lo}, {hi}')
        check_algorithms(
            [a for a in self.algorithms if a != ALGORITHM_LTT], m)


class SweepCell(NamedTuple):
    budget: float
    algorithm: str
    objective_mean: float
    objective_se: float
    risk_means: Tuple[float, ...]
    risk_ses: Tuple[float, ...]


class SweepResult(NamedTuple):
    j: int
    budgets: Tuple[float, ...]
    n_splits: int
    cells: Tuple[SweepCell, ...]

    def csv_header(self) -> List[str]:
        m = len(self.cells[0].risk_means) if self.cells else 0
        header = ['budget', 'algorithm', 'objective_risk', 'objective_se']
        for j in range(1, m + 1):
            header += [f'risk_{j}', f'se_{j}']
        return header

    def write_csv(self, path: str) -> None:
        with open(path, 'w', newline='', encoding='utf-8') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(self.csv_header())
            for cell in self.cells:
                row = [
                    format_float(cell.budget),
                    cell.algorithm,
                    format_float(cell.objective_mean),
                    format_float(cell.objective_se),
                ]
                for mean, se in zip(cell.risk_means, cell.risk_ses):
                    row += [format_float(mean), format_float(se)]
                writer.writerow(row)

    def to_json(self) -> Dict[str, Any]:
        return {
            'j': self.j,
            'budgets': list(self.budgets),
            'n_splits': self.n_splits,
            'cells': [
                {
                    'budget': c.budget,
                    'algorithm': c.algorithm,
                    'objective_risk': c.objective_mean,
                    'objective_se': c.objective_se,
                    'risks': list(c.risk_means),
                    'ses': list(c.risk_ses),
                }
                for c in self.cells
            ],
        }

    def write_json(self, path: str) -> None:
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(self.to_json(), f, indent=2)
            f.write('\n')


def budget_grid(
    v_max_hat: float,
    n_budgets: int = 101,
    base_fraction: float = 0.10,
    multipliers: Tuple[float, float] = (1.0, 5.0),
) -> List[float]:
    lo, hi = multipliers
    if n_budgets == 1:
        return [lo * base_fraction * v_max_hat]
    return [
        (lo + (hi - lo) * (k - 1) / (n_budgets - 1)) * base_fraction
        * v_max_hat
        for k in range(1, n_budgets + 1)
    ]


def ltt_label(delta: float) -> str:
    return f'{ALGORITHM_LTT}@{delta:g}'


def make_splits(
    n_pooled: int,
    n_cal: int,
    n_splits: int,
    seed: int,
) -> List[Tuple[Any, Any]]:
    """(calibration rows, test rows) index arrays of each reshuffle."""
    splits: List[Tuple[Any, Any]] = []
    for split in range(n_splits):
        order = batch_rng(seed, split).permutation(n_pooled)
        splits.append((order[:n_cal], order[n_cal:]))
    return splits


def _mean_se(values: Sequence[float]) -> Tuple[float, float]:
    array = np.asarray(values, dtype=float)
    if array.size < 2:
        return float(array.mean()), 0.0
    return (
        float(array.mean()),
        float(array.std(ddof=1)) / math.sqrt(array.size),
    )


class _Runner:
    """Runs one algorithm on every split at one budget vector."""

    def __init__(
        self,
        pooled: CalibrationSet,
        splits: List[Tuple[Any, Any]],
        domains: Tuple[Interval, ...],
        bounds: CostBounds,
        ltt_grid_size: int,
    ):
        self.pooled = pooled
        self.splits = splits
        self.domains = domains
        self.bounds = bounds
        self.ltt_grid_size = ltt_grid_size
        self.parts = [
            (pooled.subset(cal), pooled.subset(test)) for cal, test in splits
        ]

    def run(
        self,
        algorithm: str,
        budgets: Sequence[float],
        ltt_delta: Optional[float] = None,
    ) -> Tuple[float, float, Tuple[float, ...], Tuple[float, ...]]:
        spec = BudgetSpec(tuple(budgets), self.domains)
        ltt_config = None
        if ltt_delta is not None:
            tilde = convert_budgets(budgets, ltt_delta, self.bounds.v_max)
            ltt_config = make_ltt_config(
                ltt_delta, spec.m, self.ltt_grid_size, tilde)

        objectives: List[float] = []
        risks: List[List[float]] = []
        for calib, test in self.parts:
            thresholds = run_algorithm(
                algorithm, calib, spec, self.bounds, ltt_config, warn=False)
            report = evaluate_test_risks(thresholds, test, spec, self.bounds)
            objectives.append(report.objective)
            risks.append([c.risk for c in report.constraints])

        objective_mean, objective_se = _mean_se(objectives)
        columns = [_mean_se(column) for column in zip(*risks)]
        return (
            objective_mean,
            objective_se,
            tuple(mean for mean, _ in columns),
            tuple(se for _, se in columns),
        )


def _check_ltt_deltas(
    config: SweepConfig,
    fixed: Sequence[float],
    v_max: Sequence[float],
) -> None:
    """Reject an LTT delta for which a held budget converts to an LTT budget
    of 0 or less. No grid point passes such a test, so every cell of that
    variant would sit at lambda^max or be skipped.
    """
    for delta in config.ltt_deltas:
        for j, (budget, v) in enumerate(zip(fixed, v_max), start=1):
            if j == config.j:
                continue
            if v > 0 and budget - delta * v <= 0:
                raise ValidationError(
                    f'{ltt_label(delta)}: held budget of constraint {j} '
                    f'({budget}) leaves no LTT budget; use '
                    f'delta < base_fraction ({config.base_fraction})')


def budget_sweep(
    pooled: CalibrationSet,
    domains: Sequence[Interval],
    config: SweepConfig,
    debug: bool = False,
) -> SweepResult:
    """Sweep the budget of constraint config.j. 'pooled' holds the union of
    the calibration and test rows, with non-negative costs.
    """
    m = pooled.m
    config.validate(m, pooled.n)
    BudgetSpec(tuple(0.0 for _ in range(m)), tuple(domains)).validate(m)
    bounds = estimate_cost_bounds(pooled)
    grid = budget_grid(
        bounds.v_max[config.j - 1], config.n_budgets, config.base_fraction,
        config.multipliers)
    fixed = [config.base_fraction * v for v in bounds.v_max]
    _check_ltt_deltas(config, fixed, bounds.v_max)
    splits = make_splits(pooled.n, config.n_cal, config.n_splits, config.seed)
    runner = _Runner(
        pooled, splits, tuple(domains), bounds, config.ltt_grid_size)

    tasks: List[Tuple[float, str, Optional[float]]] = []
    for budget in grid:
        for algorithm in config.algorithms:
            if algorithm == ALGORITHM_LTT:
                continue
            tasks.append((budget, algorithm, None))
        for delta in config.ltt_deltas:
            tasks.append((budget, ltt_label(delta), delta))

    def one_cell(task: Tuple[float, str, Optional[float]]
                 ) -> Optional[SweepCell]:
        budget, label, delta = task
        budgets = list(fixed)
        budgets[config.j - 1] = budget
        algorithm = ALGORITHM_LTT if delta is not None else label
        try:
            result = runner.run(algorithm, budgets, delta)
        except ValidationError as e:
            if delta is None:
                raise
            logging.warning('%s: skipping budget %r: %s', label, budget, e)
            return None
        if debug:
            logging.info('budget_sweep(): %s; budget=%r; objective=%r',
                         label, budget, result[0])
        return SweepCell(budget, label, *result)

    with ThreadPoolExecutor(
            max_workers=min(thread_count(), len(tasks) or 1)) as executor:
        cells = [c for c in executor.map(one_cell, tasks) if c is not None]
    return SweepResult(config.j, tuple(grid), config.n_splits, tuple(cells))


# ---------------------------------------------------------------------------
# Objective risk surface over two budgets.
# ---------------------------------------------------------------------------

class SurfaceCell(NamedTuple):
    budget_a: float
    budget_b: float
    objective_mean: float
    objective_se: float


def budget_surface(
    pooled: CalibrationSet,
    domains: Sequence[Interval],
    pair: Tuple[int, int],
    config: SweepConfig,
    debug: bool = False,
) -> List[SurfaceCell]:
    """multirisk() objective test risk over the grid of budgets of the two
    constraints in 'pair' (1-based), each on the sweep grid of config. The
    remaining budgets stay at base_fraction * V^max.
    """
    m = pooled.m
    config.validate(m, pooled.n)
    a, b = pair
    if a == b or not (1 <= a <= m and 1 <= b <= m):
        raise ValidationError(
            f'surface needs two distinct constraints in 1..{m}, got {pair}')
    bounds = estimate_cost_bounds(pooled)
    grid_a = budget_grid(
        bounds.v_max[a - 1], config.n_budgets, config.base_fraction,
        config.multipliers)
    grid_b = budget_grid(
        bounds.v_max[b - 1], config.n_budgets, config.base_fraction,
        config.multipliers)
    fixed = [config.base_fraction * v for v in bounds.v_max]
    splits = make_splits(pooled.n, config.n_cal, config.n_splits, config.seed)
    runner = _Runner(
        pooled, splits, tuple(domains), bounds, config.ltt_grid_size)

    tasks = [(x, y) for x in grid_a for y in grid_b]

    def one_cell(task: Tuple[float, float]) -> SurfaceCell:
        budgets = list(fixed)
        budgets[a - 1], budgets[b - 1] = task
        objective, se, _, _ = runner.run(ALGORITHM_MULTIRISK, budgets)
        if debug:
            logging.info('budget_surface(): %s; objective=%r', task, objective)
        return SurfaceCell(task[0], task[1], objective, se)

    with ThreadPoolExecutor(
            max_workers=min(thread_count(), len(tasks))) as executor:
        return list(executor.map(one_cell, tasks))


def write_surface_csv(
    cells: Sequence[SurfaceCell],
    pair: Tuple[int, int],
    path: str,
) -> None:
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow([
            f'budget_{pair[0]}', f'budget_{pair[1]}',
            'objective_risk', 'objective_se',
        ])
        for cell in cells:
            writer.writerow([format_float(x) for x in cell])
