import csv
import json
import os
import tempfile
import unittest

import numpy as np

from riskgate.common import Interval
from riskgate.common import ValidationError
from riskgate.dataset import CalibrationSet
from riskgate.simulate import MixtureConfig
from riskgate.simulate import gen_mixture
from riskgate.sweep import SweepConfig
from riskgate.sweep import budget_grid
from riskgate.sweep import budget_surface
from riskgate.sweep import budget_sweep
from riskgate.sweep import ltt_label
from riskgate.sweep import make_splits
from riskgate.sweep import write_surface_csv

UNIT = Interval(0.0, 1.0)


def pooled_set(seed: int, n: int, m: int) -> CalibrationSet:
    rng = np.random.default_rng(seed)
    return CalibrationSet(
        rng.random((n, m)), rng.random((n, m)), rng.random(n))


class TestBudgetGrid(unittest.TestCase):
    def test_three_budgets(self) -> None:
        grid = budget_grid(1.0, 3)
        self.assertEqual(3, len(grid))
        for expected, budget in zip([0.1, 0.3, 0.5], grid):
            self.assertAlmostEqual(expected, budget)

    def test_default_size(self) -> None:
        grid = budget_grid(2.0)
        self.assertEqual(101, len(grid))
        self.assertAlmostEqual(0.2, grid[0])
        self.assertAlmostEqual(1.0, grid[-1])

    def test_single_budget(self) -> None:
        self.assertEqual([0.4], budget_grid(4.0, 1))

    def test_ltt_label(self) -> None:
        self.assertEqual('ltt@0.1', ltt_label(0.1))


class TestBudgetSweep(unittest.TestCase):
    def test_splits(self) -> None:
        splits = make_splits(10, 4, 3, seed=1)
        self.assertEqual(3, len(splits))
        for cal, test in splits:
            self.assertEqual(4, len(cal))
            self.assertEqual(list(range(10)), sorted(list(cal) + list(test)))

    def test_sweep(self) -> None:
        pooled = pooled_set(1, 400, 2)
        config = SweepConfig(j=1, n_cal=200, n_budgets=3, n_splits=3, seed=5)
        result = budget_sweep(pooled, [UNIT, UNIT], config)
        self.assertEqual(1, result.j)
        self.assertEqual(3, len(result.budgets))
        self.assertEqual(6, len(result.cells))
        self.assertEqual(
            ['multirisk', 'base'] * 3, [c.algorithm for c in result.cells])
        for cell in result.cells:
            self.assertEqual(2, len(cell.risk_means))

        again = budget_sweep(pooled, [UNIT, UNIT], config)
        self.assertEqual(result, again)

        multi = [c for c in result.cells if c.algorithm == 'multirisk']
        self.assertLessEqual(multi[-1].objective_mean, multi[0].objective_mean)

    def test_single_split(self) -> None:
        pooled = pooled_set(2, 100, 1)
        config = SweepConfig(j=1, n_cal=50, n_budgets=2, n_splits=1)
        result = budget_sweep(pooled, [UNIT], config)
        for cell in result.cells:
            self.assertEqual(0.0, cell.objective_se)
        self.assertEqual(result, budget_sweep(pooled, [UNIT], config))

    def test_csv_and_json(self) -> None:
        pooled = pooled_set(3, 300, 2)
        config = SweepConfig(j=2, n_cal=150, n_budgets=2, n_splits=2)
        result = budget_sweep(pooled, [UNIT, UNIT], config)
        with tempfile.TemporaryDirectory() as tmp:
            csv_path = os.path.join(tmp, 'sweep.csv')
            json_path = os.path.join(tmp, 'sweep.json')
            result.write_csv(csv_path)
            result.write_json(json_path)
            with open(csv_path, newline='') as f:
                rows = list(csv.DictReader(f))
            with open(json_path) as f:
                doc = json.load(f)

        self.assertEqual(
            ['budget', 'algorithm', 'objective_risk', 'objective_se',
             'risk_1', 'se_1', 'risk_2', 'se_2'],
            list(rows[0].keys()))
        self.assertEqual(len(doc['cells']), len(rows))
        for row, cell in zip(rows, doc['cells']):
            self.assertEqual(cell['algorithm'], row['algorithm'])
            self.assertEqual(cell['budget'], float(row['budget']))
            self.assertEqual(
                cell['objective_risk'], float(row['objective_risk']))
            self.assertEqual(cell['risks'][1], float(row['risk_2']))

    def test_ltt_skips_negative_budgets(self) -> None:
        pooled = pooled_set(4, 300, 1)
        config = SweepConfig(
            j=1, n_cal=150, n_budgets=3, n_splits=2, algorithms=(),
            ltt_deltas=(0.2,), ltt_grid_size=11)
        with self.assertLogs(level='WARNING') as logs:
            result = budget_sweep(pooled, [UNIT], config)
        self.assertTrue(any('ltt@0.2' in line for line in logs.output))
        self.assertEqual(2, len(result.cells))
        self.assertEqual(result.budgets[1:], tuple(
            c.budget for c in result.cells))

    def test_ltt_delta_above_held_budgets(self) -> None:
        pooled = pooled_set(4, 300, 2)
        config = SweepConfig(
            j=1, n_cal=150, n_budgets=2, n_splits=2, algorithms=(),
            ltt_deltas=(0.05, 0.2), ltt_grid_size=11)
        with self.assertRaisesRegex(
                ValidationError, 'ltt@0.2.*constraint 2'):
            budget_sweep(pooled, [UNIT, UNIT], config)
        with self.assertRaisesRegex(ValidationError, 'ltt@0.1'):
            budget_sweep(
                pooled, [UNIT, UNIT], config._replace(ltt_deltas=(0.1,)))

        result = budget_sweep(
            pooled, [UNIT, UNIT], config._replace(ltt_deltas=(0.05,)))
        self.assertEqual(
            ['ltt@0.05'] * 2, [c.algorithm for c in result.cells])

    def test_insufficient_data(self) -> None:
        pooled = pooled_set(5, 50, 1)
        with self.assertRaisesRegex(ValidationError, 'insufficient'):
            budget_sweep(pooled, [UNIT], SweepConfig(j=1, n_cal=50))
        with self.assertRaises(ValidationError):
            budget_sweep(pooled, [UNIT], SweepConfig(j=2, n_cal=10))

    def test_surface(self) -> None:
        pooled = pooled_set(6, 200, 2)
        config = SweepConfig(j=1, n_cal=100, n_budgets=2, n_splits=2)
        cells = budget_surface(pooled, [UNIT, UNIT], (1, 2), config)
        self.assertEqual(4, len(cells))
        self.assertEqual(cells[0].budget_a, cells[1].budget_a)
        self.assertEqual(cells[0].budget_b, cells[2].budget_b)
        self.assertLessEqual(cells[3].objective_mean, cells[0].objective_mean)

        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'surface.csv')
            write_surface_csv(cells, (1, 2), path)
            with open(path, newline='') as f:
                rows = list(csv.reader(f))
        self.assertEqual(
            ['budget_1', 'budget_2', 'objective_risk', 'objective_se'],
            rows[0])
        self.assertEqual(5, len(rows))

        with self.assertRaises(ValidationError):
            budget_surface(pooled, [UNIT, UNIT], (1, 1), config)


class TestSweepOrdering(unittest.TestCase):
    def test_mixture_objective_below_ltt(self) -> None:
        scenario = MixtureConfig(
            m=1, v_max=(4.6,), p=(0.055,), n_cal=200, budgets=(0.46,),
            seed=11)
        pooled = gen_mixture(scenario, 0, n=600)
        config = SweepConfig(
            j=1, n_cal=200, n_budgets=11, n_splits=5,
            algorithms=('multirisk', 'base', 'ltt'), ltt_deltas=(0.05,),
            ltt_grid_size=31, seed=3)
        result = budget_sweep(pooled, [Interval(0.0, 4.6)], config)
        self.assertEqual(33, len(result.cells))
        cells = {(c.budget, c.algorithm): c for c in result.cells}
        for budget in result.budgets:
            ltt = cells[(budget, 'ltt@0.05')]
            for name in ('multirisk', 'base'):
                cell = cells[(budget, name)]
                self.assertLessEqual(
                    cell.objective_mean,
                    ltt.objective_mean + 2 * ltt.objective_se)
