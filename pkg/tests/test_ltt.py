import itertools
import unittest
from typing import List

import numpy as np

from riskgate.common import Interval
from riskgate.common import ValidationError
from riskgate.dataset import BudgetSpec
from riskgate.dataset import CalibrationSet
from riskgate.ltt import LttConfig
from riskgate.ltt import clt_pvalue
from riskgate.ltt import convert_budgets
from riskgate.ltt import ltt_select
from riskgate.ltt import make_ltt_config
from riskgate.ltt import threshold_grids
from riskgate.simulate import UniformConfig
from riskgate.simulate import gen_uniform_iid
from riskgate.simulate import population_risk_uniform

UNIT = Interval(0.0, 1.0)


def unit_spec(budgets: List[float]) -> BudgetSpec:
    return BudgetSpec(tuple(budgets), tuple(UNIT for _ in budgets))


class TestCltPvalue(unittest.TestCase):
    def test_mean_at_budget(self) -> None:
        self.assertEqual(0.5, clt_pvalue([0.0, 0.0, 1.0, 1.0], 0.5))

    def test_zero_variance(self) -> None:
        self.assertEqual(0.0, clt_pvalue([0.4] * 5, 0.5))
        self.assertEqual(0.5, clt_pvalue([0.5] * 4, 0.5))
        self.assertEqual(1.0, clt_pvalue([0.7] * 3, 0.5))
        self.assertEqual(1.0, clt_pvalue([0.7], 0.5))
        self.assertEqual(0.0, clt_pvalue([0.2], 0.5))

    def test_normal_tail(self) -> None:
        # mean 0.5, sigma 0.5774, sigma/sqrt(n) = 0.2887
        p = clt_pvalue([0.0, 0.0, 1.0, 1.0], 0.5 + 0.2886751345948129)
        self.assertAlmostEqual(0.15865525393145707, p, places=9)

    def test_non_increasing_in_beta(self) -> None:
        losses = np.random.default_rng(1).random(30)
        betas = np.linspace(0.0, 1.0, 41)
        pvalues = [clt_pvalue(losses, b) for b in betas]
        self.assertEqual(sorted(pvalues, reverse=True), pvalues)

    def test_empty(self) -> None:
        with self.assertRaises(ValidationError):
            clt_pvalue([], 0.5)


class TestConvertBudgets(unittest.TestCase):
    def test_convert(self) -> None:
        tilde = convert_budgets([0.23], 0.1, [1.0])
        self.assertAlmostEqual(0.13 / 0.9, tilde[0])

    def test_small_delta(self) -> None:
        self.assertAlmostEqual(
            0.23, convert_budgets([0.23], 1e-12, [1.0])[0], places=9)

    def test_inverse(self) -> None:
        budgets = [0.23, 0.5, 1.7]
        v_max = [1.0, 2.0, 4.0]
        delta = 0.05
        tilde = convert_budgets(budgets, delta, v_max)
        for beta, t, v in zip(budgets, tilde, v_max):
            back = (1 - delta) * t + delta * v
            self.assertLessEqual(abs(back - beta), 1e-12 * beta)

    def test_negative(self) -> None:
        with self.assertRaisesRegex(ValidationError, 'smaller delta'):
            convert_budgets([0.05], 0.1, [1.0])
        with self.assertRaises(ValidationError):
            convert_budgets([0.05], 1.0, [1.0])


class TestLttSelect(unittest.TestCase):
    def test_config_validation(self) -> None:
        with self.assertRaises(ValidationError):
            make_ltt_config(0.0, 1)
        with self.assertRaises(ValidationError):
            make_ltt_config(0.1, 1, grid_size=1)
        with self.assertRaises(ValidationError):
            LttConfig(0.1, (5, 5)).validate(1)

    def test_grid_includes_endpoints(self) -> None:
        grids = threshold_grids(
            BudgetSpec((0.1,), (Interval(0.2, 0.8),)), [4])
        self.assertEqual(0.2, grids[0][0])
        self.assertEqual(0.8, grids[0][-1])
        self.assertEqual(4, len(grids[0]))

    def test_zero_losses(self) -> None:
        rng = np.random.default_rng(2)
        data = CalibrationSet(
            rng.random((50, 1)) + 0.01, np.zeros((50, 1)), np.ones(50))
        result = ltt_select(data, unit_spec([0.1]), make_ltt_config(0.1, 1))
        self.assertEqual('ltt', result.algorithm)
        self.assertEqual((0.0,), result.thresholds)
        self.assertEqual((False,), result.infeasible)

    def test_nothing_accepted(self) -> None:
        data = CalibrationSet(np.ones((20, 1)), np.ones((20, 1)), np.ones(20))
        with self.assertLogs(level='WARNING'):
            result = ltt_select(
                data, unit_spec([0.0]), make_ltt_config(0.1, 1, grid_size=5))
        self.assertEqual((1.0,), result.thresholds)
        self.assertEqual((True,), result.infeasible)

    def test_accepted_pvalues(self) -> None:
        rng = np.random.default_rng(3)
        n = 500
        data = CalibrationSet(
            rng.random((n, 2)), np.ones((n, 2)), np.ones(n))
        config = make_ltt_config(0.1, 2, grid_size=11)
        result = ltt_select(data, unit_spec([0.3, 0.3]), config)
        self.assertEqual((False, False), result.infeasible)

        alpha = 0.1 / (11 * 11 * 2)
        lam = np.asarray(result.thresholds)
        passing = np.ones(n, dtype=bool)
        for j in range(2):
            losses = passing & (data.scores[:, j] > lam[j])
            self.assertLessEqual(clt_pvalue(losses.astype(float), 0.3), alpha)
            passing = passing & (data.scores[:, j] <= lam[j])

    def test_matches_exhaustive_scan(self) -> None:
        rng = np.random.default_rng(4)
        n = 200
        data = CalibrationSet(
            rng.random((n, 2)), rng.random((n, 2)), rng.random(n))
        spec = unit_spec([0.15, 0.1])
        config = make_ltt_config(0.2, 2, grid_size=9)
        grids = threshold_grids(spec, config.grid_sizes)
        alpha = 0.2 / (81 * 2)

        best = None
        best_objective = float('inf')
        for lam in itertools.product(*grids):
            passing = np.ones(n, dtype=bool)
            ok = True
            for j in range(2):
                losses = np.where(
                    passing & (data.scores[:, j] > lam[j]),
                    data.costs[:, j], 0.0)
                if clt_pvalue(losses, spec.budgets[j]) > alpha:
                    ok = False
                passing = passing & (data.scores[:, j] <= lam[j])
            if not ok:
                continue
            objective = float(np.sum(data.objective_costs[passing])) / n
            if objective < best_objective:
                best, best_objective = lam, objective

        result = ltt_select(data, spec, config)
        self.assertIsNotNone(best)
        self.assertEqual((False, False), result.infeasible)
        passing = np.all(data.scores <= np.asarray(result.thresholds), axis=1)
        objective = float(np.sum(data.objective_costs[passing])) / n
        self.assertAlmostEqual(best_objective, objective, places=12)


class TestLttValidity(unittest.TestCase):
    def test_uniform_exceedance_rate(self) -> None:
        delta = 0.1
        config = UniformConfig(m=1, n_cal=200, budgets=(0.2,), seed=9)
        tilde = convert_budgets(config.budgets, delta, [1.0])
        ltt_config = make_ltt_config(delta, 1, budgets_tilde=tilde)
        spec = unit_spec(list(config.budgets))
        trials = 1000
        exceeded = 0
        for batch in range(trials):
            calib = gen_uniform_iid(1, config.n_cal, config.seed, batch)
            result = ltt_select(calib, spec, ltt_config)
            risk = population_risk_uniform(result, config)[0]
            if risk > tilde[0]:
                exceeded += 1
        self.assertLessEqual(exceeded / trials, delta + 0.02)
