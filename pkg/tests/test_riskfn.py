import unittest

import numpy as np

from riskgate.common import Interval
from riskgate.common import ValidationError
from riskgate.dataset import CalibrationSet
from riskgate.riskfn import bumped_risk
from riskgate.riskfn import candidate_points
from riskgate.riskfn import empirical_risk
from riskgate.riskfn import gen_inverse_base
from riskgate.riskfn import gen_inverse_bumped
from riskgate.riskfn import gen_inverse_grid
from riskgate.riskfn import gen_inverse_sym
from riskgate.riskfn import objective_risk
from riskgate.riskfn import symmetric_risk

UNIT = Interval(0.0, 1.0)


def three_rows() -> CalibrationSet:
    """Scores 0.1, 0.5, 0.9 with unit costs."""
    return CalibrationSet([[0.1], [0.5], [0.9]], np.ones((3, 1)), np.ones(3))


def random_set(seed: int, n: int, m: int) -> CalibrationSet:
    rng = np.random.default_rng(seed)
    return CalibrationSet(
        rng.random((n, m)), rng.random((n, m)), rng.random(n))


class TestEvaluate(unittest.TestCase):
    def test_empirical(self) -> None:
        f = empirical_risk(three_rows(), 1)
        self.assertAlmostEqual(1 / 3, f(0.5))
        self.assertAlmostEqual(2 / 3, f(0.1))
        self.assertAlmostEqual(1.0, f(0.0))
        self.assertEqual(0.0, f(0.9))
        self.assertEqual(0.0, f(float('inf')))

    def test_bumped(self) -> None:
        f = bumped_risk(three_rows(), 1, 1.0)
        self.assertAlmostEqual(0.5, f(0.5))
        self.assertAlmostEqual(0.25, f(0.9))
        self.assertAlmostEqual(0.25, f(float('inf')))

    def test_evaluate_array(self) -> None:
        f = empirical_risk(three_rows(), 1)
        values = f.evaluate(np.array([0.0, 0.5, 1.0]))
        self.assertEqual(3, len(values))
        self.assertAlmostEqual(1 / 3, float(values[1]))

    def test_prefix_filter_is_inclusive(self) -> None:
        data = CalibrationSet(
            [[0.5, 0.9], [0.6, 0.9]], np.ones((2, 2)), np.ones(2))
        f = empirical_risk(data, 2, [0.5])
        self.assertEqual(1, f.active_count)
        self.assertAlmostEqual(0.5, f(0.0))

    def test_invalid_arguments(self) -> None:
        data = three_rows()
        with self.assertRaises(ValidationError):
            empirical_risk(data, 2)
        with self.assertRaises(ValidationError):
            empirical_risk(data, 1, [0.5])
        with self.assertRaises(ValidationError):
            symmetric_risk(data, data, 1)

    def test_non_increasing(self) -> None:
        data = random_set(1, 50, 2)
        grid = np.linspace(-0.1, 1.1, 200)
        for f in (
            empirical_risk(data, 2, [0.7]),
            bumped_risk(data, 2, 1.0, [0.7]),
        ):
            values = f.evaluate(grid)
            self.assertTrue(np.all(np.diff(values) <= 0))

    def test_non_decreasing_in_prefix(self) -> None:
        data = random_set(2, 50, 3)
        grid = np.linspace(0.0, 1.0, 50)
        small = empirical_risk(data, 3, [0.3, 0.4]).evaluate(grid)
        large = empirical_risk(data, 3, [0.6, 0.4]).evaluate(grid)
        larger = empirical_risk(data, 3, [0.6, 0.9]).evaluate(grid)
        self.assertTrue(np.all(small <= large))
        self.assertTrue(np.all(large <= larger))


class TestCandidatePoints(unittest.TestCase):
    def test_dedup_and_endpoints(self) -> None:
        self.assertEqual(
            [0.0, 0.5, 0.9, 1.0],
            list(candidate_points([0.5, 0.5, 0.9], UNIT)))

    def test_outside(self) -> None:
        self.assertEqual(
            [0.0, 1.0], list(candidate_points([-1.0, 2.0], UNIT)))
        self.assertEqual(
            [0.4, 0.6], list(candidate_points([0.3], Interval(0.4, 0.6))))


class TestInverses(unittest.TestCase):
    def test_gen_inverse_base(self) -> None:
        f = empirical_risk(three_rows(), 1)
        self.assertEqual(0.5, gen_inverse_base(f, 0.4, UNIT))
        self.assertEqual(0.0, gen_inverse_base(f, 1.0, UNIT))
        self.assertEqual(1.0, gen_inverse_base(f, -0.1, UNIT))

    def test_gen_inverse_bumped(self) -> None:
        f = bumped_risk(three_rows(), 1, 1.0)
        self.assertEqual(0.9, gen_inverse_bumped(f, 0.4, UNIT))
        self.assertEqual(0.0, gen_inverse_bumped(f, 1.0, UNIT))
        # g^+ never drops below V^max/(n+1)
        self.assertEqual(1.0, gen_inverse_bumped(f, 0.2, UNIT))

    def test_gen_inverse_sym(self) -> None:
        test = CalibrationSet([[0.7]], [[1.0]], [1.0])
        f = symmetric_risk(three_rows(), test, 1)
        # g^sym(0.5) = 2/4 > 0.4 and g^sym(0.7) = 1/4 <= 0.4, so
        # {g^sym > 0.4} = [0, 0.7).
        self.assertEqual(0.7, gen_inverse_sym(f, 0.4, UNIT))
        self.assertEqual(0.0, gen_inverse_sym(f, 1.0, UNIT))
        self.assertEqual(1.0, gen_inverse_sym(f, -0.1, UNIT))

    def test_wrong_variant(self) -> None:
        f = empirical_risk(three_rows(), 1)
        with self.assertRaises(ValidationError):
            gen_inverse_bumped(f, 0.4, UNIT)
        with self.assertRaises(ValidationError):
            gen_inverse_sym(f, 0.4, UNIT)

    def test_large_n(self) -> None:
        scores = np.arange(1, 1000)[:, None] / 1000
        data = CalibrationSet(scores, np.ones((999, 1)), np.ones(999))
        base = gen_inverse_base(empirical_risk(data, 1), 0.2, UNIT)
        bumped = gen_inverse_bumped(bumped_risk(data, 1, 1.0), 0.2, UNIT)
        self.assertLessEqual(abs(bumped - base), 0.001 + 1e-12)

    def test_grid_matches_exact(self) -> None:
        data = random_set(3, 40, 2)
        for beta in (0.05, 0.1, 0.2, 0.4):
            f = empirical_risk(data, 2, [0.8])
            grid = np.union1d(
                candidate_points(f.jump_points, UNIT),
                np.linspace(0.0, 1.0, 17))
            self.assertEqual(
                gen_inverse_base(f, beta, UNIT),
                gen_inverse_grid(f, beta, grid))
        with self.assertRaises(ValidationError):
            gen_inverse_grid(f, 0.1, [])

    def test_sandwich(self) -> None:
        v_max = 1.0
        for seed in range(20):
            calib = random_set(seed, 20, 2)
            test = random_set(100 + seed, 1, 2)
            delta = v_max / (calib.n + 1)
            for j, prefix in ((1, []), (2, [0.7])):
                plus = bumped_risk(calib, j, v_max, prefix)
                sym = symmetric_risk(calib, test, j, prefix)
                for beta in (0.0, 0.05, 0.1, 0.2, 0.3, 0.5):
                    u_plus = gen_inverse_bumped(plus, beta, UNIT)
                    self.assertLessEqual(
                        gen_inverse_sym(sym, beta, UNIT), u_plus)
                    self.assertLessEqual(
                        u_plus, gen_inverse_sym(sym, beta - delta, UNIT))

    def test_sandwich_random_instances(self) -> None:
        rng = np.random.default_rng(30)
        for _ in range(500):
            n = int(rng.integers(5, 201))
            m = int(rng.integers(1, 5))
            calib = CalibrationSet(
                rng.random((n, m)), rng.random((n, m)), rng.random(n))
            test = CalibrationSet(
                rng.random((1, m)), rng.random((1, m)), rng.random(1))
            j = int(rng.integers(1, m + 1))
            prefix = list(rng.random(j - 1))
            beta = float(rng.uniform(0.0, 0.6))
            delta = 1.0 / (n + 1)
            plus = bumped_risk(calib, j, 1.0, prefix)
            sym = symmetric_risk(calib, test, j, prefix)
            u_plus = gen_inverse_bumped(plus, beta, UNIT)
            self.assertLessEqual(gen_inverse_sym(sym, beta, UNIT), u_plus)
            self.assertLessEqual(
                u_plus, gen_inverse_sym(sym, beta - delta, UNIT))

    def test_brute_force_small_n(self) -> None:
        rng = np.random.default_rng(31)
        for _ in range(200):
            n = int(rng.integers(1, 9))
            m = int(rng.integers(1, 3))
            # Rounded scores give ties; costs are multiples of 0.5.
            scores = np.round(rng.random((n, m)), 2)
            costs = rng.integers(0, 3, size=(n, m)) / 2
            data = CalibrationSet(scores, costs, np.ones(n))
            j = int(rng.integers(1, m + 1))
            prefix = list(np.round(rng.random(j - 1), 2))
            passing = np.all(scores[:, :j - 1] <= prefix, axis=1)
            grid = np.union1d(np.linspace(0.0, 1.0, 1001), scores[:, j - 1])

            # Budgets sit halfway between attainable risk values.
            half = int(rng.integers(0, 2 * n + 1))
            beta = (0.5 * half + 0.25) / n
            beta_plus = (0.5 * half + 0.25) / (n + 1)

            def brute(extra: float, size: int, budget: float) -> float:
                for lam in grid:
                    fires = passing & (scores[:, j - 1] > lam)
                    risk = (costs[fires, j - 1].sum() + extra) / size
                    if risk <= budget:
                        return float(lam)
                return 1.0

            self.assertEqual(
                brute(0.0, n, beta),
                gen_inverse_base(empirical_risk(data, j, prefix), beta, UNIT))
            self.assertEqual(
                brute(1.0, n + 1, beta_plus),
                gen_inverse_bumped(
                    bumped_risk(data, j, 1.0, prefix), beta_plus, UNIT))

    def test_bounded_jumps(self) -> None:
        calib = random_set(7, 30, 1)
        test = random_set(8, 1, 1)
        f = symmetric_risk(calib, test, 1)
        values = f.evaluate(candidate_points(f.jump_points, UNIT))
        self.assertTrue(
            np.all(np.abs(np.diff(values)) <= 1.0 / 31 + 1e-15))


class TestObjectiveRisk(unittest.TestCase):
    def test_objective_risk(self) -> None:
        data = CalibrationSet(
            [[0.1], [0.5], [0.9]], np.ones((3, 1)), [1.0, 1.0, 3.0])
        self.assertAlmostEqual(2 / 3, objective_risk(data, [0.5]))
        self.assertAlmostEqual(5 / 3, objective_risk(data, [1.0]))
        self.assertEqual(0.0, objective_risk(data, [0.0]))
        with self.assertRaises(ValidationError):
            objective_risk(data, [0.5, 0.5])
