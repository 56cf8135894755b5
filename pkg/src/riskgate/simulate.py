# Copyright 2026 riskgate contributors
#
# MIT License

"""
Synthetic scenarios with closed-form population risks, the population
minimizer, and the Monte-Carlo harness which compares algorithms on them.

Three scenarios are supported, all with independent scores across constraints
and objective cost V_{m+1} = 1:

* MixtureConfig: S_j = v_max[j] with probability p[j], else Uniform(0, 1);
  the cost is V_j = S_j.
* UniformConfig: S_j ~ Uniform(0, 1) and V_j = 1.
* DiscreteConfig: S_j takes the values support[j] with probabilities
  probs[j], and V_j = 1.

Random numbers come from a Philox counter-based generator keyed by
(seed, batch_index), so batch b produces the same rows no matter which thread
runs it or in which order the batches run.
"""

from concurrent.futures import ThreadPoolExecutor
import logging
import math
from typing import Any
from typing import Callable
from typing import Dict
from typing import List
from typing import Mapping
from typing import NamedTuple
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

import numpy as np

from .algorithms import check_algorithms
from .algorithms import run_algorithm
from .calibrate import ALGORITHM_BASE
from .calibrate import ALGORITHM_MULTIRISK
from .calibrate import ThresholdSet
from .calibrate import multirisk
from .common import Interval
from .common import ValidationError
from .common import read_json
from .common import thread_count
from .common import to_floats
from .common import to_intervals
from .config_types import ScenarioDict
from .dataset import BudgetSpec
from .dataset import CalibrationSet
from .dataset import CostBounds
from .ltt import LttConfig

KIND_MIXTURE = 'mixture'
KIND_UNIFORM = 'uniform'
KIND_DISCRETE = 'discrete'

# Absolute tolerance of the bisection in population_minimizer_oracle().
BISECTION_TOLERANCE = 1e-10

# Default number of trials per n in consistency_check_discrete().
CONSISTENCY_TRIALS = 500

DEFAULT_ALGORITHMS = (ALGORITHM_MULTIRISK, ALGORITHM_BASE)


class MixtureConfig(NamedTuple):
    m: int
    v_max: Tuple[float, ...]
    p: Tuple[float, ...]
    n_cal: int
    budgets: Tuple[float, ...]
    seed: int
    domains: Tuple[Interval, ...] = ()

    def validate(self) -> None:
        _check_common(self.m, self.n_cal, self.budgets)
        if len(self.v_max) != self.m or len(self.p) != self.m:
            raise ValidationError(
                f"'v_max' and 'p' need {self.m} entries each")
        for j in range(self.m):
            if not 0 < self.p[j] < 1:
                raise ValidationError(
                    f"'p[{j}]' must be in (0, 1), got {self.p[j]}")
            if not self.v_max[j] > 1:
                raise ValidationError(
                    f"'v_max[{j}]' must be > 1, got {self.v_max[j]}")
        _check_domains(self.domains, self.m)


class UniformConfig(NamedTuple):
    m: int
    n_cal: int
    budgets: Tuple[float, ...]
    seed: int
    domains: Tuple[Interval, ...] = ()

    def validate(self) -> None:
        _check_common(self.m, self.n_cal, self.budgets)
        _check_domains(self.domains, self.m)


class DiscreteConfig(NamedTuple):
    m: int
    support: Tuple[Tuple[float, ...], ...]
    probs: Tuple[Tuple[float, ...], ...]
    n_cal: int
    budgets: Tuple[float, ...]
    seed: int
    domains: Tuple[Interval, ...] = ()

    def validate(self) -> None:
        _check_common(self.m, self.n_cal, self.budgets)
        if len(self.support) != self.m or len(self.probs) != self.m:
            raise ValidationError(
                f"'support' and 'probs' need {self.m} entries each")
        for j in range(self.m):
            values = self.support[j]
            weights = self.probs[j]
            if len(values) == 0 or len(values) != len(weights):
                raise ValidationError(
                    f"'support[{j}]' and 'probs[{j}]' must be non-empty and "
                    "of equal length")
            if any(b <= a for a, b in zip(values, values[1:])):
                raise ValidationError(
                    f"'support[{j}]' must be strictly increasing")
            if any(w <= 0 for w in weights):
                raise ValidationError(f"'probs[{j}]' must be positive")
            if not math.isclose(sum(weights), 1.0, abs_tol=1e-12):
                raise ValidationError(f"'probs[{j}]' must sum to 1")
        _check_domains(self.domains, self.m)


ScenarioConfig = Union[MixtureConfig, UniformConfig, DiscreteConfig]
Thresholds = Union[ThresholdSet, Sequence[float]]


def _check_common(m: int, n_cal: int, budgets: Sequence[float]) -> None:
    if m < 1:
        raise ValidationError(f"'m' must be >= 1, got {m}")
    if n_cal < 1:
        raise ValidationError(f"'n_cal' must be >= 1, got {n_cal}")
    if len(budgets) != m:
        raise ValidationError(f"'budgets' needs {m} entries")
    for j, beta in enumerate(budgets):
        if not beta >= 0:
            raise ValidationError(f"'budgets[{j}]' must be >= 0, got {beta}")


def _check_domains(domains: Sequence[Interval], m: int) -> None:
    if domains and len(domains) != m:
        raise ValidationError(f"'domains' needs {m} entries")
    for j, domain in enumerate(domains):
        if domain.lo > domain.hi:
            raise ValidationError(f"'domains[{j}]' is empty")


# ---------------------------------------------------------------------------
# Scenario parameters derived from a config.
# ---------------------------------------------------------------------------

def scenario_domains(config: ScenarioConfig) -> Tuple[Interval, ...]:
    """The configured domains, or the defaults: [0, v_max[j]] for mixtures
    (so the spike is reachable), [0, 1] for uniform scores, and
    [min(0, smallest value), largest value] for discrete scores.
    """
    if config.domains:
        return config.domains
    if isinstance(config, MixtureConfig):
        return tuple(Interval(0.0, v) for v in config.v_max)
    if isinstance(config, UniformConfig):
        return tuple(Interval(0.0, 1.0) for _ in range(config.m))
    return tuple(
        Interval(min(0.0, values[0]), values[-1]) for values in config.support)


def scenario_spec(config: ScenarioConfig) -> BudgetSpec:
    return BudgetSpec(tuple(config.budgets), scenario_domains(config))


def scenario_bounds(config: ScenarioConfig) -> CostBounds:
    """True a.s. cost bounds: [0, v_max[j]] for mixtures, [0, 1] otherwise."""
    if isinstance(config, MixtureConfig):
        return CostBounds(tuple(0.0 for _ in config.v_max), config.v_max)
    return CostBounds(
        tuple(0.0 for _ in range(config.m)),
        tuple(1.0 for _ in range(config.m)),
    )


def _lambdas(thresholds: Thresholds, m: int) -> Tuple[float, ...]:
    values = (
        thresholds.thresholds if isinstance(thresholds, ThresholdSet)
        else tuple(float(x) for x in thresholds)
    )
    if len(values) != m:
        raise ValidationError(f'expected {m} thresholds, got {len(values)}')
    return values


# ---------------------------------------------------------------------------
# Generators.
# ---------------------------------------------------------------------------

def batch_rng(seed: int, *keys: int) -> np.random.Generator:
    """Independent Philox stream for each (seed, *keys)."""
    entropy = [int(seed)] + [int(k) for k in keys]
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(entropy)))


def gen_mixture(
    config: MixtureConfig,
    batch_index: int,
    n: Optional[int] = None,
) -> CalibrationSet:
    """n_cal rows (or 'n') of the mixture scenario for one batch."""
    rows = config.n_cal if n is None else n
    rng = batch_rng(config.seed, batch_index)
    uniform = rng.random((rows, config.m))
    spike = rng.random((rows, config.m)) < np.asarray(config.p)
    scores = np.where(spike, np.asarray(config.v_max), uniform)
    return CalibrationSet(scores, scores, np.ones(rows))


def gen_uniform_iid(
    m: int,
    n: int,
    seed: int,
    batch_index: int = 0,
) -> CalibrationSet:
    """n rows of i.i.d. Uniform(0, 1) scores with all costs equal to 1."""
    if m < 1 or n < 1:
        raise ValidationError(f'need m >= 1 and n >= 1, got m={m}, n={n}')
    rng = batch_rng(seed, batch_index)
    scores = rng.random((n, m))
    return CalibrationSet(scores, np.ones((n, m)), np.ones(n))


def gen_discrete(
    config: DiscreteConfig,
    batch_index: int,
    n: Optional[int] = None,
) -> CalibrationSet:
    rows = config.n_cal if n is None else n
    rng = batch_rng(config.seed, batch_index)
    columns = [
        rng.choice(np.asarray(values), size=rows, p=np.asarray(weights))
        for values, weights in zip(config.support, config.probs)
    ]
    scores = np.column_stack(columns)
    return CalibrationSet(scores, np.ones_like(scores), np.ones(rows))


def generate(
    config: ScenarioConfig,
    batch_index: int,
    n: Optional[int] = None,
) -> CalibrationSet:
    if isinstance(config, MixtureConfig):
        return gen_mixture(config, batch_index, n)
    if isinstance(config, UniformConfig):
        return gen_uniform_iid(
            config.m, config.n_cal if n is None else n, config.seed,
            batch_index)
    return gen_discrete(config, batch_index, n)


# ---------------------------------------------------------------------------
# Population risks. Because the scores are independent, the probability that
# a row reaches constraint j is a product of per-score pass probabilities.
# ---------------------------------------------------------------------------

def _clip01(x: float) -> float:
    return min(max(x, 0.0), 1.0)


def _mixture_pass(config: MixtureConfig, j: int, lam: float) -> float:
    """P(S_j <= lam) for the 0-based constraint j."""
    p = config.p[j]
    return (1 - p) * _clip01(lam) + p * (1.0 if lam >= config.v_max[j] else 0)


def _mixture_exceed_cost(config: MixtureConfig, j: int, lam: float) -> float:
    """E[V_j I(S_j > lam)] for the 0-based constraint j."""
    p = config.p[j]
    v = config.v_max[j]
    spike = p * v if lam < v else 0.0
    return spike + (1 - p) * (1 - _clip01(lam) ** 2) / 2


def _discrete_pass(config: DiscreteConfig, j: int, lam: float) -> float:
    return float(sum(
        w for s, w in zip(config.support[j], config.probs[j]) if s <= lam))


def _pass_probability(config: ScenarioConfig, j: int, lam: float) -> float:
    if isinstance(config, MixtureConfig):
        return _mixture_pass(config, j, lam)
    if isinstance(config, UniformConfig):
        return _clip01(lam)
    return _discrete_pass(config, j, lam)


def _exceed_cost(config: ScenarioConfig, j: int, lam: float) -> float:
    if isinstance(config, MixtureConfig):
        return _mixture_exceed_cost(config, j, lam)
    return 1.0 - _pass_probability(config, j, lam)


def _population_risks(
    config: ScenarioConfig,
    lambdas: Sequence[float],
) -> List[float]:
    risks: List[float] = []
    reach = 1.0
    for j, lam in enumerate(lambdas):
        risks.append(reach * _exceed_cost(config, j, lam))
        reach *= _pass_probability(config, j, lam)
    return risks


def population_risk_mixture(
    thresholds: Thresholds,
    config: MixtureConfig,
) -> List[float]:
    """E L_j = prod_{l<j} q_l(lambda_l) e_j(lambda_j) with

        q_j(x) = (1-p_j) clip(x) + p_j I(x >= v_max[j])
        e_j(x) = p_j v_max[j] I(x < v_max[j]) + (1-p_j)(1 - clip(x)^2)/2

    where clip(x) = min(max(x, 0), 1).
    """
    return _population_risks(config, _lambdas(thresholds, config.m))


def population_risk_uniform(
    thresholds: Thresholds,
    config: UniformConfig,
) -> List[float]:
    """E L_j = prod_{l<j} clip(lambda_l) (1 - clip(lambda_j))."""
    return _population_risks(config, _lambdas(thresholds, config.m))


def population_risk_discrete(
    thresholds: Thresholds,
    config: DiscreteConfig,
) -> List[float]:
    return _population_risks(config, _lambdas(thresholds, config.m))


def population_risks(
    thresholds: Thresholds,
    config: ScenarioConfig,
) -> List[float]:
    return _population_risks(config, _lambdas(thresholds, config.m))


def population_objective(
    thresholds: Thresholds,
    config: ScenarioConfig,
) -> float:
    """E L_{m+1} = P(S_l <= lambda_l for all l), since V_{m+1} = 1."""
    lambdas = _lambdas(thresholds, config.m)
    result = 1.0
    for j, lam in enumerate(lambdas):
        result *= _pass_probability(config, j, lam)
    return result


# ---------------------------------------------------------------------------
# Population minimizer.
# ---------------------------------------------------------------------------

def _bisect(
    risk: Callable[[float], float],
    beta: float,
    domain: Interval,
) -> float:
    """inf{x in domain : risk(x) <= beta} for a non-increasing risk, to
    within BISECTION_TOLERANCE. Returns the upper end of the final bracket,
    which satisfies the budget.
    """
    if risk(domain.lo) <= beta:
        return domain.lo
    if risk(domain.hi) > beta:
        return domain.hi
    lo, hi = domain.lo, domain.hi
    while hi - lo > BISECTION_TOLERANCE:
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            break
        if risk(mid) <= beta:
            hi = mid
        else:
            lo = mid
    return hi


def _discrete_inverse(
    config: DiscreteConfig,
    j: int,
    reach: float,
    beta: float,
    domain: Interval,
) -> float:
    """Exact inverse of a discrete population risk, which is a step function
    with jumps at the support points.
    """
    candidates = sorted({domain.lo, domain.hi} | {
        s for s in config.support[j] if domain.lo <= s <= domain.hi})
    for x in candidates:
        if reach * _exceed_cost(config, j, x) <= beta:
            return x
    return domain.hi


def check_nondegenerate(
    config: DiscreteConfig,
    budgets: Sequence[float],
    lambdas: Sequence[float],
) -> None:
    """Raise ValidationError if some beta_j is a value taken by the
    population risk of constraint j given the population prefix thresholds.
    At such levels the empirical thresholds need not converge.
    """
    reach = 1.0
    for j in range(config.m):
        levels = [reach * 1.0] + [
            reach * _exceed_cost(config, j, s) for s in config.support[j]]
        for level in levels:
            if math.isclose(level, budgets[j], rel_tol=0, abs_tol=1e-12):
                raise ValidationError(
                    f'budget of constraint {j + 1} ({budgets[j]}) is a value '
                    f'of its population risk ({level}); the non-degenerate '
                    'risk levels condition needs a budget outside the risk '
                    'range')
        reach *= _pass_probability(config, j, lambdas[j])


def population_minimizer_oracle(
    config: ScenarioConfig,
    budgets: Optional[Sequence[float]] = None,
) -> Tuple[float, ...]:
    """lambda*_j = inf{lambda in Lambda_j : E L_j(lambda*_{1:(j-1)}, lambda)
    <= beta_j}, computed constraint by constraint. Bisection is used for the
    continuous scenarios, and exact enumeration for discrete scores.
    """
    config.validate()
    betas = tuple(config.budgets if budgets is None else budgets)
    if len(betas) != config.m:
        raise ValidationError(f'expected {config.m} budgets, got {len(betas)}')
    domains = scenario_domains(config)

    lambdas: List[float] = []
    reach = 1.0
    for j in range(config.m):
        beta = betas[j]
        if isinstance(config, DiscreteConfig):
            lam = _discrete_inverse(config, j, reach, beta, domains[j])
        else:
            def risk(x: float, j: int = j, reach: float = reach) -> float:
                return reach * _exceed_cost(config, j, x)
            lam = _bisect(risk, beta, domains[j])
        lambdas.append(lam)
        reach *= _pass_probability(config, j, lam)
    return tuple(lambdas)


# ---------------------------------------------------------------------------
# Monte-Carlo harness.
# ---------------------------------------------------------------------------

class MonteCarloReport(NamedTuple):
    """Mean and standard error over batches of the population risks at the
    thresholds selected by one algorithm.

    * infeasible: fraction of batches in which constraint j was flagged
    * objective_gap: objective_mean minus the objective of the population
      minimizer
    * degenerate: True for a single batch, where the standard errors are 0
    """
    algorithm: str
    n_batches: int
    means: Tuple[float, ...]
    ses: Tuple[float, ...]
    infeasible: Tuple[float, ...]
    objective_mean: float
    objective_se: float
    objective_gap: float
    degenerate: bool

    def to_json(self) -> Dict[str, Any]:
        return {
            'algorithm': self.algorithm,
            'n_batches': self.n_batches,
            'constraints': [
                {
                    'j': j,
                    'mean': self.means[j - 1],
                    'se': self.ses[j - 1],
                    'infeasible_fraction': self.infeasible[j - 1],
                }
                for j in range(1, len(self.means) + 1)
            ],
            'objective': {
                'mean': self.objective_mean,
                'se': self.objective_se,
                'gap': self.objective_gap,
            },
            'degenerate': self.degenerate,
        }


def _mean_se(values: Any) -> Tuple[Any, Any]:
    """Column means and standard errors (sample std / sqrt(n_batches))."""
    n = values.shape[0]
    means = values.mean(axis=0)
    if n < 2:
        return means, np.zeros_like(means)
    return means, values.std(axis=0, ddof=1) / math.sqrt(n)


def monte_carlo_run(
    config: ScenarioConfig,
    algorithms: Sequence[str],
    n_batches: int,
    ltt_config: Optional[LttConfig] = None,
    debug: bool = False,
) -> List[MonteCarloReport]:
    """For each batch, generate a calibration set, run every algorithm on it
    and evaluate the population risks and objective at its thresholds.
    Returns one report per algorithm, in the order given.

    Batches run on a thread pool. Results are collected in batch order before
    averaging, so the report does not depend on the number of threads.
    """
    config.validate()
    names = list(algorithms)
    check_algorithms(names, config.m)
    if n_batches < 1:
        raise ValidationError(f'n_batches must be >= 1, got {n_batches}')
    spec = scenario_spec(config)
    bounds = scenario_bounds(config)
    m = config.m

    def one_batch(batch_index: int) -> Any:
        calib = generate(config, batch_index)
        # Per algorithm: m constraint risks, the objective, m flags.
        row = np.empty((len(names), 2 * m + 1))
        for a, name in enumerate(names):
            result = run_algorithm(
                name, calib, spec, bounds, ltt_config, warn=False)
            row[a, :m] = population_risks(result, config)
            row[a, m] = population_objective(result, config)
            row[a, m + 1:] = result.infeasible
        return row

    workers = min(thread_count(), n_batches)
    if debug:
        logging.info(
            'monte_carlo_run(): %s; algorithms=%s; n_batches=%d; threads=%d',
            type(config).__name__, names, n_batches, workers)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        rows = list(executor.map(one_batch, range(n_batches)))
    results = np.stack(rows)

    oracle_objective = population_objective(
        population_minimizer_oracle(config), config)
    reports: List[MonteCarloReport] = []
    for a, name in enumerate(names):
        means, ses = _mean_se(results[:, a, :m + 1])
        flags = results[:, a, m + 1:].mean(axis=0)
        report = MonteCarloReport(
            algorithm=name,
            n_batches=n_batches,
            means=tuple(float(x) for x in means[:m]),
            ses=tuple(float(x) for x in ses[:m]),
            infeasible=tuple(float(x) for x in flags),
            objective_mean=float(means[m]),
            objective_se=float(ses[m]),
            objective_gap=float(means[m]) - oracle_objective,
            degenerate=n_batches < 2,
        )
        for j, fraction in enumerate(report.infeasible, start=1):
            if fraction > 0:
                logging.warning(
                    '%s: constraint %d infeasible in %.1f%% of batches',
                    name, j, 100 * fraction)
        reports.append(report)
    return reports


def monte_carlo_uniform(
    m: int,
    n_cal: int,
    budgets: Sequence[float],
    seed: int,
    n_batches: int,
    algorithms: Sequence[str] = DEFAULT_ALGORITHMS,
    debug: bool = False,
) -> List[MonteCarloReport]:
    """monte_carlo_run() on i.i.d. Uniform(0, 1) scores with unit costs."""
    config = UniformConfig(
        m=m, n_cal=n_cal, budgets=tuple(budgets), seed=seed)
    return monte_carlo_run(config, algorithms, n_batches, debug=debug)


class ConsistencyRow(NamedTuple):
    n: int
    trials: int
    fraction: float  # trials where the thresholds equal lambda* exactly


def consistency_check_discrete(
    n_list: Sequence[int],
    config: DiscreteConfig,
    n_trials: int = CONSISTENCY_TRIALS,
    debug: bool = False,
) -> List[ConsistencyRow]:
    """For each n, the fraction of trials in which multirisk() selects
    exactly the population minimizer. With discrete scores and budgets
    outside the risk range, this fraction tends to 1 as n grows.
    """
    config.validate()
    if n_trials < 1:
        raise ValidationError(f'n_trials must be >= 1, got {n_trials}')
    target = population_minimizer_oracle(config)
    check_nondegenerate(config, config.budgets, target)
    spec = scenario_spec(config)
    bounds = scenario_bounds(config)

    table: List[ConsistencyRow] = []
    for n in n_list:
        if n < 1:
            raise ValidationError(f'n must be >= 1, got {n}')

        def one_trial(trial: int, n: int = n) -> bool:
            rng = batch_rng(config.seed, n, trial)
            columns = [
                rng.choice(np.asarray(values), size=n, p=np.asarray(weights))
                for values, weights in zip(config.support, config.probs)
            ]
            scores = np.column_stack(columns)
            calib = CalibrationSet(scores, np.ones_like(scores), np.ones(n))
            result = multirisk(calib, spec, bounds, warn=False)
            return result.thresholds == target

        with ThreadPoolExecutor(
                max_workers=min(thread_count(), n_trials)) as executor:
            hits = list(executor.map(one_trial, range(n_trials)))
        row = ConsistencyRow(n, n_trials, sum(hits) / n_trials)
        if debug:
            logging.info('consistency_check_discrete(): %s', row)
        table.append(row)
    return table


# ---------------------------------------------------------------------------
# Scenario files.
# ---------------------------------------------------------------------------

def _get_int(
    doc: Mapping[str, object],
    key: str,
    default: Optional[int] = None,
) -> int:
    value = doc.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"'{key}' must be an integer")
    return value


def scenario_from_json(doc: ScenarioDict) -> ScenarioConfig:
    """Build and validate a scenario config from its JSON document."""
    if not isinstance(doc, dict):
        raise ValidationError('scenario config must be a JSON object')
    fields: Mapping[str, object] = doc
    kind = doc.get('kind', KIND_MIXTURE)
    m = _get_int(fields, 'm')
    n_cal = _get_int(fields, 'n_cal')
    seed = _get_int(fields, 'seed', 0)
    if 'budgets' not in doc:
        raise ValidationError("'budgets' is required")
    budgets = tuple(to_floats(doc['budgets'], 'budgets'))
    domains = tuple(to_intervals(doc.get('domains', []), 'domains'))

    config: ScenarioConfig
    if kind == KIND_MIXTURE:
        for key in ('v_max', 'p'):
            if key not in doc:
                raise ValidationError(f"'{key}' is required for a mixture")
        config = MixtureConfig(
            m=m,
            v_max=tuple(to_floats(doc['v_max'], 'v_max')),
            p=tuple(to_floats(doc['p'], 'p')),
            n_cal=n_cal,
            budgets=budgets,
            seed=seed,
            domains=domains,
        )
    elif kind == KIND_UNIFORM:
        config = UniformConfig(
            m=m, n_cal=n_cal, budgets=budgets, seed=seed, domains=domains)
    elif kind == KIND_DISCRETE:
        for key in ('support', 'probs'):
            if not isinstance(fields.get(key), list):
                raise ValidationError(
                    f"'{key}' must be a list of lists for discrete scores")
        config = DiscreteConfig(
            m=m,
            support=tuple(
                tuple(to_floats(v, f'support[{j}]'))
                for j, v in enumerate(doc['support'])),
            probs=tuple(
                tuple(to_floats(v, f'probs[{j}]'))
                for j, v in enumerate(doc['probs'])),
            n_cal=n_cal,
            budgets=budgets,
            seed=seed,
            domains=domains,
        )
    else:
        raise ValidationError(
            f"'kind' must be one of {KIND_MIXTURE}, {KIND_UNIFORM}, "
            f"{KIND_DISCRETE}; got '{kind}'")
    config.validate()
    return config


def load_scenario(path: str) -> ScenarioConfig:
    doc = read_json(path)
    try:
        return scenario_from_json(doc)
    except ValidationError as e:
        raise ValidationError(f'{path}: {e}')


def replace_seed(config: ScenarioConfig, seed: int) -> ScenarioConfig:
    return config._replace(seed=seed)

