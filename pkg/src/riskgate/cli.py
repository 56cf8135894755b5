# Copyright 2026 riskgate contributors
#
# MIT License

"""
Command line interface.

    riskgate calibrate --algo multirisk --data cal.csv --config c.json \\
        --out thresholds.json
    riskgate evaluate --thresholds thresholds.json --data test.csv \\
        --config c.json [--out report.json]
    riskgate sweep --calib cal.csv --test test.csv --config c.json \\
        --j 1 --out_csv sweep.csv [--out_json sweep.json] \\
        [--surface 1 2 --out_surface surface.csv]
    riskgate simulate --config configs/spike_mixture.json --batches 5000 \\
        --seed 7 [--out report.json]
    riskgate simulate --config configs/uniform3.json --algos multirisk ltt \\
        --ltt_delta 0.05 [--ltt_grid_size 31]
    riskgate oracle --config configs/uniform3.json

Exit status is 0 on success, 1 for invalid arguments or inputs, and 2 for I/O
errors.
"""

import json
import logging
import sys
from argparse import ArgumentParser
from argparse import Namespace
from typing import Any
from typing import Dict
from typing import List
from typing import NamedTuple
from typing import NoReturn
from typing import Optional
from typing import Sequence
from typing import Tuple

from .algorithms import ALGORITHMS
from .algorithms import run_algorithm
from .calibrate import ALGORITHM_LTT
from .calibrate import load_thresholds
from .calibrate import save_thresholds
from .common import RiskGateError
from .common import ValidationError
from .common import read_json
from .config_types import CalibrationConfig
from .dataset import BudgetSpec
from .dataset import CalibrationSet
from .dataset import CostBounds
from .dataset import CostShifts
from .dataset import apply_shifts
from .dataset import compute_cost_shifts
from .dataset import estimate_cost_bounds
from .dataset import load_dataset
from .dataset import make_budget_spec
from .dataset import make_cost_bounds
from .evaluate import evaluate_test_risks
from .ltt import DEFAULT_GRID_SIZE
from .ltt import LttConfig
from .ltt import convert_budgets
from .ltt import make_ltt_config
from .simulate import DEFAULT_ALGORITHMS
from .simulate import load_scenario
from .simulate import monte_carlo_run
from .simulate import population_minimizer_oracle
from .simulate import population_objective
from .simulate import population_risks
from .simulate import replace_seed
from .simulate import scenario_bounds
from .sweep import SweepConfig
from .sweep import budget_surface
from .sweep import budget_sweep
from .sweep import write_surface_csv
from .version import __version__

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2

DEFAULT_LTT_DELTA = 0.05


class _Parser(ArgumentParser):
    """ArgumentParser which exits with status 1 on usage errors."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f'{self.prog}: error: {message}\n')


class CalibrationOptions(NamedTuple):
    spec: BudgetSpec
    bounds: Optional[CostBounds]
    shift_costs: bool
    ltt_delta: float
    ltt_grid_size: int
    ltt_deltas: Tuple[float, ...]


def load_calibration_config(path: str) -> CalibrationOptions:
    """Read and validate the JSON document shaped like
    config_types.CalibrationConfig.
    """
    doc = read_json(path)
    try:
        return _calibration_options(doc)
    except ValidationError as e:
        raise ValidationError(f'{path}: {e}')


def _calibration_options(doc: CalibrationConfig) -> CalibrationOptions:
    if not isinstance(doc, dict):
        raise ValidationError('config must be a JSON object')
    for key in ('budgets', 'domains'):
        if key not in doc:
            raise ValidationError(f"'{key}' is required")
    spec = make_budget_spec(doc['budgets'], doc['domains'])

    bounds: Optional[CostBounds] = None
    if 'bounds' in doc:
        raw = doc['bounds']
        if not isinstance(raw, dict) or 'v_max' not in raw:
            raise ValidationError("'bounds' must have 'v_min' and 'v_max'")
        v_max = raw['v_max']
        v_min = raw.get('v_min', [0.0] * len(v_max))
        bounds = make_cost_bounds(v_min, v_max)
        bounds.validate(spec.m)

    shift_costs = doc.get('shift_costs', False)
    if not isinstance(shift_costs, bool):
        raise ValidationError("'shift_costs' must be true or false")

    ltt = doc.get('ltt', {})
    if not isinstance(ltt, dict):
        raise ValidationError("'ltt' must be an object")
    delta = ltt.get('delta', DEFAULT_LTT_DELTA)
    grid_size = ltt.get('grid_size', DEFAULT_GRID_SIZE)
    deltas = ltt.get('deltas', [])
    if isinstance(delta, bool) or not isinstance(delta, (int, float)):
        raise ValidationError("'ltt.delta' must be a number")
    if isinstance(grid_size, bool) or not isinstance(grid_size, int):
        raise ValidationError("'ltt.grid_size' must be an integer")
    if not isinstance(deltas, list) or not all(
            isinstance(d, (int, float)) and not isinstance(d, bool)
            for d in deltas):
        raise ValidationError("'ltt.deltas' must be a list of numbers")
    return CalibrationOptions(
        spec=spec,
        bounds=bounds,
        shift_costs=shift_costs,
        ltt_delta=float(delta),
        ltt_grid_size=grid_size,
        ltt_deltas=tuple(float(d) for d in deltas),
    )


def _prepare(
    data: CalibrationSet,
    options: CalibrationOptions,
) -> Tuple[CalibrationSet, List[float], CostBounds]:
    """Apply the optional cost shifts and resolve the cost bounds."""
    shifts: List[float] = []
    if options.shift_costs:
        computed = compute_cost_shifts(data)
        data = apply_shifts(data, computed)
        shifts = list(computed.shifts)
        logging.info('Shifted costs by %s', shifts)
    bounds = options.bounds
    if bounds is None:
        bounds = estimate_cost_bounds(data)
        logging.info('Estimated cost bounds v_max=%s', list(bounds.v_max))
    return data, shifts, bounds


def _write_json(doc: Dict[str, Any], path: Optional[str]) -> None:
    if path is None:
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write('\n')
        return
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(doc, f, indent=2)
        f.write('\n')


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------

def _ltt_config(
    options: CalibrationOptions,
    bounds: CostBounds,
) -> LttConfig:
    tilde = convert_budgets(
        options.spec.budgets, options.ltt_delta, bounds.v_max)
    return make_ltt_config(
        options.ltt_delta, options.spec.m, options.ltt_grid_size, tilde)


def run_calibrate(args: Namespace) -> None:
    options = load_calibration_config(args.config)
    raw = load_dataset(
        args.data, args.format, allow_negative_costs=options.shift_costs)
    data, shifts, bounds = _prepare(raw, options)
    ltt_config = (
        _ltt_config(options, bounds) if args.algo == ALGORITHM_LTT else None)
    thresholds = run_algorithm(
        args.algo, data, options.spec, bounds, ltt_config, debug=args.debug)
    save_thresholds(thresholds, args.out, shifts)
    logging.info('Wrote %s thresholds %s to %s',
                 thresholds.algorithm, list(thresholds.thresholds), args.out)


def run_evaluate(args: Namespace) -> None:
    options = load_calibration_config(args.config)
    thresholds, shifts = load_thresholds(args.thresholds)
    test = load_dataset(args.data, args.format, allow_negative_costs=True)
    if shifts:
        test = apply_shifts(test, CostShifts(tuple(shifts)))
    elif test.has_negative_costs:
        raise ValidationError(
            f'{args.data}: negative costs, but the thresholds file records '
            'no cost shifts')
    bounds = options.bounds or estimate_cost_bounds(test)
    report = evaluate_test_risks(thresholds, test, options.spec, bounds)
    _write_json(report.to_json(), args.out)


def run_sweep(args: Namespace) -> None:
    options = load_calibration_config(args.config)
    calib = load_dataset(
        args.calib, args.format, allow_negative_costs=options.shift_costs)
    test = load_dataset(
        args.test, args.format, allow_negative_costs=options.shift_costs)
    pooled = calib.concat(test)
    if options.shift_costs:
        pooled = apply_shifts(pooled, compute_cost_shifts(pooled))

    algorithms = tuple(args.algos)
    deltas = options.ltt_deltas or (options.ltt_delta,)
    config = SweepConfig(
        j=args.j,
        n_cal=args.n_cal if args.n_cal is not None else calib.n,
        n_budgets=args.n_budgets,
        n_splits=args.n_splits,
        algorithms=algorithms,
        ltt_deltas=deltas if ALGORITHM_LTT in algorithms else (),
        ltt_grid_size=options.ltt_grid_size,
        seed=args.seed,
    )
    domains = options.spec.domains
    result = budget_sweep(pooled, domains, config, debug=args.debug)
    result.write_csv(args.out_csv)
    if args.out_json:
        result.write_json(args.out_json)

    if args.surface:
        if not args.out_surface:
            raise ValidationError('--surface needs --out_surface')
        pair = (args.surface[0], args.surface[1])
        cells = budget_surface(pooled, domains, pair, config, args.debug)
        write_surface_csv(cells, pair, args.out_surface)


def run_simulate(args: Namespace) -> None:
    config = load_scenario(args.config)
    if args.seed is not None:
        config = replace_seed(config, args.seed)
    ltt_config: Optional[LttConfig] = None
    if ALGORITHM_LTT in args.algos:
        tilde = convert_budgets(
            config.budgets, args.ltt_delta, scenario_bounds(config).v_max)
        ltt_config = make_ltt_config(
            args.ltt_delta, config.m, args.ltt_grid_size, tilde)
    reports = monte_carlo_run(
        config, args.algos, args.batches, ltt_config, debug=args.debug)
    doc: Dict[str, Any] = {
        'config': config._asdict(),
        'reports': [report.to_json() for report in reports],
    }
    _write_json(doc, args.out)


def run_oracle(args: Namespace) -> None:
    config = load_scenario(args.config)
    lambdas = population_minimizer_oracle(config)
    doc = {
        'lambda_star': list(lambdas),
        'risks': population_risks(lambdas, config),
        'objective': population_objective(lambdas, config),
    }
    _write_json(doc, args.out)


def _add_common(parser: ArgumentParser) -> None:
    parser.add_argument(
        '--debug', help='Log debugging details', action='store_true')


def make_parser() -> ArgumentParser:
    parser = _Parser(
        prog='riskgate',
        description='Calibrate prioritized risk-control thresholds.')
    parser.add_argument(
        '--version', action='version', version=f'%(prog)s {__version__}')
    subparsers = parser.add_subparsers(dest='command', required=True)

    p = subparsers.add_parser('calibrate', help='Compute thresholds')
    p.add_argument('--algo', choices=ALGORITHMS, required=True)
    p.add_argument('--data', help='Calibration data file', required=True)
    p.add_argument('--config', help='JSON config file', required=True)
    p.add_argument('--out', help='Thresholds JSON file', required=True)
    p.add_argument('--format', choices=['csv', 'json'])
    _add_common(p)
    p.set_defaults(func=run_calibrate)

    p = subparsers.add_parser('evaluate', help='Evaluate thresholds on data')
    p.add_argument('--thresholds', help='Thresholds file', required=True)
    p.add_argument('--data', help='Test data file', required=True)
    p.add_argument('--config', help='JSON config file', required=True)
    p.add_argument('--out', help='Report JSON file (default: stdout)')
    p.add_argument('--format', choices=['csv', 'json'])
    _add_common(p)
    p.set_defaults(func=run_evaluate)

    p = subparsers.add_parser('sweep', help='Sweep one risk budget')
    p.add_argument('--calib', help='Calibration data file', required=True)
    p.add_argument('--test', help='Test data file', required=True)
    p.add_argument('--config', help='JSON config file', required=True)
    p.add_argument('--j', help='Swept constraint (1-based)', type=int,
                   required=True)
    p.add_argument('--out_csv', help='Sweep CSV file', required=True)
    p.add_argument('--out_json', help='Sweep JSON file')
    p.add_argument('--n_budgets', type=int, default=101,
                   help='Number of budget values (default: 101)')
    p.add_argument('--n_splits', type=int, default=10,
                   help='Number of random re-splits (default: 10)')
    p.add_argument('--n_cal', type=int,
                   help='Calibration rows per split (default: rows of '
                   '--calib)')
    p.add_argument('--algos', nargs='+', choices=ALGORITHMS,
                   default=list(DEFAULT_ALGORITHMS) + [ALGORITHM_LTT])
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--surface', type=int, nargs=2, metavar='J',
                   help='Also write the multirisk objective over the '
                   'budgets of two constraints')
    p.add_argument('--out_surface', help='Surface CSV file')
    p.add_argument('--format', choices=['csv', 'json'])
    _add_common(p)
    p.set_defaults(func=run_sweep)

    p = subparsers.add_parser('simulate', help='Monte-Carlo experiment')
    p.add_argument('--config', help='Scenario JSON file', required=True)
    p.add_argument('--batches', type=int, default=5000,
                   help='Number of calibration sets (default: 5000)')
    p.add_argument('--seed', type=int, help='Override the config seed')
    p.add_argument('--algos', nargs='+', choices=ALGORITHMS,
                   default=list(DEFAULT_ALGORITHMS))
    p.add_argument('--ltt_delta', type=float, default=DEFAULT_LTT_DELTA,
                   help='LTT error level (default: %(default)s)')
    p.add_argument('--ltt_grid_size', type=int, default=DEFAULT_GRID_SIZE,
                   help='LTT grid points per threshold (default: '
                   '%(default)s)')
    p.add_argument('--out', help='Report JSON file (default: stdout)')
    _add_common(p)
    p.set_defaults(func=run_simulate)

    p = subparsers.add_parser('oracle', help='Population minimizer')
    p.add_argument('--config', help='Scenario JSON file', required=True)
    p.add_argument('--out', help='JSON file (default: stdout)')
    _add_common(p)
    p.set_defaults(func=run_oracle)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    # Configure logging
    logging.basicConfig(
        level=logging.DEBUG if args.debug else logging.INFO,
        format='%(levelname)s: %(message)s',
    )

    try:
        args.func(args)
    except RiskGateError as e:
        logging.error('%s', e)
        return EXIT_INVALID
    except OSError as e:
        logging.error('%s', e)
        return EXIT_IO
    return EXIT_OK
