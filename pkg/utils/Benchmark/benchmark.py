#!/usr/bin/env python3
#
# Copyright 2026 riskgate contributors
#
# MIT License

"""
Measures the time taken by each calibration algorithm on uniform random
calibration sets of increasing size. The output is one line per algorithm and
size, in the format of:

    LABEL m n repeats millis

where 'millis' is the average wall time of one calibration.

Usage:

$ ./benchmark.py [--m 2] [--sizes 100 1000 10000] [--repeats 5]
START
m: 2
BENCHMARKS
multirisk 2 100 5 0.412
base 2 100 5 0.207
...
END
"""

import logging
import sys
import time
from argparse import ArgumentParser
from typing import List

from riskgate.algorithms import ALGORITHMS
from riskgate.algorithms import check_algorithms
from riskgate.algorithms import run_algorithm
from riskgate.calibrate import ALGORITHM_CONFORMAL
from riskgate.calibrate import ALGORITHM_LTT
from riskgate.common import Interval
from riskgate.dataset import BudgetSpec
from riskgate.dataset import CostBounds
from riskgate.ltt import make_ltt_config
from riskgate.simulate import gen_uniform_iid


class Benchmark:
    def __init__(
        self,
        m: int,
        sizes: List[int],
        repeats: int,
        algorithms: List[str],
        budget: float,
    ):
        self.m = m
        self.sizes = sizes
        self.repeats = repeats
        self.algorithms = algorithms
        self.spec = BudgetSpec(
            tuple(budget for _ in range(m)),
            tuple(Interval(0.0, 1.0) for _ in range(m)),
        )
        self.bounds = CostBounds((0.0,) * m, (1.0,) * m)
        self.ltt_config = make_ltt_config(0.1, m, grid_size=11)

    def run(self) -> None:
        print("START")
        print(f"m: {self.m}")
        print("BENCHMARKS")
        for algorithm in self.algorithms:
            print(f"Benchmarking {algorithm}", file=sys.stderr)
            for n in self.sizes:
                millis = self.time_algorithm(algorithm, n)
                print(f"{algorithm} {self.m} {n} {self.repeats} {millis:.3f}")
        print("END")

    def time_algorithm(self, algorithm: str, n: int) -> float:
        """Return the average milliseconds of one calibration."""
        elapsed = 0.0
        for repeat in range(self.repeats):
            calib = gen_uniform_iid(self.m, n, seed=repeat)
            start = time.time()
            run_algorithm(
                algorithm, calib, self.spec, self.bounds, self.ltt_config,
                warn=False)
            elapsed += time.time() - start
        return elapsed * 1000 / self.repeats


def main() -> None:
    parser = ArgumentParser(description='Benchmark calibration algorithms.')

    parser.add_argument(
        '--m',
        help='Number of constraints (default: 2)',
        type=int,
        default=2)
    parser.add_argument(
        '--sizes',
        help='Calibration set sizes (default: 100 1000 10000)',
        type=int,
        nargs='+',
        default=[100, 1000, 10000])
    parser.add_argument(
        '--repeats',
        help='Calibration sets per size (default: 5)',
        type=int,
        default=5)
    parser.add_argument(
        '--budget',
        help='Risk budget of every constraint (default: 0.1)',
        type=float,
        default=0.1)
    parser.add_argument(
        '--algos',
        help='Algorithms to time (default: all that apply to m)',
        nargs='+',
        choices=ALGORITHMS)

    args = parser.parse_args()

    # Configure logging
    logging.basicConfig(level=logging.INFO)

    algorithms = args.algos or [
        a for a in ALGORITHMS
        if a != ALGORITHM_CONFORMAL or args.m == 1
    ]
    check_algorithms(algorithms, args.m)
    if ALGORITHM_LTT in algorithms and args.m > 3:
        logging.warning('LTT scans 11^%d grid points per run', args.m)

    benchmark = Benchmark(
        m=args.m,
        sizes=args.sizes,
        repeats=args.repeats,
        algorithms=algorithms,
        budget=args.budget,
    )
    benchmark.run()


if __name__ == '__main__':
    main()
