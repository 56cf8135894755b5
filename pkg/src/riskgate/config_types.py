# Copyright 2026 riskgate contributors
#
# MIT License

"""
Shapes of the JSON documents read and written by the cli module. The loaders
in calibrate.py, simulate.py and cli.py are annotated with these types and
still check every field at runtime.
"""

from typing import Dict
from typing import List
from typing_extensions import TypedDict


# Optional a.s. bounds on the constraint costs.
class BoundsDict(TypedDict):
    v_min: List[float]
    v_max: List[float]


# Options of the Learn-Then-Test baseline.
class LttDict(TypedDict, total=False):
    delta: float  # confidence level in (0, 1)
    grid_size: int  # points per threshold dimension, >= 2
    deltas: List[float]  # sweep only: several LTT variants at once


# Configuration of the 'calibrate', 'evaluate' and 'sweep' subcommands.
class CalibrationConfig(TypedDict, total=False):
    budgets: List[float]  # beta_j, one per constraint
    domains: List[List[float]]  # [lambda_min, lambda_max] per constraint
    bounds: BoundsDict  # estimated from the calibration data if missing
    shift_costs: bool  # subtract calibration minima from all cost columns
    ltt: LttDict


# Configuration of the 'simulate' and 'oracle' subcommands.
class ScenarioDict(TypedDict, total=False):
    kind: str  # 'mixture', 'uniform' or 'discrete'
    m: int
    n_cal: int
    budgets: List[float]
    seed: int
    v_max: List[float]  # mixture: spike values
    p: List[float]  # mixture: spike probabilities
    support: List[List[float]]  # discrete: score values per constraint
    probs: List[List[float]]  # discrete: probabilities of 'support'
    domains: List[List[float]]


# Thresholds file written by 'calibrate' and read by 'evaluate'. The functional
# form is needed because 'lambda' is a Python keyword.
ThresholdsDict = TypedDict(
    'ThresholdsDict',
    {
        'algorithm': str,
        'n': int,  # calibration size
        'lambda': List[float],
        'aux': Dict[str, float],  # "j,2k" -> auxiliary threshold
        'infeasible': List[bool],
        'shifts': List[float],
    },
    total=False,
)
