# Copyright 2026 riskgate contributors
#
# MIT License

"""
Dispatch from an algorithm name to the routine which computes its thresholds,
so that the simulate, sweep and cli modules can run any subset of them by
name.
"""

from typing import List
from typing import Optional

from .calibrate import ALGORITHM_BASE
from .calibrate import ALGORITHM_CONFORMAL
from .calibrate import ALGORITHM_LTT
from .calibrate import ALGORITHM_MULTIRISK
from .calibrate import ThresholdSet
from .calibrate import conformal_risk_control
from .calibrate import multirisk
from .calibrate import multirisk_base
from .common import ValidationError
from .dataset import BudgetSpec
from .dataset import CalibrationSet
from .dataset import CostBounds
from .ltt import LttConfig
from .ltt import ltt_select

ALGORITHMS: List[str] = [
    ALGORITHM_MULTIRISK,
    ALGORITHM_BASE,
    ALGORITHM_CONFORMAL,
    ALGORITHM_LTT,
]


def check_algorithms(names: List[str], m: int) -> None:
    for name in names:
        if name not in ALGORITHMS:
            raise ValidationError(
                f"unknown algorithm '{name}'; expected one of {ALGORITHMS}")
        if name == ALGORITHM_CONFORMAL and m != 1:
            raise ValidationError(
                f"algorithm '{name}' needs m = 1, got m = {m}")


def run_algorithm(
    name: str,
    calib: CalibrationSet,
    spec: BudgetSpec,
    bounds: CostBounds,
    ltt_config: Optional[LttConfig] = None,
    debug: bool = False,
    warn: bool = True,
) -> ThresholdSet:
    """Compute the thresholds of algorithm 'name'. LTT needs 'ltt_config',
    whose budgets_tilde (if set) replace the budgets of 'spec'.
    """
    check_algorithms([name], calib.m)
    if name == ALGORITHM_MULTIRISK:
        return multirisk(calib, spec, bounds, debug=debug, warn=warn)
    if name == ALGORITHM_BASE:
        return multirisk_base(calib, spec, debug=debug, warn=warn)
    if name == ALGORITHM_CONFORMAL:
        bounds.check_costs(calib)
        return conformal_risk_control(
            calib, spec.budgets[0], bounds.v_max[0], spec.domains[0])
    if ltt_config is None:
        raise ValidationError("algorithm 'ltt' needs an LTT configuration")
    return ltt_select(calib, spec, ltt_config, debug=debug)
