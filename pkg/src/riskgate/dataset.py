# Copyright 2026 riskgate contributors
#
# MIT License

"""
Data model of the calibration evidence, file ingestion, and the cost shifting
used when raw costs (e.g. negated rewards) can be negative.

A CalibrationSet holds n observations of m scores S_1..S_m, the m constraint
costs V_1..V_m, and the objective cost V_{m+1} (called 'v_obj' in files). All
arrays are read-only after construction, so a CalibrationSet can be shared
between threads.

Constraint indices 'j' in the public API are 1-based, matching the file
headers (s1, v1, ...) and the behavior numbers 1..m+1.
"""

import csv
import json
import math
from typing import Any
from typing import Dict
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from .common import Interval
from .common import ParseError
from .common import ValidationError
from .common import format_float
from .common import read_json
from .common import to_floats
from .common import to_intervals

FORMAT_CSV = 'csv'
FORMAT_JSON = 'json'
OBJECTIVE_COLUMN = 'v_obj'

# (scores, costs, objective costs) as read from a file.
_Columns = Tuple[List[List[float]], List[List[float]], List[float]]


class CalibrationSet:
    """n rows of m scores, m constraint costs and one objective cost.

    Scores must be finite. Costs must be finite and, unless
    'allow_negative_costs' is set (raw data waiting for apply_shifts()),
    non-negative.
    """

    def __init__(
        self,
        scores: Any,
        costs: Any,
        objective_costs: Any,
        allow_negative_costs: bool = False,
    ):
        scores = np.array(scores, dtype=float)
        costs = np.array(costs, dtype=float)
        objective_costs = np.array(objective_costs, dtype=float)
        if scores.ndim != 2 or costs.ndim != 2 or objective_costs.ndim != 1:
            raise ValidationError(
                'scores and costs must be 2-D, objective_costs 1-D; got '
                f'{scores.ndim}, {costs.ndim}, {objective_costs.ndim}'
            )
        n, m = scores.shape
        if n < 1 or m < 1:
            raise ValidationError(f'need n >= 1 and m >= 1, got n={n}, m={m}')
        if costs.shape != (n, m) or objective_costs.shape != (n,):
            raise ValidationError(
                f'dimension mismatch: scores {scores.shape}, '
                f'costs {costs.shape}, objective_costs {objective_costs.shape}'
            )

        _check_finite(scores, 's', 'score')
        _check_finite(costs, 'v', 'cost')
        _check_finite(objective_costs[:, None], OBJECTIVE_COLUMN, 'cost')
        if not allow_negative_costs:
            _check_non_negative(costs, objective_costs)

        for array in (scores, costs, objective_costs):
            array.setflags(write=False)
        self.scores = scores
        self.costs = costs
        self.objective_costs = objective_costs

    @property
    def n(self) -> int:
        return int(self.scores.shape[0])

    @property
    def m(self) -> int:
        return int(self.scores.shape[1])

    @property
    def has_negative_costs(self) -> bool:
        return bool(
            (self.costs < 0).any() or (self.objective_costs < 0).any())

    def subset(self, rows: Any) -> 'CalibrationSet':
        """Return the CalibrationSet restricted to the given row indexes."""
        return CalibrationSet(
            self.scores[rows],
            self.costs[rows],
            self.objective_costs[rows],
            allow_negative_costs=True,
        )

    def concat(self, other: 'CalibrationSet') -> 'CalibrationSet':
        """Return the rows of self followed by the rows of other."""
        if other.m != self.m:
            raise ValidationError(
                f'cannot concatenate m={self.m} and m={other.m}')
        return CalibrationSet(
            np.vstack([self.scores, other.scores]),
            np.vstack([self.costs, other.costs]),
            np.concatenate([self.objective_costs, other.objective_costs]),
            allow_negative_costs=True,
        )

    def column_headers(self) -> List[str]:
        return (
            [f's{j}' for j in range(1, self.m + 1)]
            + [f'v{j}' for j in range(1, self.m + 1)]
            + [OBJECTIVE_COLUMN]
        )

    def __repr__(self) -> str:
        return f'CalibrationSet(n={self.n}, m={self.m})'


class CostBounds(NamedTuple):
    """Per-constraint a.s. bounds [v_min[j], v_max[j]] on the costs V_j."""
    v_min: Tuple[float, ...]
    v_max: Tuple[float, ...]

    def validate(self, m: int) -> None:
        if len(self.v_min) != m or len(self.v_max) != m:
            raise ValidationError(
                f'bounds need {m} entries, got v_min={len(self.v_min)}, '
                f'v_max={len(self.v_max)}'
            )
        for j, (lo, hi) in enumerate(zip(self.v_min, self.v_max), start=1):
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValidationError(f'bounds of constraint {j} not finite')
            if lo < 0:
                raise ValidationError(
                    f'v_min of constraint {j} is negative: {lo}')
            if lo > hi:
                raise ValidationError(
                    f'v_min > v_max for constraint {j}: {lo} > {hi}')

    def check_costs(self, data: CalibrationSet) -> None:
        """Raise ValidationError naming the first row and constraint whose
        cost lies outside [v_min, v_max].
        """
        self.validate(data.m)
        lo = np.array(self.v_min)
        hi = np.array(self.v_max)
        outside = (data.costs < lo) | (data.costs > hi)
        if outside.any():
            row, col = (int(x) for x in np.argwhere(outside)[0])
            raise ValidationError(
                f'row {row}: cost v{col + 1}={data.costs[row, col]!r} outside '
                f'declared bounds [{lo[col]!r}, {hi[col]!r}]'
            )


class BudgetSpec(NamedTuple):
    """Risk budgets beta_j and threshold search intervals Lambda_j."""
    budgets: Tuple[float, ...]
    domains: Tuple[Interval, ...]

    @property
    def m(self) -> int:
        return len(self.budgets)

    def validate(self, m: Optional[int] = None) -> None:
        if len(self.domains) != len(self.budgets):
            raise ValidationError(
                f'{len(self.budgets)} budgets but {len(self.domains)} domains')
        if m is not None and len(self.budgets) != m:
            raise ValidationError(
                f'data has m={m} constraints but {len(self.budgets)} budgets')
        for j, (beta, domain) in enumerate(
                zip(self.budgets, self.domains), start=1):
            if not math.isfinite(beta) or beta < 0:
                raise ValidationError(
                    f'budget of constraint {j} must be finite and >= 0, '
                    f'got {beta}')
            if not (math.isfinite(domain.lo) and math.isfinite(domain.hi)):
                raise ValidationError(f'domain of constraint {j} not finite')
            if domain.lo > domain.hi:
                raise ValidationError(
                    f'domain of constraint {j} is empty: '
                    f'[{domain.lo}, {domain.hi}]')

    def replace_budgets(self, budgets: Sequence[float]) -> 'BudgetSpec':
        return BudgetSpec(tuple(float(b) for b in budgets), self.domains)


class CostShifts(NamedTuple):
    """Per-column shifts c_j for the m constraint costs and the objective
    cost (last entry).
    """
    shifts: Tuple[float, ...]


def make_budget_spec(
    budgets: Sequence[float],
    domains: Sequence[Sequence[float]],
) -> BudgetSpec:
    """Build and validate a BudgetSpec from plain (JSON) lists."""
    spec = BudgetSpec(
        tuple(to_floats(budgets, 'budgets')),
        tuple(to_intervals(domains, 'domains')),
    )
    spec.validate()
    return spec


def make_cost_bounds(
    v_min: Sequence[float],
    v_max: Sequence[float],
) -> CostBounds:
    bounds = CostBounds(
        tuple(to_floats(v_min, 'bounds.v_min')),
        tuple(to_floats(v_max, 'bounds.v_max')),
    )
    bounds.validate(len(bounds.v_max))
    return bounds


# ---------------------------------------------------------------------------
# File ingestion.
# ---------------------------------------------------------------------------

def infer_format(path: str) -> str:
    """Guess the data format from the file extension."""
    return FORMAT_JSON if path.lower().endswith('.json') else FORMAT_CSV


def load_dataset(
    path: str,
    format: Optional[str] = None,
    allow_negative_costs: bool = False,
) -> CalibrationSet:
    """Read a CalibrationSet from a CSV or JSON file. The number of
    constraints m is inferred from the CSV header (or the JSON 'm' field).

    Negative costs are rejected unless 'allow_negative_costs' is set, in which
    case the caller is expected to call compute_cost_shifts() and
    apply_shifts() before calibrating.
    """
    fmt = format or infer_format(path)
    if fmt == FORMAT_CSV:
        with open(path, newline='', encoding='utf-8') as f:
            try:
                scores, costs, objective = _read_csv(f)
            except (UnicodeDecodeError, csv.Error) as e:
                raise ParseError(f'{path}: unreadable CSV: {e}')
    elif fmt == FORMAT_JSON:
        scores, costs, objective = _read_json_doc(read_json(path))
    else:
        raise ValidationError(f"unknown data format '{fmt}'")

    try:
        data = CalibrationSet(
            scores, costs, objective, allow_negative_costs=True)
    except ValidationError as e:
        raise ValidationError(f"{path}: {e}")
    if data.has_negative_costs and not allow_negative_costs:
        try:
            _check_non_negative(data.costs, data.objective_costs)
        except ValidationError as e:
            raise ValidationError(
                f"{path}: {e}; shift the costs with compute_cost_shifts() "
                "and apply_shifts() (config \"shift_costs\": true)")
    return data


def save_dataset(
    data: CalibrationSet,
    path: str,
    format: Optional[str] = None,
) -> None:
    """Write the CalibrationSet using 17 significant digits per value."""
    fmt = format or infer_format(path)
    if fmt == FORMAT_CSV:
        with open(path, 'w', newline='', encoding='utf-8') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(data.column_headers())
            for i in range(data.n):
                row = (
                    list(data.scores[i])
                    + list(data.costs[i])
                    + [data.objective_costs[i]]
                )
                writer.writerow([format_float(float(x)) for x in row])
    elif fmt == FORMAT_JSON:
        rows = [
            {
                's': [float(x) for x in data.scores[i]],
                'v': [float(x) for x in data.costs[i]],
                'v_obj': float(data.objective_costs[i]),
            }
            for i in range(data.n)
        ]
        with open(path, 'w', encoding='utf-8') as f:
            json.dump({'m': data.m, 'rows': rows}, f)
            f.write('\n')
    else:
        raise ValidationError(f"unknown data format '{fmt}'")


def _read_csv(f: Any) -> _Columns:
    reader = csv.reader(f)
    header = next(reader, None)
    if header is None or not any(h.strip() for h in header):
        raise ParseError('empty file: missing header row')
    header = [h.strip() for h in header]

    score_cols = sorted(
        (h for h in header if h.startswith('s') and h[1:].isdigit()),
        key=lambda h: int(h[1:]),
    )
    m = len(score_cols)
    expected = (
        [f's{j}' for j in range(1, m + 1)]
        + [f'v{j}' for j in range(1, m + 1)]
        + [OBJECTIVE_COLUMN]
    )
    if m == 0 or sorted(header) != sorted(expected):
        raise ParseError(
            f"header {header} does not name columns s1..sm, v1..vm, v_obj")
    index = {name: header.index(name) for name in expected}

    scores: List[List[float]] = []
    costs: List[List[float]] = []
    objective: List[float] = []
    for row_number, row in enumerate(reader):
        if not row:
            continue
        if len(row) != len(header):
            raise ParseError(
                f'row {row_number}: expected {len(header)} values, '
                f'got {len(row)}')
        values = {
            name: _parse_float(row[index[name]], row_number, name)
            for name in expected
        }
        scores.append([values[f's{j}'] for j in range(1, m + 1)])
        costs.append([values[f'v{j}'] for j in range(1, m + 1)])
        objective.append(values[OBJECTIVE_COLUMN])

    if not scores:
        raise ParseError('no data rows after the header')
    return scores, costs, objective


def _read_json_doc(doc: Any) -> _Columns:
    if not isinstance(doc, dict) or 'm' not in doc or 'rows' not in doc:
        raise ParseError("JSON data must be an object with 'm' and 'rows'")
    m = doc['m']
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ParseError(f"'m' must be a positive integer, got {m!r}")
    rows = doc['rows']
    if not isinstance(rows, list) or not rows:
        raise ParseError("'rows' must be a non-empty list")

    scores: List[List[float]] = []
    costs: List[List[float]] = []
    objective: List[float] = []
    for i, row in enumerate(rows):
        if not isinstance(row, dict):
            raise ParseError(f'row {i}: expected an object')
        for key, size in (('s', m), ('v', m)):
            values = row.get(key)
            if not isinstance(values, list) or len(values) != size:
                raise ParseError(f"row {i}: '{key}' must be a list of {size}")
        scores.append([
            _parse_number(x, i, f's{j + 1}') for j, x in enumerate(row['s'])])
        costs.append([
            _parse_number(x, i, f'v{j + 1}') for j, x in enumerate(row['v'])])
        objective.append(_parse_number(row.get('v_obj'), i, OBJECTIVE_COLUMN))
    return scores, costs, objective


def _parse_float(text: str, row: int, column: str) -> float:
    # float() ignores the locale, and accepts only '.' as decimal separator.
    try:
        return float(text.strip())
    except ValueError:
        raise ParseError(f"row {row}, column {column}: not a number: '{text}'")


def _parse_number(value: Any, row: int, column: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(
            f'row {row}, column {column}: not a number: {value!r}')
    return float(value)


def _check_finite(array: Any, prefix: str, label: str) -> None:
    bad = ~np.isfinite(array)
    if bad.any():
        row, col = (int(x) for x in np.argwhere(bad)[0])
        column = prefix if prefix == OBJECTIVE_COLUMN else f'{prefix}{col + 1}'
        raise ValidationError(
            f'row {row}: non-finite {label} in column {column}: '
            f'{array[row, col]!r}')


def _check_non_negative(costs: Any, objective_costs: Any) -> None:
    bad = costs < 0
    if bad.any():
        row, col = (int(x) for x in np.argwhere(bad)[0])
        raise ValidationError(
            f'row {row}: negative cost in column v{col + 1}: '
            f'{costs[row, col]!r}')
    bad_obj = np.flatnonzero(objective_costs < 0)
    if bad_obj.size:
        row = int(bad_obj[0])
        raise ValidationError(
            f'row {row}: negative cost in column {OBJECTIVE_COLUMN}: '
            f'{objective_costs[row]!r}')


# ---------------------------------------------------------------------------
# Cost shifting and bound estimation.
# ---------------------------------------------------------------------------

def compute_cost_shifts(calib: CalibrationSet) -> CostShifts:
    """Return the column-wise minima of the m constraint cost columns and the
    objective cost column, computed over the calibration rows.
    """
    mins = list(calib.costs.min(axis=0)) + [calib.objective_costs.min()]
    return CostShifts(tuple(float(x) for x in mins))


def apply_shifts(data: CalibrationSet, shifts: CostShifts) -> CalibrationSet:
    """Subtract shifts[j] from every cost column. Shifts computed from the
    same rows leave each column minimum at exactly 0. Rows from another split
    (e.g. test rows) can fall slightly below 0, and are clamped to 0.
    """
    if len(shifts.shifts) != data.m + 1:
        raise ValidationError(
            f'{len(shifts.shifts)} shifts given for m={data.m} '
            f'(need m+1={data.m + 1})')
    c = np.array(shifts.shifts, dtype=float)
    costs = np.maximum(data.costs - c[:data.m], 0.0)
    objective = np.maximum(data.objective_costs - c[data.m], 0.0)
    return CalibrationSet(data.scores, costs, objective)


def estimate_cost_bounds(calib: CalibrationSet) -> CostBounds:
    """Estimate the cost bounds from calibration data: v_max[j] is the column
    maximum, and v_min[j] is 0 (the conservative choice).
    """
    if calib.n == 0:
        raise ValidationError('cannot estimate cost bounds from 0 rows')
    if calib.has_negative_costs:
        raise ValidationError(
            'costs must be shifted to be non-negative before estimating '
            'bounds')
    v_max = tuple(float(x) for x in calib.costs.max(axis=0))
    return CostBounds(tuple(0.0 for _ in v_max), v_max)


def bounds_to_json(bounds: CostBounds) -> Dict[str, List[float]]:
    return {'v_min': list(bounds.v_min), 'v_max': list(bounds.v_max)}
