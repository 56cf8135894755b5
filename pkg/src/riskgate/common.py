# Copyright 2026 riskgate contributors
#
# MIT License

"""
Common constants, exceptions and small helpers shared by the dataset, riskfn,
calibrate, ltt, simulate and cli modules.
"""

from typing import Any
from typing import List
from typing import NamedTuple
from typing import Sequence
import json
import os


# Number of significant digits used when writing floats to CSV and JSON. 17
# digits are enough for a binary64 value to survive a text round trip.
FLOAT_DIGITS = 17

# Environment variable which caps the number of worker threads.
THREADS_ENV_VAR = 'RISKGATE_THREADS'


class RiskGateError(Exception):
    """Base class of all errors raised by the riskgate package."""


class ValidationError(RiskGateError, ValueError):
    """Inputs violate a schema, finiteness, bounds or dimension requirement."""


class ParseError(RiskGateError, ValueError):
    """A data file could not be parsed. The message names the row/column."""


class Interval(NamedTuple):
    """The closed threshold domain [lo, hi] of a single constraint."""
    lo: float
    hi: float


def format_float(x: float) -> str:
    """Render a float with enough digits to round trip exactly."""
    return f'{x:.{FLOAT_DIGITS}g}'


def read_json(path: str) -> Any:
    """Load a JSON file. Malformed JSON and text which is not UTF-8 raise
    ParseError naming the path.
    """
    with open(path, encoding='utf-8') as f:
        try:
            return json.load(f)
        except (json.JSONDecodeError, UnicodeDecodeError) as e:
            raise ParseError(f'{path}: invalid JSON: {e}')


def thread_count() -> int:
    """Return the worker thread count, capped by RISKGATE_THREADS if set.
    """
    cpus = os.cpu_count() or 1
    value = os.environ.get(THREADS_ENV_VAR)
    if not value:
        return cpus
    try:
        limit = int(value)
    except ValueError:
        raise ValidationError(
            f"{THREADS_ENV_VAR} must be a positive integer, got '{value}'")
    if limit < 1:
        raise ValidationError(
            f"{THREADS_ENV_VAR} must be a positive integer, got '{value}'")
    return min(limit, cpus)


def to_floats(values: Sequence[float], name: str) -> List[float]:
    """Convert a JSON list into a list of floats, naming 'name' on failure."""
    if not isinstance(values, (list, tuple)):
        raise ValidationError(f"'{name}' must be a list of numbers")
    result: List[float] = []
    for i, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ValidationError(f"'{name}[{i}]' must be a number, got {v!r}")
        result.append(float(v))
    return result


def to_intervals(
    values: Sequence[Sequence[float]],
    name: str,
) -> List[Interval]:
    """Convert a JSON list of [lo, hi] pairs into Intervals."""
    if not isinstance(values, (list, tuple)):
        raise ValidationError(f"'{name}' must be a list of [lo, hi] pairs")
    result: List[Interval] = []
    for i, pair in enumerate(values):
        bounds = to_floats(pair, f'{name}[{i}]')
        if len(bounds) != 2:
            raise ValidationError(f"'{name}[{i}]' must have exactly 2 entries")
        result.append(Interval(bounds[0], bounds[1]))
    return result
