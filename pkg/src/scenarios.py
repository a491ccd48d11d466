#!/usr/bin/env python3
"""
Ququart Toolkit - Scenarios

Scenario configuration for the command-line front end: coefficient sets,
the one-parameter state families that drive sweeps and figures, and the
JSON document they are loaded from.

Config document (all keys optional except where a command needs them):

    {
      "basis": "natural",                      # or "mixed" (C1, B+, C4, B−)
      "coefficients": [[1, 0], [0, 0], [0, 0], [0, 0]],
      "normalize": false,                      # true rescales any nonzero set
      "family": "example1",                    # example1 | example2a | example2b
      "b_minus": 0.5,                          # fixed |B−| when sweeping a phase
      "phases": {"phi": 0.0, "phi1": 0.0, "phi4": 0.0},
      "sweep": {"parameter": "b_minus", "from": 0.0, "to": 1.0, "steps": 101},
      "outputs": ["K_pol", "C_pol", "P"]
    }

Complex numbers are two-element [re, im] arrays; plain numbers are read as
real.  Without "normalize" the squared norm must be within 1e-6 of 1.

Licensed under GPL v3
"""

import json
import math
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from biphoton_core import MixedCoeffs, QuquartCoeffs, coeffs_from_values, from_mixed_coeffs
from errors import ConfigError, DomainError, QuquartError

try:
    from build_config import DEFAULT_GRID_POINTS
except ImportError:
    DEFAULT_GRID_POINTS = 201

# |B−| may overshoot [0, 1] by this much from float round-off in a grid
B_MINUS_SLACK = 1e-12

SWEEP_COLUMNS = (
    'b_minus', 'phi', 'K_pol', 'C_pol', 'P', 'S_full', 'S_reduced', 'I',
    'C_freq', 'S_rel', 'C_cl', 'K_2qb', 'C_2qb', 'P_2qb',
)
# Always emitted, whatever ``outputs`` requests
SWEEP_KEY_COLUMNS = ('b_minus', 'phi')


class FigureId(IntEnum):
    Fig1 = 1
    Fig2 = 2
    Fig3 = 3
    Fig4 = 4
    Fig5 = 5


class Family(Enum):
    """One-parameter state families; b = |B−| throughout.

    example1   C1 = C4 = 0, B+ = e^{iφ} √(1 − b²)
    example2a  B+ = C4 = 0, C1 = √(1 − b²)
    example2b  B+ = 0, C1 = e^{iφ1} √((1 − b²)/2), C4 = e^{iφ4} √((1 − b²)/2)
    """
    Example1 = 'example1'
    Example2a = 'example2a'
    Example2b = 'example2b'


class SweepParameter(Enum):
    BMinus = 'b_minus'
    # φ for example1, φ4 for example2b
    Phi = 'phi'


@dataclass(frozen=True)
class FamilyPoint:
    family: Family
    b_minus: float
    phi: float = 0.0
    phi1: float = 0.0
    phi4: float = 0.0

    @property
    def phase(self) -> float:
        """The phase reported in the ``phi`` column."""
        if self.family is Family.Example1:
            return self.phi
        if self.family is Family.Example2b:
            return self.phi4
        return 0.0


def family_coeffs(point: FamilyPoint) -> QuquartCoeffs:
    b = point.b_minus
    if not (-B_MINUS_SLACK <= b <= 1.0 + B_MINUS_SLACK):
        raise DomainError(f"|B-| = {b!r} outside [0, 1]")
    b = min(max(b, 0.0), 1.0)
    rest = math.sqrt(max(0.0, 1.0 - b * b))

    if point.family is Family.Example1:
        mixed = MixedCoeffs(0.0, complex(math.cos(point.phi), math.sin(point.phi)) * rest, 0.0, b)
    elif point.family is Family.Example2a:
        mixed = MixedCoeffs(rest, 0.0, 0.0, b)
    elif point.family is Family.Example2b:
        half = rest * math.sqrt(0.5)
        mixed = MixedCoeffs(
            complex(math.cos(point.phi1), math.sin(point.phi1)) * half,
            0.0,
            complex(math.cos(point.phi4), math.sin(point.phi4)) * half,
            b,
        )
    else:
        raise ConfigError(f"unknown family {point.family!r}")
    return from_mixed_coeffs(mixed)


def grid(start: float, stop: float, steps: int) -> np.ndarray:
    """Inclusive uniform grid."""
    return np.linspace(start, stop, steps)


@dataclass(frozen=True)
class SweepSpec:
    parameter: SweepParameter = SweepParameter.BMinus
    start: float = 0.0
    stop: float = 1.0
    steps: int = DEFAULT_GRID_POINTS

    def __post_init__(self):
        if self.steps < 2:
            raise ConfigError(f"sweep needs at least 2 steps, got {self.steps}")
        if not self.start < self.stop:
            raise ConfigError(f"sweep range must satisfy from < to, got {self.start} .. {self.stop}")
        if self.parameter is SweepParameter.BMinus and (self.start < 0.0 or self.stop > 1.0):
            raise ConfigError(f"|B-| sweep must stay within [0, 1], got {self.start} .. {self.stop}")

    def values(self) -> np.ndarray:
        return grid(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class ScenarioConfig:
    coefficients: Optional[Tuple[complex, complex, complex, complex]] = None
    basis: str = 'natural'
    normalize: bool = False
    family: Optional[Family] = None
    b_minus: float = 0.0
    phases: Mapping[str, float] = field(default_factory=dict)
    sweep: Optional[SweepSpec] = None
    outputs: Tuple[str, ...] = SWEEP_COLUMNS

    def coeffs(self) -> QuquartCoeffs:
        if self.coefficients is None:
            raise ConfigError("config has no 'coefficients'")
        try:
            return coeffs_from_values(self.coefficients, basis=self.basis,
                                      normalize=self.normalize)
        except QuquartError:
            raise
        except ValueError as e:
            raise ConfigError(str(e))

    def points(self) -> Tuple[FamilyPoint, ...]:
        """Family points of the sweep, in grid order."""
        if self.family is None:
            raise ConfigError("sweep needs a 'family'")
        if self.sweep is None:
            raise ConfigError("config has no 'sweep'")
        phi = self.phases.get('phi', 0.0)
        phi1 = self.phases.get('phi1', 0.0)
        phi4 = self.phases.get('phi4', 0.0)
        points = []
        for value in self.sweep.values():
            value = float(value)
            if self.sweep.parameter is SweepParameter.BMinus:
                points.append(FamilyPoint(self.family, value, phi, phi1, phi4))
            elif self.family is Family.Example1:
                points.append(FamilyPoint(self.family, self.b_minus, value, phi1, phi4))
            elif self.family is Family.Example2b:
                points.append(FamilyPoint(self.family, self.b_minus, phi, phi1, value))
            else:
                raise ConfigError(f"family {self.family.value} has no phase to sweep")
        return tuple(points)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

def _number(value: Any, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{what} must be a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{what} must be finite, got {value!r}")
    return float(value)


def parse_complex(value: Any, what: str = 'coefficient') -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ConfigError(f"{what} must be [re, im], got {value!r}")
        return complex(_number(value[0], what), _number(value[1], what))
    return complex(_number(value, what), 0.0)


def parse_family(value: Any) -> Family:
    try:
        return Family(value)
    except ValueError:
        names = ', '.join(f.value for f in Family)
        raise ConfigError(f"unknown family {value!r} (expected one of: {names})")


def parse_sweep(doc: Mapping[str, Any]) -> SweepSpec:
    if not isinstance(doc, Mapping):
        raise ConfigError("'sweep' must be an object")
    try:
        parameter = SweepParameter(doc.get('parameter', 'b_minus'))
    except ValueError:
        raise ConfigError(f"unknown sweep parameter {doc.get('parameter')!r}")
    steps = doc.get('steps', DEFAULT_GRID_POINTS)
    if isinstance(steps, bool) or not isinstance(steps, int):
        raise ConfigError(f"sweep steps must be an integer, got {steps!r}")
    return SweepSpec(
        parameter=parameter,
        start=_number(doc.get('from', 0.0), 'sweep.from'),
        stop=_number(doc.get('to', 1.0), 'sweep.to'),
        steps=steps,
    )


def parse_config(doc: Mapping[str, Any]) -> ScenarioConfig:
    if not isinstance(doc, Mapping):
        raise ConfigError("config must be a JSON object")

    coefficients = None
    if 'coefficients' in doc:
        raw = doc['coefficients']
        if not isinstance(raw, (list, tuple)) or len(raw) != 4:
            raise ConfigError("'coefficients' must list exactly 4 values")
        coefficients = tuple(parse_complex(v, f"coefficients[{i}]") for i, v in enumerate(raw))

    basis = doc.get('basis', 'natural')
    if basis not in ('natural', 'mixed'):
        raise ConfigError(f"'basis' must be 'natural' or 'mixed', got {basis!r}")

    normalize = doc.get('normalize', False)
    if not isinstance(normalize, bool):
        raise ConfigError(f"'normalize' must be true or false, got {normalize!r}")

    phases_doc = doc.get('phases', {})
    if not isinstance(phases_doc, Mapping):
        raise ConfigError("'phases' must be an object")
    unknown = set(phases_doc) - {'phi', 'phi1', 'phi4'}
    if unknown:
        raise ConfigError(f"unknown phases: {', '.join(sorted(unknown))}")
    phases = {k: _number(v, f"phases.{k}") for k, v in phases_doc.items()}

    outputs = tuple(doc.get('outputs', SWEEP_COLUMNS))
    bad = [o for o in outputs if o not in SWEEP_COLUMNS]
    if bad:
        raise ConfigError(f"unknown outputs: {', '.join(map(str, bad))}")

    return ScenarioConfig(
        coefficients=coefficients,
        basis=basis,
        normalize=normalize,
        family=parse_family(doc['family']) if 'family' in doc else None,
        b_minus=_number(doc.get('b_minus', 0.0), 'b_minus'),
        phases=phases,
        sweep=parse_sweep(doc['sweep']) if 'sweep' in doc else None,
        outputs=outputs,
    )


def load_config(path: Union[str, Path]) -> ScenarioConfig:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"config {path} is not valid JSON: {e}")
    return parse_config(doc)


def sweep_columns(outputs: Sequence[str]) -> Tuple[str, ...]:
    """Requested outputs in contract order, key columns first."""
    wanted = set(outputs) | set(SWEEP_KEY_COLUMNS)
    return tuple(c for c in SWEEP_COLUMNS if c in wanted)
