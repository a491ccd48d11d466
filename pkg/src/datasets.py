#!/usr/bin/env python3
"""
Ququart Toolkit - Datasets

Sweep and figure tables: one row per grid point, fixed column order, and
the CSV/JSON renderings written by the command-line front end.

Numbers are written with 12 significant digits; negative zero is written
as 0 and an undefined value as an empty CSV field (JSON null).

Licensed under GPL v3
"""

import json
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from correlation_report import StateAnalysis, analyze_coeffs
from errors import ConfigError
from grid_runner import GridRunner
from scenarios import (
    DEFAULT_GRID_POINTS,
    SWEEP_COLUMNS,
    Family,
    FamilyPoint,
    FigureId,
    family_coeffs,
    grid,
)

Row = Dict[str, Optional[float]]

FIGURE_COLUMNS = {
    FigureId.Fig1: ('b_minus', 'S'),
    FigureId.Fig2: ('b_minus', 'K', 'C', 'S_rel', 'I', 'C_cl'),
    FigureId.Fig3: ('b_minus', 'K', 'C', 'I', 'P'),
    FigureId.Fig4: ('b_minus', 'K_pol', 'P4', 'C_pol', 'K_2qb', 'P_2qb', 'C_2qb'),
    FigureId.Fig5: ('b_minus', 'K_pol', 'P4', 'C_pol', 'K_2qb', 'P_2qb', 'C_2qb'),
}

# analyze --format csv
ANALYSIS_COLUMNS = (
    'b_minus', 'K_pol', 'C_pol', 'P', 'P4', 'S_full', 'S_reduced', 'I',
    'C_freq', 'S_rel', 'C_cl', 'K_2qb', 'C_2qb', 'P_2qb',
)

# Figures 1 and 2 depend on |B−| only; any family gives the same ρ^freq
FIGURE_FAMILIES = {
    FigureId.Fig1: Family.Example2a,
    FigureId.Fig2: Family.Example2a,
    FigureId.Fig3: Family.Example2a,
    FigureId.Fig4: Family.Example1,
    FigureId.Fig5: Family.Example2a,
}


def format_number(value: Optional[float]) -> str:
    if value is None:
        return ''
    value = float(value)
    if value == 0.0:
        value = 0.0
    text = f"{value:.12g}"
    return '0' if text == '-0' else text


@dataclass(frozen=True)
class Table:
    columns: Tuple[str, ...]
    rows: Tuple[Row, ...]

    def column(self, name: str) -> List[Optional[float]]:
        return [row[name] for row in self.rows]

    def to_csv(self) -> str:
        lines = [','.join(self.columns)]
        for row in self.rows:
            lines.append(','.join(format_number(row[c]) for c in self.columns))
        return '\n'.join(lines) + '\n'

    def to_json(self) -> str:
        records = [
            {c: (None if row[c] is None else float(format_number(row[c]))) for c in self.columns}
            for row in self.rows
        ]
        return json.dumps({'columns': list(self.columns), 'rows': records}, indent=2) + '\n'

    def render(self, fmt: str) -> str:
        if fmt == 'json':
            return self.to_json()
        return self.to_csv()


# ---------------------------------------------------------------------------
# Row builders
# ---------------------------------------------------------------------------

def _measures(analysis: StateAnalysis) -> Row:
    pol, freq, tq = analysis.pol, analysis.freq, analysis.two_qubit
    return {
        'K_pol': pol.K,
        'C_pol': pol.C,
        'P': pol.P,
        'S_full': pol.S_full,
        'S_reduced': pol.S_reduced,
        'I': pol.I,
        'C_freq': freq.C,
        'S_rel': pol.S_rel,
        'C_cl': pol.C_cl,
        'K_2qb': tq.K_2qb,
        'C_2qb': tq.C_2qb,
        'P_2qb': tq.P_2qb,
    }


def sweep_row(point: FamilyPoint, analysis: StateAnalysis) -> Row:
    row: Row = {'b_minus': point.b_minus, 'phi': point.phase}
    row.update(_measures(analysis))
    return row


def analysis_table(analysis: StateAnalysis) -> Table:
    """One-row table of a single analyzed state."""
    row: Row = {'b_minus': math.sqrt(analysis.b_minus_sq), 'P4': analysis.P4}
    row.update(_measures(analysis))
    return Table(ANALYSIS_COLUMNS, (row,))


def _fig1(b: float, a: StateAnalysis) -> Row:
    return {'b_minus': b, 'S': a.freq.S_full}


def _fig2(b: float, a: StateAnalysis) -> Row:
    f = a.freq
    return {'b_minus': b, 'K': f.K, 'C': f.C, 'S_rel': f.S_rel, 'I': f.I, 'C_cl': f.C_cl}


def _fig3(b: float, a: StateAnalysis) -> Row:
    p = a.pol
    return {'b_minus': b, 'K': p.K, 'C': p.C, 'I': p.I, 'P': p.P}


def _model_comparison(b: float, a: StateAnalysis) -> Row:
    return {
        'b_minus': b,
        'K_pol': a.pol.K,
        'P4': a.P4,
        'C_pol': a.pol.C,
        'K_2qb': a.two_qubit.K_2qb,
        'P_2qb': a.two_qubit.P_2qb,
        'C_2qb': a.two_qubit.C_2qb,
    }


FIGURE_ROWS: Dict[FigureId, Callable[[float, StateAnalysis], Row]] = {
    FigureId.Fig1: _fig1,
    FigureId.Fig2: _fig2,
    FigureId.Fig3: _fig3,
    FigureId.Fig4: _model_comparison,
    FigureId.Fig5: _model_comparison,
}


# ---------------------------------------------------------------------------
# Runners
# ---------------------------------------------------------------------------

class SweepRunner(GridRunner[FamilyPoint, Row]):
    """Evaluates family points into sweep rows."""

    def __init__(self, columns: Sequence[str] = SWEEP_COLUMNS, **kwargs):
        super().__init__(**kwargs)
        self.columns = tuple(columns)

    def _pre_run(self, points: List[FamilyPoint]) -> bool:
        if not points:
            self._log("Sweep has no grid points", 'warning')
            return False
        self._log(f"Sweeping {len(points)} points of {points[0].family.value} "
                  f"on {self.jobs} worker(s)")
        return True

    def _evaluate(self, point: FamilyPoint) -> Row:
        row = sweep_row(point, analyze_coeffs(family_coeffs(point)))
        return {c: row[c] for c in self.columns}

    def table(self, points: Sequence[FamilyPoint]) -> Table:
        return Table(self.columns, tuple(self.run(points)))


class FigureRunner(GridRunner[float, Row]):
    """Evaluates the curve set of one figure over a |B−| grid."""

    def __init__(self, figure: FigureId, **kwargs):
        super().__init__(**kwargs)
        self.figure = FigureId(figure)

    def _pre_run(self, points: List[float]) -> bool:
        self._log(f"Building {self.figure.name} over {len(points)} points")
        return True

    def _evaluate(self, b: float) -> Row:
        point = FamilyPoint(FIGURE_FAMILIES[self.figure], b)
        return FIGURE_ROWS[self.figure](b, analyze_coeffs(family_coeffs(point)))

    def table(self, steps: int = DEFAULT_GRID_POINTS) -> Table:
        if steps < 2:
            raise ConfigError(f"figure needs at least 2 grid points, got {steps}")
        values = [float(b) for b in grid(0.0, 1.0, steps)]
        return Table(FIGURE_COLUMNS[self.figure], tuple(self.run(values)))


def is_interior(b: float) -> bool:
    return 0.0 < b < 1.0 and not math.isclose(b, 1.0)
