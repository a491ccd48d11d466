"""Tests for scenarios and datasets: config parsing, families, sweep rows, figure tables."""

import json
import math

import numpy as np
import pytest

from biphoton_core import SQRT1_2
from datasets import (
    FIGURE_COLUMNS,
    FigureRunner,
    SweepRunner,
    Table,
    format_number,
    is_interior,
)
from entanglement_measures import binary_entropy
from errors import ConfigError, DomainError, NormalizationError
from scenarios import (
    SWEEP_COLUMNS,
    Family,
    FamilyPoint,
    FigureId,
    ScenarioConfig,
    SweepParameter,
    SweepSpec,
    family_coeffs,
    load_config,
    parse_complex,
    parse_config,
    sweep_columns,
)


class TestFamilies:
    @pytest.mark.parametrize('family', list(Family))
    @pytest.mark.parametrize('b', [0.0, 0.3, SQRT1_2, 1.0])
    def test_b_minus_is_the_parameter(self, family, b):
        c = family_coeffs(FamilyPoint(family, b, phi=0.7, phi1=0.2, phi4=1.1))
        assert abs(c.mixed.b_minus) == pytest.approx(b, abs=1e-12)

    def test_example1_shape(self):
        m = family_coeffs(FamilyPoint(Family.Example1, 0.6, phi=math.pi / 2)).mixed
        assert abs(m.c1) < 1e-15 and abs(m.c4) < 1e-15
        assert m.b_plus == pytest.approx(0.8j)

    def test_example2a_shape(self):
        m = family_coeffs(FamilyPoint(Family.Example2a, 0.6)).mixed
        assert m.c1 == pytest.approx(0.8)
        assert abs(m.b_plus) < 1e-15 and abs(m.c4) < 1e-15

    def test_example2b_shape(self):
        m = family_coeffs(FamilyPoint(Family.Example2b, 0.6, phi1=0.0, phi4=math.pi)).mixed
        assert m.c1 == pytest.approx(0.8 * SQRT1_2)
        assert m.c4 == pytest.approx(-0.8 * SQRT1_2)

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            family_coeffs(FamilyPoint(Family.Example1, 1.5))

    def test_phase_column(self):
        assert FamilyPoint(Family.Example1, 0.1, phi=0.3).phase == 0.3
        assert FamilyPoint(Family.Example2b, 0.1, phi4=0.4).phase == 0.4
        assert FamilyPoint(Family.Example2a, 0.1, phi=0.3).phase == 0.0


class TestConfig:
    def test_parse_complex(self):
        assert parse_complex([0.5, -0.25]) == complex(0.5, -0.25)
        assert parse_complex(2) == complex(2, 0)
        with pytest.raises(ConfigError):
            parse_complex([1, 2, 3])
        with pytest.raises(ConfigError):
            parse_complex('one')

    def test_full_document(self):
        config = parse_config({
            'basis': 'mixed',
            'coefficients': [[0, 0], [0.8, 0], [0, 0], [0, 0.6]],
            'family': 'example1',
            'phases': {'phi': 0.5},
            'sweep': {'parameter': 'b_minus', 'from': 0.0, 'to': 1.0, 'steps': 5},
            'outputs': ['K_pol'],
        })
        assert config.family is Family.Example1
        assert config.sweep.steps == 5
        m = config.coeffs().mixed
        assert m.b_plus == pytest.approx(0.8)
        assert m.b_minus == pytest.approx(0.6j)
        assert sweep_columns(config.outputs) == ('b_minus', 'phi', 'K_pol')

    def test_coefficients_must_be_normalized(self):
        config = parse_config({'coefficients': [3, [0, 4], 0, 0]})
        with pytest.raises(NormalizationError):
            config.coeffs()

    def test_small_deviation_is_rescaled(self):
        config = parse_config({'coefficients': [1 + 1e-8, 0, 0, 0]})
        assert config.coeffs().c1 == pytest.approx(1.0, abs=1e-15)

    def test_explicit_normalize(self):
        config = parse_config({'coefficients': [3, [0, 4], 0, 0], 'normalize': True})
        assert config.coeffs().c1 == pytest.approx(0.6)
        assert config.coeffs().c2 == pytest.approx(0.8j)

    @pytest.mark.parametrize('doc', [
        [],
        {'coefficients': [1, 0, 0]},
        {'basis': 'bell'},
        {'family': 'example3'},
        {'phases': {'theta': 1.0}},
        {'outputs': ['K_pol', 'bogus']},
        {'sweep': {'steps': 1}},
        {'sweep': {'from': 0.8, 'to': 0.2}},
        {'sweep': {'parameter': 'c1'}},
        {'sweep': {'steps': 2.5}},
        {'b_minus': 'half'},
        {'normalize': 'yes'},
    ])
    def test_rejects_malformed(self, doc):
        with pytest.raises(ConfigError):
            parse_config(doc)

    def test_missing_coefficients(self):
        with pytest.raises(ConfigError):
            parse_config({}).coeffs()

    def test_sweep_needs_family(self):
        with pytest.raises(ConfigError):
            ScenarioConfig(sweep=SweepSpec(steps=3)).points()

    def test_phase_sweep_needs_a_phase(self):
        config = ScenarioConfig(family=Family.Example2a,
                                sweep=SweepSpec(SweepParameter.Phi, 0.0, 1.0, 3))
        with pytest.raises(ConfigError):
            config.points()

    def test_phase_sweep_points(self):
        config = ScenarioConfig(family=Family.Example1, b_minus=0.5,
                                sweep=SweepSpec(SweepParameter.Phi, 0.0, math.pi, 3))
        points = config.points()
        assert [p.phi for p in points] == pytest.approx([0.0, math.pi / 2, math.pi])
        assert all(p.b_minus == 0.5 for p in points)

    def test_load_config(self, tmp_path):
        path = tmp_path / 'state.json'
        path.write_text(json.dumps({'coefficients': [[1, 0], 0, 0, 0]}))
        assert load_config(path).coeffs().c1 == pytest.approx(1.0)

    def test_load_config_errors(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / 'missing.json')
        bad = tmp_path / 'bad.json'
        bad.write_text('{not json')
        with pytest.raises(ConfigError):
            load_config(bad)


class TestFormatting:
    @pytest.mark.parametrize('value, text', [
        (None, ''),
        (-0.0, '0'),
        (0.0, '0'),
        (2.0, '2'),
        (1.6, '1.6'),
        (1 / 3, '0.333333333333'),
        (1.5e-20, '1.5e-20'),
        (-1e-300 * 1e-300, '0'),
    ])
    def test_format_number(self, value, text):
        assert format_number(value) == text

    def test_csv(self):
        table = Table(('a', 'b'), ({'a': 1.0, 'b': None}, {'a': -0.0, 'b': 0.5}))
        assert table.to_csv() == 'a,b\n1,\n0,0.5\n'

    def test_json(self):
        table = Table(('a', 'b'), ({'a': 1.0, 'b': None},))
        doc = json.loads(table.render('json'))
        assert doc == {'columns': ['a', 'b'], 'rows': [{'a': 1.0, 'b': None}]}

    def test_interior(self):
        assert not is_interior(0.0)
        assert not is_interior(1.0)
        assert is_interior(0.5)


class TestSweeps:
    def test_example1_is_unpolarized(self):
        points = [FamilyPoint(Family.Example1, float(b)) for b in np.linspace(0, 1, 101)]
        table = SweepRunner().table(points)
        assert table.columns == SWEEP_COLUMNS
        assert table.column('K_pol') == pytest.approx([2.0] * 101, abs=1e-12)

    def test_example2a_midpoint(self):
        table = SweepRunner().table([FamilyPoint(Family.Example2a, SQRT1_2)])
        row = table.rows[0]
        assert row['K_pol'] == pytest.approx(1.6)
        assert row['C_pol'] == pytest.approx(0.5)
        assert row['P'] == pytest.approx(0.5)
        assert row['S_rel'] is None

    @pytest.mark.parametrize('family', list(Family))
    def test_endpoints_are_pure(self, family):
        table = SweepRunner().table([FamilyPoint(family, 0.0), FamilyPoint(family, 1.0)])
        assert table.column('S_full') == pytest.approx([0.0, 0.0], abs=1e-10)

    def test_column_selection(self):
        table = SweepRunner(('b_minus', 'phi', 'C_2qb')).table([FamilyPoint(Family.Example1, 0.5)])
        assert table.to_csv().splitlines()[0] == 'b_minus,phi,C_2qb'

    def test_parallel_output_is_identical(self):
        points = [FamilyPoint(Family.Example2b, float(b), phi4=0.3) for b in np.linspace(0, 1, 21)]
        serial = SweepRunner().table(points).to_csv()
        parallel = SweepRunner(jobs=4).table(points).to_csv()
        assert serial == parallel

    def test_sweep_spec_grid(self):
        values = SweepSpec(steps=5).values()
        assert list(values) == [0.0, 0.25, 0.5, 0.75, 1.0]


class TestFigures:
    @pytest.mark.parametrize('figure', list(FigureId))
    def test_headers(self, figure):
        table = FigureRunner(figure).table(3)
        assert table.columns == FIGURE_COLUMNS[figure]
        assert len(table.rows) == 3

    @pytest.mark.parametrize('steps', [-1, 0, 1])
    def test_rejects_short_grids(self, steps):
        with pytest.raises(ConfigError):
            FigureRunner(FigureId.Fig3).table(steps)

    def test_fig1_entropy(self):
        table = FigureRunner(FigureId.Fig1).table(11)
        for row in table.rows:
            assert row['S'] == pytest.approx(binary_entropy(row['b_minus'] ** 2), abs=1e-10)
        assert table.column('S')[0] == pytest.approx(0.0, abs=1e-10)
        assert table.column('S')[-1] == pytest.approx(0.0, abs=1e-10)

    def test_fig2_classical_correlations(self):
        table = FigureRunner(FigureId.Fig2).table(11)
        assert table.column('C_cl') == pytest.approx([1.0] * 11, abs=1e-10)
        assert table.column('K') == pytest.approx([2.0] * 11, abs=1e-12)

    def test_fig3_endpoints(self):
        table = FigureRunner(FigureId.Fig3).table(201)
        first, last = table.rows[0], table.rows[-1]
        assert (first['K'], first['C'], first['P'], first['I']) == pytest.approx((1, 0, 1, 0), abs=1e-12)
        assert (last['K'], last['C'], last['P'], last['I']) == pytest.approx((2, 1, 0, 2), abs=1e-12)

    def test_fig4_unpolarized(self):
        table = FigureRunner(FigureId.Fig4).table(51)
        assert table.column('P4') == pytest.approx([0.0] * 51, abs=1e-12)
        assert table.column('K_pol') == pytest.approx([2.0] * 51, abs=1e-12)
        # real coefficients: the two concurrences coincide
        assert table.column('C_pol') == pytest.approx(table.column('C_2qb'), abs=1e-10)

    def test_fig5_separation(self):
        table = FigureRunner(FigureId.Fig5).table(51)
        for row in table.rows:
            b_sq = row['b_minus'] ** 2
            assert row['C_pol'] == pytest.approx(b_sq, abs=1e-10)
            assert row['C_2qb'] == pytest.approx(b_sq, abs=1e-12)
            if is_interior(row['b_minus']):
                assert abs(row['K_pol'] - row['K_2qb']) > 1e-12
