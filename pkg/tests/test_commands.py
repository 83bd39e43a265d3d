import json
from io import StringIO

import numpy as np
import pandas as pd
import pytest
from scipy.integrate import trapezoid
from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError

from runs.exceptions import ConfigError
from runs.forms import validate_run_config
from runs.services import apply_overrides, prepare_run
from spectral import StateExpansion, eval_psi
from wigner import wigner_box_analytic


def run_file(tmp_path, **sections):
    config = {
        'shape': {'kind': 'interval'},
        'state': {'kind': 'coefficients', 'modes': [1, 2], 'coeffs': [1.0, [0.0, 1.0]], 'normalize': True},
        'grid': {'p_range': [-8.0, 8.0], 'nx': 21, 'np': 33},
        'times': [0.0, 0.5],
    }
    config.update(sections)
    path = tmp_path / 'run.json'
    path.write_text(json.dumps(config))
    return path


def command(name, path, out, *args, **options):
    stdout, stderr = StringIO(), StringIO()
    call_command(name, *args, config=str(path), out=str(out), stdout=stdout, stderr=stderr, **options)
    return stdout.getvalue()


def exit_status(name, path, out, *args, **options):
    with pytest.raises(CommandError) as raised:
        command(name, path, out, *args, **options)
    return raised.value.returncode


class TestRunConfig:
    def test_errors_are_reported_by_path(self):
        with pytest.raises(ConfigError) as raised:
            validate_run_config({
                'shape': {'kind': 'ellipse'},
                'state': {'kind': 'coefficients', 'modes': [1, 1], 'coeffs': [1.0, 0.0]},
                'grid': {'nx': 4, 'np': 33},
                'mass': -1.0,
                'colour': 'blue',
            })
        paths = {message.split(':')[0] for message in raised.value.errors}
        assert {'colour', 'mass', 'shape.kind', 'state.modes', 'grid.nx'} <= paths

    def test_defaults(self):
        config = validate_run_config({
            'shape': {'kind': 'interval'},
            'state': {'kind': 'coefficients', 'modes': [1], 'coeffs': [1.0]},
        })
        assert config['mass'] == 1.0
        assert config['times'] == [0.0]
        assert config['grid']['nx'] == 101
        assert config['grid']['p_range'] == [[-4.0 * np.pi, 4.0 * np.pi]]

    def test_overrides_parse_json_values(self):
        raw = apply_overrides({'grid': {'nx': 21}}, ['grid.nx=41', 'grid.p_range=[-3, 3]', 'out=results'])
        assert raw == {'grid': {'nx': 41, 'p_range': [-3, 3]}, 'out': 'results'}

    def test_override_cannot_replace_a_section(self):
        with pytest.raises(ConfigError):
            apply_overrides({'grid': {'nx': 21}}, ['grid=5'])

    def test_cube_is_rescaled_to_the_reference_box(self):
        run = prepare_run({
            'shape': {'kind': 'interval', 'lo': 1.0, 'hi': 5.0},
            'state': {'kind': 'gaussian', 'modes': [1, 3], 'a': 2.0, 'p0': 0.0},
            'grid': {'nx': 16, 'np': 17},
            'times': [4.0],
        })
        assert run.scaling.factor == 2.0
        assert run.reference_grid.x_axes[0][[0, -1]].tolist() == [-1.0, 1.0]
        assert run.reference_time(4.0) == 1.0
        assert run.describe_state()['energies'][0] == pytest.approx(np.pi ** 2 / 32.0)

    def test_boxes_must_be_cubes(self):
        with pytest.raises(ConfigError):
            prepare_run({
                'shape': {'kind': 'box', 'lo': [-1.0, -1.0], 'hi': [1.0, 2.0]},
                'state': {'kind': 'coefficients', 'modes': [[1, 1]], 'coeffs': [1.0]},
            })


class TestWignerCommand:
    def test_writes_one_csv_per_time_and_a_sidecar(self, tmp_path):
        path = run_file(tmp_path)
        command('wigner', path, tmp_path / 'out')
        frame = pd.read_csv(tmp_path / 'out' / 'wigner_001.csv')
        assert list(frame.columns) == ['x', 'p', 'W']
        assert len(frame) == 21 * 33
        assert frame['x'].iloc[0] == -1.0 and frame['p'].iloc[-1] == 8.0

        sidecar = json.loads((tmp_path / 'out' / 'wigner.json').read_text())
        assert sidecar['command'] == 'wigner'
        assert sidecar['files'] == ['wigner_000.csv', 'psi_000.csv', 'wigner_001.csv', 'psi_001.csv']
        assert sidecar['warnings'] == {'NodeOnAxis': 0, 'OutOfDomain': 0, 'RemovableSingularity': 0}
        assert sidecar['config'] == json.loads(path.read_text())
        assert len(sidecar['normalization']) == 2

    def test_values_match_the_closed_form(self, tmp_path):
        command('wigner', run_file(tmp_path), tmp_path)
        frame = pd.read_csv(tmp_path / 'wigner_001.csv')
        state = StateExpansion.normalized([1, 2], [1.0, 1.0j])
        row = frame.iloc[7 * 33 + 20]
        assert row['W'] == pytest.approx(float(wigner_box_analytic(state, row['x'], row['p'], 0.5)), abs=1e-14)

    def test_rescaled_interval(self, tmp_path):
        path = run_file(tmp_path, shape={'kind': 'interval', 'lo': -2.0, 'hi': 2.0},
                        grid={'p_range': [-4.0, 4.0], 'nx': 21, 'np': 17})
        command('wigner', path, tmp_path)
        frame = pd.read_csv(tmp_path / 'wigner_001.csv')
        state = StateExpansion.normalized([1, 2], [1.0, 1.0j])
        for _, row in frame.iloc[::37].iterrows():
            expected = wigner_box_analytic(state, row['x'] / 2.0, 2.0 * row['p'], 0.5 / 4.0)
            assert row['W'] == pytest.approx(float(expected), abs=1e-12)

    def test_eigenstate_files_are_identical(self, tmp_path):
        path = run_file(tmp_path, state={'kind': 'coefficients', 'modes': [1], 'coeffs': [1.0]},
                        times=[0.0, 2.5])
        command('wigner', path, tmp_path)
        assert (tmp_path / 'wigner_000.csv').read_bytes() == (tmp_path / 'wigner_001.csv').read_bytes()

    def test_wavefunction_is_written_next_to_w(self, tmp_path):
        command('wigner', run_file(tmp_path), tmp_path)
        frame = pd.read_csv(tmp_path / 'psi_001.csv')
        assert list(frame.columns) == ['x', 'psi_re', 'psi_im', 'density']
        assert len(frame) == 21
        state = StateExpansion.normalized([1, 2], [1.0, 1.0j])
        psi = eval_psi(state, frame['x'].to_numpy(), 0.5)
        assert frame['psi_re'].to_numpy() == pytest.approx(psi.real, abs=1e-15)
        assert frame['psi_im'].to_numpy() == pytest.approx(psi.imag, abs=1e-15)
        assert frame['density'].to_numpy() == pytest.approx(np.abs(psi) ** 2, abs=1e-15)

    def test_wavefunction_keeps_its_norm_when_rescaled(self, tmp_path):
        path = run_file(tmp_path, shape={'kind': 'interval', 'lo': 1.0, 'hi': 5.0},
                        grid={'p_range': [-4.0, 4.0], 'nx': 401, 'np': 17}, times=[0.0])
        command('wigner', path, tmp_path)
        frame = pd.read_csv(tmp_path / 'psi_000.csv')
        assert frame['x'].iloc[[0, -1]].tolist() == [1.0, 5.0]
        assert trapezoid(frame['density'], frame['x']) == pytest.approx(1.0, abs=1e-4)

    def test_set_overrides_the_run_file(self, tmp_path):
        command('wigner', run_file(tmp_path), tmp_path, overrides=['grid.nx=25', 'times=[0]'])
        assert len(pd.read_csv(tmp_path / 'wigner_000.csv')) == 25 * 33
        assert not (tmp_path / 'wigner_001.csv').exists()

    def test_empty_modes_exit_with_status_two(self, tmp_path):
        path = run_file(tmp_path, state={'kind': 'coefficients', 'modes': [], 'coeffs': []})
        assert exit_status('wigner', path, tmp_path) == 2
        assert not (tmp_path / 'wigner_000.csv').exists()

    def test_json_syntax_error_names_the_line(self, tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('{\n  "shape": {"kind": "interval"},\n  "state": \n}\n')
        stderr = StringIO()
        with pytest.raises(CommandError) as raised:
            call_command('wigner', config=str(path), out=str(tmp_path), stderr=stderr)
        assert raised.value.returncode == 2
        assert 'line 4' in stderr.getvalue()

    def test_polygon_billiards_are_refused(self, tmp_path):
        path = run_file(tmp_path, shape={'kind': 'polygon', 'vertices': [[0, 0], [1, 0], [0, 1]]})
        assert exit_status('wigner', path, tmp_path) == 2


class TestCurrentCommand:
    def test_current_and_contours(self, tmp_path):
        path = run_file(tmp_path, state={'kind': 'gaussian', 'modes': [1, 5, 10], 'a': 1.0, 'p0': 5.0})
        output = command('current', path, tmp_path)
        frame = pd.read_csv(tmp_path / 'current_000.csv')
        assert list(frame.columns) == ['x', 'p', 'W', 'jx', 'jp']
        assert np.array_equal(np.sign(frame['jx']), np.sign(frame['p'] * frame['W']))

        contours = pd.read_csv(tmp_path / 'contours_000.csv')
        assert list(contours.columns) == ['segment', 'x', 'p']
        assert len(contours) > 0

        sidecar = json.loads((tmp_path / 'current.json').read_text())
        summary = sidecar['summary']
        assert [entry['sign_law_violations'] for entry in summary] == [0, 0]
        assert summary[0]['crossing_checked'] > 0
        reported = 'contour segments' in output
        assert reported == any(entry['crossing_violations'] for entry in summary)
        # both walls at both times
        assert sidecar['warnings']['RemovableSingularity'] == 4
        assert sidecar['warnings']['NodeOnAxis'] == 0

    def test_walls_left_out_of_the_grid(self, tmp_path):
        path = run_file(tmp_path, grid={'x_range': [-0.9, 0.9], 'p_range': [-8.0, 8.0], 'nx': 19, 'np': 33},
                        times=[0.0])
        command('current', path, tmp_path)
        sidecar = json.loads((tmp_path / 'current.json').read_text())
        assert sidecar['warnings']['RemovableSingularity'] == 0


class TestProjectCommand:
    def test_prints_and_writes_the_coefficients(self, tmp_path):
        path = run_file(tmp_path, state={'kind': 'gaussian', 'modes': [1, 5, 10], 'a': 1.0, 'p0': 5.0})
        output = command('project', path, tmp_path, write=True)
        assert 'energy' in output
        frame = pd.read_csv(tmp_path / 'projection.csv')
        assert frame['mode'].tolist() == [1, 5, 10]
        assert frame['weight'].sum() == pytest.approx(1.0, abs=1e-12)
        assert frame['energy'].iloc[0] == pytest.approx(np.pi ** 2 / 8.0)


class TestCheckCommand:
    @pytest.mark.parametrize('name', [
        'ground_state.json', 'packet.json', 'packet_marginals.json', 'packet_current.json',
    ])
    def test_shipped_suites_pass(self, tmp_path, name):
        path = settings.BASE_DIR / 'configs' / name
        output = command('check', path, tmp_path)
        assert 'All' in output
        report = json.loads((tmp_path / 'check_report.json').read_text())
        assert report['passed'] is True
        assert report['config'] == json.loads(path.read_text())
        assert 'RemovableSingularity' in report['warnings']

    def test_ground_state_suite(self, tmp_path):
        command('check', settings.BASE_DIR / 'configs' / 'ground_state.json', tmp_path)
        report = json.loads((tmp_path / 'check_report.json').read_text())
        assert {result['name'] for result in report['results']} >= {
            'continuity', 'stationary.eom', 'stationary.drift', 'deltaprime', 'separability2d',
        }

    def test_failing_check_exits_with_status_one(self, tmp_path):
        path = run_file(tmp_path, grid={'p_range': [-6.0, 6.0], 'nx': 16, 'np': 16},
                        tolerances={'oracle': 1e-30})
        assert exit_status('check', path, tmp_path, 'oracle') == 1
        report = json.loads((tmp_path / 'check_report.json').read_text())
        assert report['passed'] is False

    def test_unknown_check_exits_with_status_two(self, tmp_path):
        assert exit_status('check', run_file(tmp_path), tmp_path, 'bogus') == 2

    def test_no_checks_requested(self, tmp_path):
        assert exit_status('check', run_file(tmp_path), tmp_path) == 2
