"""Tests of the command line verbs and their exit statuses."""

import json

import pytest

from hybrid_precoding_sim.__main__ import main, EXIT_OK, EXIT_VALIDATION, EXIT_RUNTIME
from hybrid_precoding_sim.argument_utils import (
    parse_arguments,
    get_pair_argument,
    get_n_tx_values
)
from hybrid_precoding_sim.result_writers import ResultWriter, JsonResultWriter

CONFIG = """\
array.n_tx=8
array.n_rf=4
array.n_rx=2
system.k_users=2
system.n_paths=6
channel.n_snapshots=4
channel.pilot_samples=64
metrics.ber_symbols=1000
run.n_trials=2
solver.max_iter=30
solver.outer_iter=2
sweep.sp.family=spacing
sweep.sp.values=0.5,1.0
"""


@pytest.fixture
def config_path(tmp_path):
    path = tmp_path / 'small.cfg'
    path.write_text(CONFIG)
    return path


class TestArguments:

    def test_overrides(self):
        args, overrides = parse_arguments(['run', 'a.cfg', '--seed', '3',
                                           'array.n_rf=8', 'model.rho=0.2'])
        assert args.command == 'run'
        assert args.config == 'a.cfg'
        assert args.seed == 3
        assert overrides == {'array.n_rf': '8', 'model.rho': '0.2'}

    def test_not_a_pair(self):
        with pytest.raises(SystemExit):
            parse_arguments(['run', 'a.cfg', 'stray'])

    def test_run_requires_config(self):
        with pytest.raises(SystemExit):
            parse_arguments(['run'])

    def test_pairs(self):
        assert get_pair_argument('a.b=1') == ('a.b', '1')
        assert get_pair_argument('a.b=') == ('a.b', '')
        assert get_pair_argument('a.b') == (None, None)
        assert get_pair_argument('=1') == (None, None)

    def test_n_tx_values(self):
        assert get_n_tx_values('16,32,64') == [16, 32, 64]


class TestValidate:

    def test_valid(self, config_path, capsys):
        assert main(['validate', str(config_path)]) == EXIT_OK
        assert 'config hash' in capsys.readouterr().out

    def test_invalid_file(self, tmp_path):
        path = tmp_path / 'bad.cfg'
        path.write_text('array.n_antennas=8\n')
        assert main(['validate', str(path)]) == EXIT_VALIDATION

    def test_missing_file(self, tmp_path):
        assert main(['validate', str(tmp_path / 'missing.cfg')]) == EXIT_VALIDATION

    def test_unknown_override(self, config_path):
        assert main(['validate', str(config_path), 'array.n_antennas=8']) == EXIT_VALIDATION


class TestRun:

    def test_csv(self, config_path, tmp_path):
        out = tmp_path / 'out.csv'
        assert main(['run', str(config_path), '--out', str(out)]) == EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[0] == ','.join(ResultWriter.COLUMNS)
        assert len(lines) == 3
        manifest = json.loads((tmp_path / 'out.csv.manifest.json').read_text())
        assert len(manifest['config_hash']) == 64
        assert manifest['notes']['command'] == 'run'

    def test_same_seed_same_bytes(self, config_path, tmp_path):
        first, second = tmp_path / 'a.csv', tmp_path / 'b.csv'
        assert main(['run', str(config_path), '--seed', '11', '--out', str(first)]) == EXIT_OK
        assert main(['run', str(config_path), '--seed', '11', '--out', str(second)]) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()

    def test_override(self, config_path, tmp_path):
        out = tmp_path / 'out.json'
        assert main(['run', str(config_path), '--out', str(out), '--format', 'json',
                     'system.k_users=1']) == EXIT_OK
        _, records = JsonResultWriter.read(out)
        assert len(records) == 2
        assert all(len(r.per_user_sinr) == 1 for r in records if r.ok)

    def test_invalid_override_value(self, config_path, tmp_path):
        assert main(['run', str(config_path), '--out', str(tmp_path / 'o.csv'),
                     'system.k_users=9']) == EXIT_VALIDATION

    def test_missing_output_directory(self, config_path, tmp_path):
        out = tmp_path / 'missing' / 'out.csv'
        assert main(['run', str(config_path), '--out', str(out)]) == EXIT_RUNTIME


class TestSweep:

    def test_declared_sweep(self, config_path, tmp_path):
        out = tmp_path / 'sp.csv'
        assert main(['sweep', str(config_path), 'sp', '--out', str(out)]) == EXIT_OK
        assert len(out.read_text().splitlines()) == 5
        summary = (tmp_path / 'sp.csv.summary.csv').read_text().splitlines()
        assert len(summary) == 3

    def test_family_name(self, config_path, tmp_path):
        out = tmp_path / 'cdf.csv'
        assert main(['sweep', str(config_path), 'est_error_cdf', '--out', str(out)]) == EXIT_OK
        assert (tmp_path / 'cdf.csv.summary.csv').exists()
        cdf = (tmp_path / 'cdf.csv.cdf.csv').read_text().splitlines()
        assert cdf[0] == 'sweep_value,est_error,cdf'
        assert len(cdf) == 5

    def test_json_sweep(self, config_path, tmp_path):
        out = tmp_path / 'sp.json'
        assert main(['sweep', str(config_path), 'sp', '--out', str(out),
                     '--format', 'json']) == EXIT_OK
        _, records = JsonResultWriter.read(out)
        assert len(records) == 4
        assert sorted(p.name for p in tmp_path.iterdir()) == ['small.cfg', 'sp.json']

    def test_unknown_sweep(self, config_path, tmp_path):
        assert main(['sweep', str(config_path), 'nothing',
                     '--out', str(tmp_path / 'o.csv')]) == EXIT_VALIDATION


class TestComplexityVerb:

    def test_prints_slope(self, config_path, capsys):
        assert main(['probe-complexity', '--config', str(config_path),
                     '--n-tx', '8,16']) == EXIT_OK
        assert 'log-log slope' in capsys.readouterr().out
