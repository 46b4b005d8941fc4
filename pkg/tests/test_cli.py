# -*- coding: utf-8 -*-

import csv
import json

import numpy as np
import pytest

from perturblab import main, run_scenario
from scenarios import ScenarioResult
from utils.constants import SCENARIOS_DIR
from utils.report_writer import REPORT_HEADER, emit_report

QUICK_SCENARIOS = ['triple_scalar', 'triple_zero_c', 'triple_signed']

SLOW_SCENARIOS = ['conv_c0', 'rank_one_lp', 'rank_one_lp_signed', 'heat_feedback_constant', 'heat_feedback_cosine']


def _run(name, output_dir, *extra):
    return main(['run', str(SCENARIOS_DIR / '{}.ini'.format(name)), '--out', str(output_dir), '--quiet', *extra])


def _report(output_dir):
    with open(output_dir / 'report.csv', encoding='utf-8', newline='') as report_file:
        return list(csv.DictReader(report_file))


@pytest.mark.parametrize('name', QUICK_SCENARIOS)
def test_quick_scenarios_succeed(tmp_path, name):
    assert _run(name, tmp_path) == 0
    assert (tmp_path / 'report.csv').is_file()
    assert (tmp_path / 'diagnostics.json').is_file()
    assert not (tmp_path / 'convergence.csv').exists()


@pytest.mark.slow
@pytest.mark.parametrize('name', SLOW_SCENARIOS)
def test_slow_scenarios_succeed(tmp_path, name):
    assert _run(name, tmp_path) == 0
    assert _report(tmp_path)


def test_failed_hypothesis_exits_with_two(tmp_path):
    assert _run('triple_r12', tmp_path) == 2


def test_scalar_report(tmp_path):
    assert _run('triple_scalar', tmp_path) == 0
    with open(tmp_path / 'report.csv', encoding='utf-8') as report_file:
        assert report_file.readline().strip() == ','.join(REPORT_HEADER)

    rows = _report(tmp_path)
    s_rows = [row for row in rows if row['quantity'] == 'S' and row['t'] and float(row['t']) == 1.0]
    assert len(s_rows) == 1
    assert float(s_rows[0]['value']) == pytest.approx(np.exp(-1.0), abs=1e-6)

    times = [float(row['t']) for row in rows if row['t']]
    assert times == sorted(times)

    with open(tmp_path / 'diagnostics.json', encoding='utf-8') as diagnostics_file:
        diagnostics = json.load(diagnostics_file)
    assert diagnostics['scenario'] == 'ScenarioTriple'
    assert diagnostics['laplace_identity_holds'] is True
    assert max(diagnostics['laplace_residuals'].values()) <= 1e-3


def test_same_seed_gives_identical_files(tmp_path):
    first, second = tmp_path / 'first', tmp_path / 'second'
    assert _run('triple_signed', first, '--seed', '3') == 0
    assert _run('triple_signed', second, '--seed', '3') == 0
    for file_name in ('report.csv', 'diagnostics.json'):
        assert (first / file_name).read_bytes() == (second / file_name).read_bytes()


def test_refinement_writes_the_convergence_table(tmp_path):
    assert _run('triple_zero_c', tmp_path, '--refine', '2') == 0
    with open(tmp_path / 'convergence.csv', encoding='utf-8', newline='') as convergence_file:
        rows = list(csv.DictReader(convergence_file))
    assert [row['level'] for row in rows] == ['0', '1']


def test_empty_result_writes_only_the_header(tmp_path):
    written = emit_report(ScenarioResult(), tmp_path)
    assert (tmp_path / 'report.csv').read_text(encoding='utf-8') == ','.join(REPORT_HEADER) + '\n'
    assert not (tmp_path / 'convergence.csv').exists()
    assert [path.name for path in written] == ['report.csv', 'diagnostics.json']


def test_missing_config_exits_with_one(tmp_path):
    assert run_scenario(tmp_path / 'missing.ini', tmp_path) == 1


def test_unwritable_output_exits_with_one(tmp_path):
    blocker = tmp_path / 'blocker'
    blocker.write_text('', encoding='utf-8')
    assert _run('triple_zero_c', blocker / 'out') == 1


def test_invalid_config_exits_with_one(tmp_path):
    path = tmp_path / 'bad.ini'
    path.write_text('[Common]\nscenario = ScenarioTriple\n\n[ScenarioTriple]\na = [[1, 2]]\n', encoding='utf-8')
    assert run_scenario(path, tmp_path / 'out') == 1


def test_laplace_tolerance_is_read_from_the_scenario_file(tmp_path):
    path = tmp_path / 'strict.ini'
    text = (SCENARIOS_DIR / 'triple_scalar.ini').read_text(encoding='utf-8')
    path.write_text(text + '\n[Tolerances]\nlaplace = 1e-12\n', encoding='utf-8')
    assert run_scenario(path, tmp_path / 'out') == 0
    with open(tmp_path / 'out' / 'diagnostics.json', encoding='utf-8') as diagnostics_file:
        assert json.load(diagnostics_file)['laplace_identity_holds'] is False


@pytest.mark.slow
@pytest.mark.parametrize('name, verdict', [('conv_c0', 'resolvent_factorization_holds'),
                                           ('heat_feedback_constant', 'representation_holds')])
def test_resolvent_representations_agree(tmp_path, name, verdict):
    assert _run(name, tmp_path) == 0
    with open(tmp_path / 'diagnostics.json', encoding='utf-8') as diagnostics_file:
        assert json.load(diagnostics_file)[verdict] is True
