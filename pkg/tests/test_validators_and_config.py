# -*- coding: utf-8 -*-

import numpy as np
import pytest

import scenarios
from utils.config import Config, format_validation_errors
from utils.constants import SCENARIOS_DIR
from utils.matrix_literals import format_matrix, parse_float_list, parse_matrix
from validators.matrix_validators import is_ascending_list, is_finite_matrix, is_square_matrix
from validators.number_validators import (is_alpha_exponent, is_lp_exponent, is_positive_float, is_positive_int,
                                          is_step_count, is_tolerance)
from validators.path_validators import is_output_directory
from validators.validation_error import ValidationError


def test_matrix_literals():
    assert np.array_equal(parse_matrix('[[1, 2], [3, 4.5]]'), [[1.0, 2.0], [3.0, 4.5]])
    assert np.array_equal(parse_matrix(format_matrix(np.array([[-0.5]]))), [[-0.5]])
    assert np.array_equal(parse_float_list('[0.25, 1]'), [0.25, 1.0])


@pytest.mark.parametrize('text', ['[[1, 2], [3]]', '[1, 2]', 'abc', '[[1, x]]', '[[]]', '[[1, 2'])
def test_bad_matrix_literals(text):
    with pytest.raises(ValueError):
        parse_matrix(text)


def test_bad_float_lists():
    with pytest.raises(ValueError):
        parse_float_list('[[1, 2]]')
    with pytest.raises(ValueError):
        parse_float_list('[]')


def test_matrix_validators():
    assert is_square_matrix(np.eye(2)) is True
    result = is_square_matrix(np.ones((2, 3)))
    assert isinstance(result, ValidationError)
    assert not result
    assert result.message == 'Only square matrices are allowed.'
    assert not is_finite_matrix(np.array([[np.inf]]))
    assert is_ascending_list(np.array([0.0, 1.0, 5.0]))
    assert not is_ascending_list(np.array([1.0, 1.0]))
    assert not is_ascending_list(np.array([-1.0, 2.0]))


def test_number_validators():
    assert is_alpha_exponent(1.0) and is_alpha_exponent(1.5)
    assert not is_alpha_exponent(2.0)
    assert is_lp_exponent(1.0) and not is_lp_exponent(0.5)
    assert is_step_count(16) and not is_step_count(8)
    assert not is_tolerance(1.0) and not is_tolerance(0.0)
    assert not is_positive_float(float('nan'))


def test_positive_int_validator():
    assert is_positive_int(1) is True
    assert is_positive_int('200') is True
    result = is_positive_int(0)
    assert isinstance(result, ValidationError)
    assert result.message == 'Only positive integer values are allowed.'
    assert not is_positive_int(-3)
    assert not is_positive_int('ten')
    assert not is_positive_int(None)


def test_output_directory_validator(tmp_path):
    blocker = tmp_path / 'blocker'
    blocker.write_text('', encoding='utf-8')
    assert is_output_directory(tmp_path)
    assert is_output_directory(tmp_path / 'new' / 'out')
    assert not is_output_directory(blocker)
    assert not is_output_directory(blocker / 'out')


@pytest.mark.parametrize('path', sorted(SCENARIOS_DIR.glob('*.ini')), ids=lambda path: path.stem)
def test_shipped_scenario_files_are_valid(path):
    config = Config(path)
    config.read_config()
    assert config.validate() == {}
    assert config.get_value(Config.SECTION_COMMON, 'scenario') in scenarios.SCENARIOS


def test_scenario_file_values_are_converted():
    config = Config(SCENARIOS_DIR / 'triple_scalar.ini')
    config.read_config()
    assert np.array_equal(config.get_value('ScenarioTriple', 'a'), [[-2.0]])
    assert np.array_equal(config.get_value('ScenarioTriple', 'reporttimes'), [0.25, 0.5, 1.0])
    assert config.get_value('TimeGrid', 'steps') == 1000
    config.override(Config.SECTION_COMMON, 'seed', 7)
    assert config.get_value(Config.SECTION_COMMON, 'seed') == 7


def test_invalid_options_are_reported(tmp_path):
    path = tmp_path / 'bad.ini'
    path.write_text('[Common]\nscenario = ScenarioConvC0\n\n[TimeGrid]\nsteps = 4\n\n'
                    '[ScenarioConvC0]\nalpha = 2.5\n', encoding='utf-8')
    config = Config(path)
    config.read_config()
    message = format_validation_errors(config.validate())
    assert 'ScenarioConvC0.alpha: Only exponents in [1, 2) are allowed.' in message
    assert 'TimeGrid.steps' in message


def test_unknown_scenarios_are_reported(tmp_path):
    path = tmp_path / 'unknown.ini'
    path.write_text('[Common]\nscenario = Nothing\n', encoding='utf-8')
    config = Config(path)
    config.read_config()
    assert 'Common.scenario' in format_validation_errors(config.validate())


def test_missing_files_are_reported(tmp_path):
    with pytest.raises(ValueError):
        Config(tmp_path / 'missing.ini').read_config()
