# -*- coding: utf-8 -*-

import numpy as np
import pytest

from interpolation.riesz_thorin import holder_positive_check, riesz_thorin_check
from interpolation.time_operator import TimeOperator
from systems.system_maps import io_time_operator
from systems.time_functions import TimeGrid
from utils.numerical_errors import NotPositiveOperator


def test_riesz_thorin_bound_of_a_random_positive_operator(rng):
    operator = TimeOperator.from_matrix(rng.random((20, 20)))
    report = riesz_thorin_check(operator, [1.5, 2.0, 3.0], 100, rng)
    assert report.holds
    assert report.bounds[1] == pytest.approx(np.sqrt(report.m0 * report.m1))


def test_riesz_thorin_at_p_one_is_the_l1_norm(rng):
    operator = TimeOperator.from_matrix([[1.0, 2.0], [0.0, 1.0]])
    report = riesz_thorin_check(operator, [1.0], 10, rng)
    assert report.empirical == [3.0]
    assert report.bounds == [3.0]


def test_holder_inequality_of_positive_operators(rng):
    for _ in range(50):
        operator = TimeOperator.from_matrix(rng.random((8, 8)))
        assert holder_positive_check(operator, float(rng.uniform(1.1, 4.0)), 5, rng) <= 1e-9


def test_checks_need_a_positive_operator(rng):
    operator = TimeOperator.from_matrix([[1.0, -0.5], [0.0, 1.0]])
    with pytest.raises(NotPositiveOperator):
        riesz_thorin_check(operator, [2.0], 5, rng)
    with pytest.raises(NotPositiveOperator):
        holder_positive_check(operator, 2.0, 5, rng)


def test_holder_needs_a_finite_exponent_above_one(rng):
    with pytest.raises(ValueError):
        holder_positive_check(TimeOperator.from_matrix(np.eye(2)), 1.0, 5, rng)


def test_input_output_operator_interpolates(benchmark_triple, rng):
    operator = io_time_operator(benchmark_triple, TimeGrid(2.0, 32))
    assert riesz_thorin_check(operator, [1.5, 2.0, 4.0], 20, rng).holds


def test_time_operator_shape_is_checked():
    with pytest.raises(ValueError):
        TimeOperator(np.eye(3), np.arange(2.0), 1)
