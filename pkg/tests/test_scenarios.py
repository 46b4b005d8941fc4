# -*- coding: utf-8 -*-

import numpy as np
import pytest

from scenarios._base import RefinementSample, convergence_rows, report_times
from scenarios._kernels import kernel, sample
from scenarios.scenario_conv_c0 import (build_conv_c0, conv_spaces, decay_integral, decay_integral_closed_form,
                                        resolvent_oracle_deviation)
from scenarios.scenario_rank_one_lp import build_rank_one_lp, host_feedback_map, left_shift
from systems.time_functions import TimeGrid
from theorems.perturbed_semigroup import factorization_deviation
from utils.numerical_errors import BadAlpha


def test_decay_integral_at_alpha_one():
    assert decay_integral(1.0, 1.0) == pytest.approx(0.7965996, abs=1e-4)


def test_decay_integral_matches_the_closed_form():
    for lam in (1.0, 10.0, 100.0):
        assert decay_integral(lam, 1.5) == pytest.approx(decay_integral_closed_form(lam), abs=1e-8)
    assert decay_integral(100.0, 1.5) == pytest.approx(0.33449, abs=1e-4)


def test_decay_integral_decreases_in_lambda():
    values = [decay_integral(lam, 1.5) for lam in (1.0, 10.0, 100.0)]
    assert values[0] > values[1] > values[2] > 0.0


def test_decay_integral_rejects_bad_arguments():
    with pytest.raises(BadAlpha):
        decay_integral(1.0, 2.0)
    with pytest.raises(BadAlpha):
        decay_integral(1.0, 0.5)
    with pytest.raises(ValueError):
        decay_integral(0.0, 1.5)


def test_convolution_model_needs_a_grid():
    with pytest.raises(ValueError):
        conv_spaces(3)
    with pytest.raises(BadAlpha):
        build_conv_c0(20, 2.5, kernel('one'))


def test_right_shift_resolvent_approaches_the_integral():
    triple = build_conv_c0(200, 1.5, kernel('one', 0.25))
    assert resolvent_oracle_deviation(triple, 1.0) < 1e-2


def test_convolution_resolvent_factorization_matches_the_closed_loop():
    triple = build_conv_c0(100, 1.5, kernel('one', 0.25))
    for lam in (10.0, 100.0):
        assert factorization_deviation(triple, lam) <= 1e-8


def test_host_feedback_map_of_the_integral_functional():
    triple = build_rank_one_lp(200, 2.0, kernel('one'), kernel('one'))
    assert host_feedback_map(triple, kernel('one'), 1.0) == pytest.approx(np.exp(-1.0), abs=1e-4)
    assert host_feedback_map(triple, kernel('one'), 2.0) == pytest.approx((np.exp(-2.0) + 1.0) / 4.0, abs=1e-4)


def test_left_shift_needs_a_grid():
    with pytest.raises(ValueError):
        left_shift(3, 2.0)


def test_kernels():
    nodes = np.array([0.0, 0.5, 1.0])
    assert np.allclose(sample(kernel('cosine', 0.5), nodes), [0.5, 0.0, -0.5], atol=1e-15)
    assert np.array_equal(sample(kernel('one'), nodes), np.ones(3))
    with pytest.raises(ValueError):
        kernel('unknown')


def test_convergence_rows_estimate_the_order():
    nodes = np.linspace(0.0, 1.0, 5)
    samples = [RefinementSample(10, 0.4, nodes, np.full(5, 0.16)),
               RefinementSample(20, 0.2, nodes, np.full(5, 0.04)),
               RefinementSample(40, 0.1, nodes, np.zeros(5))]
    rows = convergence_rows(samples)
    assert [row.level for row in rows] == [0, 1]
    assert rows[0].order is None
    assert rows[1].error == pytest.approx(0.04)
    assert rows[1].order == pytest.approx(2.0)
    assert convergence_rows(samples[:1]) == []


def test_report_times_are_snapped_to_the_grid():
    grid = TimeGrid(1.0, 100)
    assert report_times(None, grid) == [1.0]
    assert report_times([], grid) == [1.0]
    assert report_times([0.5, 0.25], grid) == pytest.approx([0.5, 0.25])
