# -*- coding: utf-8 -*-

import numpy as np
import pytest

from lattice.grid_space import GridSpace, NormKind
from operators.lin_op import LinOp
from semigroups import SEMIGROUP_MODELS
from semigroups.analysis import growth_bound_estimate, semigroup_law_defect, subspace_consistency_check
from semigroups.heat_1d import Heat1D
from semigroups.matrix_exp import MatrixExp
from semigroups.shift import NilpotentLeftShift, NilpotentRightShift
from utils.numerical_errors import EmbeddingMismatch, NegativeTime


def _matrix_exp(matrix):
    matrix = np.asarray(matrix, dtype=float)
    space = GridSpace.unit(matrix.shape[0], NormKind.SUP)
    return MatrixExp(LinOp(matrix, space, space))


def test_registry_holds_every_model():
    assert set(SEMIGROUP_MODELS) == {'MatrixExp', 'NilpotentLeftShift', 'NilpotentRightShift', 'Heat1D'}


def test_matrix_exp_of_a_scalar():
    model = _matrix_exp([[-2.0]])
    assert model.evaluate(0.0).matrix[0, 0] == 1.0
    assert model.evaluate(1.0).matrix[0, 0] == pytest.approx(np.exp(-2.0))
    assert model.growth_bound == pytest.approx(-2.0)


def test_negative_time_is_rejected():
    with pytest.raises(NegativeTime):
        _matrix_exp([[-1.0]]).evaluate(-0.5)


def test_rescaling_shifts_the_growth_bound():
    model = _matrix_exp([[0.5, 0.0], [1.0, -1.0]])
    rescaled = model.rescale(1.5)
    assert rescaled.growth_bound == pytest.approx(-1.0)
    assert np.allclose(rescaled.evaluate(1.0).matrix, np.exp(-1.5) * model.evaluate(1.0).matrix)
    assert model.rescale_shift == 0.0


def test_semigroup_law_of_matrix_exponentials():
    model = _matrix_exp([[-1.0, 0.3], [0.2, -0.5]])
    assert semigroup_law_defect(model, [0.1, 0.25, 0.5]) < 1e-12


def test_growth_bound_estimate_is_not_below_the_spectral_bound():
    model = _matrix_exp([[-1.0, 5.0], [0.0, -1.5]])
    assert growth_bound_estimate(model, 2.0, 9) >= -1.0 - 1e-12


def test_left_shift_moves_values_to_the_left():
    model = NilpotentLeftShift.on_unit_interval(10, NormKind.L1)
    f = model.space.nodes ** 2
    shifted = model.evaluate(0.3).matrix @ f
    expected = np.where(model.space.nodes + 0.3 <= 1.0 + 1e-12, (model.space.nodes + 0.3) ** 2, 0.0)
    assert np.allclose(shifted, expected)


def test_left_shift_is_nilpotent_and_positive():
    model = NilpotentLeftShift.on_unit_interval(20, NormKind.LP, 2.0)
    assert not np.any(model.evaluate(1.0 + model.h).matrix)
    assert np.min(model.evaluate(0.37).matrix) >= 0.0


def test_right_shift_has_zero_inflow_at_the_left_end():
    model = NilpotentRightShift.on_unit_interval(8, NormKind.SUP)
    shifted = model.evaluate(2 * model.h).matrix @ np.ones(8)
    assert np.array_equal(shifted, [0.0, 0.0] + [1.0] * 6)


def test_shift_generator_is_metzler():
    generator = NilpotentLeftShift.on_unit_interval(10, NormKind.L1).generator().matrix
    off_diagonal = generator - np.diag(np.diag(generator))
    assert np.min(off_diagonal) >= 0.0
    assert np.all(np.diag(generator) < 0.0)


def test_heat_is_the_identity_at_zero_and_positive_later():
    model = Heat1D(mode_count=32)
    assert np.allclose(model.evaluate(0.0).matrix, np.eye(32), atol=1e-12)
    assert np.min(model.evaluate(0.01).matrix) >= -1e-10
    assert model.growth_bound == pytest.approx(-np.pi ** 2)
    assert semigroup_law_defect(model, [0.01, 0.05]) < 1e-9


def test_nested_shift_grids_are_consistent():
    def check(n):
        coarse = NilpotentLeftShift.on_unit_interval(n, NormKind.L1)
        fine = NilpotentLeftShift.on_unit_interval(2 * n, NormKind.L1)
        return subspace_consistency_check(fine, coarse, [1.0], [0.25, 0.5], np.random.default_rng(1))

    first, second = check(20), check(40)
    assert first.semigroup_residual < 1e-12
    assert second.resolvent_residual < first.resolvent_residual


def test_consistency_needs_nested_grids(rng):
    coarse = NilpotentLeftShift.on_unit_interval(20, NormKind.L1)
    fine = NilpotentLeftShift.on_unit_interval(30, NormKind.L1)
    with pytest.raises(EmbeddingMismatch):
        subspace_consistency_check(fine, coarse, [1.0], [0.5], rng)
