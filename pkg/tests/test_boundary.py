# -*- coding: utf-8 -*-

import numpy as np
import pytest

from boundary.boundary_model import BoundaryModel
from boundary.greiner import (DEFAULT_LAMBDA_SWEEP, boundary_norm_estimate, boundary_sweep, boundary_triple,
                              dirichlet_map, eliminated_generator, representation_check)
from boundary.heat_feedback import boundary_kernel, continuum_norm_l_lambda_one, heat_feedback
from operators.spectral import spectral_radius
from systems.time_functions import TimeGrid
from utils.numerical_errors import HypothesisFailed, InconsistentRepresentations


def test_boundary_model_needs_interior_nodes():
    with pytest.raises(ValueError):
        BoundaryModel(3)


def test_dirichlet_operator_is_the_restriction(rng):
    model = BoundaryModel(20)
    assert model.dirichlet_residual(rng.standard_normal(18)) < 1e-10
    assert model.x_space.dim == 18
    assert model.boundary_space.dim == 2


def test_dirichlet_map_of_the_constant_boundary_values():
    model = BoundaryModel(30)
    harmonic = dirichlet_map(model, 0.0).matrix
    assert np.allclose(harmonic @ np.ones(2), 1.0)
    assert np.allclose(harmonic[:, 1], model.x_space.nodes)
    damped = dirichlet_map(model, 10.0).matrix
    assert np.min(damped) >= 0.0
    assert np.max(damped @ np.ones(2)) < 1.0


def test_representations_of_the_feedback_generator_agree():
    model = BoundaryModel.with_kernel(30, boundary_kernel('constant', 0.5))
    triple = boundary_triple(model)
    for lam in (0.0, 1.0, 10.0):
        assert representation_check(model, triple, lam) <= 1e-6


def test_eliminated_generator_is_metzler_for_a_positive_kernel():
    matrix = eliminated_generator(BoundaryModel.with_kernel(20, boundary_kernel('constant', 0.5))).matrix
    off_diagonal = matrix - np.diag(np.diag(matrix))
    assert np.min(off_diagonal) >= 0.0


def test_norm_of_l_lambda_one_decreases_like_the_continuum():
    rows = boundary_sweep(BoundaryModel(200), DEFAULT_LAMBDA_SWEEP)
    norms = [row.norm_l_lambda_one for row in rows]
    assert all(later < earlier for earlier, later in zip(norms, norms[1:]))
    for row in rows:
        assert row.norm_l_lambda_one == pytest.approx(continuum_norm_l_lambda_one(row.lam), abs=5e-3)
        assert row.spectral_radius == 0.0
    assert continuum_norm_l_lambda_one(200.0) == pytest.approx(0.266, abs=1e-3)
    assert continuum_norm_l_lambda_one(0.0) == 1.0


def test_unknown_kernel():
    with pytest.raises(ValueError):
        boundary_kernel('gaussian', 1.0)


def test_positive_kernel_gives_a_positive_semigroup():
    result = heat_feedback(50, boundary_kernel('constant', 0.5), TimeGrid(0.5, 100), [0.1, 0.5])
    assert result.majorant is None
    assert result.report.lambda_star == 1.0
    assert result.report.hypothesis_report.passed
    for row in result.time_rows:
        assert row.min_entry_s >= -1e-12
        assert row.domination_residual <= 1e-10
    assert result.as_dict()['lambda_star'] == 1.0


def test_signed_kernel_is_dominated():
    result = heat_feedback(30, boundary_kernel('cosine', 0.3), TimeGrid(0.5, 100), [0.1, 0.5])
    assert result.majorant is not None
    assert result.semigroup.diagnostics.theorem_kind.value == 'DOM'
    for row in result.time_rows:
        assert row.domination_residual <= 1e-8


def test_large_kernel_fails_the_spectral_radius_hypothesis():
    with pytest.raises(HypothesisFailed) as error:
        heat_feedback(30, boundary_kernel('constant', 2.5), TimeGrid(0.5, 100), [0.5])
    assert error.value.hypothesis == 'spectral_radius'


def test_representation_tolerance_is_applied():
    model = BoundaryModel.with_kernel(30, boundary_kernel('constant', 0.5))
    with pytest.raises(InconsistentRepresentations):
        representation_check(model, boundary_triple(model), 1.0, tol=0.0)
    with pytest.raises(InconsistentRepresentations):
        heat_feedback(30, boundary_kernel('constant', 0.5), TimeGrid(0.5, 100), [0.5], resolvent_tol=0.0)


def test_boundary_norm_estimate_bounds_the_spectral_radius():
    model = BoundaryModel.with_kernel(200, boundary_kernel('constant', 0.5))
    for lam in (0.0, 1.0, 10.0, 100.0):
        norm, bound = boundary_norm_estimate(model, lam)
        assert norm == pytest.approx(continuum_norm_l_lambda_one(lam), abs=5e-3)
        assert spectral_radius(model.phi @ dirichlet_map(model, lam)).value <= bound + 1e-12
