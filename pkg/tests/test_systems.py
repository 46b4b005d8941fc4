# -*- coding: utf-8 -*-

import numpy as np
import pytest

from conftest import make_triple
from lattice.grid_space import NormKind
from lattice.lattice_vector import LatticeVector
from systems.admissibility import admissibility_constants, controllability_bound, observability_bound_check
from systems.system_maps import (SystemMaps, controllability_map, io_operator_apply, io_power_bound_check,
                                 io_time_operator, laplace_identity_residual, laplace_transform,
                                 observability_map, picard_resolve)
from systems.time_functions import StepFunction, TimeGrid, TimeGridFn
from utils.numerical_errors import DivergentIteration, NonDecayingTail, NotRescaled

DECAYING_INPUTS = {
    'exp': lambda t: np.exp(-t),
    'fast_exp': lambda t: np.exp(-2.0 * t),
    'slow_exp': lambda t: np.exp(-0.5 * t),
    'ramp': lambda t: t * np.exp(-t),
    'square_ramp': lambda t: t ** 2 * np.exp(-2.0 * t),
    'damped_cosine': lambda t: np.exp(-t) * np.cos(t),
    'damped_sine': lambda t: np.exp(-2.0 * t) * np.sin(2.0 * t),
    'gaussian': lambda t: np.exp(-t ** 2),
    'affine_exp': lambda t: (1.0 + t) * np.exp(-1.5 * t),
    'rational_exp': lambda t: np.exp(-t) / (1.0 + t) ** 2,
}


def test_time_grid():
    grid = TimeGrid(2.0, 16)
    assert grid.step == 0.125
    assert grid.index_of(0.5) == 4
    with pytest.raises(ValueError):
        grid.index_of(0.3)
    with pytest.raises(ValueError):
        TimeGrid(1.0, 8)
    with pytest.raises(ValueError):
        TimeGrid(0.0, 32)


def test_step_function_vanishes_after_its_support():
    u = StepFunction([0.0, 0.5, 1.0], [[1.0], [-2.0]])
    assert u.evaluate(0.25)[0] == 1.0
    assert u.evaluate(0.75)[0] == -2.0
    assert u.evaluate(1.0)[0] == 0.0
    assert u.sup_norm() == 2.0


def test_closed_loop_of_the_scalar_triple(scalar_triple):
    assert scalar_triple.closed_loop_matrix().matrix[0, 0] == pytest.approx(-1.0)
    assert scalar_triple.closed_loop_semigroup(1.0).matrix[0, 0] == pytest.approx(np.exp(-1.0))
    assert scalar_triple.feedback_operator(3.0).matrix[0, 0] == pytest.approx(0.2)
    assert scalar_triple.a_inverse_b().matrix[0, 0] == pytest.approx(-0.5)
    assert scalar_triple.control_resolvent(scalar_triple.lambda0).matrix[0, 0] == pytest.approx(1.0 / 3.0)


def test_rescaling_keeps_the_regularized_control(scalar_triple):
    rescaled = scalar_triple.rescale(1.0)
    assert rescaled.lambda0 == pytest.approx(0.0)
    assert np.allclose(rescaled.b_reg.matrix, scalar_triple.b_reg.matrix)
    assert np.allclose(rescaled.closed_loop_matrix().matrix, scalar_triple.closed_loop_matrix().matrix - 1.0)


def test_growing_triple_needs_rescaling():
    triple = make_triple([[1.0]], [[1.0]], [[1.0]], lambda0=2.0)
    with pytest.raises(NotRescaled):
        triple.a_inverse_b()
    with pytest.raises(NotRescaled):
        SystemMaps(triple, TimeGrid(1.0, 16))


def test_compatibility_of_a_matrix_triple(benchmark_triple):
    report = benchmark_triple.compatibility_check()
    assert report.passes
    assert report.range_difference < 1e-12


def test_controllability_map_of_a_constant_input(scalar_triple):
    u = StepFunction([0.0, 1.0], [[1.0]])
    state = controllability_map(scalar_triple, u, 1.0)
    assert state.values[0] == pytest.approx((1.0 - np.exp(-2.0)) / 2.0)
    norm, bound = controllability_bound(scalar_triple, u, 1.0)
    assert norm <= bound


def test_observability_map(scalar_triple):
    x = LatticeVector(scalar_triple.x_space, [3.0])
    times = np.linspace(0.0, 1.0, 5)
    y = observability_map(scalar_triple, x, times)
    assert np.allclose(y.values[:, 0], 3.0 * np.exp(-2.0 * times))


def test_io_operator_of_a_constant_input(scalar_triple):
    grid = TimeGrid(2.0, 64)
    output = io_operator_apply(scalar_triple, TimeGridFn.from_callable(grid, lambda t: 1.0))
    assert np.allclose(output.values[:, 0], (1.0 - np.exp(-2.0 * grid.times)) / 2.0, atol=1e-12)


def test_picard_inverts_id_minus_f(scalar_triple):
    grid = TimeGrid(2.0, 400)
    solution = picard_resolve(scalar_triple, TimeGridFn.from_callable(grid, lambda t: 1.0))
    assert np.allclose(solution.values[:, 0], 2.0 - np.exp(-grid.times), atol=1e-3)


def test_picard_diverges_for_a_large_feedback():
    triple = make_triple([[-1.0]], [[1.0]], [[1.2]])
    grid = TimeGrid(50.0, 500)
    with pytest.raises(DivergentIteration):
        picard_resolve(triple, TimeGridFn.from_callable(grid, lambda t: 1.0))


def test_laplace_transform_of_an_exponential():
    grid = TimeGrid(10.0, 1000)
    f = TimeGridFn.from_callable(grid, lambda t: np.exp(-t))
    assert laplace_transform(f, 1.0)[0] == pytest.approx(0.5, rel=1e-6)
    with pytest.raises(ValueError):
        laplace_transform(f, 0.0)


def test_laplace_transform_needs_a_decaying_tail():
    f = TimeGridFn.from_callable(TimeGrid(2.0, 64), lambda t: np.exp(t))
    with pytest.raises(NonDecayingTail):
        laplace_transform(f, 3.0)


def test_laplace_identity(scalar_triple):
    u = TimeGridFn.from_callable(TimeGrid(20.0, 2000), lambda t: np.exp(-t))
    assert laplace_identity_residual(scalar_triple, u, 1.0) < 1e-3


@pytest.mark.parametrize('lam', [0.5, 1.0, 2.0])
@pytest.mark.parametrize('name', sorted(DECAYING_INPUTS))
@pytest.mark.parametrize('triple_name', ['scalar_triple', 'benchmark_triple'])
def test_laplace_identity_of_decaying_inputs(request, triple_name, name, lam):
    triple = request.getfixturevalue(triple_name)
    u = TimeGridFn.from_callable(TimeGrid(20.0, 4000), DECAYING_INPUTS[name], triple.u_space)
    assert laplace_identity_residual(triple, u, lam, relative=True) <= 1e-3


def test_admissibility_constants_of_the_scalar_triple(scalar_triple, rng):
    report = admissibility_constants(scalar_triple, np.inf, 1.0, probes=20, rng=rng)
    assert report.finite
    assert report.control_constant <= (1.0 - np.exp(-2.0)) / 2.0 + 1e-12
    assert report.step_constant <= (1.0 - np.exp(-2.0)) / 2.0 + 1e-12
    assert report.observation_constant == pytest.approx(1.0)
    with pytest.raises(ValueError):
        admissibility_constants(scalar_triple, 0.5, 1.0)


def test_observability_bound(benchmark_triple, rng):
    assert observability_bound_check(benchmark_triple, TimeGrid(5.0, 200), probes=20, rng=rng).holds


@pytest.mark.parametrize('norm_kind', [NormKind.SUP, NormKind.L1])
def test_io_powers_are_bounded_by_the_feedback_powers(benchmark_triple, rng, norm_kind):
    report = io_power_bound_check(benchmark_triple, 3, norm_kind, TimeGrid(10.0, 200), probes=10, rng=rng)
    assert report.holds
    assert report.bounds[0] == pytest.approx(0.5)


def test_io_power_check_limits_the_power(benchmark_triple):
    with pytest.raises(ValueError):
        io_power_bound_check(benchmark_triple, 9, NormKind.SUP, TimeGrid(1.0, 16))


def test_assembled_io_operator_matches_the_convolution(benchmark_triple, rng):
    grid = TimeGrid(2.0, 32)
    operator = io_time_operator(benchmark_triple, grid)
    values = rng.random((grid.steps + 1, 1))
    expected = SystemMaps(benchmark_triple, grid).io_apply(values[:, :, np.newaxis])[:, :, 0]
    assert np.allclose(operator.apply(values), expected, atol=1e-12)
    assert operator.is_positive()
