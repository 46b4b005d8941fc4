# -*- coding: utf-8 -*-

import numpy as np
import pytest

from lattice.grid_space import GridSpace, NormKind
from operators.lin_op import LinOp
from operators.order import domination_check, jordan_split, op_positivity_check
from operators.spectral import SpectralMethod, neumann_inverse, resolvent, spectral_radius
from utils.numerical_errors import DivergentSeries, SingularResolvent, SpaceMismatch


def _square(matrix, norm_kind=NormKind.SUP, p=None):
    matrix = np.asarray(matrix, dtype=float)
    space = GridSpace.unit(matrix.shape[0], norm_kind, p)
    return LinOp(matrix, space, space)


def test_exact_norms_of_the_lattice_pairs():
    matrix = np.array([[1.0, -2.0], [3.0, 0.5]])
    assert _square(matrix, NormKind.SUP).exact_norm() == pytest.approx(3.5)
    assert _square(matrix, NormKind.L1).exact_norm() == pytest.approx(4.0)
    assert _square(matrix, NormKind.LP, 2.0).exact_norm() == pytest.approx(np.linalg.norm(matrix, 2))


def test_weighted_l1_norm_uses_the_quadrature_weights():
    space = GridSpace.uniform(0.0, 1.0, 5, NormKind.L1)
    operator = LinOp.identity(space)
    assert operator.exact_norm() == pytest.approx(1.0)


def test_positive_sup_to_l1_norm_is_the_mass_of_the_ones_image():
    sup = GridSpace.unit(3, NormKind.SUP)
    l1 = GridSpace.unit(2, NormKind.L1)
    operator = LinOp(np.array([[1.0, 2.0, 0.0], [0.5, 0.0, 1.0]]), sup, l1)
    assert operator.exact_norm() == pytest.approx(4.5)


def test_norm_estimate_brackets_the_lp_norm(rng):
    space = GridSpace.unit(5, NormKind.LP, 3.0)
    operator = LinOp(rng.random((5, 5)), space, space)
    estimate = operator.norm_estimate(rng)
    assert not estimate.exact
    assert 0.0 < estimate.lower_bound <= estimate.estimate


def test_composition_checks_the_dimensions():
    a = _square(np.eye(2))
    b = _square(np.eye(3))
    with pytest.raises(SpaceMismatch):
        a @ b


def test_resolvent_inverts_lambda_minus_a():
    a = _square([[-1.0, 0.5], [0.0, -2.0]])
    r = resolvent(a, 1.0)
    assert np.allclose((np.eye(2) - a.matrix) @ r.matrix, np.eye(2), atol=1e-12)


def test_resolvent_at_an_eigenvalue_is_singular():
    with pytest.raises(SingularResolvent):
        resolvent(_square([[0.0, 0.0], [0.0, -1.0]]), 0.0)


def test_gelfand_route_approaches_the_eigenvalue_route(rng):
    operator = _square(rng.random((4, 4)))
    eigen = spectral_radius(operator)
    gelfand = spectral_radius(operator, SpectralMethod.GELFAND)
    assert gelfand.value == pytest.approx(eigen.value, rel=5e-2)
    assert len(gelfand.iterates) == 64
    assert float(eigen) == eigen.value


def test_spectral_radius_of_a_nilpotent_matrix_is_zero():
    operator = _square(np.eye(4, k=1))
    assert spectral_radius(operator, SpectralMethod.GELFAND).value == 0.0


def test_neumann_series_inverts_i_minus_t():
    operator = _square([[0.2, 0.3], [0.1, 0.25]])
    inverse = neumann_inverse(operator, 1e-14)
    assert np.allclose(inverse.matrix, np.linalg.inv(np.eye(2) - operator.matrix), atol=1e-12)


def test_neumann_series_diverges_at_radius_one():
    with pytest.raises(DivergentSeries):
        neumann_inverse(_square([[1.2]]), 1e-12)


def test_positivity_check():
    assert op_positivity_check(_square([[1.0, 0.0], [0.5, 2.0]]))
    report = op_positivity_check(_square([[1.0, -0.1], [0.5, 2.0]]))
    assert not report
    assert report.min_entry == pytest.approx(-0.1)


def test_domination_and_spectral_monotonicity(rng):
    s = _square(rng.standard_normal((4, 4)))
    t = abs(s) + _square(np.full((4, 4), 0.1))
    report = domination_check(s, t, rng=rng)
    assert report
    assert report.spectral_radius_s <= report.spectral_radius_t + 1e-8


def test_domination_fails_on_an_excess(rng):
    s = _square([[1.0, -2.0], [0.0, 1.0]])
    t = _square([[1.0, 1.0], [0.0, 1.0]])
    report = domination_check(s, t, rng=rng)
    assert not report
    assert report.max_excess == pytest.approx(1.0)


def test_jordan_split(rng):
    operator = _square(rng.standard_normal((3, 3)))
    positive, negative = jordan_split(operator)
    assert np.all(positive.matrix >= 0.0) and np.all(negative.matrix >= 0.0)
    assert np.allclose((positive - negative).matrix, operator.matrix)
    assert np.allclose((positive + negative).matrix, abs(operator).matrix)
