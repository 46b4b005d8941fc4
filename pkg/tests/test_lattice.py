# -*- coding: utf-8 -*-

import numpy as np
import pytest

from lattice.axiom_probe import lattice_axiom_probe
from lattice.grid_space import GridSpace, NormKind, Quadrature, quadrature_weights
from lattice.lattice_vector import LatticeVector, lattice_decompose, lattice_sup_inf, norm_eval
from utils.numerical_errors import SpaceMismatch


def test_trapezoid_weights_sum_to_the_interval_length():
    nodes, weights = quadrature_weights(0.0, 2.0, 21, Quadrature.TRAPEZOID)
    assert nodes[0] == 0.0 and nodes[-1] == 2.0
    assert weights.sum() == pytest.approx(2.0)
    assert weights[0] == pytest.approx(weights[1] / 2.0)


def test_midpoint_nodes_lie_inside_the_cells():
    nodes, weights = quadrature_weights(0.0, 1.0, 4, Quadrature.MIDPOINT)
    assert np.allclose(nodes, [0.125, 0.375, 0.625, 0.875])
    assert np.allclose(weights, 0.25)


def test_norms_of_the_constant_one():
    for norm_kind, p in ((NormKind.L1, None), (NormKind.LP, 3.0), (NormKind.SUP, None)):
        space = GridSpace.uniform(0.0, 1.0, 11, norm_kind, p)
        assert space.norm(np.ones(11)) == pytest.approx(1.0)


def test_sup_norm_ignores_the_weights():
    space = GridSpace.uniform(0.0, 5.0, 6, NormKind.SUP)
    assert space.norm(np.array([0.0, -3.0, 1.0, 0.0, 0.0, 2.0])) == 3.0


def test_lp_space_needs_an_exponent_above_one():
    with pytest.raises(ValueError):
        GridSpace.uniform(0.0, 1.0, 5, NormKind.LP, 1.0)
    with pytest.raises(ValueError):
        GridSpace.uniform(0.0, 1.0, 5, NormKind.LP)


def test_nodes_must_ascend():
    with pytest.raises(ValueError):
        GridSpace(np.array([0.0, 2.0, 1.0]), np.ones(3), NormKind.SUP)


def test_weights_must_match_the_interval():
    with pytest.raises(ValueError):
        GridSpace(np.array([0.0, 1.0]), np.array([0.2, 0.2]), NormKind.L1, interval=(0.0, 1.0))


def test_with_norm_keeps_the_grid():
    space = GridSpace.uniform(0.0, 1.0, 5, NormKind.L1)
    other = space.with_norm(NormKind.LP, 2.0)
    assert other.same_grid(space)
    assert other != space


@pytest.mark.parametrize('norm_kind, p, is_al, is_am', [
    (NormKind.L1, None, True, False),
    (NormKind.SUP, None, False, True),
    (NormKind.LP, 2.0, False, False),
])
def test_axiom_probe_recognizes_the_norm_kind(rng, norm_kind, p, is_al, is_am):
    space = GridSpace.uniform(0.0, 1.0, 17, norm_kind, p)
    report = lattice_axiom_probe(space, 50, rng)
    assert report.is_al is is_al
    assert report.is_am is is_am


def test_axiom_probe_needs_a_trial(rng):
    with pytest.raises(ValueError):
        lattice_axiom_probe(GridSpace.unit(3, NormKind.L1), 0, rng)


def test_decomposition_reassembles_the_vector(rng):
    space = GridSpace.uniform(0.0, 1.0, 9, NormKind.L1)
    x = LatticeVector(space, rng.standard_normal(9))
    positive, negative, modulus = lattice_decompose(x)
    assert np.array_equal((positive - negative).values, x.values)
    assert np.array_equal((positive + negative).values, modulus.values)
    assert positive.is_positive() and negative.is_positive()
    assert norm_eval(modulus) == pytest.approx(norm_eval(x))


def test_sup_and_inf_are_componentwise():
    space = GridSpace.unit(3, NormKind.SUP)
    x = LatticeVector(space, [1.0, -2.0, 3.0])
    y = LatticeVector(space, [0.0, 1.0, 4.0])
    upper, lower = lattice_sup_inf(x, y)
    assert np.array_equal(upper.values, [1.0, 1.0, 4.0])
    assert np.array_equal(lower.values, [0.0, -2.0, 3.0])


def test_vectors_of_different_spaces_do_not_mix():
    x = LatticeVector(GridSpace.unit(2, NormKind.SUP), [1.0, 2.0])
    y = LatticeVector(GridSpace.unit(2, NormKind.L1), [1.0, 2.0])
    with pytest.raises(SpaceMismatch):
        x.sup(y)
    with pytest.raises(SpaceMismatch):
        LatticeVector(GridSpace.unit(2, NormKind.SUP), [1.0, 2.0, 3.0])
