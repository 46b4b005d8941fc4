# -*- coding: utf-8 -*-

import numpy as np
import pytest

from lattice.grid_space import GridSpace, NormKind
from operators.lin_op import LinOp
from operators.spectral import spectral_radius
from semigroups.matrix_exp import MatrixExp
from systems.triple import TripleSpec, RegularizedControl


def make_triple(a, b, c, lambda0=1.0, x_norm=NormKind.SUP, u_norm=NormKind.SUP, p=None):
    """The triple of plain matrices on R^n and R^m with unit weights"""
    a, b, c = np.atleast_2d(a), np.atleast_2d(b), np.atleast_2d(c)
    x_space = GridSpace.unit(a.shape[0], x_norm, p if x_norm is NormKind.LP else None)
    u_space = GridSpace.unit(c.shape[0], u_norm, p if u_norm is NormKind.LP else None)
    generator = LinOp(a, x_space, x_space)
    control = RegularizedControl.from_unregularized(generator, LinOp(b, u_space, x_space), lambda0)
    return TripleSpec(MatrixExp(generator), control, LinOp(c, x_space, u_space), u_space)


def random_positive_triple(rng, dim, u_dim=1, radius=0.5, u_norm=NormKind.SUP):
    """A Metzler generator with negative growth bound, positive B and C, C scaled to r(C R(0, A) B) == radius"""
    off_diagonal = rng.random((dim, dim)) * (1.0 - np.eye(dim))
    a = off_diagonal - np.diag(off_diagonal.sum(axis=1) + 1.0 + rng.random(dim))
    b = rng.random((dim, u_dim)) + 0.1
    c = rng.random((u_dim, dim)) + 0.1
    triple = make_triple(a, b, c, u_norm=u_norm)
    current = spectral_radius(triple.feedback_operator(0.0)).value
    return make_triple(a, b, c * (radius / current), u_norm=u_norm)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def scalar_triple():
    """A = -2, B = C = 1; the closed loop semigroup is exp(-t)"""
    return make_triple([[-2.0]], [[1.0]], [[1.0]])


@pytest.fixture
def benchmark_triple():
    """A 2 x 2 positive benchmark with r(C R(0, A) B) = 0.5"""
    return make_triple([[-2.0, 0.5], [0.5, -2.0]], [[1.0], [1.0]], [[0.375, 0.375]])
