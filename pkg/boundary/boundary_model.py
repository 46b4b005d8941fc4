# -*- coding: utf-8 -*-

"""
Finite difference model of the Laplacian on [0, 1] with its boundary trace and a nonlocal boundary
functional Phi f(z) = integral of phi(z, x) f(x) dx, z in {0, 1}.
"""

import logging
from typing import Callable

import numpy as np

from boundary import LOGGER_NAME
from lattice.grid_space import GridSpace, NormKind, Quadrature
from operators.lin_op import LinOp
from semigroups.matrix_exp import MatrixExp

# Smallest full grid: two boundary nodes and two interior nodes
MIN_BOUNDARY_GRID = 4

""" phi(z, x) for boundary points z and interior nodes x, both broadcastable arrays. """
BoundaryKernel = Callable[[np.ndarray, np.ndarray], np.ndarray]


def full_grid_space(n: int) -> GridSpace:
    """The full grid x_j = j / (n - 1), j = 0..n-1, with trapezoid weights"""
    return GridSpace.uniform(0.0, 1.0, n, NormKind.LP, 2.0)


def interior_space(n: int) -> GridSpace:
    """The interior nodes of the full grid, L2 with midpoint weights on (h/2, 1 - h/2)"""
    h = 1.0 / (n - 1)
    return GridSpace.uniform(h / 2.0, 1.0 - h / 2.0, n - 2, NormKind.LP, 2.0, Quadrature.MIDPOINT)


def boundary_space() -> GridSpace:
    """The two boundary points, an AM-space"""
    return GridSpace(np.array([0.0, 1.0]), np.ones(2), NormKind.SUP, interval=(0.0, 1.0))


class BoundaryModel:
    """
    The maximal operator A_m (second difference on the interior rows of the full grid), the trace L onto the two
    boundary points, the boundary functional Phi: X -> dX and the Dirichlet operator A = A_m on ker(L).

    X is the interior of the grid; a full grid vector is (f_0, interior values, f_(n-1)).
    """

    def __repr__(self) -> str:
        return f'BoundaryModel(n={self.n}, x_space={self.x_space})'

    def __str__(self) -> str:
        return repr(self)

    def __init__(self, n: int, phi: LinOp or None = None):
        self.logger = logging.getLogger(self.__class__.__name__)

        if n < MIN_BOUNDARY_GRID:
            self.logger.error('The boundary model needs at least %s grid nodes, got %s.', MIN_BOUNDARY_GRID, n)
            raise ValueError('The boundary model needs at least {} grid nodes, got {}.'.format(MIN_BOUNDARY_GRID, n))

        self.n = n
        self.h = 1.0 / (n - 1)
        self.full_space = full_grid_space(n)
        self.x_space = interior_space(n)
        self.boundary_space = boundary_space()

        m = n - 2
        second_difference = np.zeros((m, n))
        rows = np.arange(m)
        second_difference[rows, rows] = 1.0
        second_difference[rows, rows + 1] = -2.0
        second_difference[rows, rows + 2] = 1.0
        self.a_m = LinOp(second_difference / self.h ** 2, self.full_space, self.x_space)

        trace = np.zeros((2, n))
        trace[0, 0] = trace[1, n - 1] = 1.0
        self.trace = LinOp(trace, self.full_space, self.boundary_space)

        self.a_dirichlet = LinOp(self.a_m.matrix[:, 1:n - 1], self.x_space, self.x_space)

        if phi is None:
            phi = LinOp.zeros(self.x_space, self.boundary_space)
        self.phi = phi.with_spaces(self.x_space, self.boundary_space)

    @classmethod
    def with_kernel(cls, n: int, kernel: BoundaryKernel) -> 'BoundaryModel':
        """A model whose Phi is the midpoint quadrature of a kernel phi(z, x)"""
        model = cls(n)
        nodes = model.x_space.nodes
        values = np.asarray(kernel(model.boundary_space.nodes[:, np.newaxis], nodes[np.newaxis, :]), dtype=float)
        values = np.broadcast_to(values, (2, nodes.size))
        if not np.all(np.isfinite(values)):
            model.logger.error('The boundary kernel is not bounded on the grid.')
            raise ValueError('The boundary kernel is not bounded on the grid.')
        return model.with_phi(LinOp(values * model.x_space.weights[np.newaxis, :], model.x_space,
                                    model.boundary_space))

    def with_phi(self, phi: LinOp) -> 'BoundaryModel':
        return BoundaryModel(self.n, phi)

    @property
    def boundary_columns(self) -> LinOp:
        """The columns of A_m at the boundary nodes, the discrete L_A: dX -> X_-1"""
        return LinOp(self.a_m.matrix[:, [0, self.n - 1]], self.boundary_space, self.x_space)

    def extend(self, interior: np.ndarray, boundary: np.ndarray) -> np.ndarray:
        """Stacks boundary and interior values into full grid vectors (columns)"""
        interior = np.asarray(interior, dtype=float)
        boundary = np.asarray(boundary, dtype=float)
        return np.concatenate((boundary[:1], interior, boundary[1:]), axis=0)

    def semigroup(self) -> MatrixExp:
        """The Dirichlet heat semigroup exp(t A)"""
        return MatrixExp(self.a_dirichlet)

    def dirichlet_residual(self, x: np.ndarray) -> float:
        """max |A x - A_m (0, x, 0)| for an interior vector x"""
        full = self.extend(x, np.zeros(2))
        return float(np.max(np.abs(self.a_dirichlet.matrix @ x - self.a_m.matrix @ full)))
