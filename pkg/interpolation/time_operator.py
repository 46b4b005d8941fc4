# -*- coding: utf-8 -*-

"""
Operators on sampled U-valued time functions, stored as one matrix on the stacked (time, component)
coordinates.
"""

import logging

import numpy as np

from lattice.grid_space import GridSpace, NormKind
from operators.lin_op import LinOp


class TimeOperator:
    """
    A square matrix acting on time functions flattened time major: entry k * components + i is component i
    at the time k. The stacked coordinates carry uniform weights.
    """

    def __repr__(self) -> str:
        return f'TimeOperator(times={self.times.size}, components={self.components})'

    def __str__(self) -> str:
        return repr(self)

    def __init__(self,
                 matrix: np.ndarray,
                 times: np.ndarray,
                 components: int,
                 u_space: GridSpace or None = None):
        self.logger = logging.getLogger(self.__class__.__name__)

        matrix = np.array(matrix, dtype=float)
        times = np.array(times, dtype=float)
        size = times.size * components
        if matrix.shape != (size, size):
            self.logger.error('%s times with %s components need a %s x %s matrix, got %s.',
                              times.size, components, size, size, matrix.shape)
            raise ValueError('{} times with {} components need a {} x {} matrix, got {}.'
                             .format(times.size, components, size, size, matrix.shape))
        self.matrix = matrix
        self.times = times
        self.components = components
        self.u_space = u_space

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> 'TimeOperator':
        """A scalar valued time operator on the times 0..n-1"""
        matrix = np.asarray(matrix, dtype=float)
        return cls(matrix, np.arange(matrix.shape[0], dtype=float), 1)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def is_positive(self) -> bool:
        return bool(np.all(self.matrix >= 0.0))

    def space(self, norm_kind: NormKind, p: float or None = None) -> GridSpace:
        return GridSpace.unit(self.dim, norm_kind, p)

    def as_lin_op(self, norm_kind: NormKind, p: float or None = None) -> LinOp:
        space = self.space(norm_kind, p)
        return LinOp(self.matrix, space, space)

    def apply(self, values: np.ndarray) -> np.ndarray:
        """Maps samples of the shape (times, components) or stacked vectors"""
        values = np.asarray(values, dtype=float)
        if values.ndim == 2 and values.shape == (self.times.size, self.components):
            return (self.matrix @ values.reshape(-1)).reshape(values.shape)
        return self.matrix @ values

    def sup_norm(self) -> float:
        """M_0, the norm on the sup side: the largest row sum of the modulus"""
        return float(np.max(np.abs(self.matrix).sum(axis=1)))

    def l1_norm(self) -> float:
        """M_1, the norm on the L1 side: the largest column sum of the modulus"""
        return float(np.max(np.abs(self.matrix).sum(axis=0)))
