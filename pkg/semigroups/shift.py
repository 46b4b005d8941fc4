# -*- coding: utf-8 -*-

"""
Nilpotent translation semigroups on [0, 1].

``evaluate`` is the exact translation of the piecewise linear interpolant of the node values, with the value 0
past the inflow end, so T(t) is positive and vanishes once the whole interval has been shifted out.
``generator`` is the first order upwind difference, a Metzler matrix whose exponential is positive.
"""

from abc import abstractmethod
import math
from typing import Tuple

import numpy as np

from lattice.grid_space import GridSpace, NormKind, Quadrature
from semigroups._base import _SemigroupModelBase

# Fractional shifts closer than this to a grid multiple are snapped to it
GRID_SNAP = 1e-9


class _NilpotentShiftBase(_SemigroupModelBase):

    # Shift models are exact on grid multiples only
    semigroup_law_tolerance = 1e-12

    @abstractmethod
    def __init__(self, space: GridSpace):
        super().__init__(space)

        steps = np.diff(space.nodes)
        if space.dim < 2 or not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
            self.logger.error('A shift semigroup needs a uniform grid, got %s.', space)
            raise ValueError('A shift semigroup needs a uniform grid, got {}.'.format(space))
        self.h = float(steps[0])

    @abstractmethod
    def _shift_matrix(self) -> np.ndarray:
        """The one step shift S with zero inflow."""

    def grid_steps(self, t: float) -> Tuple[int, float]:
        """Splits t = (k + theta) h with 0 <= theta < 1"""
        ratio = t / self.h
        k = math.floor(ratio)
        theta = ratio - k
        if theta > 1.0 - GRID_SNAP:
            k, theta = k + 1, 0.0
        elif theta < GRID_SNAP:
            theta = 0.0
        return k, theta

    def _evaluate(self, t: float) -> np.ndarray:
        n = self.space.dim
        k, theta = self.grid_steps(t)
        if k >= n:
            return np.zeros((n, n))
        shift = self._shift_matrix()
        power = np.linalg.matrix_power(shift, k)
        if theta == 0.0:
            return power
        return (1.0 - theta) * power + theta * (power @ shift)

    def _generator(self) -> np.ndarray:
        return (self._shift_matrix() - np.eye(self.space.dim)) / self.h


class NilpotentLeftShift(_NilpotentShiftBase):
    """
    (T(t)f)(x) = f(x + t) for x + t <= 1, else 0, on the nodes j / n, j = 0..n.
    """

    name = 'NilpotentLeftShift'

    description = 'Left translation on [0, 1] with zero inflow at x = 1.'

    def __init__(self, space: GridSpace):
        super().__init__(space)

    @classmethod
    def on_unit_interval(cls, n: int, norm_kind: NormKind, p: float or None = None) -> 'NilpotentLeftShift':
        """The left shift on n + 1 trapezoid nodes of [0, 1]"""
        return cls(GridSpace.uniform(0.0, 1.0, n + 1, norm_kind, p))

    def _shift_matrix(self) -> np.ndarray:
        return np.eye(self.space.dim, k=1)


class NilpotentRightShift(_NilpotentShiftBase):
    """
    (T(t)f)(x) = f(x - t) for x >= t, else 0, on the nodes i / n, i = 1..n; the node x = 0 carries f(0) = 0.
    """

    name = 'NilpotentRightShift'

    description = 'Right translation on (0, 1] with zero inflow at x = 0.'

    def __init__(self, space: GridSpace):
        super().__init__(space)

    @classmethod
    def on_unit_interval(cls, n: int, norm_kind: NormKind, p: float or None = None) -> 'NilpotentRightShift':
        """The right shift on the n nodes i / n, i = 1..n, each with the weight 1 / n"""
        h = 1.0 / n
        return cls(GridSpace.uniform(h / 2.0, 1.0 + h / 2.0, n, norm_kind, p, Quadrature.MIDPOINT))

    def _shift_matrix(self) -> np.ndarray:
        return np.eye(self.space.dim, k=-1)
