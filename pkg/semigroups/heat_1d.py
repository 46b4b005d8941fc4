# -*- coding: utf-8 -*-

import numpy as np

from lattice.grid_space import GridSpace, NormKind, Quadrature
from semigroups._base import _SemigroupModelBase

# Default number of sine modes
DEFAULT_MODE_COUNT = 64


class Heat1D(_SemigroupModelBase):
    """
    Dirichlet heat semigroup on (0, 1) as a sum over the sine modes sin(k pi x), k = 1..m.

    The nodes are j h, j = 1..m, with h = 1 / (m + 1), where the sampled modes are orthonormal, so T(0) == I and
    the semigroup law hold up to rounding.
    """

    name = 'Heat1D'

    description = 'Spectral Dirichlet heat semigroup on the unit interval.'

    def __init__(self,
                 mode_count: int = DEFAULT_MODE_COUNT,
                 norm_kind: NormKind = NormKind.LP,
                 p: float or None = 2.0):
        h = 1.0 / (mode_count + 1)
        super().__init__(GridSpace.uniform(h / 2.0, 1.0 - h / 2.0, mode_count, norm_kind, p, Quadrature.MIDPOINT))

        self.mode_count = mode_count
        k = np.arange(1, mode_count + 1)
        self.eigenvalues = -(k * np.pi) ** 2
        self.modes = np.sqrt(2.0 * h) * np.sin(np.outer(self.space.nodes, k * np.pi))

    def _evaluate(self, t: float) -> np.ndarray:
        return (self.modes * np.exp(t * self.eigenvalues)[np.newaxis, :]) @ self.modes.T

    def _generator(self) -> np.ndarray:
        return (self.modes * self.eigenvalues[np.newaxis, :]) @ self.modes.T

    @property
    def growth_bound(self) -> float:
        return float(self.eigenvalues[0]) - self.rescale_shift
