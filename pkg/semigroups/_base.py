# -*- coding: utf-8 -*-

from abc import abstractmethod, ABC
import copy
import logging
import math

import numpy as np

from lattice.grid_space import GridSpace
from operators.lin_op import LinOp
from operators.spectral import resolvent, eigenvalues
from utils.numerical_errors import NegativeTime


class _SemigroupModelBase(ABC):
    """
    Base class for semigroup models t -> T(t) on a GridSpace.

    A model carries the shift mu of its rescaling: the rescaled model evaluates e^(-mu t) T(t) and is generated
    by A - mu I.
    """

    name = NotImplemented

    description = NotImplemented

    # Bound of ||T(t + s) - T(t) T(s)|| on the sampled (t, s) lattice
    semigroup_law_tolerance = 1e-9

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}(space={self.space}, rescale_shift={self.rescale_shift})'

    def __str__(self) -> str:
        return repr(self)

    @abstractmethod
    def __init__(self, space: GridSpace):
        super().__init__()

        self.logger = logging.getLogger(self.__class__.__name__)

        self.space = space
        self.rescale_shift = 0.0
        self._growth_bound = None

    @abstractmethod
    def _evaluate(self, t: float) -> np.ndarray:
        """Returns the matrix of the unshifted T(t) for t >= 0."""

    @abstractmethod
    def _generator(self) -> np.ndarray:
        """Returns the matrix of the unshifted discrete generator."""

    def evaluate(self, t: float) -> LinOp:
        """Returns T(t)

        :param float t: The time, t >= 0
        :return: The semigroup operator
        :rtype: LinOp
        """
        if t < 0.0 or math.isnan(t):
            self.logger.error('The semigroup can not be evaluated at the negative time %s.', t)
            raise NegativeTime('evaluate', 'The semigroup can not be evaluated at the negative time {}.'.format(t),
                               t=t)
        matrix = self._evaluate(t)
        if self.rescale_shift != 0.0:
            matrix = math.exp(-self.rescale_shift * t) * matrix
        return LinOp(matrix, self.space, self.space)

    def generator(self) -> LinOp:
        """Returns the discrete generator A - mu I"""
        return LinOp(self._generator() - self.rescale_shift * np.eye(self.space.dim), self.space, self.space)

    def resolvent(self, lam: float) -> LinOp:
        return resolvent(self.generator(), lam)

    @property
    def growth_bound(self) -> float:
        """The largest real part of the generator spectrum"""
        if self._growth_bound is None:
            self._growth_bound = float(np.max(np.real(eigenvalues(LinOp(self._generator(), self.space,
                                                                               self.space)))))
        return self._growth_bound - self.rescale_shift

    def rescale(self, mu: float) -> '_SemigroupModelBase':
        """Returns the model generated by A - mu I

        :param float mu: The shift
        :return: The rescaled model
        :rtype: _SemigroupModelBase
        """
        rescaled = copy.copy(self)
        rescaled.rescale_shift = self.rescale_shift + mu
        self.logger.debug('rescale: %s by %s', self, mu)
        return rescaled
