# -*- coding: utf-8 -*-

import logging
from typing import Tuple

import numpy as np

from lattice import LOGGER_NAME
from lattice.grid_space import GridSpace
from utils.numerical_errors import SpaceMismatch


class LatticeVector:
    """
    Node values of an element of a GridSpace. The order is componentwise.
    """

    def __repr__(self) -> str:
        return f'LatticeVector(space={self.space}, values={self.values})'

    def __str__(self) -> str:
        return repr(self)

    def __init__(self, space: GridSpace, values: np.ndarray):
        values = np.array(values, dtype=float)
        if values.shape != (space.dim,):
            logging.getLogger(self.__class__.__name__).error(
                'A vector of %s needs %s values, got the shape %s.', space, space.dim, values.shape)
            raise SpaceMismatch('LatticeVector', 'A vector of {} needs {} values, got the shape {}.'
                                .format(space, space.dim, values.shape))
        values.setflags(write=False)
        self.space = space
        self.values = values

    @classmethod
    def zeros(cls, space: GridSpace) -> 'LatticeVector':
        return cls(space, np.zeros(space.dim))

    @classmethod
    def ones(cls, space: GridSpace) -> 'LatticeVector':
        """The AM unit (1, ..., 1)"""
        return cls(space, np.ones(space.dim))

    def _check_space(self, other: 'LatticeVector', function: str):
        if self.space != other.space:
            logging.getLogger(LOGGER_NAME).error('%s: %s and %s live in different spaces.',
                                                 function, self.space, other.space)
            raise SpaceMismatch(function, '{} and {} live in different spaces.'.format(self.space, other.space))

    def positive_part(self) -> 'LatticeVector':
        return LatticeVector(self.space, np.maximum(self.values, 0.0))

    def negative_part(self) -> 'LatticeVector':
        return LatticeVector(self.space, np.maximum(-self.values, 0.0))

    def sup(self, other: 'LatticeVector') -> 'LatticeVector':
        self._check_space(other, 'sup')
        return LatticeVector(self.space, np.maximum(self.values, other.values))

    def inf(self, other: 'LatticeVector') -> 'LatticeVector':
        self._check_space(other, 'inf')
        return LatticeVector(self.space, np.minimum(self.values, other.values))

    def norm(self) -> float:
        return self.space.norm(self.values)

    def is_positive(self, tolerance: float = 0.0) -> bool:
        return bool(np.all(self.values >= -tolerance))

    def __abs__(self) -> 'LatticeVector':
        return LatticeVector(self.space, np.abs(self.values))

    def __neg__(self) -> 'LatticeVector':
        return LatticeVector(self.space, -self.values)

    def __add__(self, other: 'LatticeVector') -> 'LatticeVector':
        self._check_space(other, '__add__')
        return LatticeVector(self.space, self.values + other.values)

    def __sub__(self, other: 'LatticeVector') -> 'LatticeVector':
        self._check_space(other, '__sub__')
        return LatticeVector(self.space, self.values - other.values)

    def __mul__(self, scalar: float) -> 'LatticeVector':
        return LatticeVector(self.space, float(scalar) * self.values)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticeVector):
            return NotImplemented
        return self.space == other.space and bool(np.array_equal(self.values, other.values))

    __hash__ = None


def lattice_decompose(x: LatticeVector) -> Tuple[LatticeVector, LatticeVector, LatticeVector]:
    """Returns the positive part, the negative part and the modulus of x

    ``pos - neg == x`` and ``pos + neg == abs`` hold exactly since one of the parts is zero in every node.
    """
    return x.positive_part(), x.negative_part(), abs(x)


def lattice_sup_inf(x: LatticeVector, y: LatticeVector) -> Tuple[LatticeVector, LatticeVector]:
    return x.sup(y), x.inf(y)


def norm_eval(x: LatticeVector) -> float:
    return x.norm()
