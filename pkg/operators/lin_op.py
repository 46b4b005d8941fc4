# -*- coding: utf-8 -*-

"""
Dense linear operators between GridSpaces and their operator norms.
"""

import logging
from dataclasses import dataclass

import numpy as np

from lattice.grid_space import GridSpace, NormKind
from lattice.lattice_vector import LatticeVector
from operators import LOGGER_NAME
from utils.numerical_errors import SpaceMismatch

# Number of random probes of a sampled operator norm
NORM_PROBE_COUNT = 200

# Iterations of the p-norm power method
NORM_POWER_ITERATIONS = 50


@dataclass(frozen=True)
class NormEstimate:
    """
    Bracket of an operator norm. Both ends are equal when the norm has a closed form.
    """
    lower_bound: float
    estimate: float
    exact: bool

    def __float__(self) -> float:
        return self.estimate


def _exponent(space: GridSpace) -> float:
    if space.norm_kind is NormKind.SUP:
        return np.inf
    if space.norm_kind is NormKind.L1:
        return 1.0
    return space.p


def _conjugate(p: float) -> float:
    if p == 1.0:
        return np.inf
    if np.isinf(p):
        return 1.0
    return p / (p - 1.0)


def _scaling(space: GridSpace) -> np.ndarray:
    """Diagonal d with ||x||_space == ||d * x||_p for the plain p-norm of the space exponent"""
    p = _exponent(space)
    if np.isinf(p):
        return np.ones(space.dim)
    return space.weights ** (1.0 / p)


def _dual_norm(functional: np.ndarray, space: GridSpace) -> float:
    """Norm of x -> functional . x on the space"""
    p = _exponent(space)
    if np.isinf(p):
        return float(np.sum(np.abs(functional)))
    weights = space.weights
    if np.any(weights[functional != 0.0] <= 0.0):
        return np.inf
    density = np.divide(np.abs(functional), weights, out=np.zeros_like(weights), where=weights > 0.0)
    q = _conjugate(p)
    if np.isinf(q):
        return float(np.max(density))
    return float(np.dot(weights, density ** q) ** (1.0 / q))


class LinOp:
    """
    A dense matrix with explicit domain and codomain. Rows belong to the codomain, columns to the domain.
    """

    def __repr__(self) -> str:
        return f'LinOp(shape={self.matrix.shape}, domain={self.domain}, codomain={self.codomain})'

    def __str__(self) -> str:
        return repr(self)

    def __init__(self, matrix: np.ndarray, domain: GridSpace, codomain: GridSpace):
        matrix = np.array(matrix, dtype=float)
        if matrix.ndim == 1 and codomain.dim == 1:
            matrix = matrix.reshape(1, -1)
        if matrix.shape != (codomain.dim, domain.dim):
            logging.getLogger(self.__class__.__name__).error(
                'A matrix of the shape %s does not map %s into %s.', matrix.shape, domain, codomain)
            raise SpaceMismatch('LinOp', 'A matrix of the shape {} does not map {} into {}.'
                                .format(matrix.shape, domain, codomain))
        matrix.setflags(write=False)
        self.matrix = matrix
        self.domain = domain
        self.codomain = codomain

    @classmethod
    def identity(cls, space: GridSpace) -> 'LinOp':
        return cls(np.eye(space.dim), space, space)

    @classmethod
    def zeros(cls, domain: GridSpace, codomain: GridSpace) -> 'LinOp':
        return cls(np.zeros((codomain.dim, domain.dim)), domain, codomain)

    @property
    def is_square(self) -> bool:
        return self.domain.dim == self.codomain.dim

    def with_spaces(self, domain: GridSpace, codomain: GridSpace) -> 'LinOp':
        """The same matrix between other spaces of matching dimensions"""
        return LinOp(self.matrix, domain, codomain)

    def apply(self, x: LatticeVector) -> LatticeVector:
        if x.space.dim != self.domain.dim:
            logging.getLogger(LOGGER_NAME).error('apply: %s is not in the domain of %s.', x.space, self)
            raise SpaceMismatch('apply', '{} is not in the domain of {}.'.format(x.space, self))
        return LatticeVector(self.codomain, self.matrix @ x.values)

    def power(self, n: int) -> 'LinOp':
        return LinOp(np.linalg.matrix_power(self.matrix, n), self.domain, self.codomain)

    def _check_same_spaces(self, other: 'LinOp', function: str):
        if self.matrix.shape != other.matrix.shape:
            logging.getLogger(LOGGER_NAME).error('%s: the shapes %s and %s differ.',
                                                 function, self.matrix.shape, other.matrix.shape)
            raise SpaceMismatch(function, 'The shapes {} and {} differ.'
                                .format(self.matrix.shape, other.matrix.shape))

    def __matmul__(self, other):
        if isinstance(other, LatticeVector):
            return self.apply(other)
        if not isinstance(other, LinOp):
            return NotImplemented
        if self.domain.dim != other.codomain.dim:
            logging.getLogger(LOGGER_NAME).error('__matmul__: %s can not be composed with %s.', self, other)
            raise SpaceMismatch('__matmul__', '{} can not be composed with {}.'.format(self, other))
        return LinOp(self.matrix @ other.matrix, other.domain, self.codomain)

    def __add__(self, other: 'LinOp') -> 'LinOp':
        self._check_same_spaces(other, '__add__')
        return LinOp(self.matrix + other.matrix, self.domain, self.codomain)

    def __sub__(self, other: 'LinOp') -> 'LinOp':
        self._check_same_spaces(other, '__sub__')
        return LinOp(self.matrix - other.matrix, self.domain, self.codomain)

    def __mul__(self, scalar: float) -> 'LinOp':
        return LinOp(float(scalar) * self.matrix, self.domain, self.codomain)

    __rmul__ = __mul__

    def __neg__(self) -> 'LinOp':
        return LinOp(-self.matrix, self.domain, self.codomain)

    def __abs__(self) -> 'LinOp':
        """The entrywise modulus, the modulus operator for componentwise cones"""
        return LinOp(np.abs(self.matrix), self.domain, self.codomain)

    def exact_norm(self) -> float or None:
        """The operator norm where a closed form exists, otherwise None"""
        m = np.abs(self.matrix)
        dom, cod = self.domain, self.codomain
        if m.size == 0:
            return 0.0
        if dom.dim == 1:
            return cod.norm(self.matrix[:, 0]) / dom.norm(np.ones(1))
        if cod.dim == 1:
            return _dual_norm(self.matrix[0], dom) * cod.norm(np.ones(1))

        dom_p, cod_p = _exponent(dom), _exponent(cod)
        if dom_p == 1.0 and cod_p == 1.0:
            column_masses = cod.weights @ m
            return float(np.max(np.divide(column_masses, dom.weights,
                                          out=np.where(column_masses > 0.0, np.inf, 0.0),
                                          where=dom.weights > 0.0)))
        if np.isinf(dom_p) and np.isinf(cod_p):
            return float(np.max(m.sum(axis=1)))
        if dom_p == 1.0 and np.isinf(cod_p):
            return float(np.max(np.divide(m, dom.weights[np.newaxis, :],
                                          out=np.where(m > 0.0, np.inf, 0.0),
                                          where=dom.weights[np.newaxis, :] > 0.0)))
        if np.isinf(dom_p) and cod_p == 1.0 and np.all(self.matrix >= 0.0):
            return float(cod.weights @ m.sum(axis=1))
        if dom_p == 2.0 and cod_p == 2.0 and np.all(dom.weights > 0.0):
            scaled = _scaling(cod)[:, np.newaxis] * self.matrix / _scaling(dom)[np.newaxis, :]
            return float(np.linalg.norm(scaled, 2))
        return None

    def norm_estimate(self, rng: np.random.Generator or None = None, probes: int = NORM_PROBE_COUNT) -> NormEstimate:
        """The operator norm between the domain and codomain norms

        Closed forms are used for L1->L1, Sup->Sup, L1->Sup, positive Sup->L1, L2->L2 and rank one shapes.
        Otherwise the lower bound is the best ratio over random probes and p-norm power iterations, and the
        estimate is the interpolation bound of the weighted 1- and sup-norms of the modulus, or its entry sum
        for mixed exponents.

        :param np.random.Generator rng: The generator of the probes
        :param int probes: Number of random probes
        :return: The norm bracket
        :rtype: NormEstimate
        """
        exact = self.exact_norm()
        if exact is not None:
            return NormEstimate(exact, exact, True)

        if rng is None:
            rng = np.random.default_rng(0)

        dom_p, cod_p = _exponent(self.domain), _exponent(self.codomain)
        d_in, d_out = _scaling(self.domain), _scaling(self.codomain)
        with np.errstate(divide='ignore'):
            inverse_in = np.where(d_in > 0.0, 1.0 / d_in, 0.0)
        scaled = d_out[:, np.newaxis] * self.matrix * inverse_in[np.newaxis, :]

        def ratio(x: np.ndarray) -> float:
            size = np.linalg.norm(x, dom_p)
            return float(np.linalg.norm(scaled @ x, cod_p) / size) if size > 0.0 else 0.0

        lower_bound = 0.0
        for _ in range(probes):
            lower_bound = max(lower_bound, ratio(rng.standard_normal(self.domain.dim)))
        for j in range(self.domain.dim):
            lower_bound = max(lower_bound, ratio(np.eye(1, self.domain.dim, j)[0]))

        if 1.0 < dom_p < np.inf and 1.0 < cod_p < np.inf:
            q_in = _conjugate(dom_p)
            x = np.abs(rng.standard_normal(self.domain.dim)) + 1.0
            for _ in range(NORM_POWER_ITERATIONS):
                y = scaled @ x
                z = scaled.T @ (np.sign(y) * np.abs(y) ** (cod_p - 1.0))
                if not np.any(z):
                    break
                x = np.sign(z) * np.abs(z) ** (q_in - 1.0)
                lower_bound = max(lower_bound, ratio(x))

        modulus = np.abs(scaled)
        one_norm = float(np.max(modulus.sum(axis=0)))
        sup_norm = float(np.max(modulus.sum(axis=1)))
        if dom_p == cod_p and not np.isinf(dom_p):
            estimate = one_norm ** (1.0 / dom_p) * sup_norm ** (1.0 - 1.0 / dom_p)
        else:
            estimate = float(modulus.sum())
        estimate = max(estimate, lower_bound)

        logging.getLogger(LOGGER_NAME).debug('norm_estimate: %s lower %s estimate %s', self, lower_bound, estimate)
        return NormEstimate(lower_bound, estimate, False)

    def lattice_norm(self) -> float:
        """The exact operator norm, the max row sum where there is no closed form; both are monotone in |T|"""
        exact = self.exact_norm()
        if exact is None:
            return float(np.linalg.norm(self.matrix, np.inf))
        return exact

    def norm(self, rng: np.random.Generator or None = None) -> float:
        """The exact operator norm, or the certified lower bound when there is no closed form"""
        return self.norm_estimate(rng).lower_bound

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinOp):
            return NotImplemented
        return self.domain == other.domain and self.codomain == other.codomain \
            and bool(np.array_equal(self.matrix, other.matrix))

    __hash__ = None
