# -*- coding: utf-8 -*-

"""
Discretized function spaces: grid nodes, quadrature weights and the norm of the space.
"""

import logging
import math
from enum import Enum, unique
from typing import Tuple

import numpy as np

from lattice import LOGGER_NAME

# Tolerance of the rule sum(weights) == b - a for integral norms
WEIGHT_SUM_TOLERANCE = 1e-12


@unique
class NormKind(Enum):
    L1 = 'L1'
    LP = 'Lp'
    SUP = 'Sup'


@unique
class Quadrature(Enum):
    TRAPEZOID = 'trapezoid'
    MIDPOINT = 'midpoint'


def quadrature_weights(a: float, b: float, n: int, quadrature: Quadrature) -> Tuple[np.ndarray, np.ndarray]:
    """Returns the nodes and weights of a uniform quadrature rule on [a, b]

    :param float a: Left end point
    :param float b: Right end point
    :param int n: Number of nodes
    :param Quadrature quadrature: The rule
    :return: nodes, weights
    :rtype: Tuple[np.ndarray, np.ndarray]
    """
    if quadrature is Quadrature.TRAPEZOID:
        if n < 2:
            logging.getLogger(LOGGER_NAME).error('The trapezoid rule needs at least 2 nodes, got %s.', n)
            raise ValueError('The trapezoid rule needs at least 2 nodes, got {}.'.format(n))
        nodes = np.linspace(a, b, n)
        h = (b - a) / (n - 1)
        weights = np.full(n, h)
        weights[0] = weights[-1] = h / 2.0
        return nodes, weights

    if n < 1:
        logging.getLogger(LOGGER_NAME).error('The midpoint rule needs at least 1 node, got %s.', n)
        raise ValueError('The midpoint rule needs at least 1 node, got {}.'.format(n))
    h = (b - a) / n
    nodes = a + (np.arange(n) + 0.5) * h
    return nodes, np.full(n, h)


class GridSpace:
    """
    A discretized Banach lattice.

    ``L1`` spaces are AL-spaces, ``Sup`` spaces are AM-spaces and ignore the weights.
    """

    def __repr__(self) -> str:
        p = f', p={self.p}' if self.norm_kind is NormKind.LP else ''
        return f'GridSpace(dim={self.dim}, norm_kind={self.norm_kind.value}{p}, interval={self.interval})'

    def __str__(self) -> str:
        return repr(self)

    def __init__(self,
                 nodes: np.ndarray,
                 weights: np.ndarray,
                 norm_kind: NormKind,
                 p: float or None = None,
                 interval: Tuple[float, float] or None = None):
        self.logger = logging.getLogger(self.__class__.__name__)

        nodes = np.array(nodes, dtype=float)
        weights = np.array(weights, dtype=float)
        if nodes.ndim != 1 or nodes.size == 0 or nodes.shape != weights.shape:
            self.logger.error('Nodes and weights must be non empty vectors of the same length, got %s and %s.',
                              nodes.shape, weights.shape)
            raise ValueError('Nodes and weights must be non empty vectors of the same length.')
        if np.any(np.diff(nodes) <= 0.0):
            self.logger.error('The grid nodes must be strictly ascending.')
            raise ValueError('The grid nodes must be strictly ascending.')
        if np.any(weights < 0.0):
            self.logger.error('The quadrature weights must be non negative.')
            raise ValueError('The quadrature weights must be non negative.')

        if norm_kind is NormKind.LP:
            if p is None or not p > 1.0 or not math.isfinite(p):
                self.logger.error('An Lp space needs a finite exponent p > 1, got %s.', p)
                raise ValueError('An Lp space needs a finite exponent p > 1, got {}.'.format(p))
        else:
            p = None

        if interval is None:
            interval = (float(nodes[0]), float(nodes[-1]))
        a, b = float(interval[0]), float(interval[1])

        if norm_kind is not NormKind.SUP:
            if not math.isclose(float(weights.sum()), b - a,
                                rel_tol=WEIGHT_SUM_TOLERANCE, abs_tol=WEIGHT_SUM_TOLERANCE):
                self.logger.error('The weights sum to %s but the interval (%s, %s) has length %s.',
                                  weights.sum(), a, b, b - a)
                raise ValueError('The weights sum to {} but the interval ({}, {}) has length {}.'
                                 .format(weights.sum(), a, b, b - a))

        nodes.setflags(write=False)
        weights.setflags(write=False)
        self.nodes = nodes
        self.weights = weights
        self.norm_kind = norm_kind
        self.p = p
        self.interval = (a, b)

    @classmethod
    def uniform(cls,
                a: float,
                b: float,
                n: int,
                norm_kind: NormKind,
                p: float or None = None,
                quadrature: Quadrature = Quadrature.TRAPEZOID) -> 'GridSpace':
        """Creates a uniform grid on [a, b] with n nodes"""
        nodes, weights = quadrature_weights(a, b, n, quadrature)
        return cls(nodes, weights, norm_kind, p, (a, b))

    @classmethod
    def unit(cls, n: int, norm_kind: NormKind, p: float or None = None) -> 'GridSpace':
        """Creates R^n with unit weights: |.|_1 for L1, |.|_inf for Sup"""
        return cls(np.arange(n, dtype=float), np.ones(n), norm_kind, p, (0.0, float(n)))

    @property
    def dim(self) -> int:
        return self.nodes.size

    @property
    def step(self) -> float:
        """The largest node spacing, the mean weight for a single node grid"""
        if self.dim == 1:
            return float(self.weights[0])
        return float(np.max(np.diff(self.nodes)))

    def with_norm(self, norm_kind: NormKind, p: float or None = None) -> 'GridSpace':
        """Returns the same grid carrying another norm"""
        return GridSpace(self.nodes, self.weights, norm_kind, p, self.interval)

    def same_grid(self, other: 'GridSpace') -> bool:
        return self.dim == other.dim and bool(np.array_equal(self.nodes, other.nodes))

    def norm(self, values: np.ndarray) -> float:
        """The norm of node values in this space

        :param np.ndarray values: Node values, a vector of length dim
        :return: The norm
        :rtype: float
        """
        magnitudes = np.abs(np.asarray(values, dtype=float))
        if magnitudes.size == 0:
            return 0.0
        if self.norm_kind is NormKind.SUP:
            return float(np.max(magnitudes))
        if self.norm_kind is NormKind.L1:
            return float(np.dot(self.weights, magnitudes))
        return float(np.dot(self.weights, magnitudes ** self.p) ** (1.0 / self.p))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GridSpace):
            return NotImplemented
        return self.norm_kind is other.norm_kind \
            and self.p == other.p \
            and self.same_grid(other) \
            and bool(np.array_equal(self.weights, other.weights))

    def __hash__(self) -> int:
        return hash((self.norm_kind, self.p, self.dim, self.interval))
