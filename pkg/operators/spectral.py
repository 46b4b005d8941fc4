# -*- coding: utf-8 -*-

"""
Resolvents, spectral radii and Neumann series.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum, unique
from typing import List

import numpy as np
import scipy.linalg

from operators import LOGGER_NAME
from operators.lin_op import LinOp
from utils.constants import SINGULAR_RESOLVENT_RESIDUAL
from utils.numerical_errors import SingularResolvent, DivergentSeries, SpaceMismatch

# Default power of the Gelfand estimate
GELFAND_N_MAX = 64

# Relative change between the last two Gelfand iterates accepted as converged
GELFAND_CONVERGENCE = 1e-3

# Number of consecutive growing terms that marks a Neumann series divergent
MAX_GROWING_TERMS = 10

# Hard cap on Neumann series terms
MAX_NEUMANN_TERMS = 100000


@unique
class SpectralMethod(Enum):
    EIGEN = 'eigen'
    GELFAND = 'gelfand'


@dataclass(frozen=True)
class SpectralRadiusResult:
    """
    A spectral radius with the Gelfand iterates it was read from (empty for the eigenvalue route).
    """
    value: float
    method: SpectralMethod
    iterates: List[float] = field(default_factory=list)
    converged: bool = True

    def __float__(self) -> float:
        return self.value


def _check_square(operator: LinOp, function: str):
    if not operator.is_square:
        logging.getLogger(LOGGER_NAME).error('%s: %s is not square.', function, operator)
        raise SpaceMismatch(function, '{} is not square.'.format(operator))


def resolvent(a: LinOp, lam: float, residual_limit: float = SINGULAR_RESOLVENT_RESIDUAL) -> LinOp:
    """Returns R(lam, A) = (lam - A)^-1

    :param LinOp a: The generator
    :param float lam: A point of the resolvent set
    :param float residual_limit: Largest accepted entry of (lam - A) R - I
    :return: The resolvent
    :rtype: LinOp
    """
    _check_square(a, 'resolvent')
    n = a.domain.dim
    shifted = lam * np.eye(n) - a.matrix
    try:
        inverse = scipy.linalg.solve(shifted, np.eye(n), check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as e:
        logging.getLogger(LOGGER_NAME).error('resolvent: the solve at lambda=%s failed: %s', lam, e)
        raise SingularResolvent('resolvent', 'The solve at lambda={} failed: {}'.format(lam, e), lam=lam)

    residual = float(np.max(np.abs(shifted @ inverse - np.eye(n)))) if np.all(np.isfinite(inverse)) else math.inf
    if residual > residual_limit:
        logging.getLogger(LOGGER_NAME).error('resolvent: residual %s at lambda=%s exceeds %s.',
                                             residual, lam, residual_limit)
        raise SingularResolvent('resolvent', 'Residual {} at lambda={} exceeds {}.'
                                .format(residual, lam, residual_limit), lam=lam, residual=residual)
    return LinOp(inverse, a.domain, a.codomain)


def eigenvalues(operator: LinOp) -> np.ndarray:
    _check_square(operator, 'eigenvalues')
    return scipy.linalg.eigvals(operator.matrix)


def _power_norm(matrix: np.ndarray) -> float:
    return float(np.linalg.norm(matrix, np.inf))


def spectral_radius(operator: LinOp,
                    method: SpectralMethod = SpectralMethod.EIGEN,
                    n_max: int = GELFAND_N_MAX) -> SpectralRadiusResult:
    """Returns the spectral radius of a square operator

    The eigenvalue route takes max |eigenvalue|. The Gelfand route returns ||T^n||^(1/n) at n = n_max in the
    max row sum norm and keeps the whole sequence; the powers are renormalized so they neither overflow nor
    underflow.

    :param LinOp operator: The operator
    :param SpectralMethod method: The route
    :param int n_max: The last power of the Gelfand route
    :return: The spectral radius
    :rtype: SpectralRadiusResult
    """
    _check_square(operator, 'spectral_radius')
    if operator.domain.dim == 0:
        return SpectralRadiusResult(0.0, method)

    if method is SpectralMethod.EIGEN:
        return SpectralRadiusResult(float(np.max(np.abs(eigenvalues(operator)))), method)

    matrix = operator.matrix
    power = matrix.copy()
    log_scale = 0.0
    iterates = []
    for n in range(1, n_max + 1):
        size = _power_norm(power)
        if size == 0.0:
            iterates.extend([0.0] * (n_max - n + 1))
            break
        iterates.append(math.exp((math.log(size) + log_scale) / n))
        power = power / size
        log_scale += math.log(size)
        power = power @ matrix

    value = iterates[-1]
    converged = len(iterates) < 2 or abs(iterates[-1] - iterates[-2]) <= GELFAND_CONVERGENCE * max(1.0, value)
    if not converged:
        logging.getLogger(LOGGER_NAME).warning('spectral_radius: slow Gelfand convergence, last iterates %s',
                                               iterates[-3:])
    logging.getLogger(LOGGER_NAME).debug('spectral_radius: gelfand %s after %s powers', value, n_max)
    return SpectralRadiusResult(value, method, iterates, converged)


def neumann_inverse(operator: LinOp, tol: float) -> LinOp:
    """Returns (I - T)^-1 as the truncated Neumann series sum T^n

    Terms are added until the next power has a max row sum below tol, so (I - T) S - I == -T^(N+1) is below tol.

    :param LinOp operator: T with spectral radius below 1
    :param float tol: Size of the first omitted term
    :return: The inverse
    :rtype: LinOp
    """
    _check_square(operator, 'neumann_inverse')
    radius = spectral_radius(operator).value
    if radius >= 1.0:
        logging.getLogger(LOGGER_NAME).error('neumann_inverse: spectral radius %s >= 1.', radius)
        raise DivergentSeries('neumann_inverse', 'Spectral radius {} >= 1.'.format(radius), radius=radius)

    matrix = operator.matrix
    total = np.eye(operator.domain.dim)
    term = matrix.copy()
    previous = math.inf
    growing = 0
    for n in range(1, MAX_NEUMANN_TERMS + 1):
        size = _power_norm(term)
        if size <= tol:
            logging.getLogger(LOGGER_NAME).debug('neumann_inverse: %s terms, radius %s', n, radius)
            return LinOp(total, operator.domain, operator.codomain)

        growing = growing + 1 if size > previous else 0
        if growing >= MAX_GROWING_TERMS:
            logging.getLogger(LOGGER_NAME).error('neumann_inverse: %s consecutive growing terms.', growing)
            raise DivergentSeries('neumann_inverse', '{} consecutive growing terms.'.format(growing),
                                  radius=radius)
        previous = size
        total = total + term
        term = term @ matrix

    logging.getLogger(LOGGER_NAME).error('neumann_inverse: no convergence after %s terms.', MAX_NEUMANN_TERMS)
    raise DivergentSeries('neumann_inverse', 'No convergence after {} terms.'.format(MAX_NEUMANN_TERMS),
                          radius=radius)
