# -*- coding: utf-8 -*-

"""
The positive Riesz-Thorin bound ||T||_p <= M0^(1 - 1/p) M1^(1/p) and the Hoelder type inequality
T(fg) <= (T f^p)^(1/p) (T g^p')^(1/p') behind it.
"""

import logging
from dataclasses import dataclass
from typing import List, Iterable

import numpy as np

from interpolation import LOGGER_NAME
from interpolation.time_operator import TimeOperator
from lattice.grid_space import NormKind
from utils.numerical_errors import NotPositiveOperator

# Slack of the Riesz-Thorin comparison
RIESZ_THORIN_SLACK = 1e-9

# Share of the nodes outside the support of a random Hoelder probe
SUPPORT_DROP = 0.3


def _check_positive(operator: TimeOperator, function: str):
    if not operator.is_positive():
        minimum = float(np.min(operator.matrix))
        logging.getLogger(LOGGER_NAME).error('%s: the operator has the negative entry %s.', function, minimum)
        raise NotPositiveOperator(function, 'The operator has the negative entry {}.'.format(minimum),
                                  min_entry=minimum)


def _compact_probe(dim: int, rng: np.random.Generator) -> np.ndarray:
    values = rng.random(dim)
    values[rng.random(dim) < SUPPORT_DROP] = 0.0
    return values


def holder_positive_check(operator: TimeOperator,
                          p: float,
                          trials: int,
                          rng: np.random.Generator or None = None) -> float:
    """Returns the largest componentwise violation of T(fg) <= (T f^p)^(1/p) (T g^p')^(1/p')

    :param TimeOperator operator: A positive operator
    :param float p: The exponent, 1 < p < inf
    :param int trials: Number of random nonnegative pairs (f, g) with partial support
    :param np.random.Generator rng: The generator of the probes
    :return: The violation, at most 0 up to rounding
    :rtype: float
    """
    _check_positive(operator, 'holder_positive_check')
    if not 1.0 < p < np.inf:
        logging.getLogger(LOGGER_NAME).error('holder_positive_check: p must be in (1, inf), got %s.', p)
        raise ValueError('holder_positive_check: p must be in (1, inf), got {}.'.format(p))
    if rng is None:
        rng = np.random.default_rng(0)

    q = p / (p - 1.0)
    matrix = operator.matrix
    violation = -np.inf
    for _ in range(trials):
        f, g = _compact_probe(operator.dim, rng), _compact_probe(operator.dim, rng)
        left = matrix @ (f * g)
        right = (matrix @ f ** p) ** (1.0 / p) * (matrix @ g ** q) ** (1.0 / q)
        violation = max(violation, float(np.max(left - right)))
    return violation


@dataclass(frozen=True)
class RieszThorinReport:
    p_list: List[float]
    empirical: List[float]
    bounds: List[float]
    m0: float
    m1: float
    positivity_preserved: bool

    @property
    def holds(self) -> bool:
        return self.positivity_preserved and all(e <= b + RIESZ_THORIN_SLACK
                                                 for e, b in zip(self.empirical, self.bounds))


def riesz_thorin_check(operator: TimeOperator,
                       p_list: Iterable[float],
                       trials: int,
                       rng: np.random.Generator or None = None) -> RieszThorinReport:
    """Compares probed L^p norms of a positive operator with M0^(1 - 1/p) M1^(1/p)

    M0 is the sup norm and M1 the L1 norm of the operator. The probed norm takes the best ratio over random
    nonnegative vectors, the basis vectors, the constant vector and p-norm power iterations, so it is a lower
    bound of the true norm.

    :param TimeOperator operator: A positive operator
    :param Iterable[float] p_list: Exponents p >= 1
    :param int trials: Number of random probes per exponent
    :param np.random.Generator rng: The generator of the probes
    :return: Empirical norms and bounds per exponent
    :rtype: RieszThorinReport
    """
    _check_positive(operator, 'riesz_thorin_check')
    if rng is None:
        rng = np.random.default_rng(0)

    p_list = [float(p) for p in p_list]
    m0, m1 = operator.sup_norm(), operator.l1_norm()
    matrix = operator.matrix
    constant = np.ones(operator.dim)

    empirical, bounds = [], []
    positivity_preserved = True
    for p in p_list:
        bounds.append(m0 ** (1.0 - 1.0 / p) * m1 ** (1.0 / p))
        if p == 1.0:
            empirical.append(m1)
            continue

        lin_op = operator.as_lin_op(NormKind.LP, p)
        best = lin_op.norm_estimate(rng, probes=trials).lower_bound
        best = max(best, float(np.linalg.norm(matrix @ constant, p) / np.linalg.norm(constant, p)))
        for _ in range(trials):
            f = rng.random(operator.dim)
            image = matrix @ f
            positivity_preserved = positivity_preserved and bool(np.all(image >= 0.0))
            best = max(best, float(np.linalg.norm(image, p) / np.linalg.norm(f, p)))
        empirical.append(best)

    report = RieszThorinReport(p_list, empirical, bounds, m0, m1, positivity_preserved)
    if not report.holds:
        logging.getLogger(LOGGER_NAME).warning('riesz_thorin_check: probed norms %s exceed the bounds %s.',
                                               empirical, bounds)
    logging.getLogger(LOGGER_NAME).debug('riesz_thorin_check: %s', report)
    return report
