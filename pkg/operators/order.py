# -*- coding: utf-8 -*-

"""
Order properties of operators: positivity, domination and the Jordan split.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from operators import LOGGER_NAME
from operators.lin_op import LinOp
from operators.spectral import spectral_radius
from utils.constants import DEFAULT_POSITIVITY_TOLERANCE, DEFAULT_DOMINATION_TOLERANCE
from utils.numerical_errors import SpaceMismatch

# Number of random probes of the modulus inequality |Tx| <= T|x|
MODULUS_PROBE_COUNT = 50

# Highest power compared by domination_check
DOMINATION_MAX_POWER = 8

# Slack of the spectral radius comparison
SPECTRAL_SLACK = 1e-8


@dataclass(frozen=True)
class PositivityReport:
    positive: bool
    min_entry: float
    modulus_residual: float

    def __bool__(self) -> bool:
        return self.positive


@dataclass(frozen=True)
class DominationReport:
    dominated: bool
    max_excess: float
    spectral_radius_s: float
    spectral_radius_t: float
    spectral_ok: bool
    powers_ok: bool

    def __bool__(self) -> bool:
        return self.dominated and self.spectral_ok and self.powers_ok


def op_positivity_check(operator: LinOp,
                        tol: float = DEFAULT_POSITIVITY_TOLERANCE,
                        rng: np.random.Generator or None = None) -> PositivityReport:
    """Checks that every matrix entry is at least -tol

    When the entries pass, |Tx| <= T|x| is also verified on random signed x; the largest excess is reported as
    ``modulus_residual``.

    :param LinOp operator: The operator
    :param float tol: Allowed negative size of an entry
    :param np.random.Generator rng: The generator of the probes
    :return: The report, truthy when positive
    :rtype: PositivityReport
    """
    matrix = operator.matrix
    min_entry = float(np.min(matrix)) if matrix.size else 0.0
    positive = min_entry >= -tol

    modulus_residual = 0.0
    if positive and matrix.size:
        if rng is None:
            rng = np.random.default_rng(0)
        scale = max(1.0, float(np.max(np.abs(matrix))))
        for _ in range(MODULUS_PROBE_COUNT):
            x = rng.standard_normal(operator.domain.dim)
            excess = np.abs(matrix @ x) - matrix @ np.abs(x)
            slack = 2.0 * tol * np.sum(np.abs(x)) + 1e-14 * scale * np.sum(np.abs(x))
            modulus_residual = max(modulus_residual, float(np.max(excess)) - slack)
        if modulus_residual > 0.0:
            logging.getLogger(LOGGER_NAME).error('op_positivity_check: |Tx| <= T|x| fails by %s.', modulus_residual)
            positive = False

    if not positive:
        logging.getLogger(LOGGER_NAME).debug('op_positivity_check: min entry %s below -%s', min_entry, tol)
    return PositivityReport(positive, min_entry, max(modulus_residual, 0.0))


def domination_check(s: LinOp,
                     t: LinOp,
                     tol: float = DEFAULT_DOMINATION_TOLERANCE,
                     rng: np.random.Generator or None = None) -> DominationReport:
    """Checks |S| <= T + tol entrywise

    The sampled route |Sx| <= Tx on positive probes, with every basis vector among the probes, must give the
    same answer. When S is dominated, r(S) <= r(T) and ||S^n|| <= ||T^n|| for n <= 8 are checked against the
    matrix T + tol J, J the all ones matrix, which dominates S exactly.

    :param LinOp s: The dominated operator
    :param LinOp t: The positive majorant
    :param float tol: Entry slack
    :param np.random.Generator rng: The generator of the probes
    :return: The report, truthy when all checks pass
    :rtype: DominationReport
    """
    if s.matrix.shape != t.matrix.shape:
        logging.getLogger(LOGGER_NAME).error('domination_check: the shapes %s and %s differ.',
                                             s.matrix.shape, t.matrix.shape)
        raise SpaceMismatch('domination_check', 'The shapes {} and {} differ.'.format(s.matrix.shape, t.matrix.shape))

    excess = np.abs(s.matrix) - t.matrix
    max_excess = float(np.max(excess)) if excess.size else 0.0
    dominated = max_excess <= tol

    if rng is None:
        rng = np.random.default_rng(0)
    n = s.domain.dim
    probes = [np.eye(1, n, j)[0] for j in range(n)] + [rng.random(n) for _ in range(MODULUS_PROBE_COUNT)]
    sampled = all(np.all(np.abs(s.matrix @ x) <= t.matrix @ x + tol * np.sum(x) * (1.0 + 1e-12) + 1e-15)
                  for x in probes)
    if sampled != dominated:
        logging.getLogger(LOGGER_NAME).error('domination_check: the entrywise (%s) and the sampled (%s) routes differ.',
                                             dominated, sampled)
        dominated = False

    if not dominated or not s.is_square:
        return DominationReport(dominated, max_excess, float('nan'), float('nan'), dominated, dominated)

    majorant = t.matrix + tol * np.ones_like(t.matrix)
    majorant_op = LinOp(majorant, t.domain, t.codomain)
    radius_s = spectral_radius(s).value
    radius_t = spectral_radius(t).value
    spectral_ok = radius_s <= spectral_radius(majorant_op).value + SPECTRAL_SLACK

    powers_ok = True
    power_s, power_t = np.eye(n), np.eye(n)
    for k in range(1, DOMINATION_MAX_POWER + 1):
        power_s = power_s @ s.matrix
        power_t = power_t @ majorant
        norm_s = np.linalg.norm(power_s, np.inf)
        norm_t = np.linalg.norm(power_t, np.inf)
        if norm_s > norm_t * (1.0 + 1e-12) + 1e-12:
            logging.getLogger(LOGGER_NAME).error('domination_check: ||S^%s|| = %s exceeds ||T^%s|| = %s.',
                                                 k, norm_s, k, norm_t)
            powers_ok = False

    if not spectral_ok:
        logging.getLogger(LOGGER_NAME).error('domination_check: r(S) = %s exceeds r(T) = %s.', radius_s, radius_t)
    return DominationReport(dominated, max_excess, radius_s, radius_t, spectral_ok, powers_ok)


def jordan_split(operator: LinOp) -> Tuple[LinOp, LinOp]:
    """Splits an operator into positive parts with ``op == pos - neg`` and ``|op| == pos + neg``"""
    return LinOp(np.maximum(operator.matrix, 0.0), operator.domain, operator.codomain), \
        LinOp(np.maximum(-operator.matrix, 0.0), operator.domain, operator.codomain)
