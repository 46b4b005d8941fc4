# -*- coding: utf-8 -*-

"""
Hypothesis checks of the perturbation theorems.
"""

import logging
from dataclasses import dataclass, field, asdict
from enum import Enum, unique
from typing import List, Iterable, Dict, Any

import numpy as np

from lattice.grid_space import NormKind
from operators.order import op_positivity_check, PositivityReport
from operators.spectral import spectral_radius
from systems.admissibility import admissibility_constants
from systems.triple import TripleSpec
from theorems import LOGGER_NAME
from utils.constants import DEFAULT_POSITIVITY_TOLERANCE
from utils.numerical_errors import HypothesisFailed

# Slack of the monotonicity r(C R(lam, A_-1) B) <= r(C A_-1^-1 B)
MONOTONE_RADIUS_SLACK = 1e-8

# Horizon of the admissibility probes
ADMISSIBILITY_HORIZON = 1.0


@unique
class TheoremKind(Enum):
    AM = 'AM'
    AL = 'AL'
    RN = 'RN'
    DOM = 'DOM'


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    passed: bool
    value: float or None
    message: str


@dataclass(frozen=True)
class HypothesisReport:
    kind: TheoremKind
    checks: List[HypothesisCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def first_failure(self) -> HypothesisCheck or None:
        return next((check for check in self.checks if not check.passed), None)

    def get(self, name: str) -> HypothesisCheck or None:
        return next((check for check in self.checks if check.name == name), None)

    def as_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind.value,
                'passed': self.passed,
                'checks': [asdict(check) for check in self.checks]}


@dataclass(frozen=True)
class ControlPositivityReport:
    lambdas: List[float]
    reports: List[PositivityReport]

    def __bool__(self) -> bool:
        return all(self.reports)


def check_control_positivity(triple: TripleSpec,
                             lambda_samples: Iterable[float],
                             tol: float = DEFAULT_POSITIVITY_TOLERANCE,
                             rng: np.random.Generator or None = None) -> ControlPositivityReport:
    """Checks that R(lam, A_-1) B = R(lam, A) (lambda0 - A) B_reg is positive at every sampled lam

    :param TripleSpec triple: The triple
    :param Iterable[float] lambda_samples: Points above the growth bound
    :param float tol: Allowed negative size of an entry
    :param np.random.Generator rng: The generator of the modulus probes
    :return: The report, truthy when every point passes
    :rtype: ControlPositivityReport
    """
    lambdas = list(lambda_samples)
    reports = [op_positivity_check(triple.control_resolvent(lam), tol, rng) for lam in lambdas]
    return ControlPositivityReport(lambdas, reports)


def feedback_spectral_radius(triple: TripleSpec, lam: float) -> float:
    """Returns r(C R(lam, A_-1) B)

    For positive triples with negative growth bound and lam > 0 the value is compared with the one at 0, which
    bounds it from above.

    :param TripleSpec triple: The triple
    :param float lam: A point above the growth bound
    :return: The spectral radius
    :rtype: float
    :raises HypothesisFailed: When the radius exceeds the one at 0 by more than MONOTONE_RADIUS_SLACK
    """
    radius = spectral_radius(triple.feedback_operator(lam)).value
    if lam > 0.0 and triple.model.growth_bound < 0.0 and triple.is_positive(DEFAULT_POSITIVITY_TOLERANCE):
        at_zero = spectral_radius(triple.feedback_operator(0.0)).value
        if radius > at_zero + MONOTONE_RADIUS_SLACK:
            message = 'r = {} at lambda={} exceeds r = {} at lambda=0.'.format(radius, lam, at_zero)
            logging.getLogger(LOGGER_NAME).error('feedback_spectral_radius: %s', message)
            raise HypothesisFailed('feedback_spectral_radius', message, 'radius_monotonicity', lam=lam)
    logging.getLogger(LOGGER_NAME).debug('feedback_spectral_radius: %s at lambda=%s', radius, lam)
    return radius


def _u_space_check(triple: TripleSpec, kind: TheoremKind) -> HypothesisCheck:
    u_space = triple.u_space
    if kind is TheoremKind.AM:
        passed = u_space.norm_kind is NormKind.SUP
        message = 'U is an AM-space' if passed else 'U must be an AM-space (Sup), got {}'.format(u_space)
    elif kind is TheoremKind.AL:
        passed = u_space.norm_kind is NormKind.L1
        message = 'U is an AL-space' if passed else 'U must be an AL-space (L1), got {}'.format(u_space)
    else:
        passed = bool(np.all(u_space.weights == 1.0))
        message = 'U is R^N' if passed else 'U must be R^N with unit weights, got {}'.format(u_space)
    return HypothesisCheck('u_space', passed, None, message)


def spectral_radius_check(radius: float, lam: float) -> HypothesisCheck:
    passed = radius < 1.0
    if passed:
        message = 'spectral radius {:.6g} < 1 at lambda={:g}'.format(radius, lam)
    else:
        message = 'spectral radius {:.6g} >= 1 at lambda={:g}'.format(radius, lam)
    return HypothesisCheck('spectral_radius', passed, radius, message)


def hypothesis_report(triple: TripleSpec,
                      kind: TheoremKind,
                      lambda_check: float = 0.0,
                      tol: float = DEFAULT_POSITIVITY_TOLERANCE,
                      rng: np.random.Generator or None = None,
                      p: float or None = None) -> HypothesisReport:
    """Evaluates the hypotheses of one theorem on a triple with negative growth bound

    All kinds need a positive control, a positive observation and r(C R(lambda_check, A_-1) B) < 1. AM needs a
    Sup-tagged U and AL an L1-tagged U; RN needs U = R^N and finite probed p-admissibility constants.

    :param TripleSpec triple: The triple, rescaled to a negative growth bound
    :param TheoremKind kind: The theorem
    :param float lambda_check: The point of the spectral radius check
    :param float tol: Positivity slack
    :param np.random.Generator rng: The generator of the probes
    :param float p: The admissibility exponent of RN
    :return: The report
    :rtype: HypothesisReport
    """
    checks = [_u_space_check(triple, kind)]

    positivity = check_control_positivity(triple, sorted({lambda_check, triple.lambda0}), tol, rng)
    min_entry = min((report.min_entry for report in positivity.reports), default=0.0)
    checks.append(HypothesisCheck('control_positivity', bool(positivity), min_entry,
                                  'R(lambda, A_-1) B is positive' if positivity
                                  else 'R(lambda, A_-1) B has the negative entry {:.6g}'.format(min_entry)))

    observation = op_positivity_check(triple.c, tol, rng)
    checks.append(HypothesisCheck('observation_positivity', bool(observation), observation.min_entry,
                                  'C is positive' if observation
                                  else 'C has the negative entry {:.6g}'.format(observation.min_entry)))

    if kind is TheoremKind.AL:
        finite = bool(np.all(np.isfinite(triple.b_reg.matrix)))
        checks.append(HypothesisCheck('control_range', finite, None,
                                      'B_reg maps into X' if finite else 'B_reg has non finite entries'))

    if kind is TheoremKind.RN:
        exponent = p if p is not None else 2.0
        constants = admissibility_constants(triple, exponent, ADMISSIBILITY_HORIZON, rng=rng)
        checks.append(HypothesisCheck('admissibility', constants.finite,
                                      max(constants.control_constant, constants.observation_constant),
                                      '{}-admissibility constants {:.6g}, {:.6g}'
                                      .format(exponent, constants.control_constant,
                                              constants.observation_constant)))

    checks.append(spectral_radius_check(feedback_spectral_radius(triple, lambda_check), lambda_check))

    report = HypothesisReport(kind, checks)
    logging.getLogger(LOGGER_NAME).info('hypothesis_report: %s %s', kind.value,
                                        'passed' if report.passed else report.first_failure().message)
    return report
