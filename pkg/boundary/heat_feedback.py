# -*- coding: utf-8 -*-

"""
The heat equation on [0, 1] whose boundary values are fed back from the interior,
u(t, z) = integral of phi(z, x) u(t, x) dx for z in {0, 1}.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List

import numpy as np
import scipy.linalg

from boundary import LOGGER_NAME
from boundary.boundary_model import BoundaryModel, BoundaryKernel
from boundary.greiner import (BoundaryReport, BoundarySweepRow, DEFAULT_LAMBDA0, DEFAULT_LAMBDA_SWEEP,
                              boundary_generator, eliminated_generator)
from systems.time_functions import TimeGrid
from theorems.perturbed_semigroup import PerturbedSemigroup
from utils.constants import DEFAULT_RESOLVENT_TOLERANCE


def _zero_kernel(scale: float) -> BoundaryKernel:
    return lambda z, x: np.zeros(np.broadcast(z, x).shape)


def _constant_kernel(scale: float) -> BoundaryKernel:
    return lambda z, x: np.full(np.broadcast(z, x).shape, scale)


def _cosine_kernel(scale: float) -> BoundaryKernel:
    return lambda z, x: scale * np.cos(np.pi * x) + 0.0 * z


""" Named boundary kernels phi(z, x), each built from a scale factor """
BOUNDARY_KERNELS = {
    'zero': _zero_kernel,
    'constant': _constant_kernel,
    'cosine': _cosine_kernel,
}


def boundary_kernel(name: str, scale: float) -> BoundaryKernel:
    if name not in BOUNDARY_KERNELS:
        logging.getLogger(LOGGER_NAME).error('Unknown boundary kernel %s, known kernels are %s.',
                                             name, ', '.join(BOUNDARY_KERNELS))
        raise ValueError('Unknown boundary kernel {}, known kernels are {}.'.format(name, ', '.join(BOUNDARY_KERNELS)))
    return BOUNDARY_KERNELS[name](scale)


def continuum_norm_l_lambda_one(lam: float) -> float:
    """||L_lambda (1, 1)|| in L2(0, 1) for the continuous Dirichlet operator of the second derivative

    L_lambda (1, 1) is cosh(k (x - 1/2)) / cosh(k / 2) with k = sqrt(lambda).
    """
    if lam == 0.0:
        return 1.0
    k = math.sqrt(lam)
    # 1 + sinh(k) / k overflows the cosh for large k; both sides are scaled by exp(-k/2)
    scaled_square = (math.exp(-k) + math.sinh(k) * math.exp(-k) / k) / 2.0
    return math.sqrt(scaled_square) / ((1.0 + math.exp(-k)) / 2.0)


@dataclass(frozen=True)
class HeatFeedbackTimeRow:
    t: float
    min_entry_s: float
    domination_residual: float
    mass: float


@dataclass
class HeatFeedbackResult:
    model: BoundaryModel
    semigroup: PerturbedSemigroup
    report: BoundaryReport
    majorant: PerturbedSemigroup or None
    time_rows: List[HeatFeedbackTimeRow] = field(default_factory=list)

    @property
    def sweep(self) -> List[BoundarySweepRow]:
        return self.report.sweep

    def as_dict(self) -> Dict:
        values = self.report.as_dict()
        values['diagnostics'] = self.semigroup.diagnostics.as_dict()
        values['min_entry_S'] = min((row.min_entry_s for row in self.time_rows), default=None)
        values['max_domination_residual'] = max((row.domination_residual for row in self.time_rows), default=None)
        return values


def heat_feedback(n: int,
                  kernel: BoundaryKernel,
                  time_grid: TimeGrid,
                  report_times: Iterable[float],
                  lambda_check: float = 0.0,
                  lambda_sweep: Iterable[float] = DEFAULT_LAMBDA_SWEEP,
                  lambda0: float = DEFAULT_LAMBDA0,
                  rng: np.random.Generator or None = None,
                  resolvent_tol: float = DEFAULT_RESOLVENT_TOLERANCE) -> HeatFeedbackResult:
    """Runs the heat equation with boundary feedback for one kernel

    The semigroup of the kernel is compared with the closed loop of |phi| at every report time; the domination
    residual is max(|S(t)| - S~(t)) and the mass is the integral of S(t) 1.

    :param int n: Number of nodes of the full grid
    :param BoundaryKernel kernel: The kernel phi(z, x)
    :param TimeGrid time_grid: The time grid
    :param Iterable[float] report_times: Grid times of the time rows
    :param float lambda_check: The point of the spectral radius check
    :param Iterable[float] lambda_sweep: The points of the sweep
    :param float lambda0: The reference point of the regularized control
    :param np.random.Generator rng: The generator of the probes
    :param float resolvent_tol: Relative difference allowed between the two representations of A^Phi
    :return: The semigroup, the boundary report and the time rows
    :rtype: HeatFeedbackResult
    """
    report_times = sorted(float(t) for t in report_times)
    model = BoundaryModel.with_kernel(n, kernel)
    semigroup, report, majorant = boundary_generator(model, lambda_check, time_grid, lambda_sweep, lambda0, rng,
                                                     check_times=report_times or None, resolvent_tol=resolvent_tol)

    dominating = eliminated_generator(model.with_phi(abs(model.phi))).matrix
    ones = np.ones(model.x_space.dim)
    result = HeatFeedbackResult(model, semigroup, report, majorant)
    for t in report_times:
        s = semigroup.evaluate(t).matrix
        residual = float(np.max(np.abs(s) - scipy.linalg.expm(t * dominating)))
        mass = float(model.x_space.weights @ (s @ ones))
        result.time_rows.append(HeatFeedbackTimeRow(t, float(np.min(s)), residual, mass))

    logging.getLogger(LOGGER_NAME).info('heat_feedback: n=%s, lambda*=%s, %s time rows', n, report.lambda_star,
                                        len(result.time_rows))
    return result
