# -*- coding: utf-8 -*-

"""
Empirical admissibility constants of the control and observation operators of a triple.

The constants are probe suprema on finite grids. They are reported, never certified.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.integrate

from systems import LOGGER_NAME
from systems.system_maps import SystemMaps, BOUND_SLACK, controllability_map
from systems.time_functions import TimeGrid, StepFunction
from systems.triple import TripleSpec
from utils.constants import DEFAULT_PROBE_COUNT

# Time steps of the admissibility grid
ADMISSIBILITY_STEPS = 256

# Most breakpoints of a random step function probe
MAX_STEP_PIECES = 12


@dataclass(frozen=True)
class AdmissibilityReport:
    p: float
    t: float
    control_constant: float
    observation_constant: float
    step_constant: float or None

    @property
    def finite(self) -> bool:
        values = [self.control_constant, self.observation_constant]
        if self.step_constant is not None:
            values.append(self.step_constant)
        return bool(np.all(np.isfinite(values)))


def _time_lp(norms: np.ndarray, times: np.ndarray, p: float) -> np.ndarray:
    """(integral of norms^p dt)^(1/p) along the first axis, the sup for p = inf"""
    if np.isinf(p):
        return np.max(norms, axis=0)
    return scipy.integrate.trapezoid(norms ** p, times, axis=0) ** (1.0 / p)


def _u_norms(values: np.ndarray, triple: TripleSpec) -> np.ndarray:
    """U-norms of sampled functions (steps + 1, components, columns), shape (steps + 1, columns)"""
    return np.apply_along_axis(triple.u_space.norm, 1, values)


def _random_step_function(triple: TripleSpec, t: float, rng: np.random.Generator) -> StepFunction:
    pieces = int(rng.integers(1, MAX_STEP_PIECES + 1))
    breakpoints = np.concatenate(([0.0], np.sort(rng.uniform(0.0, t, pieces - 1)), [t]))
    breakpoints = np.unique(breakpoints)
    values = rng.uniform(-1.0, 1.0, (breakpoints.size - 1, triple.u_space.dim))
    return StepFunction(breakpoints, values, triple.u_space)


def admissibility_constants(triple: TripleSpec,
                            p: float,
                            t: float,
                            probes: int = DEFAULT_PROBE_COUNT,
                            rng: np.random.Generator or None = None,
                            steps: int = ADMISSIBILITY_STEPS) -> AdmissibilityReport:
    """Returns probed admissibility constants on [0, t]

    The control constant is sup ||B_t u||_X / ||u||_(L^p([0, t], U)), the observation constant
    sup (integral of ||C T(s) x||^p ds)^(1/p) / ||x||_X. For p = inf the control constant is also probed with
    random step functions, which are dense in the input space.

    :param TripleSpec triple: A triple with negative growth bound
    :param float p: The exponent, 1 <= p <= inf
    :param float t: The horizon, t > 0
    :param int probes: Number of random inputs and states
    :param np.random.Generator rng: The generator of the probes
    :param int steps: Time steps on [0, t]
    :return: The constants
    :rtype: AdmissibilityReport
    """
    if not p >= 1.0:
        logging.getLogger(LOGGER_NAME).error('admissibility_constants: p must be at least 1, got %s.', p)
        raise ValueError('admissibility_constants: p must be at least 1, got {}.'.format(p))
    if rng is None:
        rng = np.random.default_rng(0)

    time_grid = TimeGrid(t, steps)
    maps = SystemMaps(triple, time_grid)
    x_space = triple.x_space

    inputs = rng.uniform(-1.0, 1.0, (steps + 1, triple.u_space.dim, probes))
    states = maps.control_apply(inputs, steps)
    input_norms = _time_lp(_u_norms(inputs, triple), time_grid.times, p)
    state_norms = np.array([x_space.norm(column) for column in states.T])
    control_constant = float(np.max(state_norms / input_norms))

    initial = rng.standard_normal((x_space.dim, probes))
    outputs = maps.observe(initial)
    output_norms = _time_lp(_u_norms(outputs, triple), time_grid.times, p)
    initial_norms = np.array([x_space.norm(column) for column in initial.T])
    observation_constant = float(np.max(output_norms / initial_norms))

    step_constant = None
    if np.isinf(p):
        step_constant = 0.0
        for _ in range(probes):
            u = _random_step_function(triple, t, rng)
            size = u.sup_norm()
            if size > 0.0:
                step_constant = max(step_constant, controllability_map(triple, u, t).norm() / size)

    report = AdmissibilityReport(p, t, control_constant, observation_constant, step_constant)
    logging.getLogger(LOGGER_NAME).debug('admissibility_constants: %s', report)
    return report


@dataclass(frozen=True)
class ObservabilityBoundReport:
    largest: float
    bound: float

    @property
    def holds(self) -> bool:
        return self.largest <= self.bound + BOUND_SLACK


def observability_bound_check(triple: TripleSpec,
                              time_grid: TimeGrid,
                              probes: int = DEFAULT_PROBE_COUNT,
                              rng: np.random.Generator or None = None) -> ObservabilityBoundReport:
    """Checks integral of ||C T(s) x|| ds <= ||C A^-1|| ||x|| on random positive unit states x

    :param TripleSpec triple: A positive triple with negative growth bound
    :param TimeGrid time_grid: The quadrature grid of the time integral
    :param int probes: Number of random states
    :param np.random.Generator rng: The generator of the probes
    :return: The largest probed integral and the bound
    :rtype: ObservabilityBoundReport
    """
    if rng is None:
        rng = np.random.default_rng(0)

    bound = triple.c_a_inverse().norm_estimate(rng).estimate
    maps = SystemMaps(triple, time_grid)
    initial = rng.random((triple.x_space.dim, probes))
    initial /= np.array([triple.x_space.norm(column) for column in initial.T])[np.newaxis, :]
    outputs = maps.observe(initial)
    integrals = _time_lp(_u_norms(outputs, triple), time_grid.times, 1.0)

    report = ObservabilityBoundReport(float(np.max(integrals)), bound)
    if not report.holds:
        logging.getLogger(LOGGER_NAME).warning('observability_bound_check: %s exceeds the bound %s.',
                                               report.largest, bound)
    return report


def controllability_bound(triple: TripleSpec, u: StepFunction, t: float) -> Tuple[float, float]:
    """Returns ||B_t u||_X and the bound ||A_-1^-1 B|| ||u||_inf, the norm taken from sup-normed inputs"""
    a_inverse_b = triple.a_inverse_b().matrix
    bound = triple.x_space.norm(np.abs(a_inverse_b) @ np.ones(triple.u_space.dim))
    return controllability_map(triple, u, t).norm(), bound * float(np.max(np.abs(u.values)))
