# -*- coding: utf-8 -*-

"""
U-valued functions of time: step functions, functions sampled on a time grid, and uniform time grids.
"""

import logging
import math

import numpy as np
import scipy.integrate

from lattice.grid_space import GridSpace
from systems import LOGGER_NAME
from validators.number_validators import MIN_TIME_STEPS

# Distance under which a time counts as a grid node
TIME_SNAP = 1e-9


class TimeGrid:
    """
    The uniform grid t_k = k * step, k = 0..steps, on [0, t_end].
    """

    def __repr__(self) -> str:
        return f'TimeGrid(t_end={self.t_end}, steps={self.steps})'

    def __str__(self) -> str:
        return repr(self)

    def __init__(self, t_end: float, steps: int):
        self.logger = logging.getLogger(self.__class__.__name__)

        if not t_end > 0.0 or not math.isfinite(t_end):
            self.logger.error('The time grid needs t_end > 0, got %s.', t_end)
            raise ValueError('The time grid needs t_end > 0, got {}.'.format(t_end))
        if steps < MIN_TIME_STEPS:
            self.logger.error('The time grid needs at least %s steps, got %s.', MIN_TIME_STEPS, steps)
            raise ValueError('The time grid needs at least {} steps, got {}.'.format(MIN_TIME_STEPS, steps))

        self.t_end = float(t_end)
        self.steps = int(steps)
        self.step = self.t_end / self.steps
        self.times = np.linspace(0.0, self.t_end, self.steps + 1)

    @classmethod
    def from_times(cls, times: np.ndarray) -> 'TimeGrid':
        """The uniform grid with the given nodes"""
        times = np.asarray(times, dtype=float)
        grid = cls(float(times[-1]), times.size - 1)
        if times[0] != 0.0 or not np.allclose(times, grid.times, rtol=0.0, atol=TIME_SNAP * max(1.0, grid.t_end)):
            logging.getLogger(LOGGER_NAME).error('The times are not a uniform grid starting at 0.')
            raise ValueError('The times are not a uniform grid starting at 0.')
        return grid

    def index_of(self, t: float) -> int:
        """Returns k with t == t_k"""
        k = int(round(t / self.step))
        if k < 0 or k > self.steps or abs(k * self.step - t) > TIME_SNAP * max(1.0, self.t_end):
            self.logger.error('The time %s is not a node of %s.', t, self)
            raise ValueError('The time {} is not a node of {}.'.format(t, self))
        return k


class StepFunction:
    """
    u(s) = values[k] on [breakpoints[k], breakpoints[k + 1]), and 0 from breakpoints[-1] on.
    """

    def __repr__(self) -> str:
        return f'StepFunction(pieces={len(self.values)}, support_end={self.support_end})'

    def __str__(self) -> str:
        return repr(self)

    def __init__(self, breakpoints: np.ndarray, values: np.ndarray, u_space: GridSpace or None = None):
        self.logger = logging.getLogger(self.__class__.__name__)

        breakpoints = np.array(breakpoints, dtype=float)
        values = np.array(values, dtype=float)
        if values.ndim == 1:
            values = values[:, np.newaxis]
        if breakpoints.ndim != 1 or breakpoints.size < 2 or breakpoints[0] != 0.0 \
                or np.any(np.diff(breakpoints) <= 0.0):
            self.logger.error('The breakpoints must ascend strictly from 0.')
            raise ValueError('The breakpoints must ascend strictly from 0.')
        if values.shape[0] != breakpoints.size - 1:
            self.logger.error('%s breakpoints need %s values, got %s.',
                              breakpoints.size, breakpoints.size - 1, values.shape[0])
            raise ValueError('{} breakpoints need {} values, got {}.'
                             .format(breakpoints.size, breakpoints.size - 1, values.shape[0]))
        if u_space is not None and values.shape[1] != u_space.dim:
            self.logger.error('The values have %s components but U has %s.', values.shape[1], u_space.dim)
            raise ValueError('The values have {} components but U has {}.'.format(values.shape[1], u_space.dim))

        self.breakpoints = breakpoints
        self.values = values
        self.u_space = u_space

    @property
    def support_end(self) -> float:
        return float(self.breakpoints[-1])

    def sup_norm(self) -> float:
        norms = [self.u_space.norm(v) if self.u_space is not None else float(np.max(np.abs(v)))
                 for v in self.values]
        return max(norms)

    def evaluate(self, s: float) -> np.ndarray:
        if s < 0.0 or s >= self.support_end:
            return np.zeros(self.values.shape[1])
        return self.values[int(np.searchsorted(self.breakpoints, s, side='right')) - 1]


class TimeGridFn:
    """
    A U-valued function sampled at ascending times starting at 0, linear between the samples.
    """

    def __repr__(self) -> str:
        return f'TimeGridFn(samples={self.times.size}, components={self.values.shape[1]})'

    def __str__(self) -> str:
        return repr(self)

    def __init__(self, times: np.ndarray, values: np.ndarray, u_space: GridSpace or None = None):
        self.logger = logging.getLogger(self.__class__.__name__)

        times = np.array(times, dtype=float)
        values = np.array(values, dtype=float)
        if values.ndim == 1:
            values = values[:, np.newaxis]
        if times.ndim != 1 or times.size < 2 or times[0] != 0.0 or np.any(np.diff(times) <= 0.0):
            self.logger.error('The times must ascend strictly from 0.')
            raise ValueError('The times must ascend strictly from 0.')
        if values.shape[0] != times.size:
            self.logger.error('%s times need %s samples, got %s.', times.size, times.size, values.shape[0])
            raise ValueError('{} times need {} samples, got {}.'.format(times.size, times.size, values.shape[0]))
        if u_space is not None and values.shape[1] != u_space.dim:
            self.logger.error('The values have %s components but U has %s.', values.shape[1], u_space.dim)
            raise ValueError('The values have {} components but U has {}.'.format(values.shape[1], u_space.dim))

        self.times = times
        self.values = values
        self.u_space = u_space

    @classmethod
    def from_callable(cls, time_grid: TimeGrid, function, u_space: GridSpace or None = None) -> 'TimeGridFn':
        """Samples function(t) -> U-vector on the grid"""
        return cls(time_grid.times, np.array([np.atleast_1d(function(t)) for t in time_grid.times]), u_space)

    def _u_norms(self) -> np.ndarray:
        if self.u_space is None:
            return np.max(np.abs(self.values), axis=1)
        return np.array([self.u_space.norm(v) for v in self.values])

    def evaluate(self, s: float) -> np.ndarray:
        return np.array([np.interp(s, self.times, column) for column in self.values.T])

    def to_step_function(self) -> StepFunction:
        """The step function with the cell midpoint values (v_(k-1) + v_k) / 2 on [t_(k-1), t_k)"""
        return StepFunction(self.times, 0.5 * (self.values[:-1] + self.values[1:]), self.u_space)

    def sup_norm(self) -> float:
        return float(np.max(self._u_norms()))

    def time_lp_norm(self, p: float) -> float:
        """(integral of ||v(t)||_U^p dt)^(1/p) with the trapezoid rule"""
        return float(scipy.integrate.trapezoid(self._u_norms() ** p, self.times) ** (1.0 / p))

    def time_l1_norm(self) -> float:
        return self.time_lp_norm(1.0)

    def __add__(self, other: 'TimeGridFn') -> 'TimeGridFn':
        return TimeGridFn(self.times, self.values + other.values, self.u_space)

    def __sub__(self, other: 'TimeGridFn') -> 'TimeGridFn':
        return TimeGridFn(self.times, self.values - other.values, self.u_space)
