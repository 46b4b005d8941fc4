# -*- coding: utf-8 -*-

"""
Controllability, observability and input-output maps of a triple, the Picard inversion of (Id - F_inf) and
Laplace transforms of sampled functions.

Inputs on a uniform time grid are replaced by the step function with the cell midpoint values. On each cell the
controllability map is then exact:

    x_k = E x_(k-1) + (E - I) G u_k,    E = T(dt),  G = A_-1^-1 B,

so B_t u is a discrete convolution with the kernel Q_m = (E^(m+1) - E^m) G and F_inf u one with H_m = C Q_m.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List

import numpy as np
import scipy.fft
import scipy.integrate
import scipy.linalg

from interpolation.time_operator import TimeOperator
from lattice.grid_space import GridSpace, NormKind
from lattice.lattice_vector import LatticeVector
from operators.lin_op import LinOp
from operators.spectral import spectral_radius
from systems import LOGGER_NAME
from systems.time_functions import TimeGrid, TimeGridFn, StepFunction
from systems.triple import TripleSpec
from utils.constants import DEFAULT_PICARD_TOLERANCE, DEFAULT_PROBE_COUNT
from utils.numerical_errors import NotRescaled, DivergentIteration, NonDecayingTail

# Number of consecutive growing Picard increments that marks the iteration divergent
MAX_GROWING_INCREMENTS = 10

# Iteration cap when the feedback spectral radius gives no geometric rate
MAX_PICARD_ITERATIONS = 10000

# Smallest rate used for the Picard iteration cap
MIN_PICARD_RATE = 1e-3

# Slack of the norm bound checks
BOUND_SLACK = 1e-6


@dataclass(frozen=True)
class PicardResult:
    solution: np.ndarray
    iterations: int
    increments: List[float] = field(default_factory=list)

    @property
    def rate_estimate(self) -> float:
        """Ratio of the last two increments, an estimate of the spectral radius of F_inf"""
        if len(self.increments) < 2 or self.increments[-2] == 0.0:
            return 0.0
        return self.increments[-1] / self.increments[-2]


class SystemMaps:
    """
    The discrete system maps of a triple with negative growth bound on a uniform time grid.

    Time functions are arrays of the shape (steps + 1, components, columns); the last axis carries independent
    inputs so that whole operator columns are mapped in one pass.
    """

    def __repr__(self) -> str:
        return f'SystemMaps(triple={self.triple}, time_grid={self.time_grid})'

    def __str__(self) -> str:
        return repr(self)

    def __init__(self, triple: TripleSpec, time_grid: TimeGrid):
        self.logger = logging.getLogger(self.__class__.__name__)

        growth_bound = triple.model.growth_bound
        if growth_bound >= 0.0:
            self.logger.error('The system maps need a negative growth bound, got %s. Rescale the triple first.',
                              growth_bound)
            raise NotRescaled('SystemMaps', 'The system maps need a negative growth bound, got {}.'
                              .format(growth_bound), growth_bound=growth_bound)

        self.triple = triple
        self.time_grid = time_grid
        self.step_operator = triple.model.evaluate(time_grid.step).matrix
        self.a_inverse_b = triple.a_inverse_b().matrix
        self.observation = triple.c.matrix

        self._control_kernel = None
        self._io_kernel = None
        self._io_kernel_fft = None
        self._control_kernel_fft = None
        self._fft_length = scipy.fft.next_fast_len(2 * time_grid.steps - 1, real=True)

    @property
    def steps(self) -> int:
        return self.time_grid.steps

    def _build_kernels(self):
        """Q_m = (E^(m+1) - E^m) G and H_m = C Q_m for m = 0..steps-1"""
        n, m = self.a_inverse_b.shape
        control_kernel = np.empty((self.steps, n, m))
        power_g = self.a_inverse_b
        for k in range(self.steps):
            next_power_g = self.step_operator @ power_g
            control_kernel[k] = next_power_g - power_g
            power_g = next_power_g
        self._control_kernel = control_kernel
        self._io_kernel = np.einsum('ij,mjk->mik', self.observation, control_kernel)

    @property
    def control_kernel(self) -> np.ndarray:
        if self._control_kernel is None:
            self._build_kernels()
        return self._control_kernel

    @property
    def io_kernel(self) -> np.ndarray:
        if self._io_kernel is None:
            self._build_kernels()
        return self._io_kernel

    def _convolve(self, kernel_fft: np.ndarray, cell_values: np.ndarray) -> np.ndarray:
        """sum_m kernel_m cell_values_(k - m) for k = 0..steps-1 through real FFTs along the time axis"""
        values_fft = scipy.fft.rfft(cell_values, n=self._fft_length, axis=0)
        product = np.einsum('fij,fjc->fic', kernel_fft, values_fft)
        return scipy.fft.irfft(product, n=self._fft_length, axis=0)[:self.steps]

    @staticmethod
    def cell_values(values: np.ndarray) -> np.ndarray:
        """The midpoint values (v_(k-1) + v_k) / 2 of the cells k = 1..steps"""
        return 0.5 * (values[:-1] + values[1:])

    def observe(self, states: np.ndarray) -> np.ndarray:
        """C T(t_k) x for every grid time and every column x of states"""
        rows = np.empty((self.steps + 1,) + self.observation.shape)
        rows[0] = self.observation
        for k in range(1, self.steps + 1):
            rows[k] = rows[k - 1] @ self.step_operator
        return np.einsum('kij,jc->kic', rows, states)

    def io_apply(self, values: np.ndarray) -> np.ndarray:
        """F_inf applied to sampled inputs, zero at t = 0"""
        if self._io_kernel_fft is None:
            self._io_kernel_fft = scipy.fft.rfft(self.io_kernel, n=self._fft_length, axis=0)
        result = np.zeros((self.steps + 1, self.io_kernel.shape[1], values.shape[2]))
        result[1:] = self._convolve(self._io_kernel_fft, self.cell_values(values))
        return result

    def control_apply(self, values: np.ndarray, k: int) -> np.ndarray:
        """B_(t_k) applied to sampled inputs"""
        if k == 0:
            return np.zeros((self.a_inverse_b.shape[0], values.shape[2]))
        cells = self.cell_values(values)
        return np.einsum('mij,mjc->ic', self.control_kernel[:k], cells[k - 1::-1])

    def control_trajectory(self, values: np.ndarray) -> np.ndarray:
        """B_(t_k) applied to sampled inputs for every grid time"""
        if self._control_kernel_fft is None:
            self._control_kernel_fft = scipy.fft.rfft(self.control_kernel, n=self._fft_length, axis=0)
        result = np.zeros((self.steps + 1, self.a_inverse_b.shape[0], values.shape[2]))
        result[1:] = self._convolve(self._control_kernel_fft, self.cell_values(values))
        return result

    def feedback_radius(self) -> float:
        """r(C A_-1^-1 B), the spectral radius of the feedback at lambda = 0"""
        u_space = self.triple.u_space
        return spectral_radius(LinOp(self.observation @ self.a_inverse_b, u_space, u_space)).value

    def picard(self, f: np.ndarray, tol: float = DEFAULT_PICARD_TOLERANCE, radius: float or None = None) \
            -> PicardResult:
        """Solves v = f + F_inf v by the iteration v_(n+1) = f + F_inf v_n from v_0 = f

        The iteration stops when the sup of the increment is at most tol. It is capped at
        10 * ceil(log(tol) / log(r)) iterations, r the feedback spectral radius, and declared divergent after
        10 consecutive growing increments.

        :param np.ndarray f: Sampled right hand sides
        :param float tol: Sup of the last increment
        :param float radius: The feedback spectral radius, computed when missing
        :return: The fixed point and the increments
        :rtype: PicardResult
        """
        if radius is None:
            radius = self.feedback_radius()
        if radius < 1.0:
            rate = max(radius, MIN_PICARD_RATE)
            cap = 10 * max(1, math.ceil(math.log(tol) / math.log(rate)))
        else:
            cap = MAX_PICARD_ITERATIONS

        solution = np.array(f, dtype=float)
        increments = []
        growing = 0
        for iteration in range(1, cap + 1):
            updated = f + self.io_apply(solution)
            increment = float(np.max(np.abs(updated - solution))) if updated.size else 0.0
            solution = updated
            self.logger.debug('picard: iteration %s increment %s', iteration, increment)
            if increments and increment > increments[-1]:
                growing += 1
            else:
                growing = 0
            increments.append(increment)

            if increment <= tol:
                return PicardResult(solution, iteration, increments)
            if growing >= MAX_GROWING_INCREMENTS:
                self.logger.error('picard: %s consecutive growing increments, last %s.', growing, increment)
                raise DivergentIteration('picard', '{} consecutive growing increments, last {}.'
                                         .format(growing, increment), increments=increments[-3:])

        self.logger.error('picard: no convergence after %s iterations, last increment %s.', cap, increments[-1])
        raise DivergentIteration('picard', 'No convergence after {} iterations, last increment {}.'
                                 .format(cap, increments[-1]), increments=increments[-3:])


def _as_columns(function: TimeGridFn) -> np.ndarray:
    return function.values[:, :, np.newaxis]


def controllability_map(triple: TripleSpec, u: StepFunction or TimeGridFn, t: float) -> LatticeVector:
    """Returns B_t u = integral of T_-1(t - s) B u(s) over [0, t]

    Step functions are mapped exactly with the telescoping sum of (T(t - t_(n-1)) - T(t - t_n)) A_-1^-1 B u_n;
    sampled functions are first replaced by the step function of their cell midpoint values.

    :param TripleSpec triple: A triple with negative growth bound
    :param u: The input
    :param float t: The time, t >= 0
    :return: The state B_t u
    :rtype: LatticeVector
    """
    if isinstance(u, TimeGridFn):
        u = u.to_step_function()
    a_inverse_b = triple.a_inverse_b().matrix

    cache = {}

    def semigroup(s: float) -> np.ndarray:
        if s not in cache:
            cache[s] = triple.model.evaluate(s).matrix
        return cache[s]

    state = np.zeros(triple.x_space.dim)
    for start, end, value in zip(u.breakpoints[:-1], u.breakpoints[1:], u.values):
        if start >= t:
            break
        if not np.any(value):
            continue
        upper = min(end, t)
        state += (semigroup(t - start) - semigroup(t - upper)) @ (a_inverse_b @ value)
    return LatticeVector(triple.x_space, state)


def observability_map(triple: TripleSpec, x: LatticeVector, times: np.ndarray) -> TimeGridFn:
    """Returns s -> C T(s) x sampled on the times"""
    values = np.array([triple.c.matrix @ (triple.model.evaluate(float(s)).matrix @ x.values) for s in times])
    return TimeGridFn(times, values, triple.u_space)


def io_operator_apply(triple: TripleSpec, u: TimeGridFn) -> TimeGridFn:
    """Returns F_inf u on the uniform time grid of u"""
    maps = SystemMaps(triple, TimeGrid.from_times(u.times))
    return TimeGridFn(u.times, maps.io_apply(_as_columns(u))[:, :, 0], triple.u_space)


def picard_resolve(triple: TripleSpec, f: TimeGridFn, tol: float = DEFAULT_PICARD_TOLERANCE) -> TimeGridFn:
    """Returns (Id - F_inf)^-1 f on the uniform time grid of f"""
    maps = SystemMaps(triple, TimeGrid.from_times(f.times))
    result = maps.picard(_as_columns(f), tol)
    logging.getLogger(LOGGER_NAME).debug('picard_resolve: %s iterations', result.iterations)
    return TimeGridFn(f.times, result.solution[:, :, 0], triple.u_space)


def _tail_rate(function: TimeGridFn) -> float or None:
    """Slope of log ||f(t)|| over the last quarter of the samples, None when the tail vanishes"""
    start = 3 * (function.times.size - 1) // 4
    times = function.times[start:]
    sizes = np.max(np.abs(function.values[start:]), axis=1)
    mask = sizes > 0.0
    if np.count_nonzero(mask) < 2:
        return None
    return float(np.polyfit(times[mask], np.log(sizes[mask]), 1)[0])


def laplace_transform(f: TimeGridFn, lam: float, tail_rate: float or None = None) -> np.ndarray:
    """Returns the Laplace transform of f at lam

    Simpson quadrature of e^(-lam t) f(t) over the samples plus the exponential tail
    f(T) e^(-lam T) / (lam - tail_rate), the rate being estimated from the last quarter of the samples when
    it is not given.

    :param TimeGridFn f: The decaying function
    :param float lam: The point, lam > 0
    :param float tail_rate: Exponential rate of the tail, negative
    :return: The U-vector of the transform
    :rtype: np.ndarray
    """
    if lam <= 0.0:
        logging.getLogger(LOGGER_NAME).error('laplace_transform: lambda must be positive, got %s.', lam)
        raise ValueError('laplace_transform: lambda must be positive, got {}.'.format(lam))

    weights = np.exp(-lam * f.times)
    transform = scipy.integrate.simpson(weights[:, np.newaxis] * f.values, x=f.times, axis=0)

    last = f.values[-1]
    if tail_rate is None:
        if not np.any(last):
            return transform
        tail_rate = _tail_rate(f)
        if tail_rate is None:
            return transform
    if tail_rate >= 0.0:
        logging.getLogger(LOGGER_NAME).error('laplace_transform: the tail does not decay, rate %s.', tail_rate)
        raise NonDecayingTail('laplace_transform', 'The tail does not decay, rate {}.'.format(tail_rate),
                              tail_rate=tail_rate)
    return transform + last * math.exp(-lam * f.times[-1]) / (lam - tail_rate)


def laplace_identity_residual(triple: TripleSpec,
                              u: TimeGridFn,
                              lam: float,
                              tol: float = DEFAULT_PICARD_TOLERANCE,
                              relative: bool = False) -> float:
    """Returns the U-norm of L((Id - F_inf)^-1 u)(lam) - (I - C R(lam, A_-1) B)^-1 L(u)(lam)

    With relative the residual is divided by the U-norm of the right hand side, unless that vanishes.
    """
    solution = picard_resolve(triple, u, tol)
    transform = laplace_transform(solution, lam)
    expected = scipy.linalg.solve(np.eye(triple.u_space.dim) - triple.feedback_operator(lam).matrix,
                                  laplace_transform(u, lam))
    residual = triple.u_space.norm(transform - expected)
    scale = triple.u_space.norm(expected)
    if relative and scale > 0.0:
        return residual / scale
    return residual


@dataclass(frozen=True)
class IoPowerReport:
    norm_kind: NormKind
    p: float or None
    empirical: List[float]
    bounds: List[float]

    @property
    def holds(self) -> bool:
        return all(e <= b + BOUND_SLACK for e, b in zip(self.empirical, self.bounds))


def _time_norm(values: np.ndarray, u_space: GridSpace, time_weights: np.ndarray) -> np.ndarray:
    """Norms of sampled inputs (steps + 1, components, columns) per column"""
    kind = u_space.norm_kind
    if kind is NormKind.SUP:
        return np.max(np.abs(values), axis=(0, 1))
    p = 1.0 if kind is NormKind.L1 else u_space.p
    component_norms = (np.abs(values) ** p * u_space.weights[np.newaxis, :, np.newaxis]).sum(axis=1)
    return (time_weights @ component_norms) ** (1.0 / p)


def io_power_bound_check(triple: TripleSpec,
                         n_max: int,
                         norm_kind: NormKind,
                         time_grid: TimeGrid,
                         p: float or None = None,
                         probes: int = DEFAULT_PROBE_COUNT,
                         rng: np.random.Generator or None = None) -> IoPowerReport:
    """Compares probed norms of F_inf^n with the bounds from M^n, M = C A_-1^-1 B, for n = 1..n_max

    The bound is ||M^n|| in the sup or the 1-norm of U, and ||M^n||_1^(1/p) ||M^n||_sup^(1 - 1/p) for L^p.
    Time integrals use the trapezoid weights of the grid. Half of the probes are positive, half signed.

    :param TripleSpec triple: A positive triple with negative growth bound
    :param int n_max: Highest power, at most 8
    :param NormKind norm_kind: The norm family of U and of the time integral
    :param TimeGrid time_grid: The time grid
    :param float p: The exponent for L^p
    :param int probes: Number of random inputs
    :param np.random.Generator rng: The generator of the probes
    :return: Both sequences
    :rtype: IoPowerReport
    """
    if not 1 <= n_max <= 8:
        logging.getLogger(LOGGER_NAME).error('io_power_bound_check: n_max must be in 1..8, got %s.', n_max)
        raise ValueError('io_power_bound_check: n_max must be in 1..8, got {}.'.format(n_max))
    if rng is None:
        rng = np.random.default_rng(0)

    u_space = triple.u_space
    sup_space = u_space.with_norm(NormKind.SUP)
    l1_space = u_space.with_norm(NormKind.L1)
    norm_space = {NormKind.SUP: sup_space, NormKind.L1: l1_space}.get(norm_kind) \
        or u_space.with_norm(NormKind.LP, p)

    maps = SystemMaps(triple, time_grid)
    feedback = maps.observation @ maps.a_inverse_b

    bounds = []
    for n in range(1, n_max + 1):
        power = np.linalg.matrix_power(feedback, n)
        sup_bound = LinOp(power, sup_space, sup_space).exact_norm()
        l1_bound = LinOp(power, l1_space, l1_space).exact_norm()
        if norm_kind is NormKind.SUP:
            bounds.append(sup_bound)
        elif norm_kind is NormKind.L1:
            bounds.append(l1_bound)
        else:
            bounds.append(l1_bound ** (1.0 / p) * sup_bound ** (1.0 - 1.0 / p))

    shape = (time_grid.steps + 1, u_space.dim, probes)
    inputs = rng.uniform(-1.0, 1.0, shape)
    inputs[:, :, :probes // 2] = np.abs(inputs[:, :, :probes // 2])
    time_weights = np.full(time_grid.steps + 1, time_grid.step)
    time_weights[[0, -1]] = time_grid.step / 2.0

    input_norms = _time_norm(inputs, norm_space, time_weights)
    empirical = []
    outputs = inputs
    for _ in range(n_max):
        outputs = maps.io_apply(outputs)
        empirical.append(float(np.max(_time_norm(outputs, norm_space, time_weights) / input_norms)))

    report = IoPowerReport(norm_kind, p, empirical, bounds)
    if not report.holds:
        logging.getLogger(LOGGER_NAME).warning('io_power_bound_check: empirical norms %s exceed the bounds %s.',
                                               empirical, bounds)
    return report


def io_time_operator(triple: TripleSpec, time_grid: TimeGrid) -> TimeOperator:
    """Assembles F_inf on the grid as a matrix on stacked (time, component) coordinates

    Row block k collects 1/2 (H_(k-j) + H_(k-j-1)) against the sample v_j, so the matrix applied to the
    stacked samples equals ``io_apply``.
    """
    maps = SystemMaps(triple, time_grid)
    kernel = maps.io_kernel
    steps, components = time_grid.steps, triple.u_space.dim
    matrix = np.zeros(((steps + 1) * components, (steps + 1) * components))
    for k in range(1, steps + 1):
        rows = slice(k * components, (k + 1) * components)
        for j in range(0, k + 1):
            block = np.zeros((components, components))
            if j >= 1:
                block += 0.5 * kernel[k - j]
            if j <= k - 1:
                block += 0.5 * kernel[k - j - 1]
            matrix[rows, j * components:(j + 1) * components] = block
    return TimeOperator(matrix, time_grid.times, components, triple.u_space)
