# -*- coding: utf-8 -*-

"""
The perturbed semigroup S(t) = T(t) + B_t (Id - F_inf)^-1 C_inf, its resolvent factorization and the
variation of parameters residual.
"""

import logging
import math
import threading
from dataclasses import dataclass, field
from typing import Dict, Any, List, Tuple

import numpy as np
import scipy.linalg

from lattice.lattice_vector import LatticeVector
from operators.lin_op import LinOp
from operators.spectral import resolvent, spectral_radius
from systems.system_maps import SystemMaps
from systems.time_functions import TimeGrid
from systems.triple import TripleSpec
from theorems import LOGGER_NAME
from theorems.hypotheses import TheoremKind, HypothesisReport, hypothesis_report, spectral_radius_check
from utils.constants import DEFAULT_PICARD_TOLERANCE, DEFAULT_POSITIVITY_TOLERANCE
from utils.numerical_errors import HypothesisFailed

# Distance of the rescaled growth bound below 0
RESCALE_MARGIN = 1.0


def rescaled(triple: TripleSpec) -> Tuple[TripleSpec, float]:
    """Returns the triple of A - mu I with growth bound -1 and mu, or the triple itself and 0 when its growth
    bound is already negative"""
    growth_bound = triple.model.growth_bound
    if growth_bound < 0.0:
        return triple, 0.0
    mu = growth_bound + RESCALE_MARGIN
    logging.getLogger(LOGGER_NAME).info('rescaled: growth bound %s, shifting by %s', growth_bound, mu)
    return triple.rescale(mu), mu


@dataclass
class PerturbedDiagnostics:
    theorem_kind: TheoremKind
    r_feedback: float
    r_io_estimate: float
    picard_iterations: int
    hypothesis_report: HypothesisReport
    rescale_shift: float = 0.0
    extra: Dict[str, float] = field(default_factory=dict)

    def as_dict(self) -> Dict[str, Any]:
        values = {'theorem_kind': self.theorem_kind.value,
                  'r_feedback': self.r_feedback,
                  'r_io_estimate': self.r_io_estimate,
                  'picard_iterations': self.picard_iterations,
                  'rescale_shift': self.rescale_shift,
                  'hypothesis_report': self.hypothesis_report.as_dict()}
        values.update(self.extra)
        return values


class _VariationOfParameters:
    """
    S(t_k) = e^(mu t_k) (T_mu(t_k) + B_(t_k) v), v solving v = C_inf x + F_inf v for all basis vectors x at once.
    """

    def __init__(self, triple: TripleSpec, mu: float, time_grid: TimeGrid, tol: float):
        self.triple = triple
        self.mu = mu
        self.time_grid = time_grid
        self.maps = SystemMaps(triple, time_grid)
        self.radius = self.maps.feedback_radius()

        dim = triple.x_space.dim
        self.picard_result = self.maps.picard(self.maps.observe(np.eye(dim)), tol, self.radius)
        self.outputs = self.picard_result.solution

    def _scale(self, k: int) -> float:
        return math.exp(self.mu * self.time_grid.times[k])

    def _free_trajectory(self, states: np.ndarray) -> np.ndarray:
        """T_mu(t_k) applied to the columns of states for every grid time"""
        trajectory = np.empty((self.time_grid.steps + 1,) + states.shape)
        trajectory[0] = states
        for k in range(1, self.time_grid.steps + 1):
            trajectory[k] = self.maps.step_operator @ trajectory[k - 1]
        return trajectory

    def matrix_at(self, k: int) -> np.ndarray:
        t = float(self.time_grid.times[k])
        free = self.triple.model.evaluate(t).matrix
        return self._scale(k) * (free + self.maps.control_apply(self.outputs, k))

    def grid_matrices(self) -> np.ndarray:
        dim = self.triple.x_space.dim
        matrices = self._free_trajectory(np.eye(dim)) + self.maps.control_trajectory(self.outputs)
        return matrices * np.exp(self.mu * self.time_grid.times)[:, np.newaxis, np.newaxis]

    def trajectory(self, x: np.ndarray) -> np.ndarray:
        outputs = self.outputs @ x
        states = self._free_trajectory(x[:, np.newaxis]) + self.maps.control_trajectory(outputs[:, :, np.newaxis])
        return states[:, :, 0] * np.exp(self.mu * self.time_grid.times)[:, np.newaxis]


class _ClosedLoop:
    """
    S(t) = exp(t G) for a closed loop generator G, A + (lambda0 - A) B_reg C unless given otherwise.
    """

    def __init__(self, generator: np.ndarray, time_grid: TimeGrid):
        self.time_grid = time_grid
        self.generator = generator
        self.step_operator = scipy.linalg.expm(time_grid.step * self.generator)

    def matrix_at(self, k: int) -> np.ndarray:
        return scipy.linalg.expm(float(self.time_grid.times[k]) * self.generator)

    def _powers(self, states: np.ndarray) -> np.ndarray:
        trajectory = np.empty((self.time_grid.steps + 1,) + states.shape)
        trajectory[0] = states
        for k in range(1, self.time_grid.steps + 1):
            trajectory[k] = self.step_operator @ trajectory[k - 1]
        return trajectory

    def grid_matrices(self) -> np.ndarray:
        return self._powers(np.eye(self.generator.shape[0]))

    def trajectory(self, x: np.ndarray) -> np.ndarray:
        return self._powers(x)


class PerturbedSemigroup:
    """
    The perturbed semigroup on the grid times, with its construction diagnostics.

    Matrices are memoized per time behind a lock; reads of memoized times are safe from several threads.
    """

    def __repr__(self) -> str:
        return f'PerturbedSemigroup(kind={self.diagnostics.theorem_kind.value}, time_grid={self.time_grid})'

    def __str__(self) -> str:
        return repr(self)

    def __init__(self, source, x_space, time_grid: TimeGrid, diagnostics: PerturbedDiagnostics):
        self.logger = logging.getLogger(self.__class__.__name__)

        self._source = source
        self.x_space = x_space
        self.time_grid = time_grid
        self.diagnostics = diagnostics

        self._cache: Dict[int, LinOp] = {}
        self._grid_matrices = None
        self._lock = threading.Lock()

    def evaluate(self, t: float) -> LinOp:
        """Returns S(t) for a grid time t"""
        k = self.time_grid.index_of(t)
        cached = self._cache.get(k)
        if cached is not None:
            return cached
        with self._lock:
            if k not in self._cache:
                self._cache[k] = LinOp(self._source.matrix_at(k), self.x_space, self.x_space)
            return self._cache[k]

    def grid_matrices(self) -> np.ndarray:
        """S(t_k) for every grid time, shape (steps + 1, dim, dim)"""
        with self._lock:
            if self._grid_matrices is None:
                self._grid_matrices = self._source.grid_matrices()
                self._grid_matrices.setflags(write=False)
            return self._grid_matrices

    def trajectory(self, x: LatticeVector or np.ndarray) -> np.ndarray:
        """S(t_k) x for every grid time, shape (steps + 1, dim)"""
        values = x.values if isinstance(x, LatticeVector) else np.asarray(x, dtype=float)
        return self._source.trajectory(values)

    def min_entry(self) -> float:
        """The smallest matrix entry of S(t) over all grid times"""
        return float(np.min(self.grid_matrices()))

    def oracle_deviation(self, triple: TripleSpec, times: List[float]) -> float:
        """max over times of the max row sum of S(t) - exp(t (A + (lambda0 - A) B_reg C))"""
        deviation = 0.0
        for t in times:
            difference = self.evaluate(t).matrix - triple.closed_loop_semigroup(t).matrix
            deviation = max(deviation, float(np.linalg.norm(difference, np.inf)))
        return deviation

    def semigroup_law_defect(self, times: List[float]) -> float:
        """max of ||S(t + s) - S(t) S(s)|| over the pairs of times with t + s on the grid"""
        defect = 0.0
        for t in times:
            for s in times:
                if t + s > self.time_grid.t_end + 1e-12:
                    continue
                difference = self.evaluate(t + s).matrix - self.evaluate(t).matrix @ self.evaluate(s).matrix
                defect = max(defect, float(np.linalg.norm(difference, np.inf)))
        return defect


def construct_perturbed(triple: TripleSpec,
                        kind: TheoremKind,
                        time_grid: TimeGrid,
                        tol: float = DEFAULT_PICARD_TOLERANCE,
                        rng: np.random.Generator or None = None,
                        lambda_check: float = 0.0,
                        p: float or None = None,
                        positivity_tol: float = DEFAULT_POSITIVITY_TOLERANCE) -> PerturbedSemigroup:
    """Builds S(t) = T(t) + B_t (Id - F_inf)^-1 C_inf x on the time grid

    Triples with a growth bound >= 0 are rescaled first and the factor e^(mu t) is restored. The hypotheses of
    the theorem are checked on the rescaled triple, the spectral radius at lambda_check.

    :param TripleSpec triple: The triple
    :param TheoremKind kind: AM, AL or RN
    :param TimeGrid time_grid: The time grid
    :param float tol: The Picard tolerance
    :param np.random.Generator rng: The generator of the probes
    :param float lambda_check: The point of the spectral radius check, in rescaled coordinates
    :param float p: The admissibility exponent of RN
    :param float positivity_tol: Positivity slack of the hypothesis checks
    :return: The perturbed semigroup
    :rtype: PerturbedSemigroup
    """
    if kind is TheoremKind.DOM:
        logging.getLogger(LOGGER_NAME).error('construct_perturbed: use construct_dominated for signed triples.')
        raise ValueError('construct_perturbed: use construct_dominated for signed triples.')

    scaled, mu = rescaled(triple)
    report = hypothesis_report(scaled, kind, lambda_check, positivity_tol, rng, p)
    if not report.passed:
        failure = report.first_failure()
        logging.getLogger(LOGGER_NAME).error('construct_perturbed: %s', failure.message)
        raise HypothesisFailed('construct_perturbed', failure.message, failure.name, kind=kind.value)

    source = _VariationOfParameters(scaled, mu, time_grid, tol)
    diagnostics = PerturbedDiagnostics(kind,
                                       report.get('spectral_radius').value,
                                       source.picard_result.rate_estimate,
                                       source.picard_result.iterations,
                                       report,
                                       mu)
    logging.getLogger(LOGGER_NAME).info('construct_perturbed: %s in %s Picard iterations', kind.value,
                                        source.picard_result.iterations)
    return PerturbedSemigroup(source, triple.x_space, time_grid, diagnostics)


def closed_loop_perturbed(triple: TripleSpec,
                          time_grid: TimeGrid,
                          report: HypothesisReport,
                          generator: LinOp or None = None,
                          kind: TheoremKind = TheoremKind.DOM) -> PerturbedSemigroup:
    """The perturbed semigroup taken from the closed loop exponentials

    :param TripleSpec triple: The triple
    :param TimeGrid time_grid: The time grid
    :param HypothesisReport report: The hypothesis report kept in the diagnostics
    :param LinOp generator: The generator, the closed loop matrix of the triple when missing
    :param TheoremKind kind: The theorem recorded in the diagnostics
    :return: The perturbed semigroup
    :rtype: PerturbedSemigroup
    """
    if generator is None:
        generator = triple.closed_loop_matrix()
    scaled, mu = rescaled(triple)
    radius = spectral_radius(scaled.feedback_operator(0.0)).value
    diagnostics = PerturbedDiagnostics(kind, radius, float('nan'), 0, report, mu)
    return PerturbedSemigroup(_ClosedLoop(generator.matrix, time_grid), triple.x_space, time_grid, diagnostics)


def resolvent_factorization(triple: TripleSpec, lam: float) -> LinOp:
    """Returns R(lam, A) + R(lam, A_-1) B (I - C R(lam, A_-1) B)^-1 C R(lam, A)

    :param TripleSpec triple: The triple
    :param float lam: A point with r(C R(lam, A_-1) B) < 1
    :return: The resolvent of the perturbed generator
    :rtype: LinOp
    """
    feedback = triple.feedback_operator(lam)
    check = spectral_radius_check(spectral_radius(feedback).value, lam)
    if not check.passed:
        logging.getLogger(LOGGER_NAME).error('resolvent_factorization: %s', check.message)
        raise HypothesisFailed('resolvent_factorization', check.message, check.name)

    control = triple.control_resolvent(lam)
    observation = triple.observation_resolvent(lam)
    inner = scipy.linalg.solve(np.eye(triple.u_space.dim) - feedback.matrix, observation.matrix)
    return LinOp(resolvent(triple.a, lam).matrix + control.matrix @ inner, triple.x_space, triple.x_space)


def factorization_deviation(triple: TripleSpec, lam: float) -> float:
    """Relative difference of the factorized resolvent from the inverse of lam - (A + (lambda0 - A) B_reg C)"""
    factorized = resolvent_factorization(triple, lam).matrix
    direct = resolvent(triple.closed_loop_matrix(), lam).matrix
    scale = max(1.0, float(np.max(np.abs(direct), initial=0.0)))
    return float(np.max(np.abs(factorized - direct), initial=0.0)) / scale


def vp_residual(perturbed: PerturbedSemigroup,
                triple: TripleSpec,
                x: LatticeVector,
                t: float,
                trajectory: np.ndarray or None = None) -> float:
    """Returns ||S(t) x - T(t) x - B_t (s -> C S(s) x)||_X

    :param PerturbedSemigroup perturbed: The semigroup, also the source of the time grid
    :param TripleSpec triple: The triple
    :param LatticeVector x: The state
    :param float t: A grid time
    :param np.ndarray trajectory: S(t_k) x for every grid time, taken from the semigroup when missing
    :return: The residual
    :rtype: float
    """
    time_grid = perturbed.time_grid
    k = time_grid.index_of(t)
    scaled, mu = rescaled(triple)
    maps = SystemMaps(scaled, time_grid)

    if trajectory is None:
        trajectory = perturbed.trajectory(x)
    trajectory = np.asarray(trajectory) * np.exp(-mu * time_grid.times)[:, np.newaxis]
    outputs = (trajectory @ scaled.c.matrix.T)[:, :, np.newaxis]
    state = scaled.model.evaluate(t).matrix @ x.values + maps.control_apply(outputs, k)[:, 0]
    return triple.x_space.norm(trajectory[k] - state) * math.exp(mu * t)
