# -*- coding: utf-8 -*-

"""
Numerical checks of semigroup models: growth bound, semigroup law and consistency between nested grids.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List

import numpy as np

from semigroups import LOGGER_NAME
from semigroups._base import _SemigroupModelBase
from semigroups.matrix_exp import MatrixExp
from utils.numerical_errors import EmbeddingMismatch

# Number of random vectors of the consistency check
CONSISTENCY_PROBE_COUNT = 20

# Relative distance under which two nodes coincide
NODE_MATCH_TOLERANCE = 1e-12


def growth_bound_estimate(model: _SemigroupModelBase, horizon: float, samples: int) -> float:
    """Returns an upper estimate of the growth bound

    The least squares slope of log ||T(t)|| over samples equidistant times in [0, horizon]. A vanishing norm
    counts as the smallest positive float. For matrix exponentials the largest real part of the spectrum is also
    taken and the larger value returned.

    :param _SemigroupModelBase model: The model
    :param float horizon: The last sampled time, horizon > 0
    :param int samples: Number of sampled times
    :return: The estimate
    :rtype: float
    """
    if horizon <= 0.0 or samples < 2:
        logging.getLogger(LOGGER_NAME).error('growth_bound_estimate: needs horizon > 0 and 2 samples, got %s, %s.',
                                             horizon, samples)
        raise ValueError('growth_bound_estimate needs horizon > 0 and at least 2 samples.')

    times = np.linspace(0.0, horizon, samples)
    logs = [np.log(max(model.evaluate(float(t)).lattice_norm(), np.finfo(float).tiny)) for t in times]
    slope = float(np.polyfit(times, logs, 1)[0])

    if isinstance(model, MatrixExp):
        slope = max(slope, model.growth_bound)
    logging.getLogger(LOGGER_NAME).debug('growth_bound_estimate: %s for %s', slope, model)
    return slope


def semigroup_law_defect(model: _SemigroupModelBase, times: Iterable[float]) -> float:
    """Returns the max of ||T(t + s) - T(t) T(s)|| over all pairs of the given times"""
    times = list(times)
    cache = {t: model.evaluate(t).matrix for t in times}
    defect = 0.0
    for t in times:
        for s in times:
            difference = model.evaluate(t + s).matrix - cache[t] @ cache[s]
            defect = max(defect, float(np.linalg.norm(difference, np.inf)))
    return defect


@dataclass(frozen=True)
class SubspaceReport:
    resolvent_residual: float
    semigroup_residual: float
    probes: int

    @property
    def residual(self) -> float:
        return max(self.resolvent_residual, self.semigroup_residual)


def _embedding_indices(coarse_nodes: np.ndarray, fine_nodes: np.ndarray) -> np.ndarray:
    indices = np.searchsorted(fine_nodes, coarse_nodes)
    indices = np.clip(indices, 0, fine_nodes.size - 1)
    below = np.clip(indices - 1, 0, fine_nodes.size - 1)
    nearest = np.where(np.abs(fine_nodes[below] - coarse_nodes) < np.abs(fine_nodes[indices] - coarse_nodes),
                       below, indices)
    scale = max(1.0, float(np.max(np.abs(fine_nodes))))
    if np.any(np.abs(fine_nodes[nearest] - coarse_nodes) > NODE_MATCH_TOLERANCE * scale):
        logging.getLogger(LOGGER_NAME).error('The coarse grid is not a subset of the fine grid.')
        raise EmbeddingMismatch('subspace_consistency_check', 'The coarse grid is not a subset of the fine grid.')
    return nearest


def smooth_probes(nodes: np.ndarray, count: int, rng: np.random.Generator) -> List[np.ndarray]:
    """Random combinations of cos(k pi x), k = 0..3, sampled on the nodes"""
    basis = np.cos(np.outer(nodes, np.arange(4) * np.pi))
    return [basis @ rng.standard_normal(4) for _ in range(count)]


def subspace_consistency_check(fine_model: _SemigroupModelBase,
                               coarse_model: _SemigroupModelBase,
                               lambdas: Iterable[float],
                               times: Iterable[float],
                               rng: np.random.Generator) -> SubspaceReport:
    """Compares a model on a coarse grid X with the restriction of a model on a finer grid containing X

    Coarse probes are carried to the fine grid by piecewise linear interpolation, mapped by R(lam, A) and T(t)
    there and sampled back on the coarse nodes. The largest sup-norm difference to the coarse operators is
    reported.

    :param _SemigroupModelBase fine_model: The model on the larger grid
    :param _SemigroupModelBase coarse_model: The model on the embedded grid
    :param Iterable[float] lambdas: Resolvent points
    :param Iterable[float] times: Evaluation times
    :param np.random.Generator rng: The generator of the probes
    :return: The residuals
    :rtype: SubspaceReport
    """
    fine_nodes, coarse_nodes = fine_model.space.nodes, coarse_model.space.nodes
    indices = _embedding_indices(coarse_nodes, fine_nodes)

    probes = smooth_probes(coarse_nodes, CONSISTENCY_PROBE_COUNT, rng)
    lifted = [np.interp(fine_nodes, coarse_nodes, x) for x in probes]

    resolvent_residual = 0.0
    for lam in lambdas:
        coarse, fine = coarse_model.resolvent(lam).matrix, fine_model.resolvent(lam).matrix
        for x, y in zip(probes, lifted):
            resolvent_residual = max(resolvent_residual, float(np.max(np.abs(coarse @ x - (fine @ y)[indices]))))

    semigroup_residual = 0.0
    for t in times:
        coarse, fine = coarse_model.evaluate(t).matrix, fine_model.evaluate(t).matrix
        for x, y in zip(probes, lifted):
            semigroup_residual = max(semigroup_residual, float(np.max(np.abs(coarse @ x - (fine @ y)[indices]))))

    report = SubspaceReport(resolvent_residual, semigroup_residual, len(probes))
    logging.getLogger(LOGGER_NAME).debug('subspace_consistency_check: %s', report)
    return report
