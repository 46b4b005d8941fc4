# -*- coding: utf-8 -*-

import logging
from dataclasses import dataclass

import numpy as np

from lattice import LOGGER_NAME
from lattice.grid_space import GridSpace, NormKind

# Residual allowed for the axiom the norm kind instantiates
AXIOM_TOLERANCE = 1e-12


@dataclass(frozen=True)
class AxiomProbeReport:
    norm_kind: NormKind
    trials: int
    al_residual: float
    am_residual: float

    @property
    def is_al(self) -> bool:
        return self.al_residual <= AXIOM_TOLERANCE

    @property
    def is_am(self) -> bool:
        return self.am_residual <= AXIOM_TOLERANCE


def lattice_axiom_probe(space: GridSpace, trials: int, rng: np.random.Generator) -> AxiomProbeReport:
    """Measures how far the norm of a space is from the AL and the AM axioms

    The residuals are maxima over random nonnegative pairs (x, y) of
    ``| ||x + y|| - ||x|| - ||y|| |`` and ``| ||sup(x, y)|| - max(||x||, ||y||) |``.
    The pair of disjoint unit bumps at the first and the last node is always included.

    :param GridSpace space: The space to probe
    :param int trials: Number of random pairs, at least 1
    :param np.random.Generator rng: The random generator
    :return: The residuals
    :rtype: AxiomProbeReport
    """
    if trials < 1:
        logging.getLogger(LOGGER_NAME).error('lattice_axiom_probe needs at least one trial, got %s.', trials)
        raise ValueError('lattice_axiom_probe needs at least one trial, got {}.'.format(trials))

    pairs = [(rng.random(space.dim), rng.random(space.dim)) for _ in range(trials)]
    if space.dim > 1:
        first, last = np.zeros(space.dim), np.zeros(space.dim)
        first[0] = last[-1] = 1.0
        pairs.append((first, last))

    al_residual = 0.0
    am_residual = 0.0
    for x, y in pairs:
        norm_x, norm_y = space.norm(x), space.norm(y)
        al_residual = max(al_residual, abs(space.norm(x + y) - norm_x - norm_y))
        am_residual = max(am_residual, abs(space.norm(np.maximum(x, y)) - max(norm_x, norm_y)))

    report = AxiomProbeReport(space.norm_kind, trials, al_residual, am_residual)
    logging.getLogger(LOGGER_NAME).debug('lattice_axiom_probe: %s', report)
    return report
