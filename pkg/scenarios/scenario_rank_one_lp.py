# -*- coding: utf-8 -*-

"""
The rank one perturbation f -> Phi(f) b of d/dx on L^p[0, 1] with f(1) = 0, where b may lie in L^1 only.
"""

import logging
from dataclasses import asdict
from typing import List, Tuple

import numpy as np
import scipy.linalg

from lattice.grid_space import GridSpace, NormKind
from operators.lin_op import LinOp
from operators.spectral import resolvent, spectral_radius
from semigroups.analysis import subspace_consistency_check
from semigroups.shift import NilpotentLeftShift
from systems.triple import TripleSpec, RegularizedControl
from theorems.domination import DominatingSplit, construct_dominated
from theorems.hypotheses import TheoremKind
from theorems.perturbed_semigroup import PerturbedSemigroup, construct_perturbed
from utils.config import Config
from utils.config_definitions import ConfigOptionDefinition, ConfigSectionDefinition, ConfigSectionEnableType
from utils.matrix_literals import FloatList
from validators.matrix_validators import is_ascending_list
from validators.number_validators import is_lp_exponent, is_not_negative_float, is_positive_int
from scenarios import LOGGER_NAME
from ._base import _ScenarioBase, ScenarioResult, RefinementSample, ReportRow, scalar_row, report_times
from ._kernels import KERNELS, Kernel, kernel, sample

# Smallest grid of the rank one model
MIN_RANK_ONE_GRID = 4

# Times of the host grid consistency check
HOST_CHECK_TIMES = (0.25, 0.5)


def lp_space_kind(p: float) -> Tuple[NormKind, float or None]:
    if p == 1.0:
        return NormKind.L1, None
    return NormKind.LP, p


def left_shift(n: int, p: float) -> NilpotentLeftShift:
    """The left shift on the n + 1 trapezoid nodes of [0, 1] in L^p"""
    if n < MIN_RANK_ONE_GRID:
        logging.getLogger(LOGGER_NAME).error('The rank one model needs at least %s cells, got %s.',
                                             MIN_RANK_ONE_GRID, n)
        raise ValueError('The rank one model needs at least {} cells, got {}.'.format(MIN_RANK_ONE_GRID, n))
    norm_kind, exponent = lp_space_kind(p)
    return NilpotentLeftShift.on_unit_interval(n, norm_kind, exponent)


def build_rank_one_lp(n: int, p: float, b: Kernel, phi: Kernel, lambda0: float = 1.0) -> TripleSpec:
    """The triple (d/dx, alpha -> alpha b, Phi) with U = R

    B_reg = R(lambda0, A) b is computed on the L1 host grid, whose nodes coincide with those of X.

    :param int n: Number of cells of [0, 1]
    :param float p: The exponent of X
    :param Kernel b: The control profile
    :param Kernel phi: The density of the functional Phi(f) = integral of phi f
    :param float lambda0: The reference point of the regularized control
    :return: The triple
    :rtype: TripleSpec
    """
    shift = left_shift(n, p)
    x_space = shift.space
    host = NilpotentLeftShift(x_space.with_norm(NormKind.L1))
    u_space = GridSpace.unit(1, NormKind.SUP)

    profile = sample(b, x_space.nodes)[:, np.newaxis]
    b_reg = resolvent(host.generator(), lambda0).matrix @ profile
    control = RegularizedControl(LinOp(b_reg, u_space, x_space), lambda0)

    density = sample(phi, x_space.nodes)
    observation = LinOp((density * x_space.weights)[np.newaxis, :], x_space, u_space)
    return TripleSpec(shift, control, observation, u_space)


def integral_resolvent(x_space: GridSpace, lam: float) -> np.ndarray:
    """(R(lambda, d/dx) f)(x) = integral over [x, 1] of e^(-lambda (r - x)) f(r) dr by the trapezoid rule"""
    nodes = x_space.nodes
    h = x_space.step
    distances = nodes[np.newaxis, :] - nodes[:, np.newaxis]
    inside = distances > -1e-12 * h
    weights = np.where(inside, h, 0.0)
    weights[np.arange(nodes.size), np.arange(nodes.size)] = h / 2.0
    weights[:, -1] = np.where(inside[:, -1], h / 2.0, 0.0)
    weights[-1, -1] = 0.0
    return np.exp(-lam * np.clip(distances, 0.0, None)) * weights


def host_feedback_map(triple: TripleSpec, b: Kernel, lam: float) -> float:
    """Phi R(lambda, A) b with the closed form integral resolvent"""
    profile = sample(b, triple.x_space.nodes)
    return float(triple.c.matrix[0] @ integral_resolvent(triple.x_space, lam) @ profile)


def feedback_rows(triple: TripleSpec, b: Kernel, lambdas: List[float]) -> List[ReportRow]:
    rows = []
    for lam in lambdas:
        rows.append(scalar_row('feedback_map', host_feedback_map(triple, b, lam), lam=lam))
        rows.append(scalar_row('r_feedback', spectral_radius(triple.feedback_operator(lam)).value, lam=lam))
    return rows


class ScenarioRankOneLp(_ScenarioBase):
    """
    The rank one perturbation of d/dx on L^p[0, 1], run through the RN theorem or the domination theorem.
    """

    name = __qualname__

    display_name = 'Rank One Perturbation on Lp[0, 1]'

    description = 'Perturbs d/dx on Lp[0, 1] by f -> Phi(f) b and reports the feedback map lambda -> ' \
                  'Phi R(lambda, A) b.'

    CONFIG_OPTION_GRID_N = ConfigOptionDefinition(
        name='gridn',
        display_name='Grid Cells',
        value_type=int,
        description='The number of cells of [0, 1].',
        default_value=200,
        validator=is_positive_int,
    )

    CONFIG_OPTION_P = ConfigOptionDefinition(
        name='p',
        display_name='p',
        value_type=float,
        description='The exponent of X = Lp[0, 1].',
        default_value=2.0,
        validator=is_lp_exponent,
    )

    CONFIG_OPTION_B_KERNEL = ConfigOptionDefinition(
        name='bkernel',
        display_name='Control Profile',
        value_type=str,
        description='The function b.',
        default_value='one',
        valid_values=list(KERNELS.keys()),
    )

    CONFIG_OPTION_B_SCALE = ConfigOptionDefinition(
        name='bscale',
        display_name='Control Scale',
        value_type=float,
        description='The factor b is multiplied with.',
        default_value=1.0,
    )

    CONFIG_OPTION_PHI_KERNEL = ConfigOptionDefinition(
        name='phikernel',
        display_name='Functional Density',
        value_type=str,
        description='The density phi of Phi(f) = integral of phi f.',
        default_value='one',
        valid_values=list(KERNELS.keys()),
    )

    CONFIG_OPTION_PHI_SCALE = ConfigOptionDefinition(
        name='phiscale',
        display_name='Functional Scale',
        value_type=float,
        description='The factor phi is multiplied with.',
        default_value=1.0,
    )

    CONFIG_OPTION_LAMBDA_CHECK = ConfigOptionDefinition(
        name='lambdacheck',
        display_name='Lambda Check',
        value_type=float,
        description='The point of the spectral radius check of the construction.',
        default_value=0.0,
        validator=is_not_negative_float,
    )

    CONFIG_OPTION_LAMBDA_SWEEP = ConfigOptionDefinition(
        name='lambdasweep',
        display_name='Lambda Sweep',
        value_type=FloatList,
        description='The points of the feedback map.',
        default_value='[1, 2, 5, 10, 50, 100]',
        validator=is_ascending_list,
    )

    CONFIG_OPTION_REPORT_TIMES = ConfigOptionDefinition(
        name='reporttimes',
        display_name='Report Times',
        value_type=FloatList,
        description='The grid times at which S(t) 1 is reported, the end time if empty.',
        validator=is_ascending_list,
    )

    SCENARIO_RANK_ONE_LP_CONFIG_SECTION_DEFINITION = ConfigSectionDefinition(
        name=name,
        display_name=display_name,
        option_definitions=[
            CONFIG_OPTION_GRID_N,
            CONFIG_OPTION_P,
            CONFIG_OPTION_B_KERNEL,
            CONFIG_OPTION_B_SCALE,
            CONFIG_OPTION_PHI_KERNEL,
            CONFIG_OPTION_PHI_SCALE,
            CONFIG_OPTION_LAMBDA_CHECK,
            CONFIG_OPTION_LAMBDA_SWEEP,
            CONFIG_OPTION_REPORT_TIMES,
        ],
        enable_type=ConfigSectionEnableType.IF_SELECTED,
        sort_key_prefix=32,
    )

    Config.register_config_section_definition(SCENARIO_RANK_ONE_LP_CONFIG_SECTION_DEFINITION)

    @classmethod
    def config_section_definition(cls) -> ConfigSectionDefinition:
        return cls.SCENARIO_RANK_ONE_LP_CONFIG_SECTION_DEFINITION

    def __repr__(self) -> str:
        return f'ScenarioRankOneLp(grid_n={self.grid_n}, p={self.p})'

    def __init__(self, config: Config):
        self.grid_n = 200
        self.p = 2.0
        self.b_kernel = self.phi_kernel = 'one'
        self.b_scale = self.phi_scale = 1.0
        self.lambda_check = 0.0
        self.lambda_sweep = None
        self.report_times = None

        super().__init__(config)

    def _parse_scenario_config(self):
        self.grid_n = self._get(self.CONFIG_OPTION_GRID_N)
        self.p = self._get(self.CONFIG_OPTION_P)
        self.b_kernel = self._get(self.CONFIG_OPTION_B_KERNEL)
        self.b_scale = self._get(self.CONFIG_OPTION_B_SCALE)
        self.phi_kernel = self._get(self.CONFIG_OPTION_PHI_KERNEL)
        self.phi_scale = self._get(self.CONFIG_OPTION_PHI_SCALE)
        self.lambda_check = self._get(self.CONFIG_OPTION_LAMBDA_CHECK)
        self.lambda_sweep = self._get(self.CONFIG_OPTION_LAMBDA_SWEEP)
        self.report_times = self._get(self.CONFIG_OPTION_REPORT_TIMES)

    @property
    def b(self) -> Kernel:
        return kernel(self.b_kernel, self.b_scale)

    def build(self, n: int) -> TripleSpec:
        return build_rank_one_lp(n, self.p, self.b, kernel(self.phi_kernel, self.phi_scale))

    def construct(self, triple: TripleSpec) -> Tuple[PerturbedSemigroup, PerturbedSemigroup or None]:
        if triple.is_positive(self.tolerances.positivity):
            return construct_perturbed(triple, TheoremKind.RN, self.time_grid, self.tolerances.picard, self.rng,
                                       self.lambda_check, self.p, self.tolerances.positivity), None
        self.logger.info('Phi or b is signed, taking the domination route.')
        return construct_dominated(triple, DominatingSplit.from_triple(triple), self.time_grid,
                                   self.tolerances.picard, self.rng, self.lambda_check, TheoremKind.RN,
                                   self.tolerances.domination, report_times(self.report_times, self.time_grid),
                                   self.p)

    def _host_consistency(self, shift: NilpotentLeftShift) -> dict:
        """Compares the model with the L1 host model on the grid with twice the cells"""
        host = left_shift(2 * self.grid_n, 1.0)
        times = [t for t in HOST_CHECK_TIMES if t <= self.time_grid.t_end]
        report = subspace_consistency_check(host, shift, [1.0], times, self.rng)
        return asdict(report)

    def run(self) -> ScenarioResult:
        result = ScenarioResult()
        triple = self.build(self.grid_n)
        shift = left_shift(self.grid_n, self.p)

        lambdas = [float(lam) for lam in self.lambda_sweep] if self.lambda_sweep is not None else []
        feedback = feedback_rows(triple, self.b, lambdas)
        result.rows.extend(feedback)

        semigroup, majorant = self.construct(triple)
        ones = np.ones(triple.x_space.dim)
        times = report_times(self.report_times, self.time_grid)
        for t in times:
            for quantity, values in (('S_x', semigroup.evaluate(t).matrix @ ones),
                                     ('T_x', shift.evaluate(t).matrix @ ones),
                                     ('oracle_x', triple.closed_loop_semigroup(t).matrix @ ones)):
                result.rows.extend(ReportRow(t, None, quantity, i, None, float(v)) for i, v in enumerate(values))
            if majorant is not None:
                result.rows.extend(ReportRow(t, None, 'S_tilde_x', i, None, float(v))
                                   for i, v in enumerate(majorant.evaluate(t).matrix @ ones))
        result.rows.append(scalar_row('min_entry_S', semigroup.min_entry()))
        result.rows.append(scalar_row('oracle_deviation', semigroup.oracle_deviation(triple, times)))

        feedback_map = [row.value for row in feedback if row.quantity == 'feedback_map']
        result.diagnostics = {
            'scenario': self.name,
            'p': self.p,
            'feedback_map_decreasing': bool(np.all(np.diff(feedback_map) < 0.0)) if feedback_map else None,
            'nilpotent_norm': float(np.max(np.abs(shift.evaluate(1.0 + shift.h).matrix))),
            'host_consistency': self._host_consistency(shift),
            'semigroup': semigroup.diagnostics.as_dict(),
        }
        return result

    def refinement_sample(self, level: int) -> RefinementSample:
        """exp(t_end G) x with x(s) = 1 - s for the closed loop generator G on 2^level times the grid"""
        n = self.grid_n * 2 ** level
        triple = self.build(n)
        nodes = triple.x_space.nodes
        values = scipy.linalg.expm(self.time_grid.t_end * triple.closed_loop_matrix().matrix) @ (1.0 - nodes)
        return RefinementSample(n, 1.0 / n, nodes, values)
