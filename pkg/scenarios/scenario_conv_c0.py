# -*- coding: utf-8 -*-

"""
The convolution perturbation of -d/dx on C_0(0, 1]: (Pf)(x) = integral over [0, x] of b(x - r) r^(-alpha) f(r) dr
factored as B C with C f = f / x^alpha into U = L1(0, 1) and the convolution B: U -> X.
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import List, Tuple

import numpy as np
import scipy.integrate
import scipy.linalg
import scipy.special

from lattice.grid_space import GridSpace, NormKind
from operators.lin_op import LinOp
from operators.spectral import resolvent, spectral_radius
from semigroups.shift import NilpotentRightShift
from systems.triple import TripleSpec, RegularizedControl
from theorems.domination import DominatingSplit, construct_dominated
from theorems.hypotheses import TheoremKind
from theorems.perturbed_semigroup import PerturbedSemigroup, construct_perturbed, factorization_deviation
from utils.config import Config
from utils.config_definitions import ConfigOptionDefinition, ConfigSectionDefinition, ConfigSectionEnableType
from utils.matrix_literals import FloatList
from utils.numerical_errors import BadAlpha
from validators.matrix_validators import is_ascending_list
from validators.number_validators import is_alpha_exponent, is_not_negative_float, is_positive_int
from scenarios import LOGGER_NAME
from ._base import _ScenarioBase, ScenarioResult, RefinementSample, ReportRow, scalar_row, report_times
from ._kernels import KERNELS, Kernel, kernel, sample

# Smallest grid of the convolution model
MIN_CONV_GRID = 4

# Slack of ||C R(lambda, A)|| <= I(lambda, alpha)
DECAY_CERTIFICATE_SLACK = 1e-6


@dataclass(frozen=True)
class DecayCertificateRow:
    lam: float
    decay_integral: float
    norm_c_resolvent: float
    spectral_radius: float

    @property
    def holds(self) -> bool:
        return self.norm_c_resolvent <= self.decay_integral + DECAY_CERTIFICATE_SLACK


def _check_alpha(alpha: float, function: str):
    if not 1.0 <= alpha < 2.0:
        logging.getLogger(LOGGER_NAME).error('%s: alpha must lie in [1, 2), got %s.', function, alpha)
        raise BadAlpha(function, 'alpha must lie in [1, 2), got {}.'.format(alpha), alpha=alpha)


def decay_integral(lam: float, alpha: float) -> float:
    """I(lambda, alpha) = integral over [0, 1] of x^(-alpha) (1 - e^(-lambda x)) / lambda dx

    The smooth factor (1 - e^(-lambda x)) / (lambda x) is integrated against the algebraic weight x^(1 - alpha).
    """
    _check_alpha(alpha, 'decay_integral')
    if lam <= 0.0:
        logging.getLogger(LOGGER_NAME).error('decay_integral: lambda must be positive, got %s.', lam)
        raise ValueError('decay_integral: lambda must be positive, got {}.'.format(lam))

    def smooth(x: float) -> float:
        return -math.expm1(-lam * x) / (lam * x) if x > 0.0 else 1.0

    value, _ = scipy.integrate.quad(smooth, 0.0, 1.0, weight='alg', wvar=(1.0 - alpha, 0.0))
    return float(value)


def decay_integral_closed_form(lam: float) -> float:
    """I(lambda, 3/2) = 2 sqrt(pi / lambda) erf(sqrt(lambda)) - 2 (1 - e^(-lambda)) / lambda"""
    root = math.sqrt(lam)
    return 2.0 * math.sqrt(math.pi) / root * float(scipy.special.erf(root)) + 2.0 * math.expm1(-lam) / lam


def conv_spaces(n: int) -> Tuple[NilpotentRightShift, GridSpace]:
    """The right shift on the nodes i / n, i = 1..n, Sup-tagged, and U = L1 on the trapezoid nodes j / n, j = 0..n"""
    if n < MIN_CONV_GRID:
        logging.getLogger(LOGGER_NAME).error('The convolution model needs at least %s nodes, got %s.',
                                             MIN_CONV_GRID, n)
        raise ValueError('The convolution model needs at least {} nodes, got {}.'.format(MIN_CONV_GRID, n))
    return NilpotentRightShift.on_unit_interval(n, NormKind.SUP), GridSpace.uniform(0.0, 1.0, n + 1, NormKind.L1)


def convolution_matrix(b: Kernel, x_nodes: np.ndarray, u_space: GridSpace) -> np.ndarray:
    """(B u)(x_i) = integral over [0, x_i] of b(x_i - r) u(r) dr by the trapezoid rule on the U nodes"""
    h = u_space.step
    distances = x_nodes[:, np.newaxis] - u_space.nodes[np.newaxis, :]
    inside = distances > -1e-12 * h
    weights = np.where(inside, h, 0.0)
    weights[:, 0] = h / 2.0
    last = np.count_nonzero(inside, axis=1) - 1
    weights[np.arange(x_nodes.size), last] = h / 2.0
    return sample(b, np.clip(distances, 0.0, None)) * weights


def build_conv_c0(n: int, alpha: float, b: Kernel, lambda0: float = 1.0) -> TripleSpec:
    """The triple (-d/dx, convolution with b, x^-alpha) on the grid with n nodes in (0, 1]

    :param int n: Number of nodes of X
    :param float alpha: The singularity exponent, 1 <= alpha < 2
    :param Kernel b: The convolution kernel
    :param float lambda0: The reference point of the regularized control
    :return: The triple
    :rtype: TripleSpec
    """
    _check_alpha(alpha, 'build_conv_c0')
    shift, u_space = conv_spaces(n)
    x_space = shift.space
    generator = shift.generator()

    control = RegularizedControl.from_unregularized(
        generator, LinOp(convolution_matrix(b, x_space.nodes, u_space), u_space, x_space), lambda0)

    observation = np.zeros((u_space.dim, x_space.dim))
    observation[np.arange(1, n + 1), np.arange(n)] = x_space.nodes ** -alpha

    return TripleSpec(shift, control, LinOp(observation, x_space, u_space), u_space,
                      z_flag='bounded-scaled-values', z_parameters={'alpha': alpha})


def decay_certificate(triple: TripleSpec, alpha: float, lambdas: List[float]) -> List[DecayCertificateRow]:
    """||C R(lambda, A)|| from Sup into L1 next to I(lambda, alpha) and r(C R(lambda, A_-1) B) per lambda"""
    rows = []
    for lam in lambdas:
        norm = triple.observation_resolvent(lam).lattice_norm()
        radius = spectral_radius(triple.feedback_operator(lam)).value
        rows.append(DecayCertificateRow(lam, decay_integral(lam, alpha), norm, radius))
    return rows


def resolvent_oracle_deviation(triple: TripleSpec, lam: float) -> float:
    """max |R(lambda, A) 1 - (1 - e^(-lambda x)) / lambda| on the nodes, the closed form of the integral resolvent"""
    nodes = triple.x_space.nodes
    exact = -np.expm1(-lam * nodes) / lam
    return float(np.max(np.abs(resolvent(triple.a, lam).matrix @ np.ones(nodes.size) - exact)))


def _lambda_star(rows: List[DecayCertificateRow]) -> float or None:
    star = None
    for row in reversed(rows):
        if row.spectral_radius >= 1.0:
            break
        star = row.lam
    return star


class ScenarioConvC0(_ScenarioBase):
    """
    The convolution perturbation of -d/dx on C_0(0, 1], run through the AL theorem.
    """

    name = __qualname__

    display_name = 'Convolution on C0(0, 1]'

    description = 'Perturbs -d/dx on C0(0, 1] by a convolution with the weight x^-alpha and reports the decay ' \
                  'certificate of ||C R(lambda, A)||.'

    CONFIG_OPTION_GRID_N = ConfigOptionDefinition(
        name='gridn',
        display_name='Grid Nodes',
        value_type=int,
        description='The number of nodes of the sweeps and the certificate.',
        default_value=200,
        validator=is_positive_int,
    )

    CONFIG_OPTION_CONSTRUCTION_GRID = ConfigOptionDefinition(
        name='constructiongrid',
        display_name='Construction Grid Nodes',
        value_type=int,
        description='The number of nodes S(t) is constructed on.',
        default_value=40,
        validator=is_positive_int,
    )

    CONFIG_OPTION_ALPHA = ConfigOptionDefinition(
        name='alpha',
        display_name='Alpha',
        value_type=float,
        description='The singularity exponent of the weight x^-alpha, 1 <= alpha < 2.',
        default_value=1.5,
        validator=is_alpha_exponent,
    )

    CONFIG_OPTION_B_KERNEL = ConfigOptionDefinition(
        name='bkernel',
        display_name='Convolution Kernel',
        value_type=str,
        description='The convolution kernel b.',
        default_value='one',
        valid_values=list(KERNELS.keys()),
    )

    CONFIG_OPTION_B_SCALE = ConfigOptionDefinition(
        name='bscale',
        display_name='Kernel Scale',
        value_type=float,
        description='The factor the kernel is multiplied with.',
        default_value=0.25,
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
        description='The points of the decay certificate.',
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

    SCENARIO_CONV_C0_CONFIG_SECTION_DEFINITION = ConfigSectionDefinition(
        name=name,
        display_name=display_name,
        option_definitions=[
            CONFIG_OPTION_GRID_N,
            CONFIG_OPTION_CONSTRUCTION_GRID,
            CONFIG_OPTION_ALPHA,
            CONFIG_OPTION_B_KERNEL,
            CONFIG_OPTION_B_SCALE,
            CONFIG_OPTION_LAMBDA_CHECK,
            CONFIG_OPTION_LAMBDA_SWEEP,
            CONFIG_OPTION_REPORT_TIMES,
        ],
        enable_type=ConfigSectionEnableType.IF_SELECTED,
        sort_key_prefix=31,
    )

    Config.register_config_section_definition(SCENARIO_CONV_C0_CONFIG_SECTION_DEFINITION)

    @classmethod
    def config_section_definition(cls) -> ConfigSectionDefinition:
        return cls.SCENARIO_CONV_C0_CONFIG_SECTION_DEFINITION

    def __repr__(self) -> str:
        return f'ScenarioConvC0(grid_n={self.grid_n}, alpha={self.alpha})'

    def __init__(self, config: Config):
        self.grid_n = 200
        self.construction_grid = 40
        self.alpha = 1.5
        self.b_kernel = 'one'
        self.b_scale = 0.25
        self.lambda_check = 0.0
        self.lambda_sweep = None
        self.report_times = None

        super().__init__(config)

    def _parse_scenario_config(self):
        self.grid_n = self._get(self.CONFIG_OPTION_GRID_N)
        self.construction_grid = self._get(self.CONFIG_OPTION_CONSTRUCTION_GRID)
        self.alpha = self._get(self.CONFIG_OPTION_ALPHA)
        self.b_kernel = self._get(self.CONFIG_OPTION_B_KERNEL)
        self.b_scale = self._get(self.CONFIG_OPTION_B_SCALE)
        self.lambda_check = self._get(self.CONFIG_OPTION_LAMBDA_CHECK)
        self.lambda_sweep = self._get(self.CONFIG_OPTION_LAMBDA_SWEEP)
        self.report_times = self._get(self.CONFIG_OPTION_REPORT_TIMES)

    def build(self, n: int) -> TripleSpec:
        return build_conv_c0(n, self.alpha, kernel(self.b_kernel, self.b_scale))

    def construct(self, triple: TripleSpec) -> Tuple[PerturbedSemigroup, PerturbedSemigroup or None]:
        if triple.is_positive(self.tolerances.positivity):
            return construct_perturbed(triple, TheoremKind.AL, self.time_grid, self.tolerances.picard, self.rng,
                                       self.lambda_check, positivity_tol=self.tolerances.positivity), None
        self.logger.info('The kernel is signed, taking the domination route.')
        return construct_dominated(triple, DominatingSplit.from_triple(triple), self.time_grid,
                                   self.tolerances.picard, self.rng, self.lambda_check, TheoremKind.AL,
                                   self.tolerances.domination, report_times(self.report_times, self.time_grid))

    def run(self) -> ScenarioResult:
        result = ScenarioResult()

        sweep_triple = self.build(self.grid_n)
        lambdas = [float(lam) for lam in self.lambda_sweep] if self.lambda_sweep is not None else []
        certificate = decay_certificate(sweep_triple, self.alpha, lambdas)
        for row in certificate:
            result.rows.append(scalar_row('decay_integral', row.decay_integral, lam=row.lam))
            result.rows.append(scalar_row('norm_c_resolvent', row.norm_c_resolvent, lam=row.lam))
            result.rows.append(scalar_row('r_feedback', row.spectral_radius, lam=row.lam))

        triple = self.build(self.construction_grid)
        semigroup, majorant = self.construct(triple)
        shift, _ = conv_spaces(self.construction_grid)
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
        factorization = [factorization_deviation(sweep_triple, row.lam) for row in certificate
                         if row.spectral_radius < 1.0]

        result.diagnostics = {
            'scenario': self.name,
            'alpha': self.alpha,
            'lambda_star': _lambda_star(certificate),
            'decay_certificate_holds': all(row.holds for row in certificate),
            'decay_certificate': [asdict(row) for row in certificate],
            'resolvent_oracle_deviation': resolvent_oracle_deviation(sweep_triple, 1.0),
            'resolvent_factorization_deviation': max(factorization, default=None),
            'resolvent_factorization_holds': all(deviation <= self.tolerances.resolvent for deviation in factorization),
            'compatibility': asdict(sweep_triple.compatibility_check()),
            'semigroup': semigroup.diagnostics.as_dict(),
        }
        if self.alpha == 1.5 and lambdas:
            result.diagnostics['decay_integral_closed_form_deviation'] = max(
                abs(decay_integral(lam, 1.5) - decay_integral_closed_form(lam)) for lam in lambdas)
        return result

    def refinement_sample(self, level: int) -> RefinementSample:
        """exp(t_end G) x with x(s) = s for the closed loop generator G on 2^level times the construction grid"""
        n = self.construction_grid * 2 ** level
        triple = self.build(n)
        nodes = triple.x_space.nodes
        values = scipy.linalg.expm(self.time_grid.t_end * triple.closed_loop_matrix().matrix) @ nodes
        return RefinementSample(n, 1.0 / n, nodes, values)
