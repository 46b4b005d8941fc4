# -*- coding: utf-8 -*-

"""
The heat equation on [0, 1] with boundary feedback u(t, z) = integral of phi(z, x) u(t, x) dx.
"""

import numpy as np
import scipy.linalg

from boundary.boundary_model import BoundaryModel
from boundary.greiner import DEFAULT_LAMBDA0, eliminated_generator
from boundary.heat_feedback import BOUNDARY_KERNELS, HeatFeedbackResult, boundary_kernel, \
    continuum_norm_l_lambda_one, heat_feedback
from utils.config import Config
from utils.config_definitions import ConfigOptionDefinition, ConfigSectionDefinition, ConfigSectionEnableType
from utils.matrix_literals import FloatList
from validators.matrix_validators import is_ascending_list
from validators.number_validators import is_not_negative_float, is_positive_int
from ._base import _ScenarioBase, ScenarioResult, RefinementSample, ReportRow, Table, scalar_row, report_times

HEAT_FEEDBACK_TABLE = 'heat_feedback.csv'

HEAT_FEEDBACK_HEADER = ['lambda', 'spectral_radius_phi_Llambda', 'norm_Llambda_one', 't', 'min_entry_S',
                        'domination_residual', 'mass']


def heat_feedback_table(result: HeatFeedbackResult) -> Table:
    """Sweep rows first, then time rows, each leaving the columns of the other kind empty"""
    table = Table(list(HEAT_FEEDBACK_HEADER))
    for row in result.sweep:
        table.rows.append([row.lam, row.spectral_radius, row.norm_l_lambda_one, None, None, None, None])
    for row in result.time_rows:
        table.rows.append([None, None, None, row.t, row.min_entry_s, row.domination_residual, row.mass])
    return table


def continuum_deviation(result: HeatFeedbackResult) -> float:
    """Largest difference of ||L_lambda (1, 1)|| to the continuous Dirichlet operator over the sweep"""
    return max((abs(row.norm_l_lambda_one - continuum_norm_l_lambda_one(row.lam)) for row in result.sweep),
               default=0.0)


class ScenarioHeatFeedback(_ScenarioBase):
    """
    The Dirichlet heat semigroup perturbed by a boundary feedback kernel.
    """

    name = __qualname__

    display_name = 'Heat Equation with Boundary Feedback'

    description = 'Feeds the boundary values of the heat equation back from the interior and reports the ' \
                  'Dirichlet operator sweep, positivity, domination and mass of the semigroup.'

    CONFIG_OPTION_GRID_N = ConfigOptionDefinition(
        name='gridn',
        display_name='Grid Nodes',
        value_type=int,
        description='The number of nodes of the full grid, boundary included.',
        default_value=50,
        validator=is_positive_int,
    )

    CONFIG_OPTION_KERNEL = ConfigOptionDefinition(
        name='kernel',
        display_name='Kernel',
        value_type=str,
        description='The boundary kernel phi(z, x).',
        default_value='constant',
        valid_values=list(BOUNDARY_KERNELS.keys()),
    )

    CONFIG_OPTION_SCALE = ConfigOptionDefinition(
        name='scale',
        display_name='Kernel Scale',
        value_type=float,
        description='The factor the kernel is multiplied with.',
        default_value=0.5,
    )

    CONFIG_OPTION_LAMBDA_CHECK = ConfigOptionDefinition(
        name='lambdacheck',
        display_name='Lambda Check',
        value_type=float,
        description='The point of the spectral radius check of r(Phi L_lambda) < 1.',
        default_value=0.0,
        validator=is_not_negative_float,
    )

    CONFIG_OPTION_LAMBDA_SWEEP = ConfigOptionDefinition(
        name='lambdasweep',
        display_name='Lambda Sweep',
        value_type=FloatList,
        description='The points of the Dirichlet operator sweep.',
        default_value='[1, 2, 5, 10, 50, 100, 200]',
        validator=is_ascending_list,
    )

    CONFIG_OPTION_REPORT_TIMES = ConfigOptionDefinition(
        name='reporttimes',
        display_name='Report Times',
        value_type=FloatList,
        description='The grid times of the positivity, domination and mass rows, the end time if empty.',
        validator=is_ascending_list,
    )

    SCENARIO_HEAT_FEEDBACK_CONFIG_SECTION_DEFINITION = ConfigSectionDefinition(
        name=name,
        display_name=display_name,
        option_definitions=[
            CONFIG_OPTION_GRID_N,
            CONFIG_OPTION_KERNEL,
            CONFIG_OPTION_SCALE,
            CONFIG_OPTION_LAMBDA_CHECK,
            CONFIG_OPTION_LAMBDA_SWEEP,
            CONFIG_OPTION_REPORT_TIMES,
        ],
        enable_type=ConfigSectionEnableType.IF_SELECTED,
        sort_key_prefix=33,
    )

    Config.register_config_section_definition(SCENARIO_HEAT_FEEDBACK_CONFIG_SECTION_DEFINITION)

    @classmethod
    def config_section_definition(cls) -> ConfigSectionDefinition:
        return cls.SCENARIO_HEAT_FEEDBACK_CONFIG_SECTION_DEFINITION

    def __repr__(self) -> str:
        return f'ScenarioHeatFeedback(grid_n={self.grid_n}, kernel={self.kernel}, scale={self.scale})'

    def __init__(self, config: Config):
        self.grid_n = 50
        self.kernel = 'constant'
        self.scale = 0.5
        self.lambda_check = 0.0
        self.lambda_sweep = None
        self.report_times = None

        super().__init__(config)

    def _parse_scenario_config(self):
        self.grid_n = self._get(self.CONFIG_OPTION_GRID_N)
        self.kernel = self._get(self.CONFIG_OPTION_KERNEL)
        self.scale = self._get(self.CONFIG_OPTION_SCALE)
        self.lambda_check = self._get(self.CONFIG_OPTION_LAMBDA_CHECK)
        self.lambda_sweep = self._get(self.CONFIG_OPTION_LAMBDA_SWEEP)
        self.report_times = self._get(self.CONFIG_OPTION_REPORT_TIMES)

    def run(self) -> ScenarioResult:
        times = report_times(self.report_times, self.time_grid)
        lambdas = [float(lam) for lam in self.lambda_sweep] if self.lambda_sweep is not None else []
        feedback = heat_feedback(self.grid_n, boundary_kernel(self.kernel, self.scale), self.time_grid, times,
                                 self.lambda_check, lambdas, DEFAULT_LAMBDA0, self.rng, self.tolerances.resolvent)

        result = ScenarioResult()
        for row in feedback.sweep:
            result.rows.append(scalar_row('r_phi_L', row.spectral_radius, lam=row.lam))
            result.rows.append(scalar_row('norm_L_one', row.norm_l_lambda_one, lam=row.lam))
            result.rows.append(scalar_row('norm_bound', row.norm_bound, lam=row.lam))
            result.rows.append(scalar_row('norm_L_one_continuum', continuum_norm_l_lambda_one(row.lam), lam=row.lam))
        for row in feedback.time_rows:
            result.rows.append(scalar_row('min_entry_S', row.min_entry_s, t=row.t))
            result.rows.append(scalar_row('domination_residual', row.domination_residual, t=row.t))
            result.rows.append(scalar_row('mass', row.mass, t=row.t))

        ones = np.ones(feedback.model.x_space.dim)
        for t in times:
            values = feedback.semigroup.evaluate(t).matrix @ ones
            result.rows.extend(ReportRow(t, None, 'S_x', i, None, float(v)) for i, v in enumerate(values))

        result.tables[HEAT_FEEDBACK_TABLE] = heat_feedback_table(feedback)
        result.diagnostics = {
            'scenario': self.name,
            'kernel': self.kernel,
            'scale': self.scale,
            'continuum_deviation': continuum_deviation(feedback),
        }
        result.diagnostics.update(feedback.as_dict())
        difference = feedback.report.representation_difference
        result.diagnostics['representation_holds'] = difference <= self.tolerances.resolvent
        return result

    def refinement_sample(self, level: int) -> RefinementSample:
        """exp(t_end A^Phi) applied to sin(pi x) on the grid with 2^level times the cells"""
        n = (self.grid_n - 1) * 2 ** level + 1
        model = BoundaryModel.with_kernel(n, boundary_kernel(self.kernel, self.scale))
        nodes = model.x_space.nodes
        generator = eliminated_generator(model).matrix
        values = scipy.linalg.expm(self.time_grid.t_end * generator) @ np.sin(np.pi * nodes)
        return RefinementSample(n, model.h, nodes, values)
