# -*- coding: utf-8 -*-

import math
from dataclasses import asdict
from typing import List, Tuple

import numpy as np

from interpolation.riesz_thorin import riesz_thorin_check
from lattice.grid_space import GridSpace, NormKind
from lattice.lattice_vector import LatticeVector
from operators.lin_op import LinOp
from operators.spectral import spectral_radius
from semigroups.matrix_exp import MatrixExp
from systems.admissibility import admissibility_constants
from systems.system_maps import laplace_identity_residual, io_time_operator
from systems.time_functions import TimeGrid, TimeGridFn
from systems.triple import TripleSpec, RegularizedControl
from theorems.domination import DominatingSplit, construct_dominated
from theorems.hypotheses import TheoremKind
from theorems.perturbed_semigroup import PerturbedSemigroup, construct_perturbed, rescaled, vp_residual
from utils.config import Config
from utils.config_definitions import ConfigOptionDefinition, ConfigSectionDefinition, ConfigSectionEnableType
from utils.matrix_literals import Matrix, FloatList
from validators.matrix_validators import is_square_matrix, is_finite_matrix, is_ascending_list
from validators.number_validators import is_lp_exponent, is_not_negative_float, is_positive_float
from ._base import _ScenarioBase, ScenarioResult, RefinementSample, matrix_rows, scalar_row, report_times

# Points of the Laplace identity check
LAPLACE_LAMBDAS = (0.5, 1.0, 2.0)

# Time grid of the Laplace identity check, long enough for the transforms to settle
LAPLACE_GRID = TimeGrid(20.0, 4000)

# Exponents of the interpolation check of the input-output operator
RIESZ_THORIN_EXPONENTS = (1.5, 2.0, 3.0)

# Random probes per exponent of the interpolation check
RIESZ_THORIN_TRIALS = 20

# Largest stacked dimension the interpolation check is run on
RIESZ_THORIN_MAX_DIM = 600

THEOREM_AUTO = 'auto'

# The theorem whose U-space axiom the norm kind of U satisfies
_THEOREM_BY_U_NORM = {
    NormKind.SUP: TheoremKind.AM,
    NormKind.L1: TheoremKind.AL,
    NormKind.LP: TheoremKind.RN,
}


def unit_space(n: int, norm_name: str, p: float) -> GridSpace:
    norm_kind = NormKind(norm_name)
    return GridSpace.unit(n, norm_kind, p if norm_kind is NormKind.LP else None)


def build_triple(a: np.ndarray,
                 b: np.ndarray,
                 c: np.ndarray,
                 lambda0: float,
                 x_norm: str,
                 u_norm: str,
                 p: float) -> TripleSpec:
    """The triple of matrices with X = R^n, U = R^m and unit weights

    :param np.ndarray a: The generator, n x n
    :param np.ndarray b: The unregularized control, n x m
    :param np.ndarray c: The observation, m x n
    :param float lambda0: The reference point of the regularized control
    :param str x_norm: Norm kind name of X
    :param str u_norm: Norm kind name of U
    :param float p: The exponent of Lp-tagged spaces
    :return: The triple
    :rtype: TripleSpec
    """
    b = np.atleast_2d(b)
    x_space = unit_space(a.shape[0], x_norm, p)
    u_space = unit_space(c.shape[0], u_norm, p)
    generator = LinOp(a, x_space, x_space)
    control = RegularizedControl.from_unregularized(generator, LinOp(b, u_space, x_space), lambda0)
    return TripleSpec(MatrixExp(generator), control, LinOp(c, x_space, u_space), u_space)


class ScenarioTriple(_ScenarioBase):
    """
    A triple given by inline matrices, run through the theorem matching U or the domination theorem.
    """

    name = __qualname__

    display_name = 'Matrix Triple'

    description = 'Builds S(t) for a triple (A, B, C) of inline matrices and compares it with the closed loop ' \
                  'exponential.'

    CONFIG_OPTION_A = ConfigOptionDefinition(
        name='a',
        display_name='A',
        value_type=Matrix,
        description='The generator A as a row list.',
        mandatory=True,
        validator=is_square_matrix,
    )

    CONFIG_OPTION_B = ConfigOptionDefinition(
        name='b',
        display_name='B',
        value_type=Matrix,
        description='The unregularized control B as a row list, B_reg = R(lambda0, A) B.',
        mandatory=True,
        validator=is_finite_matrix,
    )

    CONFIG_OPTION_C = ConfigOptionDefinition(
        name='c',
        display_name='C',
        value_type=Matrix,
        description='The observation C as a row list.',
        mandatory=True,
        validator=is_finite_matrix,
    )

    CONFIG_OPTION_LAMBDA0 = ConfigOptionDefinition(
        name='lambda0',
        display_name='Lambda 0',
        value_type=float,
        description='The reference point of the regularized control.',
        default_value=1.0,
        validator=is_positive_float,
    )

    CONFIG_OPTION_X_NORM = ConfigOptionDefinition(
        name='xnorm',
        display_name='Norm of X',
        value_type=str,
        description='The norm of the state space.',
        default_value=NormKind.SUP.value,
        valid_values=[kind.value for kind in NormKind],
    )

    CONFIG_OPTION_U_NORM = ConfigOptionDefinition(
        name='unorm',
        display_name='Norm of U',
        value_type=str,
        description='The norm of the input space, it selects the theorem when theorem is auto.',
        default_value=NormKind.SUP.value,
        valid_values=[kind.value for kind in NormKind],
    )

    CONFIG_OPTION_P = ConfigOptionDefinition(
        name='p',
        display_name='p',
        value_type=float,
        description='The exponent of Lp-tagged spaces and of the admissibility constants.',
        default_value=2.0,
        validator=is_lp_exponent,
    )

    CONFIG_OPTION_THEOREM = ConfigOptionDefinition(
        name='theorem',
        display_name='Theorem',
        value_type=str,
        description='The theorem S(t) is built with, auto selects it from the norm of U.',
        default_value=THEOREM_AUTO,
        valid_values=[THEOREM_AUTO, TheoremKind.AM.value, TheoremKind.AL.value, TheoremKind.RN.value],
    )

    CONFIG_OPTION_LAMBDA_CHECK = ConfigOptionDefinition(
        name='lambdacheck',
        display_name='Lambda Check',
        value_type=float,
        description='The point of the spectral radius check, in rescaled coordinates.',
        default_value=0.0,
        validator=is_not_negative_float,
    )

    CONFIG_OPTION_REPORT_TIMES = ConfigOptionDefinition(
        name='reporttimes',
        display_name='Report Times',
        value_type=FloatList,
        description='The grid times whose matrices are reported, the end time if empty.',
        validator=is_ascending_list,
    )

    CONFIG_OPTION_LAMBDA_SWEEP = ConfigOptionDefinition(
        name='lambdasweep',
        display_name='Lambda Sweep',
        value_type=FloatList,
        description='The points at which r(C R(lambda, A_-1) B) is reported.',
        default_value='[1, 2, 5, 10]',
        validator=is_ascending_list,
    )

    SCENARIO_TRIPLE_CONFIG_SECTION_DEFINITION = ConfigSectionDefinition(
        name=name,
        display_name=display_name,
        option_definitions=[
            CONFIG_OPTION_A,
            CONFIG_OPTION_B,
            CONFIG_OPTION_C,
            CONFIG_OPTION_LAMBDA0,
            CONFIG_OPTION_X_NORM,
            CONFIG_OPTION_U_NORM,
            CONFIG_OPTION_P,
            CONFIG_OPTION_THEOREM,
            CONFIG_OPTION_LAMBDA_CHECK,
            CONFIG_OPTION_REPORT_TIMES,
            CONFIG_OPTION_LAMBDA_SWEEP,
        ],
        enable_type=ConfigSectionEnableType.IF_SELECTED,
        sort_key_prefix=30,
    )

    Config.register_config_section_definition(SCENARIO_TRIPLE_CONFIG_SECTION_DEFINITION)

    @classmethod
    def config_section_definition(cls) -> ConfigSectionDefinition:
        return cls.SCENARIO_TRIPLE_CONFIG_SECTION_DEFINITION

    def __repr__(self) -> str:
        return f'ScenarioTriple(theorem={self.theorem})'

    def __init__(self, config: Config):
        self.a = self.b = self.c = None
        self.lambda0 = 1.0
        self.x_norm = self.u_norm = NormKind.SUP.value
        self.p = 2.0
        self.theorem = THEOREM_AUTO
        self.lambda_check = 0.0
        self.report_times = None
        self.lambda_sweep = None

        super().__init__(config)

    def _parse_scenario_config(self):
        self.a = self._get(self.CONFIG_OPTION_A)
        self.b = self._get(self.CONFIG_OPTION_B)
        self.c = self._get(self.CONFIG_OPTION_C)
        self.lambda0 = self._get(self.CONFIG_OPTION_LAMBDA0)
        self.x_norm = self._get(self.CONFIG_OPTION_X_NORM)
        self.u_norm = self._get(self.CONFIG_OPTION_U_NORM)
        self.p = self._get(self.CONFIG_OPTION_P)
        self.theorem = self._get(self.CONFIG_OPTION_THEOREM)
        self.lambda_check = self._get(self.CONFIG_OPTION_LAMBDA_CHECK)
        self.report_times = self._get(self.CONFIG_OPTION_REPORT_TIMES)
        self.lambda_sweep = self._get(self.CONFIG_OPTION_LAMBDA_SWEEP)

    def build(self) -> TripleSpec:
        return build_triple(self.a, self.b, self.c, self.lambda0, self.x_norm, self.u_norm, self.p)

    def theorem_kind(self, triple: TripleSpec) -> TheoremKind:
        if self.theorem == THEOREM_AUTO:
            return _THEOREM_BY_U_NORM[triple.u_space.norm_kind]
        return TheoremKind(self.theorem)

    def construct(self, triple: TripleSpec, time_grid: TimeGrid, rng: np.random.Generator) \
            -> Tuple[PerturbedSemigroup, PerturbedSemigroup or None]:
        """S(t) from the theorem of the triple, and S~(t) when the triple is signed"""
        kind = self.theorem_kind(triple)
        p = self.p if kind is TheoremKind.RN else None
        if triple.is_positive(self.tolerances.positivity):
            return construct_perturbed(triple, kind, time_grid, self.tolerances.picard, rng, self.lambda_check, p,
                                       self.tolerances.positivity), None
        self.logger.info('The triple is signed, taking the domination route.')
        return construct_dominated(triple, DominatingSplit.from_triple(triple), time_grid, self.tolerances.picard,
                                   rng, self.lambda_check, kind, self.tolerances.domination,
                                   report_times(self.report_times, time_grid), p)

    def _feedback_rows(self, triple: TripleSpec) -> List:
        rows = []
        growth_bound = triple.model.growth_bound
        for lam in self.lambda_sweep if self.lambda_sweep is not None else []:
            if lam <= growth_bound:
                self.logger.warning('lambda=%s is not above the growth bound %s, skipping it.', lam, growth_bound)
                continue
            rows.append(scalar_row('r_feedback', spectral_radius(triple.feedback_operator(float(lam))).value,
                                   lam=float(lam)))
        return rows

    def _checks(self, triple: TripleSpec, semigroup: PerturbedSemigroup, times: List[float]) -> dict:
        grid = self.time_grid
        law_times = [float(grid.times[grid.steps // 4]), float(grid.times[grid.steps // 2])]
        diagnostics = {'compatibility': asdict(triple.compatibility_check()),
                       'semigroup_law_defect': semigroup.semigroup_law_defect(law_times)}

        x = LatticeVector(triple.x_space, np.ones(triple.x_space.dim))
        diagnostics['vp_residual'] = max(vp_residual(semigroup, triple, x, t) for t in times)

        scaled, mu = rescaled(triple)
        if not triple.is_positive(self.tolerances.positivity):
            return diagnostics

        exponent = self.p if self.theorem_kind(triple) is TheoremKind.RN else math.inf
        diagnostics['admissibility'] = asdict(admissibility_constants(scaled, exponent, self.time_grid.t_end,
                                                                      rng=self.rng))

        u = TimeGridFn.from_callable(LAPLACE_GRID, lambda t: np.exp(-t) * np.ones(triple.u_space.dim), triple.u_space)
        residuals = {str(lam): laplace_identity_residual(scaled, u, lam, self.tolerances.picard, relative=True)
                     for lam in LAPLACE_LAMBDAS}
        diagnostics['laplace_residuals'] = residuals
        diagnostics['laplace_identity_holds'] = all(r <= self.tolerances.laplace for r in residuals.values())

        if self.theorem_kind(triple) is TheoremKind.RN \
                and (self.time_grid.steps + 1) * triple.u_space.dim <= RIESZ_THORIN_MAX_DIM:
            report = riesz_thorin_check(io_time_operator(scaled, self.time_grid), RIESZ_THORIN_EXPONENTS,
                                        RIESZ_THORIN_TRIALS, self.rng)
            diagnostics['riesz_thorin'] = {'holds': report.holds, 'm0': report.m0, 'm1': report.m1,
                                           'empirical': report.empirical, 'bounds': report.bounds}
        return diagnostics

    def run(self) -> ScenarioResult:
        triple = self.build()
        semigroup, majorant = self.construct(triple, self.time_grid, self.rng)
        times = report_times(self.report_times, self.time_grid)

        result = ScenarioResult()
        for t in times:
            result.rows.extend(matrix_rows(t, None, 'S', semigroup.evaluate(t).matrix))
            result.rows.extend(matrix_rows(t, None, 'T', triple.model.evaluate(t).matrix))
            result.rows.extend(matrix_rows(t, None, 'oracle', triple.closed_loop_semigroup(t).matrix))
            if majorant is not None:
                result.rows.extend(matrix_rows(t, None, 'S_tilde', majorant.evaluate(t).matrix))
        result.rows.append(scalar_row('min_entry_S', semigroup.min_entry()))
        result.rows.append(scalar_row('oracle_deviation', semigroup.oracle_deviation(triple, times)))
        result.rows.extend(self._feedback_rows(triple))

        result.diagnostics = {'scenario': self.name,
                              'semigroup': semigroup.diagnostics.as_dict()}
        result.diagnostics.update(self._checks(triple, semigroup, times))
        return result

    def refinement_sample(self, level: int) -> RefinementSample:
        """S(t_end) 1 on the time grid with 2^level times the configured steps"""
        time_grid = TimeGrid(self.time_grid.t_end, self.time_grid.steps * 2 ** level)
        triple = self.build()
        semigroup, _ = self.construct(triple, time_grid, np.random.default_rng(self.seed))
        values = semigroup.evaluate(time_grid.t_end).matrix @ np.ones(triple.x_space.dim)
        return RefinementSample(time_grid.steps, time_grid.step, np.arange(triple.x_space.dim, dtype=float), values)
