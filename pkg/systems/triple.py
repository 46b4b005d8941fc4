# -*- coding: utf-8 -*-

"""
The (A, B, C) triple of a structured perturbation A_BC = (A_-1 + BC)|_X.

B is unbounded into X and is only ever stored in the regularized form B_reg = R(lambda0, A_-1) B, an
operator U -> X. All compositions with B are written through B_reg and resolvents of A.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Any, List

import numpy as np
import scipy.linalg

from lattice.grid_space import GridSpace
from operators.lin_op import LinOp
from operators.spectral import resolvent
from semigroups._base import _SemigroupModelBase
from semigroups.matrix_exp import MatrixExp
from semigroups.shift import NilpotentLeftShift, NilpotentRightShift
from systems import LOGGER_NAME
from utils.numerical_errors import SpaceMismatch, NotRescaled, SingularResolvent


class RegularizedControl:
    """
    B_reg = R(lambda0, A_-1) B, a bounded operator U -> X.
    """

    def __repr__(self) -> str:
        return f'RegularizedControl(lambda0={self.lambda0}, b_reg={self.b_reg})'

    def __str__(self) -> str:
        return repr(self)

    def __init__(self, b_reg: LinOp, lambda0: float):
        self.b_reg = b_reg
        self.lambda0 = float(lambda0)

    @classmethod
    def from_unregularized(cls, a: LinOp, b: LinOp, lambda0: float) -> 'RegularizedControl':
        """Regularizes a control matrix B: U -> X by R(lambda0, A)"""
        return cls(resolvent(a, lambda0) @ b, lambda0)

    def unregularized(self, a: LinOp) -> LinOp:
        """The discrete control action (lambda0 - A) B_reg"""
        return LinOp(self.lambda0 * self.b_reg.matrix - a.matrix @ self.b_reg.matrix,
                     self.b_reg.domain, self.b_reg.codomain)


@dataclass(frozen=True)
class ZMembership:
    """
    Result of a Z-membership predicate on the columns of R(lambda, A_-1) B.
    """
    predicate: str
    passes: bool
    measure: float


def _z_all(columns: np.ndarray, space: GridSpace, parameters: Dict[str, Any]) -> ZMembership:
    return ZMembership('all', True, 0.0)


def _z_bounded_scaled_values(columns: np.ndarray, space: GridSpace, parameters: Dict[str, Any]) -> ZMembership:
    """sup |f(x_i)| / x_i^(alpha - 1); finite on every grid, the value is what gets reported"""
    alpha = float(parameters.get('alpha', 1.0))
    scale = space.nodes[:, np.newaxis] ** (alpha - 1.0)
    measure = float(np.max(np.abs(columns) / scale)) if columns.size else 0.0
    return ZMembership('bounded-scaled-values', bool(np.isfinite(measure)), measure)


def _z_continuous_proxy(columns: np.ndarray, space: GridSpace, parameters: Dict[str, Any]) -> ZMembership:
    jumps = float(np.max(np.abs(np.diff(columns, axis=0)))) if columns.shape[0] > 1 and columns.size else 0.0
    return ZMembership('continuous-proxy', True, jumps)


""" Z-membership predicates by name. """
Z_PREDICATES: Dict[str, Callable[[np.ndarray, GridSpace, Dict[str, Any]], ZMembership]] = {
    'all': _z_all,
    'bounded-scaled-values': _z_bounded_scaled_values,
    'continuous-proxy': _z_continuous_proxy,
}


@dataclass(frozen=True)
class CompatibilityReport:
    lambdas: List[float]
    memberships: List[ZMembership]
    range_difference: float

    @property
    def passes(self) -> bool:
        return all(membership.passes for membership in self.memberships)


class TripleSpec:
    """
    A generator A (through its semigroup model), a regularized control B_reg, an observation C: X -> U and the
    space U.

    The model must be generated by its discrete generator matrix; the shift models, whose ``evaluate`` is the
    exact translation, enter through the exponential of their upwind generator.
    """

    def __repr__(self) -> str:
        return f'TripleSpec(model={self.model}, lambda0={self.lambda0}, u_space={self.u_space},' \
               f' z_flag={self.z_flag})'

    def __str__(self) -> str:
        return repr(self)

    def __init__(self,
                 model: _SemigroupModelBase,
                 control: RegularizedControl,
                 observation: LinOp,
                 u_space: GridSpace,
                 z_flag: str = 'all',
                 z_parameters: Dict[str, Any] or None = None):
        self.logger = logging.getLogger(self.__class__.__name__)

        if isinstance(model, (NilpotentLeftShift, NilpotentRightShift)):
            self.logger.info('Using the exponential of the upwind generator of %s.', model)
            model = MatrixExp(model.generator())

        x_dim, u_dim = model.space.dim, u_space.dim
        if control.b_reg.matrix.shape != (x_dim, u_dim):
            self.logger.error('B_reg has the shape %s, expected %s.', control.b_reg.matrix.shape, (x_dim, u_dim))
            raise SpaceMismatch('TripleSpec', 'B_reg has the shape {}, expected {}.'
                                .format(control.b_reg.matrix.shape, (x_dim, u_dim)))
        if observation.matrix.shape != (u_dim, x_dim):
            self.logger.error('C has the shape %s, expected %s.', observation.matrix.shape, (u_dim, x_dim))
            raise SpaceMismatch('TripleSpec', 'C has the shape {}, expected {}.'
                                .format(observation.matrix.shape, (u_dim, x_dim)))
        if z_flag not in Z_PREDICATES:
            self.logger.error('Unknown Z-membership predicate "%s", valid are %s.', z_flag, list(Z_PREDICATES))
            raise ValueError('Unknown Z-membership predicate "{}", valid are {}.'.format(z_flag, list(Z_PREDICATES)))

        self.model = model
        self.control = control
        self.observation = observation.with_spaces(model.space, u_space)
        self.u_space = u_space
        self.z_flag = z_flag
        self.z_parameters = dict(z_parameters or {})

    @property
    def x_space(self) -> GridSpace:
        return self.model.space

    @property
    def lambda0(self) -> float:
        return self.control.lambda0

    @property
    def a(self) -> LinOp:
        return self.model.generator()

    @property
    def b_reg(self) -> LinOp:
        return self.control.b_reg.with_spaces(self.u_space, self.x_space)

    @property
    def c(self) -> LinOp:
        return self.observation

    @property
    def rescale_shift(self) -> float:
        return self.model.rescale_shift

    def replace(self, **kwargs) -> 'TripleSpec':
        """A copy with some of model, control, observation, u_space, z_flag, z_parameters replaced"""
        fields = dict(model=self.model, control=self.control, observation=self.observation, u_space=self.u_space,
                      z_flag=self.z_flag, z_parameters=self.z_parameters)
        fields.update(kwargs)
        return TripleSpec(**fields)

    def rescale(self, mu: float) -> 'TripleSpec':
        """The triple of A - mu I; B_reg is unchanged since R(lambda0, A) == R(lambda0 - mu, A - mu I)"""
        return self.replace(model=self.model.rescale(mu),
                            control=RegularizedControl(self.control.b_reg, self.lambda0 - mu))

    def unregularized_control(self) -> LinOp:
        """(lambda0 - A) B_reg, the control matrix of the discrete model"""
        return self.control.unregularized(self.a).with_spaces(self.u_space, self.x_space)

    def control_resolvent(self, lam: float) -> LinOp:
        """R(lam, A_-1) B = R(lam, A) (lambda0 - A) B_reg"""
        if lam == self.lambda0:
            return self.b_reg
        return resolvent(self.a, lam) @ self.unregularized_control()

    def observation_resolvent(self, lam: float) -> LinOp:
        """C R(lam, A)"""
        return self.c @ resolvent(self.a, lam)

    def feedback_operator(self, lam: float) -> LinOp:
        """C R(lam, A_-1) B: U -> U"""
        return self.c @ self.control_resolvent(lam)

    def a_inverse_b(self) -> LinOp:
        """A_-1^-1 B = -R(0, A_-1) B, defined when the growth bound is negative"""
        if self.model.growth_bound >= 0.0:
            self.logger.error('A_-1^-1 B needs a negative growth bound, got %s.', self.model.growth_bound)
            raise NotRescaled('a_inverse_b', 'A_-1^-1 B needs a negative growth bound, got {}.'
                              .format(self.model.growth_bound), growth_bound=self.model.growth_bound)
        return -self.control_resolvent(0.0)

    def c_a_inverse(self) -> LinOp:
        """C A^-1 = -C R(0, A)"""
        return -self.observation_resolvent(0.0)

    def closed_loop_matrix(self) -> LinOp:
        """A + (lambda0 - A) B_reg C, the discrete generator of the perturbed semigroup"""
        return self.a + self.unregularized_control() @ self.c

    def closed_loop_semigroup(self, t: float) -> LinOp:
        """exp(t (A + (lambda0 - A) B_reg C)), the matrix exponential oracle"""
        closed_loop = self.closed_loop_matrix()
        return LinOp(scipy.linalg.expm(t * closed_loop.matrix), self.x_space, self.x_space)

    def is_positive(self, tol: float) -> bool:
        """B_reg and C entrywise >= -tol"""
        return bool(np.min(self.b_reg.matrix, initial=0.0) >= -tol and np.min(self.c.matrix, initial=0.0) >= -tol)

    def compatibility_check(self, second_lambda: float or None = None) -> CompatibilityReport:
        """Evaluates the Z-membership predicate on R(lambda, A_-1) B at lambda0 and at a second lambda

        The range of R(lambda, A_-1) B does not depend on lambda; ``range_difference`` is the largest residual of
        the columns at the second lambda projected onto the span of the columns at lambda0.

        :param float second_lambda: The second point, lambda0 + 1 by default
        :return: The report
        :rtype: CompatibilityReport
        """
        if second_lambda is None:
            second_lambda = self.lambda0 + 1.0
        predicate = Z_PREDICATES[self.z_flag]
        lambdas = [self.lambda0, second_lambda]
        memberships = []
        columns = []
        for lam in lambdas:
            try:
                matrix = self.control_resolvent(lam).matrix
            except SingularResolvent:
                self.logger.warning('compatibility_check: lambda=%s is in the spectrum, skipping it.', lam)
                continue
            columns.append(matrix)
            memberships.append(predicate(matrix, self.x_space, self.z_parameters))

        range_difference = 0.0
        if len(columns) == 2 and columns[0].size:
            coefficients, *_ = np.linalg.lstsq(columns[0], columns[1], rcond=None)
            scale = max(1.0, float(np.max(np.abs(columns[1]))))
            range_difference = float(np.max(np.abs(columns[0] @ coefficients - columns[1]))) / scale

        report = CompatibilityReport(lambdas, memberships, range_difference)
        logging.getLogger(LOGGER_NAME).debug('compatibility_check: %s', report)
        return report
