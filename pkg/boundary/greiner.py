# -*- coding: utf-8 -*-

"""
Boundary perturbations A^Phi = (A_-1 + L_A Phi)|_X of the Dirichlet Laplacian.

The Dirichlet operator L_lambda solves (lambda - A_m) f = 0, L f = g. A^Phi is A_m on the functions with
L f = Phi f; it is built both by eliminating the boundary values and as the perturbation of the triple
(A, L_A, Phi), whose regularized control is L_lambda0.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Tuple, Dict, Any

import numpy as np

from boundary import LOGGER_NAME
from boundary.boundary_model import BoundaryModel
from lattice.grid_space import GridSpace, NormKind
from operators.lin_op import LinOp
from operators.spectral import resolvent, spectral_radius
from systems.time_functions import TimeGrid
from systems.triple import TripleSpec, RegularizedControl
from theorems.domination import DominatingSplit, construct_dominated
from theorems.hypotheses import TheoremKind, HypothesisReport, HypothesisCheck, spectral_radius_check
from theorems.perturbed_semigroup import PerturbedSemigroup, closed_loop_perturbed, resolvent_factorization
from utils.constants import DEFAULT_RESOLVENT_TOLERANCE
from utils.numerical_errors import SingularBVP, SingularResolvent, HypothesisFailed, InconsistentRepresentations

# Tolerance of the Dirichlet operator identities
DIRICHLET_TOLERANCE = 1e-8

# Smallest accepted entry of L_lambda for lambda >= 0
DIRICHLET_POSITIVITY_SLACK = 1e-12

# Reference point of the regularized control L_lambda0
DEFAULT_LAMBDA0 = 1.0

# Default sweep of lambda
DEFAULT_LAMBDA_SWEEP = (1.0, 2.0, 5.0, 10.0, 50.0, 100.0, 200.0)


def _relative_difference(left: np.ndarray, right: np.ndarray) -> float:
    scale = max(1.0, float(np.max(np.abs(right), initial=0.0)))
    return float(np.max(np.abs(left - right), initial=0.0)) / scale


def _solve_dirichlet(model: BoundaryModel, lam: float) -> np.ndarray:
    try:
        return (resolvent(model.a_dirichlet, lam) @ model.boundary_columns).matrix
    except SingularResolvent as e:
        logging.getLogger(LOGGER_NAME).error('dirichlet_map: the boundary value problem at lambda=%s is singular.',
                                             lam)
        raise SingularBVP('dirichlet_map', 'The boundary value problem at lambda={} is singular: {}'
                          .format(lam, e), lam=lam)


def dirichlet_map(model: BoundaryModel, lam: float, mu: float or None = None) -> LinOp:
    """Returns L_lambda: dX -> X, the solution operator of (lambda - A_m) f = 0, L f = g

    The identities L L_lambda = Id on dX and L_lambda = (mu - A) R(lambda, A) L_mu are verified.

    :param BoundaryModel model: The boundary model
    :param float lam: A point of the resolvent set of the Dirichlet operator
    :param float mu: The second point of the identity, lam + 1 by default
    :return: The Dirichlet operator on the interior nodes
    :rtype: LinOp
    """
    dirichlet = _solve_dirichlet(model, lam)

    full = model.extend(dirichlet, np.eye(2))
    trace_defect = float(np.max(np.abs(model.trace.matrix @ full - np.eye(2))))
    scale = max(1.0, float(np.max(np.abs(dirichlet), initial=0.0)))
    operator_size = abs(lam) + 4.0 / model.h ** 2
    equation_defect = float(np.max(np.abs(lam * dirichlet - model.a_m.matrix @ full))) / (operator_size * scale)
    if trace_defect > DIRICHLET_TOLERANCE or equation_defect > DIRICHLET_TOLERANCE:
        logging.getLogger(LOGGER_NAME).error('dirichlet_map: trace defect %s, equation defect %s at lambda=%s.',
                                             trace_defect, equation_defect, lam)
        raise SingularBVP('dirichlet_map', 'Trace defect {}, equation defect {} at lambda={}.'
                          .format(trace_defect, equation_defect, lam), lam=lam)

    if mu is None:
        mu = lam + 1.0
    second = _solve_dirichlet(model, mu)
    resolved = resolvent(model.a_dirichlet, lam).matrix @ second
    identity = mu * resolved - model.a_dirichlet.matrix @ resolved
    identity_defect = _relative_difference(identity, dirichlet)
    if identity_defect > DIRICHLET_TOLERANCE:
        logging.getLogger(LOGGER_NAME).error('dirichlet_map: L_lambda and (mu - A) R(lambda, A) L_mu differ by %s.',
                                             identity_defect)
        raise SingularBVP('dirichlet_map', 'L_lambda and (mu - A) R(lambda, A) L_mu differ by {}.'
                          .format(identity_defect), lam=lam, mu=mu)

    if lam >= 0.0 and float(np.min(dirichlet)) < -DIRICHLET_POSITIVITY_SLACK:
        logging.getLogger(LOGGER_NAME).warning('dirichlet_map: L_lambda has the negative entry %s at lambda=%s.',
                                               float(np.min(dirichlet)), lam)
    return LinOp(dirichlet, model.boundary_space, model.x_space)


def boundary_triple(model: BoundaryModel, lambda0: float = DEFAULT_LAMBDA0) -> TripleSpec:
    """The triple (A, L_A, Phi) with B_reg = L_lambda0 and U = dX"""
    control = RegularizedControl(dirichlet_map(model, lambda0), lambda0)
    return TripleSpec(model.semigroup(), control, model.phi, model.boundary_space)


def eliminated_generator(model: BoundaryModel) -> LinOp:
    """A_m on the interior values with the boundary values replaced by Phi f"""
    extension = model.extend(np.eye(model.x_space.dim), model.phi.matrix)
    return LinOp(model.a_m.matrix @ extension, model.x_space, model.x_space)


def phi_norm(model: BoundaryModel) -> float:
    """||Phi||_(X -> dX), the largest dual norm of the two boundary functionals"""
    point = GridSpace.unit(1, NormKind.SUP)
    return max(LinOp(row[np.newaxis, :], model.x_space, point).exact_norm() for row in model.phi.matrix)


def boundary_norm_estimate(model: BoundaryModel, lam: float) -> Tuple[float, float]:
    """Returns ||L_lambda 1|| on the full grid and the bound ||Phi|| ||L_lambda 1||_X of r(Phi L_lambda)

    The first norm is the trapezoid L2(0, 1) norm with the boundary values 1 included.
    L_lambda 1 = (Id - lambda R(lambda, A)) L_0 1 is checked on the way.

    :param BoundaryModel model: The boundary model
    :param float lam: lam >= 0
    :return: The norm and the bound
    :rtype: Tuple[float, float]
    """
    ones = np.ones(2)
    image = dirichlet_map(model, lam).matrix @ ones
    harmonic = dirichlet_map(model, 0.0).matrix @ ones
    identity = harmonic - lam * (resolvent(model.a_dirichlet, lam).matrix @ harmonic)
    defect = _relative_difference(identity, image)
    if defect > DIRICHLET_TOLERANCE:
        logging.getLogger(LOGGER_NAME).error('boundary_norm_estimate: L_lambda 1 and (Id - lambda R(lambda, A)) L_0 1'
                                             ' differ by %s.', defect)
        raise InconsistentRepresentations('boundary_norm_estimate', 'L_lambda 1 and (Id - lambda R(lambda, A)) L_0 1'
                                          ' differ by {}.'.format(defect), lam=lam)
    full_norm = model.full_space.norm(model.extend(image, ones))
    return full_norm, phi_norm(model) * model.x_space.norm(image)


@dataclass(frozen=True)
class BoundarySweepRow:
    lam: float
    spectral_radius: float
    norm_l_lambda_one: float
    norm_bound: float


@dataclass
class BoundaryReport:
    sweep: List[BoundarySweepRow] = field(default_factory=list)
    lambda_star: float or None = None
    representation_difference: float = 0.0
    hypothesis_report: HypothesisReport or None = None

    def as_dict(self) -> Dict[str, Any]:
        return {'lambda_star': self.lambda_star,
                'representation_difference': self.representation_difference,
                'sweep': [row.__dict__ for row in self.sweep],
                'hypothesis_report': self.hypothesis_report.as_dict() if self.hypothesis_report else None}


def boundary_sweep(model: BoundaryModel, lambda_sweep: Iterable[float]) -> List[BoundarySweepRow]:
    """r(Phi L_lambda), ||L_lambda 1|| and ||Phi|| ||L_lambda 1|| for every lambda of the sweep, ascending"""
    rows = []
    for lam in sorted(float(lam) for lam in lambda_sweep):
        feedback = model.phi @ dirichlet_map(model, lam)
        norm, bound = boundary_norm_estimate(model, lam)
        rows.append(BoundarySweepRow(lam, spectral_radius(feedback).value, norm, bound))
    return rows


def _lambda_star(rows: List[BoundarySweepRow]) -> float or None:
    """The smallest sampled lambda from which on r(Phi L_lambda) < 1"""
    star = None
    for row in reversed(rows):
        if row.spectral_radius >= 1.0:
            break
        star = row.lam
    return star


def representation_check(model: BoundaryModel,
                         triple: TripleSpec,
                         lam: float,
                         tol: float = DEFAULT_RESOLVENT_TOLERANCE) -> float:
    """Relative difference of R(lam, A^Phi) from the eliminated generator and from the resolvent factorization,
    InconsistentRepresentations above tol"""
    direct = resolvent(eliminated_generator(model), lam).matrix
    factorized = resolvent_factorization(triple, lam).matrix
    difference = _relative_difference(factorized, direct)
    if difference > tol:
        logging.getLogger(LOGGER_NAME).error('representation_check: the representations of A^Phi differ by %s at'
                                             ' lambda=%s.', difference, lam)
        raise InconsistentRepresentations('representation_check', 'The representations of A^Phi differ by {} at'
                                          ' lambda={}.'.format(difference, lam), lam=lam)
    return difference


def boundary_generator(model: BoundaryModel,
                       lambda_check: float,
                       time_grid: TimeGrid,
                       lambda_sweep: Iterable[float] = DEFAULT_LAMBDA_SWEEP,
                       lambda0: float = DEFAULT_LAMBDA0,
                       rng: np.random.Generator or None = None,
                       check_times: List[float] or None = None,
                       resolvent_tol: float = DEFAULT_RESOLVENT_TOLERANCE) \
        -> Tuple[PerturbedSemigroup, BoundaryReport, PerturbedSemigroup or None]:
    """Builds the semigroup generated by A^Phi

    A^Phi is assembled by eliminating the boundary values and cross checked against the resolvent factorization
    of the triple (A, L_A, Phi). A Phi with negative entries takes the domination route with the dominating
    functional |Phi|, which also yields the majorant semigroup.

    :param BoundaryModel model: The boundary model
    :param float lambda_check: The point of the spectral radius check
    :param TimeGrid time_grid: The time grid of the semigroup
    :param Iterable[float] lambda_sweep: The points of the reported sweep
    :param float lambda0: The reference point of the regularized control
    :param np.random.Generator rng: The generator of the probes
    :param List[float] check_times: Grid times of the domination check of a signed Phi
    :param float resolvent_tol: Relative difference allowed between the two representations of A^Phi
    :return: The semigroup, the report and the majorant semigroup for a signed Phi
    :rtype: Tuple[PerturbedSemigroup, BoundaryReport, PerturbedSemigroup or None]
    """
    if rng is None:
        rng = np.random.default_rng(0)

    triple = boundary_triple(model, lambda0)
    report = BoundaryReport(boundary_sweep(model, lambda_sweep))
    report.lambda_star = _lambda_star(report.sweep)

    radius = spectral_radius(model.phi @ dirichlet_map(model, lambda_check)).value
    if np.all(model.phi.matrix >= 0.0):
        check = spectral_radius_check(radius, lambda_check)
    else:
        dominating = spectral_radius(abs(model.phi) @ dirichlet_map(model, lambda_check)).value
        check = spectral_radius_check(dominating, lambda_check)
    min_entry = float(np.min(triple.b_reg.matrix))
    positivity = HypothesisCheck('dirichlet_positivity', min_entry >= -DIRICHLET_POSITIVITY_SLACK, min_entry,
                                 'L_lambda0 is positive' if min_entry >= -DIRICHLET_POSITIVITY_SLACK
                                 else 'L_lambda0 has the negative entry {:.6g}'.format(min_entry))
    hypotheses = HypothesisReport(TheoremKind.AM, [positivity, check])
    report.hypothesis_report = hypotheses
    if not hypotheses.passed:
        failure = hypotheses.first_failure()
        logging.getLogger(LOGGER_NAME).error('boundary_generator: %s', failure.message)
        raise HypothesisFailed('boundary_generator', failure.message, failure.name, kind=TheoremKind.AM.value)

    lambdas = sorted({lambda_check, lambda0} | {row.lam for row in report.sweep})
    report.representation_difference = max(representation_check(model, triple, lam, resolvent_tol) for lam in lambdas)

    majorant = None
    if np.all(model.phi.matrix >= 0.0):
        semigroup = closed_loop_perturbed(triple, time_grid, hypotheses, eliminated_generator(model), TheoremKind.AM)
    else:
        split = DominatingSplit.from_triple(triple)
        signed, majorant = construct_dominated(triple, split, time_grid, rng=rng, lambda_check=lambda_check,
                                               check_times=check_times)
        semigroup = closed_loop_perturbed(triple, time_grid, hypotheses, eliminated_generator(model),
                                          TheoremKind.DOM)
        semigroup.diagnostics.extra.update(signed.diagnostics.extra)

    semigroup.diagnostics.r_feedback = radius
    logging.getLogger(LOGGER_NAME).info('boundary_generator: r(Phi L_lambda)=%s at lambda=%s, lambda*=%s',
                                        radius, lambda_check, report.lambda_star)
    return semigroup, report, majorant
