# -*- coding: utf-8 -*-

"""
Signed triples dominated by a positive triple (B_+ + B_-, C~).
"""

import logging
from dataclasses import dataclass, field
from typing import List, Iterable, Tuple

import numpy as np

from operators.lin_op import LinOp
from operators.order import domination_check, op_positivity_check, jordan_split, MODULUS_PROBE_COUNT
from operators.spectral import resolvent, spectral_radius
from systems.time_functions import TimeGrid
from systems.triple import TripleSpec, RegularizedControl
from theorems import LOGGER_NAME
from theorems.hypotheses import TheoremKind, HypothesisCheck, HypothesisReport, spectral_radius_check
from theorems.perturbed_semigroup import PerturbedSemigroup, construct_perturbed, closed_loop_perturbed, rescaled
from utils.constants import DEFAULT_PICARD_TOLERANCE, DEFAULT_DOMINATION_TOLERANCE, DEFAULT_POSITIVITY_TOLERANCE
from utils.numerical_errors import HypothesisFailed, DominationViolated

# Slack of the norm and spectral radius inequalities
DOMINATION_SLACK = 1e-8

# Highest resolvent power compared by resolvent_power_domination
RESOLVENT_POWER_MAX = 6


@dataclass(frozen=True)
class DominatingSplit:
    """
    Control matrices B_+, B_- >= 0 with B = B_+ - B_- and a positive C~ with |Cx| <= C~x.

    The controls are unregularized, (lambda0 - A) B_reg on the discrete level.
    """
    b_plus: LinOp
    b_minus: LinOp
    c_tilde: LinOp

    @classmethod
    def from_triple(cls, triple: TripleSpec) -> 'DominatingSplit':
        """The Jordan split of the control and the modulus of the observation"""
        b_plus, b_minus = jordan_split(triple.unregularized_control())
        return cls(b_plus, b_minus, abs(triple.c))


def dominating_triple(triple: TripleSpec, split: DominatingSplit) -> TripleSpec:
    """The positive triple (A, B_+ + B_-, C~) with the lambda0 of the signed triple"""
    b_tilde = split.b_plus + split.b_minus
    control = RegularizedControl.from_unregularized(triple.a, b_tilde, triple.lambda0)
    return triple.replace(control=control, observation=split.c_tilde)


def split_report(triple: TripleSpec,
                 split: DominatingSplit,
                 lambda_check: float = 0.0,
                 tol: float = DEFAULT_POSITIVITY_TOLERANCE,
                 rng: np.random.Generator or None = None) -> HypothesisReport:
    """Checks the hypotheses of the domination theorem on a triple with negative growth bound"""
    if rng is None:
        rng = np.random.default_rng(0)
    checks = []

    control = triple.unregularized_control().matrix
    mismatch = float(np.max(np.abs(control - (split.b_plus.matrix - split.b_minus.matrix)), initial=0.0))
    scale = max(1.0, float(np.max(np.abs(control), initial=0.0)))
    checks.append(HypothesisCheck('split', mismatch <= 1e-12 * scale, mismatch,
                                  'B == B_+ - B_-' if mismatch <= 1e-12 * scale
                                  else 'B differs from B_+ - B_- by {:.6g}'.format(mismatch)))

    minimum = np.inf
    for lam in sorted({lambda_check, triple.lambda0}):
        r = resolvent(triple.a, lam)
        for part in (split.b_plus, split.b_minus):
            minimum = min(minimum, op_positivity_check(r @ part, tol, rng).min_entry)
    passed = minimum >= -tol
    checks.append(HypothesisCheck('control_positivity', passed, float(minimum),
                                  'R(lambda, A_-1) B_+ and R(lambda, A_-1) B_- are positive' if passed
                                  else 'R(lambda, A_-1) B_+- has the negative entry {:.6g}'.format(minimum)))

    c, c_tilde = triple.c.matrix, split.c_tilde.matrix
    excess = float(np.max(np.abs(c) - c_tilde, initial=0.0))
    for _ in range(MODULUS_PROBE_COUNT):
        x = rng.random(triple.x_space.dim)
        excess = max(excess, float(np.max(np.abs(c @ x) - c_tilde @ x, initial=0.0)))
    passed = excess <= tol and bool(np.all(c_tilde >= -tol))
    checks.append(HypothesisCheck('observation_domination', passed, excess,
                                  '|Cx| <= C~x' if passed else '|Cx| exceeds C~x by {:.6g}'.format(excess)))

    radius = spectral_radius(dominating_triple(triple, split).feedback_operator(lambda_check)).value
    checks.append(spectral_radius_check(radius, lambda_check))
    return HypothesisReport(TheoremKind.DOM, checks)


@dataclass(frozen=True)
class ResolventPowerReport:
    lam: float
    norms: List[float]
    tilde_norms: List[float]

    @property
    def holds(self) -> bool:
        return all(n <= m + DOMINATION_SLACK for n, m in zip(self.norms, self.tilde_norms))


def resolvent_power_domination(triple: TripleSpec,
                               split: DominatingSplit,
                               lam: float,
                               n_max: int = RESOLVENT_POWER_MAX) -> ResolventPowerReport:
    """Compares ||R(lam, A_BC)^n|| with ||R(lam, A_B~C~)^n|| for n = 1..n_max"""
    signed = resolvent(triple.closed_loop_matrix(), lam)
    positive = resolvent(dominating_triple(triple, split).closed_loop_matrix(), lam)

    norms, tilde_norms = [], []
    power, tilde_power = signed, positive
    for _ in range(n_max):
        norms.append(power.lattice_norm())
        tilde_norms.append(tilde_power.lattice_norm())
        power, tilde_power = power @ signed, tilde_power @ positive

    report = ResolventPowerReport(lam, norms, tilde_norms)
    if not report.holds:
        logging.getLogger(LOGGER_NAME).error('resolvent_power_domination: %s exceed %s at lambda=%s.',
                                             norms, tilde_norms, lam)
    return report


@dataclass(frozen=True)
class WLemmaRow:
    lam: float
    observation: Tuple[float, float]
    control: Tuple[float, float]
    feedback: Tuple[float, float]
    radius: Tuple[float, float]

    @property
    def holds(self) -> bool:
        pairs = (self.observation, self.control, self.feedback, self.radius)
        return all(left <= right + DOMINATION_SLACK for left, right in pairs)


@dataclass(frozen=True)
class WLemmaReport:
    rows: List[WLemmaRow] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(row.holds for row in self.rows)


def _norm_pair(signed: LinOp, positive: LinOp, rng: np.random.Generator) -> Tuple[float, float]:
    """A lower bound of ||signed|| against an upper bound of ||positive||"""
    return signed.norm_estimate(rng).lower_bound, positive.norm_estimate(rng).estimate


def wlemma_inequality_check(triple: TripleSpec,
                            split: DominatingSplit,
                            lambda_samples: Iterable[float],
                            rng: np.random.Generator or None = None) -> WLemmaReport:
    """Compares the signed compositions with their dominating counterparts at every sampled lam

    ||C R(lam, A)|| <= ||C~ R(lam, A)||, ||R(lam, A_-1) B|| <= ||R(lam, A_-1) B~||,
    ||C R(lam, A_-1) B|| <= ||C~ R(lam, A_-1) B~|| and r(C R(lam, A_-1) B) <= r(C~ R(lam, A_-1) B~).

    :param TripleSpec triple: The signed triple
    :param DominatingSplit split: The dominating split
    :param Iterable[float] lambda_samples: Points above the growth bound
    :param np.random.Generator rng: The generator of the norm probes
    :return: One row per point
    :rtype: WLemmaReport
    """
    if rng is None:
        rng = np.random.default_rng(0)
    dominating = dominating_triple(triple, split)
    rows = []
    for lam in lambda_samples:
        rows.append(WLemmaRow(
            float(lam),
            _norm_pair(triple.observation_resolvent(lam), dominating.observation_resolvent(lam), rng),
            _norm_pair(triple.control_resolvent(lam), dominating.control_resolvent(lam), rng),
            _norm_pair(triple.feedback_operator(lam), dominating.feedback_operator(lam), rng),
            (spectral_radius(triple.feedback_operator(lam)).value,
             spectral_radius(dominating.feedback_operator(lam)).value)))
    report = WLemmaReport(rows)
    if not report.holds:
        logging.getLogger(LOGGER_NAME).warning('wlemma_inequality_check: failing rows %s',
                                               [row for row in rows if not row.holds])
    return report


def construct_dominated(triple: TripleSpec,
                        split: DominatingSplit,
                        time_grid: TimeGrid,
                        tol: float = DEFAULT_PICARD_TOLERANCE,
                        rng: np.random.Generator or None = None,
                        lambda_check: float = 0.0,
                        kind: TheoremKind = TheoremKind.AM,
                        domination_tol: float = DEFAULT_DOMINATION_TOLERANCE,
                        check_times: List[float] or None = None,
                        p: float or None = None) -> Tuple[PerturbedSemigroup, PerturbedSemigroup]:
    """Builds the signed semigroup S and its positive majorant S~

    S~ is constructed from the dominating triple by the variation of parameters formula. S is taken from the
    closed loop exponentials. |S(t)| <= exp(t A_B~C~) + domination_tol is checked entrywise at every grid time,
    the full domination check at check_times, and the resolvent and resolvent power domination at lambda_check.

    :param TripleSpec triple: The signed triple
    :param DominatingSplit split: The dominating split
    :param TimeGrid time_grid: The time grid
    :param float tol: The Picard tolerance of S~
    :param np.random.Generator rng: The generator of the probes
    :param float lambda_check: The point of the spectral radius check, in rescaled coordinates
    :param TheoremKind kind: The theorem S~ is constructed with
    :param float domination_tol: Entry slack of the domination checks
    :param List[float] check_times: Grid times of the full domination check, t_end / 2 and t_end by default
    :param float p: The admissibility exponent when kind is RN
    :return: S and S~
    :rtype: Tuple[PerturbedSemigroup, PerturbedSemigroup]
    """
    if rng is None:
        rng = np.random.default_rng(0)
    scaled, mu = rescaled(triple)
    report = split_report(scaled, split, lambda_check, rng=rng)
    if not report.passed:
        failure = report.first_failure()
        logging.getLogger(LOGGER_NAME).error('construct_dominated: %s', failure.message)
        raise HypothesisFailed('construct_dominated', failure.message, failure.name, kind=TheoremKind.DOM.value)

    dominating = dominating_triple(triple, split)
    s_tilde = construct_perturbed(dominating, kind, time_grid, tol, rng, lambda_check, p)
    s = closed_loop_perturbed(triple, time_grid, report)
    oracle = closed_loop_perturbed(dominating, time_grid, report)

    excess = float(np.max(np.abs(s.grid_matrices()) - oracle.grid_matrices()))
    if excess > domination_tol:
        logging.getLogger(LOGGER_NAME).error('construct_dominated: |S(t)| exceeds S~(t) by %s.', excess)
        raise DominationViolated('construct_dominated', '|S(t)| exceeds S~(t) by {}.'.format(excess),
                                 excess=excess)

    if check_times is None:
        check_times = [time_grid.t_end / 2.0, time_grid.t_end]
    for t in check_times:
        domination = domination_check(s.evaluate(t), oracle.evaluate(t), domination_tol, rng)
        if not domination:
            logging.getLogger(LOGGER_NAME).error('construct_dominated: domination fails at t=%s: %s', t, domination)
            raise DominationViolated('construct_dominated', 'Domination fails at t={}: {}'.format(t, domination),
                                     t=t)

    lam = lambda_check + mu
    resolvents = domination_check(resolvent(triple.closed_loop_matrix(), lam),
                                  resolvent(dominating.closed_loop_matrix(), lam), domination_tol, rng)
    powers = resolvent_power_domination(triple, split, lam)
    if not resolvents.dominated or not powers.holds:
        logging.getLogger(LOGGER_NAME).error('construct_dominated: resolvent domination fails at lambda=%s.', lam)
        raise DominationViolated('construct_dominated', 'Resolvent domination fails at lambda={}.'.format(lam),
                                 lam=lam)

    s.diagnostics.extra.update({'domination_excess': excess,
                                'resolvent_domination_excess': resolvents.max_excess,
                                'oracle_deviation_tilde': s_tilde.oracle_deviation(dominating, check_times)})
    logging.getLogger(LOGGER_NAME).info('construct_dominated: domination holds, excess %s', excess)
    return s, s_tilde

