# -*- coding: utf-8 -*-

import numpy as np
import pytest
import scipy.linalg

from conftest import make_triple, random_positive_triple
from lattice.grid_space import NormKind
from lattice.lattice_vector import LatticeVector
from operators.spectral import SpectralMethod, SpectralRadiusResult, resolvent
from systems.system_maps import laplace_transform
from systems.time_functions import TimeGrid, TimeGridFn
from theorems import hypotheses
from theorems.domination import (DominatingSplit, construct_dominated, dominating_triple, resolvent_power_domination,
                                 split_report, wlemma_inequality_check)
from theorems.hypotheses import TheoremKind, check_control_positivity, feedback_spectral_radius, hypothesis_report
from theorems.perturbed_semigroup import (construct_perturbed, factorization_deviation, resolvent_factorization,
                                          vp_residual)
from utils.numerical_errors import HypothesisFailed

ORACLE_TIMES = [0.25, 0.5, 1.0, 2.0]


@pytest.fixture
def signed_triple():
    return make_triple([[-2.0, 0.5], [0.5, -2.0]], [[1.0], [0.0]], [[0.5, -0.5]])


def test_scalar_triple_matches_the_exponential(scalar_triple):
    perturbed = construct_perturbed(scalar_triple, TheoremKind.AM, TimeGrid(2.0, 2000))
    assert perturbed.evaluate(0.0).matrix[0, 0] == pytest.approx(1.0, abs=1e-10)
    assert perturbed.evaluate(1.0).matrix[0, 0] == pytest.approx(np.exp(-1.0), abs=1e-6)
    assert perturbed.diagnostics.r_feedback == pytest.approx(0.5)


def test_benchmark_triple_matches_the_exponential(benchmark_triple):
    perturbed = construct_perturbed(benchmark_triple, TheoremKind.AM, TimeGrid(2.0, 2000))
    assert perturbed.oracle_deviation(benchmark_triple, ORACLE_TIMES) <= 1e-6
    assert perturbed.min_entry() >= -1e-10


def test_random_triple_matches_the_exponential(rng):
    triple = random_positive_triple(rng, 6, radius=0.6)
    perturbed = construct_perturbed(triple, TheoremKind.AM, TimeGrid(2.0, 2000), rng=rng)
    assert perturbed.oracle_deviation(triple, ORACLE_TIMES) <= 1e-6
    assert perturbed.semigroup_law_defect([0.5, 1.0]) <= 1e-6


@pytest.mark.slow
def test_seeded_random_triples_match_the_exponential():
    rng = np.random.default_rng(7)
    for _ in range(25):
        dim = int(rng.integers(2, 13))
        triple = random_positive_triple(rng, dim, radius=float(rng.uniform(0.2, 0.8)))
        perturbed = construct_perturbed(triple, TheoremKind.AM, TimeGrid(2.0, 2000), rng=rng)
        assert perturbed.oracle_deviation(triple, ORACLE_TIMES) <= 1e-6


def test_al_space_triple():
    triple = make_triple([[-2.0]], [[1.0]], [[1.0]], x_norm=NormKind.L1, u_norm=NormKind.L1)
    perturbed = construct_perturbed(triple, TheoremKind.AL, TimeGrid(1.0, 1000))
    assert perturbed.evaluate(1.0).matrix[0, 0] == pytest.approx(np.exp(-1.0), abs=1e-6)


def test_growing_triple_is_rescaled():
    triple = make_triple([[0.5]], [[1.0]], [[0.2]], lambda0=2.0)
    perturbed = construct_perturbed(triple, TheoremKind.AM, TimeGrid(1.0, 1000))
    assert perturbed.diagnostics.rescale_shift == pytest.approx(1.5)
    assert perturbed.evaluate(1.0).matrix[0, 0] == pytest.approx(np.exp(0.7), rel=1e-6)


def test_large_feedback_fails_the_spectral_radius_hypothesis():
    triple = make_triple([[-1.0]], [[1.0]], [[1.2]])
    with pytest.raises(HypothesisFailed) as error:
        construct_perturbed(triple, TheoremKind.AM, TimeGrid(1.0, 100))
    assert error.value.hypothesis == 'spectral_radius'
    assert error.value.exit_code == 2


def test_signed_triple_needs_the_domination_route(signed_triple):
    with pytest.raises(HypothesisFailed) as error:
        construct_perturbed(signed_triple, TheoremKind.AM, TimeGrid(1.0, 100))
    assert error.value.hypothesis == 'observation_positivity'
    with pytest.raises(ValueError):
        construct_perturbed(signed_triple, TheoremKind.DOM, TimeGrid(1.0, 100))


def test_control_positivity_is_sampled(benchmark_triple, rng):
    assert check_control_positivity(benchmark_triple, [1.0, 2.0, 5.0], rng=rng)
    signed = make_triple(benchmark_triple.a.matrix, [[1.0], [-1.0]], [[0.5, 0.5]])
    assert not check_control_positivity(signed, [1.0], rng=rng)


def test_feedback_spectral_radius_decreases_in_lambda(scalar_triple):
    assert feedback_spectral_radius(scalar_triple, 0.0) == pytest.approx(0.5)
    assert feedback_spectral_radius(scalar_triple, 2.0) == pytest.approx(0.25)


def test_growing_feedback_spectral_radius_is_rejected(scalar_triple, monkeypatch):
    radii = iter([0.6, 0.5])
    monkeypatch.setattr(hypotheses, 'spectral_radius', lambda operator: SpectralRadiusResult(next(radii), SpectralMethod.EIGEN))
    with pytest.raises(HypothesisFailed) as error:
        feedback_spectral_radius(scalar_triple, 2.0)
    assert error.value.hypothesis == 'radius_monotonicity'
    assert error.value.exit_code == 2


def test_hypotheses_name_the_u_space(scalar_triple):
    report = hypothesis_report(scalar_triple, TheoremKind.AL)
    assert not report.passed
    assert report.first_failure().name == 'u_space'
    assert hypothesis_report(scalar_triple, TheoremKind.AM).passed


def test_rn_hypotheses_probe_admissibility(scalar_triple, rng):
    report = hypothesis_report(scalar_triple, TheoremKind.RN, rng=rng, p=2.0)
    assert report.passed
    assert report.get('admissibility').passed
    assert report.as_dict()['kind'] == 'RN'


def test_resolvent_factorization_inverts_the_closed_loop():
    rng = np.random.default_rng(5)
    for _ in range(25):
        dim = int(rng.integers(2, 13))
        triple = random_positive_triple(rng, dim, radius=float(rng.uniform(0.2, 0.8)))
        factorized = resolvent_factorization(triple, 1.0)
        direct = resolvent(triple.closed_loop_matrix(), 1.0)
        assert np.allclose(factorized.matrix, direct.matrix, rtol=0.0, atol=1e-8)
        assert factorization_deviation(triple, 1.0) <= 1e-8


@pytest.mark.parametrize('name', ['scalar_triple', 'benchmark_triple'])
def test_laplace_transform_of_the_orbit_is_the_factorized_resolvent(request, name):
    triple = request.getfixturevalue(name)
    perturbed = construct_perturbed(triple, TheoremKind.AM, TimeGrid(20.0, 4000))
    x = np.linspace(1.0, 0.5, triple.x_space.dim)
    orbit = TimeGridFn(perturbed.time_grid.times, perturbed.trajectory(x), triple.x_space)
    for lam in (0.5, 1.0, 2.0):
        expected = resolvent_factorization(triple, lam).matrix @ x
        deviation = np.max(np.abs(laplace_transform(orbit, lam) - expected))
        assert deviation <= 1e-3 * np.max(np.abs(expected))


def test_resolvent_factorization_needs_a_small_feedback():
    with pytest.raises(HypothesisFailed):
        resolvent_factorization(make_triple([[-1.0]], [[1.0]], [[1.2]]), 0.0)


def test_variation_of_parameters_residual(benchmark_triple):
    grid = TimeGrid(1.0, 200)
    perturbed = construct_perturbed(benchmark_triple, TheoremKind.AM, grid)
    x = LatticeVector(benchmark_triple.x_space, [1.0, 0.5])
    assert vp_residual(perturbed, benchmark_triple, x, 1.0) < 1e-8

    step = scipy.linalg.expm(grid.step * benchmark_triple.closed_loop_matrix().matrix)
    oracle = [x.values]
    for _ in range(grid.steps):
        oracle.append(step @ oracle[-1])
    assert vp_residual(perturbed, benchmark_triple, x, 1.0, np.array(oracle)) < 1e-4


def test_domination_of_a_signed_triple(signed_triple, rng):
    split = DominatingSplit.from_triple(signed_triple)
    s, s_tilde = construct_dominated(signed_triple, split, TimeGrid(1.0, 1000), rng=rng, check_times=[0.5, 1.0])
    for t in (0.5, 1.0):
        assert np.all(np.abs(s.evaluate(t).matrix) <= s_tilde.evaluate(t).matrix + 1e-6)
    assert s.evaluate(1.0).matrix == pytest.approx(signed_triple.closed_loop_semigroup(1.0).matrix)
    assert s.diagnostics.extra['oracle_deviation_tilde'] <= 1e-6


def test_split_must_dominate_the_observation(signed_triple, rng):
    split = DominatingSplit.from_triple(signed_triple)
    weak = DominatingSplit(split.b_plus, split.b_minus, split.c_tilde * 0.5)
    report = split_report(signed_triple, weak, rng=rng)
    assert report.first_failure().name == 'observation_domination'
    with pytest.raises(HypothesisFailed):
        construct_dominated(signed_triple, weak, TimeGrid(1.0, 100), rng=rng)


def test_dominating_triple_is_positive(signed_triple):
    dominating = dominating_triple(signed_triple, DominatingSplit.from_triple(signed_triple))
    assert dominating.is_positive(1e-12)
    assert np.allclose(dominating.c.matrix, [[0.5, 0.5]])


def test_resolvent_powers_are_dominated(signed_triple):
    report = resolvent_power_domination(signed_triple, DominatingSplit.from_triple(signed_triple), 1.0)
    assert report.holds
    assert len(report.norms) == 6


@pytest.mark.slow
def test_seeded_signed_triples_are_dominated():
    rng = np.random.default_rng(11)
    for _ in range(20):
        dim = int(rng.integers(2, 9))
        base = random_positive_triple(rng, dim, u_dim=int(rng.integers(1, 3)))
        u_dim = base.u_space.dim
        signs_b = rng.choice([-1.0, 1.0], size=(dim, u_dim))
        signs_c = rng.choice([-1.0, 1.0], size=(u_dim, dim))
        signs_b[0, 0] = signs_c[0, -1] = -1.0
        signed = make_triple(base.a.matrix, signs_b * base.unregularized_control().matrix, signs_c * base.c.matrix)
        split = DominatingSplit.from_triple(signed)

        s, s_tilde = construct_dominated(signed, split, TimeGrid(1.0, 1000), rng=rng, domination_tol=1e-8,
                                         check_times=[0.5, 1.0])
        dominating = dominating_triple(signed, split)
        for t in (0.5, 1.0):
            majorant = dominating.closed_loop_semigroup(t).matrix
            assert np.all(np.abs(s.evaluate(t).matrix) <= majorant + 1e-8)
            assert np.allclose(s_tilde.evaluate(t).matrix, majorant, rtol=0.0, atol=1e-6)
        assert resolvent_power_domination(signed, split, 1.0).holds


def test_signed_compositions_are_dominated(rng):
    for _ in range(5):
        base = random_positive_triple(rng, 4)
        signs = rng.choice([-1.0, 1.0], size=base.c.matrix.shape)
        signed = make_triple(base.a.matrix, base.unregularized_control().matrix, signs * base.c.matrix)
        report = wlemma_inequality_check(signed, DominatingSplit.from_triple(signed), [0.5, 1.0, 5.0], rng)
        assert report.holds
