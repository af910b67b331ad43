"""Tests for the convex-roof coordinate-descent optimizer."""
import math

import numpy as np
import pytest

from qconc import (
    DensityMatrix,
    eof_pure,
    from_coefficients,
    generalized_concurrence_D,
    pure_density,
    random_form_a_mixture,
)
from qconc.errors import NotIsometry, OutOfRange, ProfileMismatch
from qconc.mixed import d_lower_bound, eigen_vectors_subnormalized, eof_lower_bound
from qconc.roofopt import (
    AverageD,
    AverageE,
    RoofProblem,
    average_objective,
    certify_bound,
    minimize_roof,
    transform_decomposition,
)
from qconc.sampling import generator, random_form_a_state, random_pure
from qconc.spectra import eof_of_d

BELL = from_coefficients(np.eye(2) / np.sqrt(2))


def werner(p):
    phi = pure_density(BELL).matrix
    return DensityMatrix(2, p * phi + (1.0 - p) * np.eye(4) / 4.0)


def test_transform_identity_recovers_eigendecomposition():
    rho = random_form_a_mixture(3, 81)
    vecs = eigen_vectors_subnormalized(rho)
    dec = transform_decomposition(vecs, np.eye(len(vecs)))
    eigvals = sorted(float(np.vdot(v, v).real) for v in vecs)
    assert sorted(dec.weights()) == pytest.approx(eigvals, abs=1e-12)
    np.testing.assert_allclose(dec.density(), rho.matrix, atol=1e-10)


def test_transform_rejects_non_isometry():
    rho = random_form_a_mixture(2, 82)
    vecs = eigen_vectors_subnormalized(rho)
    with pytest.raises(NotIsometry):
        transform_decomposition(vecs, np.ones((2, 2)))
    with pytest.raises(NotIsometry):
        transform_decomposition(vecs, np.eye(1, 2))


def test_transform_taller_isometry_reconstructs():
    rng = generator(83)
    rho = random_form_a_mixture(3, 84)
    vecs = eigen_vectors_subnormalized(rho)
    r = len(vecs)
    g = rng.standard_normal((r + 1, r)) + 1j * rng.standard_normal((r + 1, r))
    iso, _ = np.linalg.qr(g)
    dec = transform_decomposition(vecs, iso)
    np.testing.assert_allclose(dec.density(), rho.matrix, atol=1e-9)
    assert abs(math.fsum(dec.weights()) - 1.0) < 1e-10


def test_transform_permutation_preserves_weights():
    rho = random_form_a_mixture(3, 85)
    vecs = eigen_vectors_subnormalized(rho)
    perm = np.eye(len(vecs))[::-1]
    dec = transform_decomposition(vecs, perm)
    base = transform_decomposition(vecs, np.eye(len(vecs)))
    assert sorted(dec.weights()) == pytest.approx(sorted(base.weights()), abs=1e-12)


def test_average_objective_values():
    rng = generator(86)
    psi = random_pure(2, rng)
    single = transform_decomposition(
        eigen_vectors_subnormalized(pure_density(psi)), np.eye(1)
    )
    assert abs(average_objective(single, AverageE()) - eof_pure(psi)) < 1e-12

    rho = random_form_a_mixture(3, 87)
    dec = transform_decomposition(
        eigen_vectors_subnormalized(rho), np.eye(3)
    )
    manual = math.fsum(
        p * generalized_concurrence_D(psi, 1, 2) for p, psi in dec.members
    )
    assert abs(average_objective(dec, AverageD(1, 2)) - manual) < 1e-12


def test_average_objective_profile_mismatch():
    rng = generator(88)
    psi = random_pure(3, rng)  # generic spectrum: not two-value
    dec = transform_decomposition(
        eigen_vectors_subnormalized(pure_density(psi)), np.eye(1)
    )
    with pytest.raises(ProfileMismatch):
        average_objective(dec, AverageD(1, 2))
    with pytest.raises(OutOfRange):
        average_objective(dec, "not-an-objective")


def test_roof_problem_validation():
    rho = werner(0.5)
    with pytest.raises(OutOfRange):
        RoofProblem(target=rho, objective=AverageE(), restarts=0)
    with pytest.raises(OutOfRange):
        RoofProblem(target=rho, objective=AverageE(), tol=0.0)
    with pytest.raises(OutOfRange):
        minimize_roof(RoofProblem(target=rho, objective=AverageE(), t_max=2))


def test_roof_on_pure_state_returns_its_entropy():
    rng = generator(89)
    psi = random_pure(2, rng)
    result = minimize_roof(
        RoofProblem(target=pure_density(psi), objective=AverageE(), restarts=2)
    )
    assert abs(result.value - eof_pure(psi)) < 1e-9
    assert result.converged


def test_roof_werner_entanglement_of_formation():
    """Known two-qubit mixed-state value: E at concurrence 1/4."""
    result = minimize_roof(
        RoofProblem(
            target=werner(0.5),
            objective=AverageE(),
            t_max=4,
            restarts=2,
            tol=1e-7,
            max_sweeps=40,
        )
    )
    assert abs(result.value - eof_of_d(0.25, 1)) < 2e-4


def test_roof_trace_is_monotone_and_result_consistent():
    rho = random_form_a_mixture(2, 90)
    problem = RoofProblem(
        target=rho, objective=AverageD(1, 2), t_max=2, restarts=2, max_sweeps=30
    )
    result = minimize_roof(problem)
    assert all(b <= a + 1e-12 for a, b in zip(result.trace, result.trace[1:]))
    np.testing.assert_allclose(result.decomposition.density(), rho.matrix, atol=1e-8)
    assert abs(result.value - average_objective(result.decomposition, AverageD(1, 2))) < 1e-10


def test_roof_is_reproducible_bit_for_bit():
    rho = random_form_a_mixture(2, 91)
    problem = RoofProblem(
        target=rho, objective=AverageD(1, 2), t_max=3, restarts=3, max_sweeps=20
    )
    first = minimize_roof(problem)
    second = minimize_roof(problem)
    assert first.value == second.value
    assert first.trace == second.trace
    assert first.iterations == second.iterations


def test_roof_dominates_closed_form_bound():
    rho = random_form_a_mixture(2, 92)
    bound = d_lower_bound(rho, 1, 2)
    result = minimize_roof(
        RoofProblem(
            target=rho, objective=AverageD(1, 2), t_max=2, restarts=2,
            tol=1e-7, max_sweeps=30,
        )
    )
    assert result.value >= bound - 1e-6
    e_bound = eof_lower_bound(rho, 1, 2)
    e_result = minimize_roof(
        RoofProblem(
            target=rho, objective=AverageE(), t_max=2, restarts=2,
            tol=1e-7, max_sweeps=30,
        )
    )
    assert e_result.value >= e_bound - 1e-6
    assert 0.0 < e_bound <= max(eof_pure(psi) for _, psi in e_result.decomposition.members) + 1e-9


def test_certify_bound_werner():
    report = certify_bound(werner(0.5), 1, 2, restarts=2, t_max=4, max_sweeps=40, tol=1e-7)
    assert abs(report.bound - 0.25) < 1e-10
    assert report.gap >= -1e-6
    assert not report.violation


def test_certify_bound_pure_form_a():
    rng = generator(93)
    psi = random_form_a_state(rng)
    report = certify_bound(pure_density(psi), 1, 2, restarts=2, t_max=1, max_sweeps=20)
    assert abs(report.gap) < 1e-7
    assert not report.violation
