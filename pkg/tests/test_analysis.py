from itertools import combinations
from math import comb

import numpy as np
import pytest

from swapenum.analysis import (characterize_distribution, closeness_check,
                               code_distance, concurrence, distance_from_distribution,
                               distance_residual, estimate_linear, estimator_variance, f_coeff,
                               fixed_partition_measure, k_uniformity, monogamy_check,
                               monogamy_sums, residual_coefficients, robustness_bound,
                               sample_plan, sampled_tolerances, uniform_purity_profile,
                               unnormalized_shadow_sums)
from swapenum.enumerators import purities, rains_from_distribution
from swapenum.errors import InvariantViolation, ValidationError
from swapenum.states import basis_vector, ghz_vector, pure, random_density, random_pure_vector, w_vector
from swapenum.swap_test import analytic_distribution, estimate, sample
from swapenum.tables import code_distribution, code_state
from swapenum.tensor import SubsystemShape, mask_of


def q(n):
    return SubsystemShape.uniform(n, 2)


@pytest.mark.parametrize("name,pure_code", [("five-qubit", True), ("steane", True), ("shor", False)])
def test_code_distances(name, pure_code):
    cs = code_state(name)
    rep = code_distance(cs.rho, cs.K, cs.shape)
    assert rep.delta == 3
    assert rep.pure == pure_code
    assert not rep.degenerate
    assert rep.tolerance == 1e-9


def test_codewords_and_lemma_one():
    cs = code_state("five-qubit")
    vals, vecs = np.linalg.eigh(cs.projector)
    for psi in vecs[:, vals > 0.5].T:
        rho = pure(psi)
        k = k_uniformity(rho, cs.shape)
        assert k == 2
        assert code_distance(rho, 1, cs.shape).delta == k + 1
    ghz = pure(ghz_vector(4))
    assert k_uniformity(ghz, q(4)) == 1
    assert code_distance(ghz, 1, q(4)).delta == 2


def test_wrong_K_raises():
    dist = code_distribution("five-qubit")
    with pytest.raises(InvariantViolation):
        distance_from_distribution(dist, 3, 2)


def test_non_prefix_pattern_raises():
    dist = code_distribution("five-qubit")
    # weight-1 check forced to fail while weight 2 still passes
    with pytest.raises(InvariantViolation, match="after failing"):
        distance_from_distribution(dist, 2, 2, [1e-9, 0.0, 1e-9, 1e-9, 1e-9, 1e-9])


def test_degenerate_flag():
    rep = distance_from_distribution(code_distribution("five-qubit"), 2, 2, 10.0)
    assert rep.degenerate and rep.delta == 6 and not rep.pure


def test_check_code_state_rejects_non_projector(rng):
    with pytest.raises(ValidationError):
        code_distance(random_density(4, rng), 2, q(2))


def test_robustness_bound_value():
    assert robustness_bound(5, 2, 3, 0.01) == pytest.approx(4 * 3 * 10 * 0.01)


def test_closeness_check(rng):
    cs = code_state("five-qubit")
    rep = code_distance(cs.rho, cs.K, cs.shape)
    tau = random_density(32, rng)
    rho_p = 0.99 * cs.rho + 0.01 * tau
    assert closeness_check(rho_p, cs.rho, rep, cs.shape)
    assert abs(distance_residual(cs.rho, cs.shape, 2, 2)) < 1e-12


def test_k_uniformity_requires_pure(rng):
    with pytest.raises(ValidationError):
        k_uniformity(random_density(8, rng), q(3))


def test_bell_pair_is_one_uniform():
    assert k_uniformity(pure(ghz_vector(2)), q(2)) == 1
    assert k_uniformity(pure(basis_vector([0, 0, 1])), q(3)) == 0


def test_fixed_partition_measure_examples():
    singles = [mask_of([i], 4) for i in range(4)]
    assert fixed_partition_measure(pure(ghz_vector(4)), q(4), singles) == pytest.approx(0.5)
    assert fixed_partition_measure(pure(basis_vector([0] * 4)), q(4), singles) == pytest.approx(0)
    with pytest.raises(ValueError):
        fixed_partition_measure(pure(ghz_vector(4)), q(4), [])


def test_fixed_partition_measure_random(rng):
    shape = q(4)
    rho = pure(random_pure_vector(16, rng))
    fam = [mask_of(c, 4) for c in combinations(range(4), 2)]
    pur = purities(rho, shape)
    assert fixed_partition_measure(rho, shape, fam) == pytest.approx(1 - np.mean(pur[fam]), abs=1e-12)


def test_concurrence_bell():
    assert concurrence(pure(ghz_vector(2)), q(2), 0b10) == pytest.approx(1.0)


def test_monogamy_matches_brute_force(rng):
    n = 3
    rho = pure(random_pure_vector(8, rng))
    pur = purities(rho, q(n))
    c2 = 2 * (1 - pur)
    for T in range(1, 8):
        want = sum((-1) ** (S & T).bit_count() * c2[S] for S in range(8))
        assert monogamy_check(rho, q(n), T) == pytest.approx(want, abs=1e-12)
    assert np.allclose(monogamy_sums(pur)[1:], [monogamy_check(rho, q(n), T) for T in range(1, 8)])


def test_monogamy_empty_T():
    with pytest.raises(ValueError):
        monogamy_check(pure(w_vector(3)), q(3), 0)


@pytest.mark.parametrize("n", [3, 5, 6])
def test_f_coeff_brute_force(n):
    for k in range(n + 1):
        for w in range(n + 1):
            z = (1 << w) - 1
            want = sum((-1) ** (z & mask_of(c, n)).bit_count() for c in combinations(range(n), k))
            assert f_coeff(n, k, w) == want
        assert f_coeff(n, k, 0) == comb(n, k)


def test_residual_coefficients_reproduce_residual():
    dist = code_distribution("five-qubit")
    ap, bp = rains_from_distribution(dist)
    for j in range(6):
        assert estimate_linear(dist, residual_coefficients(5, 2, j)) == pytest.approx(2 * bp[j] - ap[j])


def test_constant_coefficients_have_zero_variance():
    dist = code_distribution("five-qubit")
    assert estimator_variance(dist, np.full(32, 3.0), 100) == pytest.approx(0, abs=1e-12)


def test_variance_matches_monte_carlo():
    dist = code_distribution("five-qubit")
    f = residual_coefficients(5, 2, 2)
    N = 10_000
    vals = [estimate_linear(estimate(sample(dist, N, seed)), f) for seed in range(200)]
    ratio = np.var(vals, ddof=1) / estimator_variance(dist, f, N)
    assert 0.7 <= ratio <= 1.4


def test_sample_plan():
    plan = sample_plan(5, 2, 2, 2, 0.05)
    assert plan.variance_bound == 900
    assert plan.shots == 360_000
    exact = sample_plan(5, 2, 2, 2, 0.05, code_distribution("five-qubit"))
    assert exact.shots <= plan.shots
    assert exact.to_dict()["j"] == 2
    with pytest.raises(ValueError):
        sample_plan(5, 2, 2, 2, 0)


def test_sampled_distance_scan():
    dist = code_distribution("five-qubit")
    est = estimate(sample(dist, 100_000, 11))
    tols = sampled_tolerances(est, 2, 100_000)
    rep = distance_from_distribution(est, 2, 2, tols)
    assert rep.delta == 3
    assert len(rep.tolerance) == 6


def test_characterize():
    prod_state = pure(basis_vector([0, 1, 0, 1]))
    assert characterize_distribution(analytic_distribution(prod_state, prod_state, q(4))).label == "is_product_pair"
    zeros, ones = pure(basis_vector([0] * 3)), pure(basis_vector([1] * 3))
    assert characterize_distribution(analytic_distribution(zeros, ones, q(3))).label == "is_orthogonal_supports"
    ghz = pure(ghz_vector(4))
    assert characterize_distribution(analytic_distribution(ghz, ghz, q(4))).label == "neither"


def test_uniform_purity_profile():
    prof = uniform_purity_profile(4, 2)
    assert prof[0] == 1 and prof[15] == 1 and prof[0b0011] == 0.25
    with pytest.raises(ValueError):
        uniform_purity_profile(4, 1)


def test_unnormalized_shadow_sums_match_distribution(rng):
    rho = random_density(8, rng)
    dist = analytic_distribution(rho, rho, q(3))
    sums = unnormalized_shadow_sums(purities(rho, q(3)))
    for T in range(8):
        assert sums[T] / 8 == pytest.approx(dist[7 ^ T])


def test_reports_serialize():
    cs = code_state("steane")
    d = code_distance(cs.rho, cs.K, cs.shape).to_dict()
    assert d["delta"] == 3 and "tolerance" in d
