import math

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from swapenum import serialize
from swapenum.analysis import (estimate_linear, estimator_variance, fixed_partition_measure,
                               residual_coefficients)
from swapenum.codes import centralizer, group_elements, named_code, shadow_set, weight_counts
from swapenum.enumerators import (enumerators_from_distribution, purities, rains_direct,
                                  shadow_direct, shadow_enumerator, shor_laflamme_direct,
                                  shor_laflamme_from_rains)
from swapenum.pauli import parse_pauli
from swapenum.states import ensemble_of, pure, random_density, random_pure_vector
from swapenum.swap_test import analytic_distribution, estimate, sample
from swapenum.tables import code_distribution, code_state
from swapenum.tensor import SubsystemShape, eigvalsh, fwht_signed, hs_inner, partial_trace

PROPS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

seeds = st.integers(0, 2**32 - 1)
dims_lists = st.lists(st.integers(2, 3), min_size=1, max_size=3)


def qubits(n):
    return SubsystemShape.uniform(n, 2)


@PROPS
@given(dims_lists, seeds, st.data())
def test_partial_trace_preserves_trace_and_positivity(dims, seed, data):
    shape = SubsystemShape(tuple(dims))
    rho = random_density(shape.total_dim, np.random.default_rng(seed))
    keep = data.draw(st.integers(0, (1 << shape.n) - 1))
    red = partial_trace(rho, shape, keep)
    assert abs(np.trace(red) - 1) < 1e-12
    assert eigvalsh(red)[0] >= -1e-10


@PROPS
@given(st.integers(1, 3), st.integers(2, 3), seeds, st.integers(1, 6))
def test_purity_bounds(n, d, seed, rank):
    shape = SubsystemShape.uniform(n, d)
    rho = random_density(shape.total_dim, np.random.default_rng(seed), min(rank, shape.total_dim))
    for T in range(1 << n):
        red = partial_trace(rho, shape, T)
        pur = hs_inner(red, red)
        assert d ** -T.bit_count() - 1e-12 <= pur <= 1 + 1e-10


@PROPS
@given(st.integers(1, 10), seeds, st.floats(-3, 3))
def test_fwht_linear_and_self_inverse(n, seed, c):
    rng = np.random.default_rng(seed)
    u, v = rng.normal(size=1 << n), rng.normal(size=1 << n)
    assert np.allclose(fwht_signed(u + c * v), fwht_signed(u) + c * fwht_signed(v))
    assert np.allclose(fwht_signed(fwht_signed(u)) / (1 << n), u)


@given(st.integers(1, 12))
def test_fwht_of_ones_is_exact_delta(n):
    out = fwht_signed(np.ones(1 << n, dtype=np.int64))
    assert out[0] == 1 << n
    assert not np.any(out[1:])


@given(st.sampled_from(["", "+", "-", "i", "-i"]), st.text("IXYZ", min_size=1, max_size=12))
def test_pauli_parse_format_round_trip(prefix, body):
    text = prefix + body
    canonical = {"+": ""}.get(prefix, prefix) + body
    assert str(parse_pauli(text)) == canonical
    assert parse_pauli(str(parse_pauli(text))) == parse_pauli(text)


@PROPS
@given(st.integers(2, 16), seeds, st.integers(1, 16))
def test_ensemble_reconstructs(dim, seed, rank):
    rho = random_density(dim, np.random.default_rng(seed), min(rank, dim))
    assert np.allclose(ensemble_of(rho).density(), rho, atol=1e-9)


@PROPS
@given(st.integers(2, 4), seeds, st.booleans(), st.booleans())
def test_normalization_and_shadow_inequalities(n, seed, rho_pure, sigma_pure):
    rng = np.random.default_rng(seed)
    dim = 1 << n
    rho = random_density(dim, rng, 1 if rho_pure else None)
    sigma = random_density(dim, rng, 1 if sigma_pure else None)
    p = analytic_distribution(rho, sigma, qubits(n)).p
    assert abs(p.sum() - 1) < 1e-10
    assert p.min() >= -1e-10


@PROPS
@given(st.integers(1, 4), seeds)
def test_product_state_self_test_gives_zero_outcome(n, seed):
    rng = np.random.default_rng(seed)
    psi = np.array([1.0 + 0j])
    for _ in range(n):
        psi = np.kron(psi, random_pure_vector(2, rng))
    rho = pure(psi)
    assert abs(analytic_distribution(rho, rho, qubits(n))[0] - 1) < 1e-10


@PROPS
@given(st.integers(2, 4), seeds)
def test_entangled_self_test_has_p0_below_one(n, seed):
    rho = pure(random_pure_vector(1 << n, np.random.default_rng(seed)))
    assert analytic_distribution(rho, rho, qubits(n))[0] < 1 - 1e-6


@PROPS
@given(st.integers(1, 4), seeds)
def test_sitewise_orthogonal_pair_gives_uniform(n, seed):
    rng = np.random.default_rng(seed)
    psi = phi = np.array([1.0 + 0j])
    for _ in range(n):
        a = random_pure_vector(2, rng)
        b = np.array([-a[1].conjugate(), a[0].conjugate()])
        psi, phi = np.kron(psi, a), np.kron(phi, b)
    p = analytic_distribution(pure(psi), pure(phi), qubits(n)).p
    assert np.allclose(p, 1 / (1 << n), atol=1e-10)


@PROPS
@given(seeds, st.integers(1, 8))
def test_macwilliams_self_consistency(seed, rank):
    rho = random_density(8, np.random.default_rng(seed), rank)
    ap, bp = rains_direct(rho, qubits(3))
    A, B = shor_laflamme_from_rains(ap, bp, 2, 3)
    Ad, Bd = shor_laflamme_direct(rho)
    assert np.allclose(A, Ad, atol=1e-9) and np.allclose(B, Bd, atol=1e-9)


@PROPS
@given(st.integers(1, 4), seeds)
def test_rains_duality_is_exact(n, seed):
    rho = random_density(1 << n, np.random.default_rng(seed))
    e = enumerators_from_distribution(analytic_distribution(rho, rho, qubits(n)), 1, 2)
    assert np.array_equal(e.Bprime, e.Aprime[::-1])


@PROPS
@given(st.integers(2, 4), seeds, st.data())
def test_lemma3_shadow_direct(n, seed, data):
    rho = random_density(1 << n, np.random.default_rng(seed))
    T = data.draw(st.integers(0, (1 << n) - 1))
    dist = analytic_distribution(rho, rho, qubits(n))
    assert abs(shadow_direct(rho, T) - shadow_enumerator(dist, T)) < 1e-9


@PROPS
@given(st.integers(2, 5), seeds, st.data())
def test_measure_forms_agree(n, seed, data):
    rho = pure(random_pure_vector(1 << n, np.random.default_rng(seed)))
    subsets = data.draw(st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=6))
    value = fixed_partition_measure(rho, qubits(n), subsets)
    pur = purities(rho, qubits(n))
    assert abs(value - (1 - np.mean(pur[subsets]))) < 1e-10


json_values = st.recursive(
    st.none() | st.booleans() | st.integers(-10**6, 10**6)
    | st.floats(allow_nan=False, allow_infinity=False) | st.text(max_size=5),
    lambda kids: st.lists(kids, max_size=4) | st.dictionaries(st.text(max_size=4), kids, max_size=4),
    max_leaves=12,
)


@given(json_values)
def test_json_reserialization_is_stable(value):
    once = serialize.dumps(value)
    assert serialize.dumps(serialize.loads(once)) == once


@pytest.mark.parametrize("name", ["five-qubit", "steane", "shor"])
def test_stabilizer_counting(name):
    cs = code_state(name)
    g = named_code(name)
    n = cs.shape.n
    e = enumerators_from_distribution(code_distribution(name), cs.K, 2)
    k = int(round(math.log2(cs.K)))
    for vals in (e.A, cs.K * e.B, 2 ** (n + k) * e.s):
        assert np.all(vals > -1e-9)
        assert np.allclose(vals, np.round(vals), atol=1e-6)
    assert np.allclose(e.A, weight_counts(group_elements(g), n), atol=1e-9)
    assert np.allclose(cs.K * e.B, weight_counts(centralizer(g), n), atol=1e-9)
    assert np.allclose(2 ** (n + k) * e.s, weight_counts(shadow_set(g), n), atol=1e-9)
    assert e.Aprime[0] == pytest.approx(1) and e.Aprime[n] == pytest.approx(1 / cs.K)


def test_sampled_residual_is_unbiased():
    dist = code_distribution("five-qubit")
    f = residual_coefficients(5, 2, 1)
    N, reps = 5000, 60
    vals = [estimate_linear(estimate(sample(dist, N, 1000 + s)), f) for s in range(reps)]
    se = math.sqrt(estimator_variance(dist, f, N) / reps)
    assert abs(np.mean(vals) - estimate_linear(dist, f)) <= 5 * se
