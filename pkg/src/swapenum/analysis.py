"""Applications: code distance, k-uniformity, entanglement measures, sampling budgets."""
import math
from dataclasses import asdict, dataclass
from math import comb

import numpy as np

from .enumerators import rains_from_distribution
from .errors import InvariantViolation, ValidationError
from .states import check_density
from .swap_test import analytic_distribution, overlaps_from_distribution
from .tensor import (complement, fwht_signed, hs_inner, mask_weights,
                     partial_trace, trace_distance)

ANALYTIC_TOL = 1e-9


@dataclass(frozen=True)
class DistanceReport:
    n: int
    K: float
    d: int
    delta: int
    residuals: list
    tolerance: object  # float, or per-weight list for sampled input
    pure: bool
    degenerate: bool = False

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class SamplePlan:
    n: int
    K: float
    d: int
    j: int
    epsilon: float
    variance_bound: float
    shots: int

    def to_dict(self):
        return asdict(self)


def _tol_list(tol, n):
    if np.ndim(tol) == 0:
        return [float(tol)] * (n + 1)
    tol = [float(t) for t in tol]
    if len(tol) != n + 1:
        raise ValueError("per-weight tolerance needs n + 1 entries")
    return tol


def _prefix_length(residuals, tols):
    """Number of leading residuals below tolerance; raises if zeros reappear later."""
    ok = [abs(r) < t for r, t in zip(residuals, tols)]
    length = 0
    while length < len(ok) and ok[length]:
        length += 1
    late = [j for j in range(length + 1, len(ok)) if ok[j]]
    if late:
        raise InvariantViolation(
            f"residuals vanish at weights {late} after failing at weight {length}; "
            "input is not consistent with any code distance")
    return length


def distance_from_distribution(dist, K, d, tol=ANALYTIC_TOL):
    """Distance from a self-test distribution of a normalized code projector.

    For K > 1 the scan tests ``K B'_j - A'_j``.  A one-dimensional code is pure
    by definition and ``K B'_j = A'_j`` holds for every pure state, so for
    K = 1 the scan tests ``A'_j - C(n, j) d^-j`` instead.
    """
    n = dist.n
    ap, bp = rains_from_distribution(dist)
    maxmix = np.array([comb(n, j) * float(d) ** -j for j in range(n + 1)])
    if K == 1:
        residuals = ap - maxmix
    else:
        residuals = K * bp - ap
    tols = _tol_list(tol, n)
    # delta = 1 + (largest j such that residuals 0..j all vanish)
    delta = _prefix_length(residuals, tols)
    if delta == 0:
        raise InvariantViolation(f"weight-0 residual {residuals[0]:.3g} is nonzero; "
                                 "input is not a normalized code projector")
    degenerate = delta == n + 1
    if degenerate:
        pure = False
    else:
        j = delta - 1
        pure = abs(ap[j] - maxmix[j]) < tols[j] and abs(K * bp[j] - maxmix[j]) < tols[j]
    return DistanceReport(n, K, d, delta, [float(r) for r in residuals],
                          tol if np.ndim(tol) == 0 else tols, bool(pure), degenerate)


def check_code_state(rho_q, K, shape):
    check_density(rho_q, shape)
    proj = K * np.asarray(rho_q)
    if np.max(np.abs(proj @ proj - proj)) > 1e-9:
        raise ValidationError("K * rho is not a projector")


def code_distance(rho_q, K, shape, tol=ANALYTIC_TOL):
    """Distance of the code whose normalized projector is ``rho_q`` (analytic SWAP test)."""
    check_code_state(rho_q, K, shape)
    return distance_from_distribution(analytic_distribution(rho_q, rho_q, shape), K, shape.d, tol)


def robustness_bound(n, K, delta, epsilon):
    return 4 * (K + 1) * comb(n, delta - 1) * epsilon


def distance_residual(rho, shape, K, j):
    """``K B'_j - A'_j`` of ``rho`` from its analytic self-test."""
    ap, bp = rains_from_distribution(analytic_distribution(rho, rho, shape))
    return float(K * bp[j] - ap[j])


def closeness_check(rho_prime, rho_q, report, shape):
    """Whether the perturbed state's residual at weight delta-1 obeys the robustness bound."""
    eps = trace_distance(rho_prime, rho_q)
    bound = robustness_bound(report.n, report.K, report.delta, eps)
    resid = distance_residual(rho_prime, shape, report.K, report.delta - 1)
    return abs(resid) <= bound + 1e-12


def check_pure(rho, shape):
    check_density(rho, shape)
    pur = hs_inner(rho, rho)
    if abs(pur - 1) > 1e-9:
        raise ValidationError(f"expected a pure state, purity is {pur}")


def uniformity_from_distribution(dist, d, tol=ANALYTIC_TOL):
    """Largest k with ``A'_k' = C(n, k') d^-k'`` for every k' <= k, from a self-test."""
    n = dist.n
    ap, _ = rains_from_distribution(dist)
    tols = _tol_list(tol, n)
    k = 0
    while k < n and abs(ap[k + 1] - comb(n, k + 1) * float(d) ** -(k + 1)) < tols[k + 1]:
        k += 1
    return k


def k_uniformity(psi_rho, shape, tol=ANALYTIC_TOL):
    """k-uniformity of a pure state, scanned on its analytic self-test."""
    check_pure(psi_rho, shape)
    return uniformity_from_distribution(analytic_distribution(psi_rho, psi_rho, shape), shape.d, tol)


def fixed_partition_measure(psi_rho, shape, subsets):
    """``1 - mean_i Tr(rho_{S_i}^2)``, evaluated from the SWAP-test distribution.

    The same quantity from direct partial traces must agree to 1e-10.
    """
    subsets = list(subsets)
    if not subsets or all(s == 0 for s in subsets):
        raise ValueError("need a nonempty family of subsets other than the empty set")
    check_pure(psi_rho, shape)
    direct = 1 - np.mean([hs_inner(r, r) for r in
                          (partial_trace(psi_rho, shape, s) for s in subsets)])
    via_dist = measure_from_distribution(analytic_distribution(psi_rho, psi_rho, shape), subsets)
    if abs(direct - via_dist) > 1e-10:
        raise InvariantViolation(f"measure forms disagree: {direct} vs {via_dist}")
    return float(via_dist)


def measure_from_distribution(dist, subsets):
    tr = overlaps_from_distribution(dist)
    return float(1 - np.mean([tr[s] for s in subsets]))


def _pure_purities(psi_rho, shape):
    check_pure(psi_rho, shape)
    return overlaps_from_distribution(analytic_distribution(psi_rho, psi_rho, shape))


def concurrence(psi_rho, shape, S):
    pur = _pure_purities(psi_rho, shape)[S]
    return math.sqrt(max(0.0, 2 * (1 - pur)))


def monogamy_check(psi_rho, shape, T):
    """``sum_S (-1)^{|S & T|} C^2_{S|S^c}``; non-positive for even |T|, zero for odd |T|."""
    if T == 0:
        raise ValueError("T must be nonempty")
    pur = _pure_purities(psi_rho, shape)
    return float(monogamy_sums(pur)[T])


def monogamy_sums(purities):
    """The signed concurrence sum for every T at once, from a purity vector."""
    c2 = 2 * (1 - np.clip(np.asarray(purities, dtype=float), None, 1.0))
    return fwht_signed(c2)


def f_coeff(n, k, w):
    """``sum_{|t|=k} (-1)^{z.t}`` for any z of weight w, as an exact integer."""
    return sum((-1) ** m * comb(n - w, k - m) * comb(w, m) for m in range(min(k, w) + 1))


def residual_coefficients(n, K, j):
    """Per-mask coefficients f(z) with ``K B'_j - A'_j = sum_z f(z) p(z)``."""
    per_weight = np.array([K * f_coeff(n, n - j, w) - f_coeff(n, j, w) for w in range(n + 1)],
                          dtype=float)
    return per_weight[mask_weights(n)]


def estimate_linear(dist, coeffs):
    return float(np.dot(coeffs, dist.p))


def estimator_variance(dist, coeffs, N):
    """Variance of ``sum_z f(z) N_z / N`` under multinomial sampling of ``dist``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    coeffs = np.asarray(coeffs, dtype=float)
    mean = np.dot(coeffs, dist.p)
    return float((np.dot(coeffs**2, dist.p) - mean**2) / N)


def sample_plan(n, K, d, j, epsilon, dist=None):
    """Shots needed to pin ``K B'_j - A'_j`` down to standard error ``epsilon``.

    Without ``dist`` the worst case ``((K+1) C(n,j))^2`` is used for the
    per-shot variance; with ``dist`` its exact per-shot variance is used.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if dist is None:
        per_shot = float(((K + 1) * comb(n, j)) ** 2)
    else:
        per_shot = estimator_variance(dist, residual_coefficients(n, K, j), 1)
    shots = max(1, math.ceil(per_shot / epsilon**2))
    return SamplePlan(n, K, d, j, float(epsilon), per_shot, shots)


def sampled_tolerances(dist, K, shots, floor=ANALYTIC_TOL):
    """``3 sqrt(Var)`` of every residual estimator, for scanning sampled input."""
    n = dist.n
    return [max(floor, 3 * math.sqrt(max(0.0, estimator_variance(
        dist, residual_coefficients(n, K, j), shots)))) for j in range(n + 1)]


@dataclass(frozen=True)
class DistributionCharacter:
    is_product_pair: bool
    is_orthogonal_supports: bool

    @property
    def label(self):
        if self.is_product_pair:
            return "is_product_pair"
        if self.is_orthogonal_supports:
            return "is_orthogonal_supports"
        return "neither"


def characterize_distribution(dist, tol=1e-9):
    p = dist.p
    return DistributionCharacter(
        bool(abs(p[0] - 1) < tol),
        bool(np.max(np.abs(p - 1 / p.shape[0])) < tol),
    )


def uniform_purity_profile(n, k, d=2):
    """Purities a pure k-uniform n-site state would have, by subset mask.

    Marginals on at most k sites are maximally mixed and, the global state
    being pure, so are their complements.
    """
    out = np.empty(1 << n)
    for mask in range(1 << n):
        w = mask.bit_count()
        if w <= k:
            out[mask] = float(d) ** -w
        elif n - w <= k:
            out[mask] = float(d) ** -(n - w)
        else:
            raise ValueError(f"profile undetermined at weight {w} for k = {k}")
    return out


def unnormalized_shadow_sums(purities):
    """``sum_S (-1)^{|S & T^c|} Tr(rho_S^2)`` for every T (index T)."""
    purities = np.asarray(purities, dtype=float)
    n = purities.shape[0].bit_length() - 1
    by_zmask = fwht_signed(purities)
    return np.array([by_zmask[complement(T, n)] for T in range(1 << n)])
