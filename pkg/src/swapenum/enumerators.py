"""Shadow, Rains unitary and Shor-Laflamme weight enumerators.

Every family has a route through the SWAP-test distribution and an
independent definitional route:

=================  ==============================  ===============================
family             from a distribution             direct
=================  ==============================  ===============================
shadow ``s_T``     ``shadow_enumerator``           ``shadow_direct`` (Pauli sum with
                                                   the state-inversion map)
Rains ``A', B'``   ``rains_from_distribution``     ``rains_direct`` (purity sums)
Shor-Laflamme      ``shor_laflamme_from_rains``    ``shor_laflamme_direct`` (Pauli
``A, B``           (MacWilliams transform)         basis sums)
=================  ==============================  ===============================

``A, B, A', B'`` are unnormalized; ``s`` is normalized so that ``sum_T s_T = 1``.
"""
from dataclasses import dataclass
from functools import reduce
from math import comb

import numpy as np

from . import backend, limits
from .errors import InvariantViolation, SizeLimitError, UnsupportedDimensionError
from .pauli import PAULI_MATRICES, conjugate, words_with_support
from .states import check_density
from .swap_test import overlaps_from_distribution
from .tensor import (SubsystemShape, complement, embed_with_identity, hs_inner,
                     mask_weights, partial_trace)

NEG_TOL = 1e-9


@dataclass(frozen=True)
class EnumeratorSet:
    n: int
    d: int
    K: float
    A: np.ndarray
    B: np.ndarray
    Aprime: np.ndarray
    Bprime: np.ndarray
    s: np.ndarray

    def __post_init__(self):
        for name in ("A", "B", "Aprime", "Bprime", "s"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (self.n + 1,):
                raise ValueError(f"{name} must have length n + 1 = {self.n + 1}")
            if v.min() < -NEG_TOL:
                raise InvariantViolation(f"{name} has a negative entry {v.min():.3g}")
            object.__setattr__(self, name, v)
        if np.max(np.abs(self.Bprime - self.Aprime[::-1])) > 1e-9:
            raise InvariantViolation("B'_j != A'_{n-j}")

    def to_dict(self):
        return {
            "n": self.n, "d": self.d, "K": self.K,
            "A": self.A.tolist(), "B": self.B.tolist(),
            "A_prime": self.Aprime.tolist(), "B_prime": self.Bprime.tolist(),
            "s": self.s.tolist(),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(int(data["n"]), int(data["d"]), data["K"], data["A"], data["B"],
                   data["A_prime"], data["B_prime"], data["s"])


def _weight_sums(values, n):
    return np.bincount(mask_weights(n), weights=values, minlength=n + 1)


def shadow_enumerator(dist, T):
    """``s_T`` is the probability of the outcome supported on the complement of T."""
    return dist[complement(T, dist.n)]


def shadow_from_overlaps(overlaps, T):
    """``(1/2^n) sum_S (-1)^{|S & T^c|} Tr(rho_S sigma_S)`` straight from the definition."""
    overlaps = np.asarray(overlaps, dtype=float)
    n = overlaps.shape[0].bit_length() - 1
    tc = complement(T, n)
    signs = np.array([(-1) ** (s & tc).bit_count() for s in range(1 << n)])
    return float(signs @ overlaps) / (1 << n)


def shadow_weight_distribution(dist):
    """``s[j] = sum_{|T|=j} s_T``, i.e. p summed over masks of weight n - j."""
    return _weight_sums(dist.p, dist.n)[::-1].copy()


def rains_from_distribution(dist):
    tr = overlaps_from_distribution(dist)
    ap = _weight_sums(tr, dist.n)
    return ap, ap[::-1].copy()


def purities(rho, shape):
    """``Tr(rho_S^2)`` for every subset mask S."""
    out = np.empty(1 << shape.n)
    for mask in range(1 << shape.n):
        red = partial_trace(rho, shape, mask)
        out[mask] = hs_inner(red, red)
    return out


def rains_direct(rho, shape):
    check_density(rho, shape)
    ap = _weight_sums(purities(rho, shape), shape.n)
    return ap, ap[::-1].copy()


def macwilliams(prime, d, n):
    """``X_j = sum_{k<=j} (-1)^{j-k} C(n-k, j-k) d^k X'_k``."""
    out = np.zeros(n + 1)
    for j in range(n + 1):
        out[j] = sum((-1) ** (j - k) * comb(n - k, j - k) * d**k * prime[k]
                     for k in range(j + 1))
    return out


def shor_laflamme_from_rains(Aprime, Bprime, d, n):
    return macwilliams(Aprime, d, n), macwilliams(Bprime, d, n)


def _require_qubits(shape):
    if not shape.is_uniform or shape.d != 2:
        raise UnsupportedDimensionError(f"qubit-only operation, got local dims {shape.local_dims}")


def _qubit_shape(rho):
    dim = rho.shape[0]
    n = dim.bit_length() - 1
    if dim != 1 << n or n < 1:
        raise UnsupportedDimensionError(f"dimension {dim} is not a power of two")
    return SubsystemShape.uniform(n, 2)


def shor_laflamme_direct(rho, shape=None, kernels=None):
    """Brute-force Pauli-basis sums.

    ``A_j = sum_{wt E = j} |Tr(E rho)|^2`` and ``B_j = sum_{wt E = j} Tr(E rho E rho)``
    over all 4^n phase-free Pauli words (Hermitian, so ``E^dagger = E``).
    """
    rho = np.asarray(rho, dtype=np.complex128)
    shape = shape or _qubit_shape(rho)
    _require_qubits(shape)
    cap = limits.get().max_pauli_sites
    if shape.n > cap:
        raise SizeLimitError(f"Pauli-basis oracle capped at n <= {cap}, got {shape.n}")
    check_density(rho, shape)
    return (kernels or backend).pauli_weight_sums(rho, shape.n)


def shor_laflamme_explicit(rho, n):
    """Same sums as :func:`shor_laflamme_direct` with every Pauli matrix formed explicitly.

    Only meant as a cross-check at small n.
    """
    from itertools import product
    A = np.zeros(n + 1)
    B = np.zeros(n + 1)
    for letters in product("IXYZ", repeat=n):
        E = reduce(np.kron, [PAULI_MATRICES[c] for c in letters])
        w = sum(c != "I" for c in letters)
        A[w] += (np.trace(E @ rho) * np.trace(E.conj().T @ rho)).real
        B[w] += np.trace(E @ rho @ E.conj().T @ rho).real
    return A, B


def inversion_by_conjugation(rho):
    """``Y^{(x)n} conj(rho) Y^{(x)n}``."""
    rho = np.asarray(rho, dtype=np.complex128)
    n = _qubit_shape(rho).n
    full = (1 << n) - 1
    return conjugate(rho.conj(), full, full)


def inversion_by_subsets(rho, shape=None):
    """``sum_S (-1)^{|S|} rho_S (x) I_{S^c}``."""
    rho = np.asarray(rho, dtype=np.complex128)
    shape = shape or _qubit_shape(rho)
    _require_qubits(shape)
    out = np.zeros_like(rho)
    for mask in range(1 << shape.n):
        term = embed_with_identity(partial_trace(rho, shape, mask), shape, mask)
        out += term if mask.bit_count() % 2 == 0 else -term
    return out


def state_inversion(rho, method="conjugation"):
    if method == "conjugation":
        return inversion_by_conjugation(rho)
    if method == "subsets":
        return inversion_by_subsets(rho)
    raise ValueError(f"unknown inversion method {method!r}")


def shadow_direct(rho, T, inverted=None):
    """``(1/2^n) sum_{supp E = T} Tr(rho E rho~ E)`` over the 3^|T| words supported on T."""
    rho = np.asarray(rho, dtype=np.complex128)
    shape = _qubit_shape(rho)
    n = shape.n
    if n > 8:
        raise SizeLimitError(f"shadow_direct capped at n <= 8, got {n}")
    tilde = inversion_by_conjugation(rho) if inverted is None else inverted
    total = 0.0
    for x, z in words_with_support(T, n):
        total += np.sum(rho * conjugate(tilde, x, z).T).real
    return total / (1 << n)


def enumerators_from_distribution(dist, K, d):
    ap, bp = rains_from_distribution(dist)
    A, B = shor_laflamme_from_rains(ap, bp, d, dist.n)
    return EnumeratorSet(dist.n, d, K, A, B, ap, bp, shadow_weight_distribution(dist))


def shadow_sums_dense(overlaps):
    """Every ``s_T`` from the defining signed sum, as one dense sign-matrix product."""
    overlaps = np.asarray(overlaps, dtype=float)
    n = overlaps.shape[0].bit_length() - 1
    ar = np.arange(1 << n, dtype=np.uint64)
    # row T, column S: (-1)^{|S & T^c|}
    tc = ar ^ np.uint64((1 << n) - 1)
    signs = 1 - 2 * (np.bitwise_count(tc[:, None] & ar[None, :]) % 2).astype(np.int64)
    return signs @ overlaps / (1 << n)


def enumerators_direct(rho, shape, K, kernels=None):
    """All five families by the definitional routes (A and B are qubit-only)."""
    check_density(rho, shape)
    pur = purities(rho, shape)
    n = shape.n
    ap = _weight_sums(pur, n)
    A, B = shor_laflamme_direct(rho, shape, kernels)
    s = _weight_sums(shadow_sums_dense(pur), n)
    return EnumeratorSet(n, 2, K, A, B, ap, ap[::-1].copy(), s)
