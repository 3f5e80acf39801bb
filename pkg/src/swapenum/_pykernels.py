"""Pure-numpy implementations of the hot kernels.

Every function here has a twin with the same signature in ``_ckernels.pyx``.
"""
import numpy as np


def fwht(values):
    """Signed subset transform ``out[t] = sum_z (-1)^popcount(z & t) v[z]``.

    Returns a new array; the input is not modified.
    """
    v = np.array(values, dtype=np.result_type(values, np.float64), copy=True)
    size = v.shape[0]
    if size & (size - 1):
        raise ValueError("length must be a power of two")
    h = 1
    while h < size:
        blocks = v.reshape(-1, 2, h)
        lo = blocks[:, 0, :].copy()
        hi = blocks[:, 1, :]
        blocks[:, 0, :] += hi
        blocks[:, 1, :] = lo - hi
        h *= 2
    return v


def apply_hadamard(state, stride):
    """Hadamard on the qubit whose index digit has the given stride, in place."""
    pairs = state.reshape(-1, 2, stride)
    lo = pairs[:, 0, :].copy()
    hi = pairs[:, 1, :]
    pairs[:, 0, :] = (lo + hi) * np.sqrt(0.5)
    pairs[:, 1, :] = (lo - hi) * np.sqrt(0.5)


def apply_cswap(state, control_stride, stride_b, stride_c, d):
    """Swap the two d-level digits at ``stride_b``/``stride_c`` where the control qubit is 1."""
    idx = np.arange(state.shape[0])
    ctrl = (idx // control_stride) % 2
    b = (idx // stride_b) % d
    c = (idx // stride_c) % d
    sel = (ctrl == 1) & (b < c)
    src = idx[sel]
    delta = (c[sel] - b[sel])
    dst = src + delta * stride_b - delta * stride_c
    tmp = state[src].copy()
    state[src] = state[dst]
    state[dst] = tmp


def pauli_weight_sums(rho, n):
    """Weight-binned sums of |Tr(E rho)|^2 and Tr(E rho E rho) over all 4^n Pauli words.

    Words are grouped by their X-mask; inside a group the Z-dependence is a
    signed subset transform, so each group costs one O(D^2) pass plus two
    transforms instead of 2^n separate traces.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    dim = 1 << n
    ar = np.arange(dim)
    pop = np.bitwise_count(ar.astype(np.uint64)).astype(np.int64)
    xor_table = ar[:, None] ^ ar[None, :]
    rho_t = rho.T
    A = np.zeros(n + 1)
    B = np.zeros(n + 1)
    for x in range(dim):
        px = ar ^ x
        # Tr(E_{x,z} rho) = i^{x.z} sum_w (-1)^{z.w} rho[w, w^x]
        ta = np.abs(fwht(rho[ar, px])) ** 2
        # Tr(E rho E rho) = sum_c (-1)^{z.c} sum_a rho[a^x, a^c^x] rho[a^c, a]
        m = rho[np.ix_(px, px)] * rho_t
        w = m[ar[:, None], xor_table].sum(axis=0)
        tb = fwht(w).real
        weights = pop[x | ar]
        A += np.bincount(weights, weights=ta, minlength=n + 1)
        B += np.bincount(weights, weights=tb, minlength=n + 1)
    return A, B
