"""Dense linear algebra on multipartite Hilbert spaces.

Site and mask conventions used throughout the package:

* sites are 0-based in code; site 0 is the leftmost tensor factor
* a subset of sites is an integer mask in which site ``i`` owns bit ``n-1-i``,
  so ``format(mask, f"0{n}b")`` lists sites left to right
* operators are plain ``numpy`` complex arrays in row-major order
"""
from dataclasses import dataclass
from math import prod

import numpy as np

from . import backend, limits
from .errors import NumericError, ShapeError, SizeLimitError, ValidationError

HERMITIAN_TOL = 1e-9


@dataclass(frozen=True)
class SubsystemShape:
    local_dims: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in self.local_dims)
        if not dims:
            raise ShapeError("need at least one site")
        if any(d < 2 for d in dims):
            raise ShapeError(f"local dimensions must be >= 2, got {dims}")
        object.__setattr__(self, "local_dims", dims)

    @classmethod
    def uniform(cls, n, d=2):
        return cls((d,) * n)

    @property
    def n(self):
        return len(self.local_dims)

    @property
    def total_dim(self):
        return prod(self.local_dims)

    @property
    def is_uniform(self):
        return len(set(self.local_dims)) == 1

    @property
    def d(self):
        """The common local dimension; raises if the shape is not uniform."""
        if not self.is_uniform:
            raise ShapeError(f"non-uniform local dimensions {self.local_dims}")
        return self.local_dims[0]

    def sub_dim(self, mask):
        return prod(self.local_dims[i] for i in sites_of(mask, self.n))


def site_bit(i, n):
    return 1 << (n - 1 - i)


def sites_of(mask, n):
    """Sorted 0-based sites in ``mask``."""
    if not 0 <= mask < (1 << n):
        raise ShapeError(f"mask {mask} out of range for {n} sites")
    return [i for i in range(n) if mask & site_bit(i, n)]


def mask_of(sites, n):
    m = 0
    for i in sites:
        if not 0 <= i < n:
            raise ShapeError(f"site {i} out of range for {n} sites")
        m |= site_bit(i, n)
    return m


def weight(mask):
    return int(mask).bit_count()


def full_mask(n):
    return (1 << n) - 1


def complement(mask, n):
    return full_mask(n) ^ mask


def mask_weights(n):
    """``popcount`` of every mask in ``range(2**n)`` as an int array."""
    return np.bitwise_count(np.arange(1 << n, dtype=np.uint64)).astype(np.int64)


def _check_entries(rows, cols):
    cap = limits.get().max_operator_entries
    if rows * cols > cap:
        raise SizeLimitError(f"operator with {rows}x{cols} entries exceeds cap {cap}")


def _check_square(op, shape):
    op = np.asarray(op)
    dim = shape.total_dim
    if op.shape != (dim, dim):
        raise ShapeError(f"operator shape {op.shape} does not match {shape.local_dims}")
    return op


def kron(a, b):
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    _check_entries(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
    return np.kron(a, b)


def partial_trace(op, shape, keep):
    """Reduce ``op`` to the sites in the mask ``keep``, tracing out the rest.

    ``keep = 0`` returns the 1x1 matrix ``[[Tr op]]``.
    """
    op = _check_square(op, shape)
    n = shape.n
    kept = sites_of(keep, n)
    if len(kept) == n:
        return op
    dims = shape.local_dims
    t = op.reshape(dims + dims)
    rows = list(range(n))
    cols = [i if i not in kept else n + i for i in range(n)]
    out = [i for i in kept] + [n + i for i in kept]
    red = np.einsum(t, rows + cols, out)
    k = prod(dims[i] for i in kept)
    return red.reshape(k, k)


def check_hermitian(a, tol=HERMITIAN_TOL):
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    dev = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
    if dev > tol:
        raise ValidationError(f"matrix is not Hermitian (max deviation {dev:.3g})")


def hs_inner(a, b):
    """``Re Tr(a b)`` for Hermitian ``a``, ``b``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ShapeError(f"dimension mismatch {a.shape} vs {b.shape}")
    check_hermitian(a)
    check_hermitian(b)
    val = np.sum(a * b.T)
    if abs(val.imag) >= 1e-9:
        raise ValidationError(f"Tr(ab) has imaginary part {val.imag:.3g}")
    return float(val.real)


def eigvalsh(a):
    try:
        return np.linalg.eigvalsh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericError(str(exc)) from exc


def trace_distance(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ShapeError(f"dimension mismatch {a.shape} vs {b.shape}")
    diff = a - b
    check_hermitian(diff)
    return 0.5 * float(np.sum(np.abs(eigvalsh(diff))))


def embed_with_identity(op_s, shape, support):
    """Operator acting as ``op_s`` on the sites of ``support`` and as identity elsewhere."""
    n = shape.n
    sup = sites_of(support, n)
    rest = [i for i in range(n) if i not in sup]
    dims = shape.local_dims
    op_s = np.asarray(op_s, dtype=np.complex128)
    ds = prod(dims[i] for i in sup)
    if op_s.shape != (ds, ds):
        raise ShapeError(f"operator shape {op_s.shape} does not fit support of dim {ds}")
    full = kron(op_s, np.eye(prod(dims[i] for i in rest)))
    order = sup + rest
    t = full.reshape([dims[i] for i in order] * 2)
    # axis k currently holds site order[k]; move it back to its own position
    inv = np.argsort(order)
    t = t.transpose(list(inv) + [n + k for k in inv])
    return t.reshape(shape.total_dim, shape.total_dim)


def fwht_signed(v):
    """``out[t] = sum_z (-1)^{popcount(z & t)} v[z]`` in O(n 2^n)."""
    v = np.asarray(v)
    if v.ndim != 1 or v.shape[0] == 0 or v.shape[0] & (v.shape[0] - 1):
        raise ShapeError(f"subset vector length must be a power of two, got {v.shape}")
    return backend.fwht(v)

