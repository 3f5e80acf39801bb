"""Named reference states, density-matrix files and spectral ensembles."""
import json
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ParseError, ShapeError, ValidationError
from .tensor import SubsystemShape, check_hermitian, eigvalsh

EIGEN_CUTOFF = 1e-12

_SPEC = re.compile(r"^(ghz|w|basis):(.+)$")


@dataclass(frozen=True)
class Ensemble:
    probs: np.ndarray
    vectors: tuple

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(zip(self.probs, self.vectors))

    def density(self):
        return sum(p * np.outer(v, v.conj()) for p, v in self)


def pure(psi):
    psi = np.asarray(psi, dtype=np.complex128)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def ghz_vector(n, d=2):
    dim = d**n
    psi = np.zeros(dim, dtype=np.complex128)
    step = sum(d**k for k in range(n))  # index of |i i ... i> is i * step
    psi[[i * step for i in range(d)]] = 1 / np.sqrt(d)
    return psi


def w_vector(n):
    psi = np.zeros(2**n, dtype=np.complex128)
    psi[[1 << k for k in range(n)]] = 1 / np.sqrt(n)
    return psi


def basis_vector(digits, d=2):
    n = len(digits)
    psi = np.zeros(d**n, dtype=np.complex128)
    psi[int("".join(str(x) for x in digits), d) if n else 0] = 1
    return psi


def check_density(rho, shape=None, tol=1e-10):
    """Raise :class:`ValidationError` unless ``rho`` is Hermitian, PSD and unit-trace."""
    rho = np.asarray(rho)
    check_hermitian(rho)
    if shape is not None and rho.shape != (shape.total_dim, shape.total_dim):
        raise ShapeError(f"density matrix shape {rho.shape} does not match {shape.local_dims}")
    tr = np.trace(rho).real
    if abs(tr - 1) > 1e-9:
        raise ValidationError(f"trace is {tr}, expected 1")
    lo = eigvalsh(rho)[0]
    if lo < -tol:
        raise ValidationError(f"not positive semidefinite (min eigenvalue {lo:.3g})")


def _int(text, what, spec):
    try:
        v = int(text)
    except ValueError:
        raise ParseError(f"{what} must be an integer in {spec!r}") from None
    return v


def parse_state_spec(spec):
    """Resolve ``ghz:n[:d]``, ``w:n`` or ``basis:<digits>[:d]`` to (rho, shape).

    Returns ``None`` when ``spec`` is not in one of those forms.
    """
    m = _SPEC.match(spec.strip())
    if not m:
        return None
    kind, args = m.group(1), m.group(2).split(":")
    if kind == "ghz":
        if len(args) not in (1, 2):
            raise ParseError(f"expected ghz:n[:d], got {spec!r}")
        n = _int(args[0], "n", spec)
        d = _int(args[1], "d", spec) if len(args) == 2 else 2
        if n < 1 or d < 2:
            raise ParseError(f"need n >= 1 and d >= 2 in {spec!r}")
        return pure(ghz_vector(n, d)), SubsystemShape.uniform(n, d)
    if kind == "w":
        if len(args) != 1:
            raise ParseError(f"expected w:n, got {spec!r}")
        n = _int(args[0], "n", spec)
        if n < 1:
            raise ParseError(f"need n >= 1 in {spec!r}")
        return pure(w_vector(n)), SubsystemShape.uniform(n, 2)
    if len(args) not in (1, 2):
        raise ParseError(f"expected basis:<digits>[:d], got {spec!r}")
    d = _int(args[1], "d", spec) if len(args) == 2 else 2
    digits = args[0]
    for pos, c in enumerate(digits):
        if not c.isdigit() or int(c) >= d:
            raise ParseError(f"bad digit {c!r} for local dimension {d} in {spec!r}", len("basis:") + pos)
    if not digits:
        raise ParseError(f"empty basis string in {spec!r}")
    return pure(basis_vector([int(c) for c in digits], d)), SubsystemShape.uniform(len(digits), d)


def load_density_json(path):
    """Read ``{"dims": [...], "re": [[...]], "im": [[...]]}`` into (rho, shape)."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    try:
        shape = SubsystemShape(tuple(data["dims"]))
        re_part = np.asarray(data["re"], dtype=float)
        im_part = np.asarray(data.get("im", np.zeros_like(re_part)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed density-matrix file {path}: {exc}") from exc
    rho = re_part + 1j * im_part
    check_density(rho, shape)
    return rho, shape


def density_to_json(rho, shape):
    rho = np.asarray(rho)
    return {"dims": list(shape.local_dims), "re": rho.real.tolist(), "im": rho.imag.tolist()}


def load_state(spec):
    """Named state or a JSON density-matrix file, returned as (rho, shape)."""
    named = parse_state_spec(spec)
    if named is not None:
        if Path(spec).exists():
            raise ParseError(f"{spec!r} is both a named state and an existing file")
        return named
    if Path(spec).is_file():
        return load_density_json(spec)
    raise ParseError(f"cannot resolve state {spec!r}")


def named_state(spec):
    return load_state(spec)[0]


def ensemble_of(rho):
    check_hermitian(rho)
    vals, vecs = np.linalg.eigh(rho)
    keep = vals > EIGEN_CUTOFF
    probs = vals[keep] / vals[keep].sum()
    return Ensemble(probs, tuple(vecs[:, i] for i in np.flatnonzero(keep)))


def random_pure_vector(dim, rng):
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return psi / np.linalg.norm(psi)


def random_density(dim, rng, rank=None):
    """Random density matrix of the given rank (full rank by default)."""
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real
