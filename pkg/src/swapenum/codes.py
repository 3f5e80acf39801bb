"""Stabilizer groups, their code spaces and brute-force group oracles."""
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

import numpy as np

from . import limits
from .errors import (CommutationError, ParseError, RankError, SignError,
                     SizeLimitError, ValidationError)
from .pauli import PauliString, all_words, parse_pauli
from .tensor import SubsystemShape, _check_entries

NAMED_CODES = {
    "five-qubit": ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"],
    "steane": ["IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"],
    "shor": ["ZZIIIIIII", "ZIZIIIIII", "IIIZZIIII", "IIIZIZIII",
             "IIIIIIZZI", "IIIIIIZIZ", "XXXXXXIII", "XXXIIIXXX"],
}


@dataclass(frozen=True)
class StabilizerGroup:
    generators: tuple
    n: int

    @property
    def m(self):
        return len(self.generators)

    @property
    def k(self):
        return self.n - self.m

    @property
    def K(self):
        return 2 ** self.k


@dataclass(frozen=True)
class CodeSpace:
    shape: SubsystemShape
    K: int
    projector: np.ndarray
    rho: np.ndarray


def _products(gens):
    """All 2^m subset products, in subset-bitmask order."""
    n = gens[0].n
    out = [PauliString("I" * n)]
    for g in gens:
        out = out + [p * g for p in out]
    return out


def stabilizer_validate(gens):
    gens = [parse_pauli(g) if isinstance(g, str) else g for g in gens]
    if not gens:
        raise ValidationError("need at least one generator")
    n = gens[0].n
    for g in gens:
        if g.n != n:
            raise ValidationError(f"generator {g} has length {g.n}, expected {n}")
    for (i, a), (j, b) in combinations(enumerate(gens), 2):
        if not a.commutes(b):
            raise CommutationError(i, j, a, b)
    for g in gens:
        # a Hermitian Pauli needs a real phase; i*P squares to -I
        if g.phase_exp % 2:
            raise SignError(f"generator {g} squares to -I")
    elements = _products(gens)
    for e in elements[1:]:
        if e.is_identity:
            if e.phase_exp != 0:
                raise SignError(f"{e} lies in the generated group")
            raise RankError("generators are not independent")
    if len({e.symbols for e in elements}) != 2 ** len(gens):
        raise RankError("generators are not independent")
    return StabilizerGroup(tuple(gens), n)


def named_code(name):
    if name not in NAMED_CODES:
        raise KeyError(f"unknown code {name!r}; known: {sorted(NAMED_CODES)}")
    return stabilizer_validate(NAMED_CODES[name])


def parse_stabilizer_text(text):
    """One generator per line, optional sign prefix, ``#`` starts a comment."""
    gens = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        try:
            gens.append(parse_pauli(body))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    return stabilizer_validate(gens)


def load_stabilizer_file(path):
    return parse_stabilizer_text(Path(path).read_text(encoding="utf-8"))


def code_projector(g):
    """``Pi = prod_i (I + g_i)/2`` and ``rho = Pi / K``."""
    dim = 2 ** g.n
    _check_entries(dim, dim)
    proj = np.eye(dim, dtype=np.complex128)
    for gen in g.generators:
        proj = proj @ ((np.eye(dim) + gen.to_matrix()) / 2)
    K = g.K
    proj = (proj + proj.conj().T) / 2
    if np.max(np.abs(proj @ proj - proj)) > 1e-9:
        raise ValidationError("generator product is not a projector")
    if abs(np.trace(proj).real - K) > 1e-9:
        raise ValidationError(f"projector trace {np.trace(proj).real} != K = {K}")
    return CodeSpace(SubsystemShape.uniform(g.n, 2), K, proj, proj / K)


def _check_enum_cap(n):
    cap = limits.get().max_pauli_sites
    if n > cap:
        raise SizeLimitError(f"brute-force Pauli enumeration capped at n <= {cap}, got {n}")


def group_elements(g):
    """Phase-free images of all 2^m group elements."""
    return [e.phase_free() for e in _products(list(g.generators))]


def _centralizer_masks(n, elements):
    xs, zs = all_words(n)
    keep = np.ones(xs.shape[0], dtype=bool)
    for e in elements:
        ex, ez = e.x_mask, e.z_mask
        par = np.bitwise_count((xs & ez).astype(np.uint64)) + np.bitwise_count((zs & ex).astype(np.uint64))
        keep &= (par % 2) == 0
    return xs[keep], zs[keep]


def _as_strings(xs, zs, n):
    return [PauliString.from_masks(int(x), int(z), n) for x, z in zip(xs, zs)]


def centralizer(g):
    """Phase-free images of the centralizer, by brute force over 4^n words."""
    _check_enum_cap(g.n)
    xs, zs = _centralizer_masks(g.n, g.generators)
    return _as_strings(xs, zs, g.n)


def shadow_set(g):
    """The shadow of ``g``.

    If every element of ``g`` has even weight this is the centralizer;
    otherwise it is C(G_0) minus C(G), with G_0 the even-weight subgroup.
    """
    _check_enum_cap(g.n)
    elements = group_elements(g)
    if all(e.weight % 2 == 0 for e in elements):
        return centralizer(g)
    even = [e for e in elements if e.weight % 2 == 0]
    x0, z0 = _centralizer_masks(g.n, even)
    x1, z1 = _centralizer_masks(g.n, g.generators)
    inner = set(zip(x1.tolist(), z1.tolist()))
    pairs = [(x, z) for x, z in zip(x0.tolist(), z0.tolist()) if (x, z) not in inner]
    return [PauliString.from_masks(x, z, g.n) for x, z in pairs]


def weight_counts(words, n):
    counts = [0] * (n + 1)
    for w in words:
        counts[w.weight] += 1
    return counts
