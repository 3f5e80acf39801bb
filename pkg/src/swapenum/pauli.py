"""Symbolic n-qubit Pauli strings with an exact phase.

A phase-free word is also described by its bit masks ``(x, z)`` (same site
convention as :mod:`swapenum.tensor`): the word equals ``i^{x.z} X^x Z^z``, so
``Y`` carries ``x = z = 1``.  With that choice every phase-free word is
Hermitian.
"""
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import ParseError

LETTERS = "IXYZ"

PAULI_MATRICES = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}

# single-site products a*b = i^k c
_PRODUCT = {}
for _a in LETTERS:
    _PRODUCT[("I", _a)] = (0, _a)
    _PRODUCT[(_a, "I")] = (0, _a)
    _PRODUCT[(_a, _a)] = (0, "I")
for _a, _b, _c in ("XYZ", "YZX", "ZXY"):
    _PRODUCT[(_a, _b)] = (1, _c)
    _PRODUCT[(_b, _a)] = (3, _c)

_PREFIXES = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}
_PHASE_TEXT = {0: "", 1: "i", 2: "-", 3: "-i"}
_PHASE_VALUE = {0: 1, 1: 1j, 2: -1, 3: -1j}


@dataclass(frozen=True)
class PauliString:
    symbols: str
    phase_exp: int = 0  # overall factor i^phase_exp

    def __post_init__(self):
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @property
    def n(self):
        return len(self.symbols)

    @property
    def phase(self):
        return _PHASE_VALUE[self.phase_exp]

    @property
    def weight(self):
        return sum(c != "I" for c in self.symbols)

    @property
    def support(self):
        """0-based positions of the non-identity letters."""
        return [i for i, c in enumerate(self.symbols) if c != "I"]

    @property
    def x_mask(self):
        n = self.n
        return sum(1 << (n - 1 - i) for i, c in enumerate(self.symbols) if c in "XY")

    @property
    def z_mask(self):
        n = self.n
        return sum(1 << (n - 1 - i) for i, c in enumerate(self.symbols) if c in "ZY")

    @property
    def is_identity(self):
        return self.weight == 0

    def phase_free(self):
        return PauliString(self.symbols)

    def __mul__(self, other):
        if self.n != other.n:
            raise ValueError("length mismatch")
        k = self.phase_exp + other.phase_exp
        out = []
        for a, b in zip(self.symbols, other.symbols):
            dk, c = _PRODUCT[(a, b)]
            k += dk
            out.append(c)
        return PauliString("".join(out), k)

    def commutes(self, other):
        return commutes(self.x_mask, self.z_mask, other.x_mask, other.z_mask)

    def to_matrix(self):
        mats = [PAULI_MATRICES[c] for c in self.symbols]
        return self.phase * reduce(np.kron, mats)

    def __str__(self):
        return _PHASE_TEXT[self.phase_exp] + self.symbols

    @classmethod
    def from_masks(cls, x, z, n, phase_exp=0):
        letters = []
        for i in range(n):
            bit = 1 << (n - 1 - i)
            letters.append(LETTERS[_letter_index(x & bit, z & bit)])
        return cls("".join(letters), phase_exp)


def _letter_index(xb, zb):
    if xb and zb:
        return 2
    if xb:
        return 1
    if zb:
        return 3
    return 0


def commutes(x1, z1, x2, z2):
    """True iff the words with masks (x1, z1) and (x2, z2) commute."""
    return ((x1 & z2).bit_count() + (z1 & x2).bit_count()) % 2 == 0


def parse_pauli(text, n=None):
    """Parse ``[sign]LETTERS`` such as ``"XZZXI"``, ``"-YY"`` or ``"-iXZ"``.

    The optional sign prefix is one of ``+``, ``-``, ``i``, ``+i``, ``-i``.
    Raises :class:`ParseError` naming the first bad position.
    """
    s = text.strip().replace("−", "-")
    start = 0
    while start < len(s) and s[start] in "+-i":
        start += 1
    prefix = s[:start]
    if prefix not in _PREFIXES:
        raise ParseError(f"bad sign prefix {prefix!r} in {text!r}", 0)
    body = s[start:]
    for k, c in enumerate(body):
        if c not in LETTERS:
            raise ParseError(f"unexpected character {c!r} in {text!r}", start + k)
    if not body:
        raise ParseError(f"no Pauli letters in {text!r}", start)
    if n is not None and len(body) != n:
        raise ParseError(f"expected {n} letters, got {len(body)} in {text!r}", start + min(len(body), n))
    return PauliString(body, _PREFIXES[prefix])


def format_pauli(p):
    return str(p)


def all_words(n):
    """x and z masks of all 4^n phase-free words, as two flat int arrays."""
    dim = 1 << n
    xs = np.repeat(np.arange(dim, dtype=np.int64), dim)
    zs = np.tile(np.arange(dim, dtype=np.int64), dim)
    return xs, zs


def words_with_support(support_mask, n):
    """(x, z) masks of the 3^|T| words whose support is exactly ``support_mask``."""
    sites = [i for i in range(n) if support_mask & (1 << (n - 1 - i))]
    words = [(0, 0)]
    for i in sites:
        bit = 1 << (n - 1 - i)
        words = [(x | xb, z | zb) for x, z in words
                 for xb, zb in ((bit, 0), (bit, bit), (0, bit))]
    return words


def conjugate(rho, x, z):
    """``E rho E`` for the phase-free word with masks (x, z), without forming E.

    Uses ``(E rho E)[a, b] = (-1)^{z.(a xor b)} rho[a^x, b^x]``.
    """
    dim = rho.shape[0]
    ar = np.arange(dim)
    sign = 1 - 2 * (np.bitwise_count((ar & z).astype(np.uint64)) % 2).astype(np.int64)
    perm = ar ^ x
    return (sign[:, None] * sign[None, :]) * rho[np.ix_(perm, perm)]
