"""Reference values for the SWAP-test distributions and code enumerators, and a verifier.

All golden values are exact :class:`fractions.Fraction` closed forms; the
verifier recomputes each one with the library and records the max absolute
error.
"""
from dataclasses import dataclass
from fractions import Fraction as F
from functools import lru_cache

import numpy as np

from .codes import code_projector, named_code
from .enumerators import enumerators_direct, enumerators_from_distribution
from .states import basis_vector, ghz_vector, pure, w_vector
from .swap_test import analytic_distribution
from .tensor import SubsystemShape, mask_weights, site_bit

TABLE_TOL = 1e-9
MASK_TOL = 1e-10
TABLE1_SIZES = range(2, 7)


def table1_vector(name, n):
    if name == "0":
        return basis_vector([0] * n)
    if name == "1":
        return basis_vector([1] * n)
    if name == "W":
        return w_vector(n)
    if name == "GHZ":
        return ghz_vector(n)
    raise KeyError(name)


def _ghz_ghz(n, k):
    if k == 0:
        return F(2 ** (n - 1) + 1, 2**n)
    if k == 1:
        return F(0)
    return F(1 + (-1) ** k, 2 ** (n + 1))


def _w_one(n, k):
    return F(1, 2 ** (n - 1)) if k == 0 else F(n - k, 2 ** (n - 1) * n)


def _ghz_w(n, k):
    if k == 0:
        return F(2 ** (n - 2) + 1, 2**n)
    if k == 1:
        return F(2 ** (n - 2) + n - 1, 2**n * n)
    return F(n - k, 2**n * n)


# (rho, sigma) -> p(k) as a function of (n, k)
TABLE1 = {
    ("0", "0"): lambda n, k: F(int(k == 0)),
    ("W", "W"): lambda n, k: F(n + 1, 2 * n) if k == 0 else (F(1, n * n) if k == 2 else F(0)),
    ("GHZ", "GHZ"): _ghz_ghz,
    ("0", "1"): lambda n, k: F(1, 2**n),
    ("W", "0"): lambda n, k: F(1, 2) if k == 0 else (F(1, 2 * n) if k == 1 else F(0)),
    ("W", "1"): _w_one,
    ("GHZ", "0"): lambda n, k: F(2**n + 1, 2 ** (n + 1)) if k == 0 else F(1, 2 ** (n + 1)),
    ("GHZ", "W"): _ghz_w,
}


def table1_profile(pair, n):
    return [TABLE1[pair](n, k) for k in range(n + 1)]


def _fr(values):
    return [None if v is None else F(v) for v in values]


# family -> code -> golden values (None where the table has no entry)
TABLE2 = {
    "A": {
        "five-qubit": _fr([1, 0, 0, 0, 15, 0]),
        "steane": _fr([1, 0, 0, 0, 21, 0, 42, 0]),
        "shor": _fr([1, 0, 9, 0, 27, 0, 75, 0, 144, 0]),
    },
    "B": {
        "five-qubit": _fr(["1/2", 0, 0, 15, "15/2", 9]),
        "steane": _fr(["1/2", 0, 0, "21/2", "21/2", 63, 21, "45/2"]),
        "shor": _fr(["1/2", 0, "9/2", "39/2", "27/2", "207/2", "75/2", "333/2", 72, "189/2"]),
    },
    "Aprime": {
        "five-qubit": _fr([1, "5/2", "5/2", "5/4", "5/4", "1/2"]),
        "steane": _fr([1, "7/2", "21/4", "35/8", "7/2", "21/8", "7/4", "1/2"]),
        "shor": _fr([1, "9/2", "45/4", "147/8", "171/8", 18, "93/8", "45/8", "9/4", "1/2"]),
    },
    "Bprime": {
        "five-qubit": _fr(["1/2", "5/4", "5/4", "5/2", "5/2", 1]),
        "steane": _fr(["1/2", "7/4", "21/8", "7/2", "35/8", "21/4", "7/2", 1]),
        "shor": _fr(["1/2", "9/4", "45/8", "93/8", 18, "171/8", "147/8", "45/4", "9/2", 1]),
    },
}

FIVE_QUBIT_PROFILE = _fr(["9/32", "3/64", "3/64", 0, 0, "1/64"])

# seven of weight 3 and seven of weight 4, each at 3/256
STEANE_LISTED = (
    "0010110", "0011001", "0100101", "0101010", "1000011", "1001100", "1110000",
    "1101001", "1100110", "1011010", "1010101", "0111100", "0110011", "0001111",
)


def steane_expected(mask):
    w = mask.bit_count()
    if w == 0:
        return F(45, 256)
    if w in (1, 2):
        return F(3, 128)
    if format(mask, "07b") in STEANE_LISTED:
        return F(3, 256)
    if w == 7:
        return F(1, 256)
    return F(0)


SHOR_BLOCKS = ((0, 1, 2), (3, 4, 5), (6, 7, 8))

# (weight, block counts sorted descending) -> p(z); weights 0, 1 and 9 are block-independent
SHOR_CASES = {
    (2, (2, 0, 0)): F(25, 1024),
    (2, (1, 1, 0)): F(1, 256),
    (3, (3, 0, 0)): F(1, 64),
    (3, (1, 1, 1)): F(1, 1024),
    (4, (3, 1, 0)): F(1, 256),
    (4, (2, 2, 0)): F(5, 1024),
    (5, (3, 1, 1)): F(1, 1024),
    (6, (3, 3, 0)): F(1, 256),
    (6, (2, 2, 2)): F(1, 1024),
    (7, (3, 3, 1)): F(1, 1024),
}


def shor_block_counts(mask):
    counts = [sum(bool(mask & site_bit(i, 9)) for i in block) for block in SHOR_BLOCKS]
    return tuple(sorted(counts, reverse=True))


def shor_expected(mask):
    w = mask.bit_count()
    if w == 0:
        return F(189, 1024)
    if w == 1:
        return F(1, 64)
    if w == 9:
        return F(1, 1024)
    return SHOR_CASES.get((w, shor_block_counts(mask)), F(0))


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_err: float
    tol: float

    @property
    def passed(self):
        return bool(self.max_err <= self.tol)

    def to_dict(self):
        return {"name": self.name, "max_err": self.max_err, "tol": self.tol, "passed": self.passed}


def _err(got, want):
    got = np.asarray(got, dtype=float)
    want = np.array([float(v) for v in want])
    if got.shape != want.shape:
        return float("inf")
    return float(np.max(np.abs(got - want)))


def table1_distribution(pair, n):
    shape = SubsystemShape.uniform(n, 2)
    return analytic_distribution(pure(table1_vector(pair[0], n)), pure(table1_vector(pair[1], n)), shape)


@lru_cache(maxsize=None)
def code_state(name):
    return code_projector(named_code(name))


@lru_cache(maxsize=None)
def code_distribution(name):
    cs = code_state(name)
    return analytic_distribution(cs.rho, cs.rho, cs.shape)


def check_table1(sizes=TABLE1_SIZES):
    out = []
    for pair in TABLE1:
        for n in sizes:
            p = table1_distribution(pair, n).p
            want = [table1_profile(pair, n)[w] for w in mask_weights(n)]
            out.append(CheckResult(f"state pair {pair[0]}|{pair[1]} n={n}", _err(p, want), MASK_TOL))
    return out


def check_table2():
    out = []
    for code in ("five-qubit", "steane", "shor"):
        cs = code_state(code)
        via_dist = enumerators_from_distribution(code_distribution(code), cs.K, 2)
        direct = enumerators_direct(cs.rho, cs.shape, cs.K)
        for family, rows in TABLE2.items():
            want = rows[code]
            a = getattr(via_dist, family)
            b = getattr(direct, family)
            out.append(CheckResult(f"enumerator {family} {code} (distribution)", _err(a, want), TABLE_TOL))
            out.append(CheckResult(f"enumerator {family} {code} (direct)", _err(b, want), TABLE_TOL))
            out.append(CheckResult(f"enumerator {family} {code} (paths agree)", _err(a, b), TABLE_TOL))
    return out


def check_code_distributions():
    p5 = code_distribution("five-qubit").p
    p7 = code_distribution("steane").p
    p9 = code_distribution("shor").p
    return [
        CheckResult("five-qubit distribution",
                    _err(p5, [FIVE_QUBIT_PROFILE[w] for w in mask_weights(5)]), MASK_TOL),
        CheckResult("steane distribution",
                    _err(p7, [steane_expected(m) for m in range(1 << 7)]), MASK_TOL),
        CheckResult("shor block cases",
                    _err(p9, [shor_expected(m) for m in range(1 << 9)]), MASK_TOL),
    ]


def verify_all():
    return check_table1() + check_table2() + check_code_distributions()
