from fractions import Fraction
from math import comb

import pytest

from swapenum import tables
from swapenum.tables import (STEANE_LISTED, TABLE1, check_table1, shor_block_counts,
                             shor_expected, steane_expected, table1_profile)


@pytest.mark.parametrize("pair", sorted(TABLE1))
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_table1_rows_normalized(pair, n):
    prof = table1_profile(pair, n)
    assert sum(comb(n, k) * v for k, v in enumerate(prof)) == 1


@pytest.mark.parametrize("fn,n", [(steane_expected, 7), (shor_expected, 9)])
def test_case_tables_normalized(fn, n):
    assert sum(fn(m) for m in range(1 << n)) == 1


def test_five_qubit_profile_normalized():
    assert sum(comb(5, k) * v for k, v in enumerate(tables.FIVE_QUBIT_PROFILE)) == 1


def test_steane_listing_weights():
    weights = sorted(s.count("1") for s in STEANE_LISTED)
    assert weights == [3] * 7 + [4] * 7
    assert len(set(STEANE_LISTED)) == 14


def test_shor_block_counts():
    assert shor_block_counts(0b110000000) == (2, 0, 0)
    assert shor_block_counts(0b100100100) == (1, 1, 1)
    assert shor_expected(0b000000011) == Fraction(25, 1024)


def test_table2_B_prime_is_reversed_A_prime():
    for code, ap in tables.TABLE2["Aprime"].items():
        assert tables.TABLE2["Bprime"][code] == ap[::-1]


def test_table1_checks_pass_for_larger_n():
    assert all(r.passed for r in check_table1(sizes=[7]))


def test_check_result_failure_is_reported():
    r = tables.CheckResult("x", 1e-3, 1e-9)
    assert not r.passed and r.to_dict()["passed"] is False
    assert tables._err([1.0, 2.0], [1]) == float("inf")
