"""Resource caps.

The caps are process-wide and can be changed temporarily with :func:`override`::

    with limits.override(max_operator_entries=2**26):
        ...
"""
from contextlib import contextmanager
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Limits:
    # dense operator entries (rows * cols)
    max_operator_entries: int = 2**24
    # amplitudes of the joint ancilla+register statevector
    max_statevector: int = 2**22
    # sites for brute-force enumeration over 4^n Pauli words
    max_pauli_sites: int = 9


_current = Limits()


def get():
    return _current


@contextmanager
def override(**changes):
    global _current
    saved = _current
    _current = replace(_current, **changes)
    try:
        yield _current
    finally:
        _current = saved
