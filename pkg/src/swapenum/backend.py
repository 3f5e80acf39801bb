"""Kernel backend selection.

The compiled extension ``swapenum._ckernels`` is used when it imports; otherwise
the numpy fallback in ``swapenum._pykernels`` is used.  Setting the environment
variable ``SWAPENUM_BACKEND=python`` forces the fallback.
"""
import importlib
import os

from . import _pykernels

__all__ = ["NAME", "available", "get", "fwht", "apply_hadamard", "apply_cswap",
           "pauli_weight_sums"]


def _load_compiled():
    try:
        return importlib.import_module("swapenum._ckernels")
    except ImportError:
        return None


_compiled = _load_compiled()


def available():
    """Names of the backends importable in this process."""
    return ["compiled", "python"] if _compiled is not None else ["python"]


def get(name):
    """Return the kernel module for ``name`` ("compiled" or "python")."""
    if name == "python":
        return _pykernels
    if name == "compiled":
        if _compiled is None:
            raise ImportError("compiled kernels are not built; run `pip install -e .`")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


if os.environ.get("SWAPENUM_BACKEND", "").lower() == "python" or _compiled is None:
    NAME = "python"
else:
    NAME = "compiled"

_active = get(NAME)
fwht = _active.fwht
apply_hadamard = _active.apply_hadamard
apply_cswap = _active.apply_cswap
pauli_weight_sums = _active.pauli_weight_sums
