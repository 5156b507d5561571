"""Scan-kernel selection: compiled extension when available, else Python.

The compiled kernel accumulates in 128-bit integers, so it is only used
when every partial sum provably fits; anything larger (or any explicit
opt-out via MULTIMAGIC_PURE=1) routes to the pure Python kernel, which
is exact at every size.
"""

from __future__ import annotations

import os

from . import _scan_py

if os.environ.get("MULTIMAGIC_PURE"):
    _scan_ext = None
else:
    try:
        from . import _scan_c as _scan_ext
    except ImportError:
        _scan_ext = None

HAVE_COMPILED = _scan_ext is not None

# headroom: largest accumulator is sum over m*m cells of value**emax
_U128_LIMIT = 2 ** 126


def compiled_fits(max_value: int, ncells: int, emax: int) -> bool:
    return max_value >= 0 and max_value ** emax * ncells < _U128_LIMIT


def active_kernel(max_value: int, ncells: int, emax: int, prefer=None):
    """Pick the kernel module for a scan with the given bounds.

    prefer: None (auto), "python", or "compiled" (falls back with a
    ValueError if the compiled kernel cannot hold the sums).
    """
    if prefer == "python" or _scan_ext is None:
        return _scan_py
    fits = compiled_fits(max_value, ncells, emax) and emax <= _scan_ext.MAX_DEGREE
    if prefer == "compiled":
        if not fits:
            raise ValueError("sums too large for the compiled kernel")
        return _scan_ext
    return _scan_ext if fits else _scan_py


def kernel_name(mod) -> str:
    return "compiled" if getattr(mod, "IS_COMPILED", False) else "python"
