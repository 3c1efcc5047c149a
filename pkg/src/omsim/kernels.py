"""Backend selection for the numerical hot kernels.

At import time the compiled extension (``omsim._core``, built from Cython)
is preferred; the NumPy reference implementation is used when the extension
is missing. Set ``OMSIM_BACKEND=reference`` to force the fallback or
``OMSIM_BACKEND=compiled`` to make a missing extension an error. Both
backends implement the same contracts (see ``omsim._ref_kernels``) and are
compared against each other in the test suite and in
``benchmarks/bench_kernels.py``.
"""

from __future__ import annotations

import os

from omsim import _ref_kernels

_requested = os.environ.get("OMSIM_BACKEND", "").strip().lower()

if _requested == "reference":
    _impl = _ref_kernels
    BACKEND = "reference"
elif _requested == "compiled":
    from omsim import _core as _impl  # ImportError here is intentional

    BACKEND = "compiled"
elif _requested == "":
    try:
        from omsim import _core as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _ref_kernels
        BACKEND = "reference"
else:
    raise RuntimeError(
        f"OMSIM_BACKEND={_requested!r} not understood (use 'compiled' or 'reference')"
    )

ladder_sweep = _impl.ladder_sweep
xcorr_accumulate = _impl.xcorr_accumulate


def available_backends() -> list[str]:
    """Names of the kernel backends importable in this environment."""
    names = []
    try:
        from omsim import _core  # noqa: F401

        names.append("compiled")
    except ImportError:
        pass
    names.append("reference")
    return names
