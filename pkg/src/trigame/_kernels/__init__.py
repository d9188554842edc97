"""Kernel dispatch: compiled extension when available, numpy twin otherwise.

Both backends implement the same floating-point expression tree and return
bit-identical results, so which one loads affects speed only. Set
``TRIGAME_FORCE_PYTHON_KERNELS=1`` to skip the extension (used by the
parity tests and the benchmark).
"""

import os

import numpy as np

from . import _pykernels
from ._pykernels import (
    FILTER_BIT,
    MODEL_BIT,
    NEGATIVE_TOL,
    OK,
    OUT_OF_SIMPLEX,
    SINGULAR,
    SINGULAR_TOL,
    TOL,
)

if os.environ.get("TRIGAME_FORCE_PYTHON_KERNELS"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

__all__ = [
    "BACKEND",
    "forward_map",
    "oracle_sweep",
    "feasibility_bit",
    "MODEL_BIT",
    "FILTER_BIT",
    "TOL",
    "SINGULAR_TOL",
    "NEGATIVE_TOL",
    "OK",
    "SINGULAR",
    "OUT_OF_SIMPLEX",
]


def _as_f64(x) -> np.ndarray:
    out = np.ascontiguousarray(x, dtype=np.float64)
    assert out.ndim == 1, "kernel inputs are 1-D arrays"
    return out


def forward_map(p02, p01, p10):
    """Vectorized strategy-to-frequencies map; see ``_pykernels.forward_map``."""
    return _impl.forward_map(_as_f64(p02), _as_f64(p01), _as_f64(p10))


def oracle_sweep(q0, q1, q2):
    """Vectorized feasibility decisions; see ``_pykernels.oracle_sweep``."""
    return _impl.oracle_sweep(_as_f64(q0), _as_f64(q1), _as_f64(q2))


def feasibility_bit(model: str, class_filter: str) -> int:
    """Mask selecting one (model, filter) decision in oracle_sweep output."""
    return 1 << (MODEL_BIT[model] + FILTER_BIT[class_filter])
