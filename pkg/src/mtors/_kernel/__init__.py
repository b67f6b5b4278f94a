"""Integer kernel selection: compiled Cython module if built, else pure Python.

Set ``MTORS_PURE_PY=1`` to force the pure-Python implementations even
when the compiled extension is available.
"""

import os

from . import _pure

if os.environ.get("MTORS_PURE_PY"):
    _impl = _pure
    USING_COMPILED = False
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]

        USING_COMPILED = True
    except ImportError:
        _impl = _pure
        USING_COMPILED = False

xgcd = _impl.xgcd
vec_addmul = _impl.vec_addmul
hnf_core = _impl.hnf_core
mat_mul = _impl.mat_mul
mat_vec = _impl.mat_vec
bareiss_det = _impl.bareiss_det
snf_diag_core = _impl.snf_diag_core
snf_transform_core = _impl.snf_transform_core

__all__ = [
    "USING_COMPILED",
    "xgcd",
    "vec_addmul",
    "hnf_core",
    "mat_mul",
    "mat_vec",
    "bareiss_det",
    "snf_diag_core",
    "snf_transform_core",
]
