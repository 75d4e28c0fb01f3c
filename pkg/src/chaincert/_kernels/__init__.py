"""Hot numeric kernels with a compiled core and a pure-Python fallback.

The compiled extension (_speedups, Cython) is preferred when importable;
set CHAINCERT_PURE_KERNELS=1 to force the pure implementation. Both expose
the same three functions with identical semantics:

    matmul_int(a, b, m, n, k)       exact integer matrix product
    matmul_mod(a, b, m, n, k, p)    matrix product over F_p
    rref_mod(a, m, n, p)            reduced row echelon form over F_p
"""

import os

if os.environ.get("CHAINCERT_PURE_KERNELS"):
    from . import _pure as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pure as _impl

matmul_int = _impl.matmul_int
matmul_mod = _impl.matmul_mod
rref_mod = _impl.rref_mod
IMPLEMENTATION = _impl.IMPLEMENTATION
