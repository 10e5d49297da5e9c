"""Backend selection for the batch kernels.

The compiled extension is used when it was built; set ``PARORB_PURE_PYTHON=1``
to force the reference implementation.
"""
import os

if os.environ.get("PARORB_PURE_PYTHON"):
    from . import _pykernels as _impl
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        from . import _pykernels as _impl
        BACKEND = "python"

perm_mul_table = _impl.perm_mul_table
semidirect_mul_table = _impl.semidirect_mul_table
expand_monomial = _impl.expand_monomial
monomial_traces = _impl.monomial_traces
kron_monomial = _impl.kron_monomial

__all__ = [
    "BACKEND",
    "perm_mul_table",
    "semidirect_mul_table",
    "expand_monomial",
    "monomial_traces",
    "kron_monomial",
]
