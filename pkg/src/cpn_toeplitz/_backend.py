"""Select compiled kernels when built, numpy fallback otherwise.

Set ``CPN_TOEPLITZ_BACKEND=python`` to force the fallback.
"""
import os

from . import _fallback

monomials = _fallback.monomials

if os.environ.get("CPN_TOEPLITZ_BACKEND", "").lower() == "python":
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

if _compiled is not None:
    BACKEND = "compiled"
    accumulate_moments = _compiled.accumulate_moments
    jacobi_hermitian = _compiled.jacobi_hermitian
else:
    BACKEND = "python"
    accumulate_moments = _fallback.accumulate_moments
    jacobi_hermitian = _fallback.jacobi_hermitian

KERNELS = {"python": _fallback}
if _compiled is not None:
    KERNELS["compiled"] = _compiled
