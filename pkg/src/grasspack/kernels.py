"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the numpy
fallback.  Both implementations stay importable for cross-checking.
"""

from . import _kernels_py as python_impl

try:
    from . import _ckernels as compiled_impl
except ImportError:  # extension not built
    compiled_impl = None

_impl = compiled_impl if compiled_impl is not None else python_impl
BACKEND = "cython" if compiled_impl is not None else "python"

chordal_sq_matrix = _impl.chordal_sq_matrix
softmin_chordal = _impl.softmin_chordal
project_tangent = _impl.project_tangent
orthonormalize_rows = _impl.orthonormalize_rows
