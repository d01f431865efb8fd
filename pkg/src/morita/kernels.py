"""Dense elimination kernels: compiled if available, pure Python otherwise.

Set ``MORITA_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("MORITA_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

COMPILED = _impl is not _kernels_py

rref_mod_p = _impl.rref_mod_p
rank_mod_p = _impl.rank_mod_p
rank_int = _impl.rank_int
sparse_rank = _impl.sparse_rank


def sparse_rank_exact(vectors, ncoords, p, split=0):
    """``sparse_rank`` that retries in pure Python when int64 would overflow."""
    out = _impl.sparse_rank(vectors, ncoords, p, split)
    if out is None:
        out = _kernels_py.sparse_rank(vectors, ncoords, p, split)
    return out
