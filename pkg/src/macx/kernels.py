"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``MACX_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

_impl = _kernels_py
if os.environ.get("MACX_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:  # extension not built
        _impl = _kernels_py

IMPLEMENTATION: str = _impl.IMPLEMENTATION

# above this many dense entries the sparse fallback is used even when compiled
DENSE_LIMIT = 25_000_000


def rank_mod_p(matrix, p: int) -> int:
    return _impl.rank_mod_p(matrix, p)


def boundary_rank_mod_p(lower, upper, p: int) -> int:
    """Rank mod ``p`` of the boundary from ``upper`` faces to sorted ``lower`` faces."""
    if len(lower) == 0 or len(upper) == 0:
        return 0
    if _impl is not _kernels_py:
        if len(lower) * len(upper) > DENSE_LIMIT or max(int(max(lower)), int(max(upper))) >> 63:
            return _kernels_py.boundary_rank_mod_p(lower, upper, p)
    return _impl.boundary_rank_mod_p(lower, upper, p)


def reduced_betti_mod_p(faces_by_dim, p: int, reduced: bool = True) -> dict[int, int]:
    """Betti numbers over F_p of a complex given as numerically sorted face masks.

    ``faces_by_dim[d]`` lists the ``d``-faces.  Returns a dict keyed by
    degree, starting at -1 when ``reduced``.
    """
    top = len(faces_by_dim) - 1
    while top >= 0 and len(faces_by_dim[top]) == 0:
        top -= 1
    counts = {d: len(faces_by_dim[d]) for d in range(top + 1)}
    ranks = {}
    for d in range(1, top + 1):
        ranks[d] = boundary_rank_mod_p(faces_by_dim[d - 1], faces_by_dim[d], p)
    if reduced:
        counts[-1] = 1
        ranks[0] = 1 if counts.get(0, 0) else 0
    else:
        ranks[0] = 0
    lo = -1 if reduced else 0
    out = {}
    for d in range(lo, top + 1):
        out[d] = counts.get(d, 0) - ranks.get(d, 0) - ranks.get(d + 1, 0)
    if top < 0 and not reduced:
        out = {}
    return out
