"""Pure-Python versions of the compiled kernels in ``_ckernels.pyx``.

Both modules expose the same functions with the same semantics; the
selection happens in :mod:`macx.kernels`.
"""

from bisect import bisect_left


def rank_mod_p(matrix, p):
    """Rank of an integer matrix (sequence of rows) modulo the prime ``p``."""
    pivots = {}
    for row in matrix:
        v = {j: int(x) % p for j, x in enumerate(row) if int(x) % p}
        _insert(pivots, v, p)
    return len(pivots)


def _insert(pivots, v, p):
    while v:
        piv = min(v)
        prow = pivots.get(piv)
        if prow is None:
            inv = pow(v[piv], p - 2, p) if p > 2 else 1
            pivots[piv] = {k: (x * inv) % p for k, x in v.items()}
            return True
        a = (-v[piv]) % p
        for k, x in prow.items():
            w = (v.get(k, 0) + a * x) % p
            if w:
                v[k] = w
            else:
                v.pop(k, None)
    return False


def boundary_rank_mod_p(lower, upper, p):
    """Rank mod ``p`` of the simplicial boundary from ``upper`` faces to ``lower`` faces.

    Faces are bitmasks; ``lower`` must be sorted increasingly.  Sub-faces
    missing from ``lower`` are dropped (relative chains).  The sign of
    removing the ``j``-th smallest vertex is ``(-1)**j``.
    """
    lower = [int(x) for x in lower]
    n = len(lower)
    pivots = {}
    for f in upper:
        f = int(f)
        v = {}
        rest = f
        j = 0
        while rest:
            low = rest & -rest
            rest ^= low
            sub = f ^ low
            k = bisect_left(lower, sub)
            if k < n and lower[k] == sub:
                v[k] = (1 if j % 2 == 0 else p - 1) % p
            j += 1
        v = {k: x for k, x in v.items() if x}
        _insert(pivots, v, p)
    return len(pivots)


IMPLEMENTATION = "python"
