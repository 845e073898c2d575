import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from macx import _kernels_py, kernels
from macx.homology import homology
from macx.linalg import Fp
from strategies import complexes

try:
    from macx import _ckernels
except ImportError:
    _ckernels = None

PRIMES = [2, 3, 5, 7, 101]
needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")

matrices = st.integers(1, 8).flatmap(
    lambda c: st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=1, max_size=8))


def sympy_rank(rows, p):
    from sympy import GF
    from sympy.polys.matrices import DomainMatrix

    return DomainMatrix([[GF(p)(x) for x in r] for r in rows], (len(rows), len(rows[0])), GF(p)).rank()


@settings(max_examples=150)
@given(matrices, st.sampled_from(PRIMES))
def test_python_rank_matches_sympy(rows, p):
    assert _kernels_py.rank_mod_p(rows, p) == sympy_rank(rows, p)


@needs_ext
@settings(max_examples=150)
@given(matrices, st.sampled_from(PRIMES))
def test_compiled_rank_matches_python(rows, p):
    assert _ckernels.rank_mod_p(rows, p) == _kernels_py.rank_mod_p(rows, p)


@needs_ext
@settings(max_examples=100)
@given(complexes(max_vertices=8, max_facets=6), st.sampled_from(PRIMES))
def test_compiled_boundary_rank_matches_python(K, p):
    for d in range(1, K.dim + 1):
        lower = sorted(K.faces(d - 1))
        upper = sorted(K.faces(d))
        assert _ckernels.boundary_rank_mod_p(lower, upper, p) == _kernels_py.boundary_rank_mod_p(lower, upper, p)


def test_relative_faces_are_dropped():
    # boundary of the edge {0,1} into lower faces containing only vertex 0
    assert _kernels_py.boundary_rank_mod_p([0b01], [0b11], 2) == 1
    if _ckernels is not None:
        assert _ckernels.boundary_rank_mod_p([0b01], [0b11], 2) == 1
    assert kernels.boundary_rank_mod_p([], [0b11], 3) == 0


@settings(max_examples=60)
@given(complexes(max_vertices=7), st.sampled_from([2, 3]))
def test_betti_mod_p_matches_homology(K, p):
    fd = [sorted(K.faces(d)) for d in range(K.dim + 1)]
    b = kernels.reduced_betti_mod_p(fd, p)
    H = homology(K, Fp(p))
    assert {d: n for d, n in b.items() if n} == {d: g.rank for d, g in H.items() if g.rank}


def test_implementation_flag():
    expect = "python" if _ckernels is None or os.environ.get("MACX_PURE_PYTHON") == "1" else _ckernels.IMPLEMENTATION
    assert kernels.IMPLEMENTATION == expect


def test_pure_python_fallback_subprocess():
    code = (
        "from macx import kernels; from macx.fixtures import fixture; from macx.homology import homology;"
        "from macx.linalg import F2; H = homology(fixture('RP2_6'), F2);"
        "print(kernels.IMPLEMENTATION, H[1].rank, H[2].rank)"
    )
    env = dict(os.environ, MACX_PURE_PYTHON="1")
    r = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert r.returncode == 0, r.stderr
    assert r.stdout.split() == ["python", "1", "1"]
