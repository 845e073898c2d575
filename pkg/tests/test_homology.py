import pytest
from hypothesis import given
from hypothesis import strategies as st

from macx.complex import Complex, SimplicialMap, deletion, link, make_complex
from macx.constructions import boundary_simplex, simplex
from macx.fixtures import fixture
from macx.homology import (
    HomologyGroup,
    alexander_duality_check,
    betti,
    boundary_matrix,
    cohomology,
    cohomology_from_homology,
    homology,
    homology_basis,
    homology_to_json,
    inclusion_is_zero_on_homology,
    induced_map,
    relative_homology,
    torsion_scan_links,
)
from macx.linalg import F2, QQ, ZZ, Field, Fp
from strategies import complexes, proper_complexes, simplicial_maps

TORUS_7 = ["124", "235", "346", "457", "156", "267", "137", "134", "245", "356", "467", "157", "126", "237"]


def nonzero(H):
    return {d: g for d, g in H.items() if not g.is_zero}


def test_sphere_homology():
    for n in range(1, 6):
        S = boundary_simplex([str(i) for i in range(n + 1)])
        assert nonzero(homology(S)) == {n - 1: HomologyGroup(1)}


def test_rp2_torsion():
    H = homology(fixture("RP2_6"))
    assert nonzero(H) == {1: HomologyGroup(0, (2,))}
    assert nonzero(cohomology(fixture("RP2_6"))) == {2: HomologyGroup(0, (2,))}
    assert nonzero(homology(fixture("RP2_6"), F2)) == {1: HomologyGroup(1), 2: HomologyGroup(1)}
    assert nonzero(homology(fixture("RP2_6"), QQ)) == {}


def test_torus():
    T = make_complex("1234567", [list(f) for f in TORUS_7])
    assert nonzero(homology(T)) == {1: HomologyGroup(2), 2: HomologyGroup(1)}


def test_void_and_empty_ground():
    assert nonzero(homology(Complex("ab", []))) == {-1: HomologyGroup(1)}
    assert nonzero(homology(simplex("abc"))) == {}
    assert betti(homology(simplex("ab"), reduced=False)) == {0: 1, 1: 0}


def test_homology_json():
    rows = homology_to_json(homology(fixture("RP2_6")))
    assert {"degree": 1, "rank": 0, "torsion": [2]} in rows
    assert str(HomologyGroup(2, (2, 4))) == "Z^2 + Z/2 + Z/4"


@given(complexes(max_vertices=7))
def test_boundary_squares_to_zero(K):
    for reduced in (True, False):
        for d in range(1, K.dim + 1):
            P = boundary_matrix(K, d, reduced).matmul(boundary_matrix(K, d + 1, reduced))
            assert P.is_zero()


@given(complexes(max_vertices=7), st.sampled_from([2, 3, 5]))
def test_universal_coefficients(K, p):
    # the F_p kernel and the Z elimination are independent code paths
    HZ = homology(K, ZZ)
    Hp = homology(K, Fp(p))
    for d, g in Hp.items():
        divisible = sum(1 for t in HZ[d].torsion if t % p == 0)
        if d - 1 in HZ:
            divisible += sum(1 for t in HZ[d - 1].torsion if t % p == 0)
        assert g.rank == HZ[d].rank + divisible


@given(complexes(max_vertices=7))
def test_rational_rank_matches_free_rank(K):
    HZ, HQ = homology(K, ZZ), homology(K, QQ)
    assert {d: g.rank for d, g in HZ.items()} == {d: g.rank for d, g in HQ.items()}


@given(complexes(max_vertices=7))
def test_euler_characteristic(K):
    b = betti(homology(K, QQ, reduced=False))
    assert sum((-1) ** d * n for d, n in b.items()) == K.euler_characteristic()


@given(complexes(max_vertices=7))
def test_cohomology_matches_universal_coefficients(K):
    assert cohomology(K, ZZ) == cohomology_from_homology(homology(K, ZZ))


@given(proper_complexes(max_vertices=8))
def test_alexander_duality(K):
    assert alexander_duality_check(K)["ok"]


@given(simplicial_maps(), st.data(), st.sampled_from([QQ, F2]))
def test_functoriality(f, data, ring):
    g = data.draw(simplicial_maps(source=f.target))
    gf = f.compose(g)
    fld = Field(ring)
    zero = fld.coerce(0)
    for d in range(-1, f.source.dim + 1):
        A = induced_map(f, d, ring)
        B = induced_map(g, d, ring)
        C = induced_map(gf, d, ring)
        n_src = homology_basis(f.source, d, ring).dim
        n_mid = homology_basis(f.target, d, ring).dim
        prod = [[sum((B[i][k] * A[k][j] for k in range(n_mid)), zero) for j in range(n_src)]
                for i in range(len(B))]
        assert [[fld.coerce(x) for x in r] for r in C] == prod


@given(complexes(max_vertices=6, ghosts=False))
def test_identity_induces_identity(K):
    f = SimplicialMap.identity(K)
    for d in range(-1, K.dim + 1):
        M = induced_map(f, d, QQ)
        assert M == [[int(i == j) for j in range(len(M))] for i in range(len(M))]


def test_relative_homology():
    n = 3
    D = simplex("abcd")
    H = relative_homology(D, boundary_simplex("abcd"))
    assert nonzero(H) == {n: HomologyGroup(1)}


@given(complexes(max_vertices=6), st.data())
def test_relative_euler_characteristic(K, data):
    v = data.draw(st.sampled_from(K.ground.labels))
    A = deletion(K, v)
    H = relative_homology(K, A, QQ)
    chi = sum((-1) ** d * g.rank for d, g in H.items())
    chi_a = A.euler_characteristic() if not A.is_void_simplex() else 0
    chi_k = K.euler_characteristic() if not K.is_void_simplex() else 0
    assert chi == chi_k - chi_a


def test_inclusion_zero():
    S = boundary_simplex("abc")
    assert inclusion_is_zero_on_homology(S, simplex("abc"), QQ)
    assert not inclusion_is_zero_on_homology(S, S, QQ)


def test_torsion_scan():
    rep = torsion_scan_links(fixture("RP2_6"))
    assert not rep["torsion_free"]
    assert [t["face"] for t in rep["torsion_faces"]] == [[]]
    assert rep["faces_scanned"] == 1 + 6 + 15 + 10
    assert torsion_scan_links(fixture("S3_12"))["torsion_free"]


def test_link_of_sphere_vertices():
    S = fixture("S3_12")
    for v in S.ground.labels:
        assert nonzero(homology(link(S, [v]))) == {2: HomologyGroup(1)}


def test_functoriality_rejects_z():
    with pytest.raises(ValueError):
        induced_map(SimplicialMap.identity(simplex("a")), 0, ZZ)
