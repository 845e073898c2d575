import re
from collections import Counter
from itertools import combinations

import pytest
from sympy import Matrix
from hypothesis import assume, given, settings

from macx.complex import Complex, ComplexError, SimplicialMap, is_subcomplex, link, make_complex, union_along_face
from macx.constructions import (
    APEX,
    OrderedComplex,
    barycentric_subdivision,
    box_product,
    build_counterexample_K,
    cylinder_source_copy,
    facet_cone_F,
    mapping_cone,
    mapping_cylinder,
    simplex,
)
from macx.fixtures import S3_12_TABLE, fixture, parse_table
from macx.homology import HomologyGroup, betti, homology, induced_map
from macx.linalg import QQ
from macx.scx import render_scx
from strategies import complexes, simplicial_maps

# Facets of the mapping cylinder of the 12-vertex Hopf map, transcribed as
# printed (x_i is a source vertex at level 1, a bare letter a vertex of S^2_4).
CYLINDER_TABLE = r"""
a_0b_0c_0c_1c&&&a_0a_2b_0d_1d&a_0a_2b_0bd&a_0a_2abd&a_0b_1d_0d_2d&&\\
a_0b_0b_1c_1c&a_0b_0b_1bc&&a_0b_0b_1d_1d&a_0b_0b_1bd&&b_1c_2d_0d_2d&&\\
a_0a_1b_1c_1c&a_0a_1b_1bc&a_0a_1abc&b_0b_1c_1d_1d&b_0b_1c_1cd&b_0b_1bcd&a_0c_2d_0d_2d&&\\
a_1a_2b_1c_1c&a_1a_2b_1bc&a_1a_2abc&b_1c_1c_2d_1d&b_1c_1c_2cd&&a_0a_1b_1d_2d&a_0a_1b_1bd&a_0a_1abd\\
a_2b_1c_1c_2c&&&a_2c_1c_2d_1d&a_2c_1c_2cd&&a_1a_2b_1d_2d&a_1a_2b_1bd&a_1a_2abd\\
a_2b_1b_2c_2c&a_2b_1b_2bc&&a_0a_2c_2d_1d&a_0a_2c_2cd&a_0a_2acd&a_2b_1b_2d_2d&a_2b_1b_2bd&\\
a_2b_0b_2c_2c&a_2b_0b_2bc&&a_0b_1d_0d_1d&&&a_2b_0b_2d_2d&a_2b_0b_2bd&\\
a_0a_2b_0c_2c&a_0a_2b_0bc&a_0a_2abc&b_1c_2d_0d_1d&&&b_1b_2c_2d_2d&b_1b_2c_2cd&b_1b_2bcd\\
a_0b_0c_0c_2c&&&a_0c_2d_0d_1d&&&b_0b_2c_2d_2d&b_0b_2c_2cd&b_0b_2bcd\\
&&&&&&b_0c_0c_2d_2d&b_0c_0c_2cd&\\
&&&&&&b_0c_0c_1d_2d&b_0c_0c_1cd&\\
&&&&&&a_0c_0c_2d_2d&a_0c_0c_2cd&\\
&&&&&&a_0c_0c_1d_2d&a_0c_0c_1cd&\\
&&&&&&a_0a_1c_1d_2d&a_0a_1c_1cd&a_0a_1acd\\
&&&&&&a_1a_2c_1d_2d&a_1a_2c_1cd&a_1a_2acd\\
&&&&&&a_2b_0d_1d_2d&&\\
&&&&&&b_0c_1d_1d_2d&&\\
&&&&&&a_2c_1d_1d_2d&&\\
"""


def parse_cylinder_table(text):
    facets = []
    for row in text.strip().split("\\\\"):
        for cell in row.split("&"):
            cell = cell.strip()
            if not cell:
                continue
            toks = re.findall(r"([a-d])(?:_(\d))?", cell)
            assert "".join(x + ("_" + i if i else "") for x, i in toks) == cell
            facets.append(frozenset(f"({x}{i},1)" if i else x for x, i in toks))
    return facets


def nonzero(H):
    return {d: g for d, g in H.items() if not g.is_zero}


def test_s3_12_table_shape():
    facets = parse_table(S3_12_TABLE)
    assert len(facets) == 36 and len(set(map(frozenset, facets))) == 36
    assert all(len(f) == 4 for f in facets)


def test_s3_12_is_a_combinatorial_3_sphere():
    S = fixture("S3_12")
    assert S.m == 12 and len(S.facets) == 36 and S.is_pure() and S.dim == 3
    tri = Counter()
    for f in S.facets:
        for t in combinations(S.labels(f), 3):
            tri[t] += 1
    assert set(tri.values()) == {2}
    assert S.euler_characteristic() == 0
    assert nonzero(homology(S)) == {3: HomologyGroup(1)}
    for v in S.ground.labels:
        lk = link(S, [v])
        assert lk.euler_characteristic() == 2
        assert nonzero(homology(lk)) == {2: HomologyGroup(1)}


def test_eta12_is_simplicial_and_onto():
    eta = fixture("ETA12")
    assert set(eta.vertex_map.values()) == set("abcd")
    images = {eta.image(f) for f in eta.source.facets}
    assert images <= set(eta.target.all_faces())


def test_cylinder_matches_printed_table():
    L = mapping_cylinder(fixture("ETA12"))
    printed = parse_cylinder_table(CYLINDER_TABLE)
    assert len(printed) == len(set(printed))
    assert {frozenset(f) for f in L.facet_labels()} == set(printed)


def test_cylinder_structure():
    eta = fixture("ETA12")
    L = mapping_cylinder(eta)
    S = cylinder_source_copy(eta)
    assert L.m == 16
    assert is_subcomplex(S, L) and is_subcomplex(eta.target, L)
    assert nonzero(homology(L)) == {2: HomologyGroup(1)}


def test_cone_is_cp2_like():
    C = mapping_cone(fixture("ETA12"))
    assert APEX in C.ground
    assert nonzero(homology(C)) == {2: HomologyGroup(1), 4: HomologyGroup(1)}


def test_cone_apex_reserved():
    K = simplex([APEX])
    f = SimplicialMap(simplex("x"), K, {"x": APEX})
    with pytest.raises(ComplexError):
        mapping_cone(f)


def test_box_product_of_simplices():
    P = box_product(simplex("01"), simplex("01"))
    assert P.f_vector() == [4, 5, 2]
    assert len(box_product(simplex("012"), simplex("01")).facets) == 3
    with pytest.raises(ComplexError):
        OrderedComplex(simplex("ab"), ("a",))


def test_box_product_respects_orders():
    A = box_product(OrderedComplex(simplex("01"), ("1", "0")), simplex("xy"))
    assert {frozenset(f) for f in A.facet_labels()} == {
        frozenset({"(1,x)", "(0,x)", "(0,y)"}),
        frozenset({"(1,x)", "(1,y)", "(0,y)"}),
    }


def kunneth(bk, bl):
    out = {}
    for i, x in bk.items():
        for j, y in bl.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {d: n for d, n in out.items() if n}


@settings(max_examples=40)
@given(complexes(max_vertices=5, max_facets=3), complexes(max_vertices=5, max_facets=3, labels="pqrst"))
def test_box_product_kunneth(K, L):
    assume(not K.is_void_simplex() and not L.is_void_simplex())
    P = box_product(K, L)
    got = {d: n for d, n in betti(homology(P, QQ, reduced=False)).items() if n}
    want = kunneth(betti(homology(K, QQ, reduced=False)), betti(homology(L, QQ, reduced=False)))
    assert got == want


@given(complexes(max_vertices=6))
def test_facet_cone_homotopy_equivalent(K):
    assume(not K.is_void_simplex())
    F, new = facet_cone_F(K)
    assert len(new) == len(K.facets)
    assert homology(F) == homology(K) | {d: HomologyGroup() for d in homology(F) if d not in homology(K)}


@given(complexes(max_vertices=5, max_facets=4))
def test_subdivision_preserves_homology(K):
    assume(not K.is_void_simplex())
    assert nonzero(homology(barycentric_subdivision(K))) == nonzero(homology(K))


@settings(max_examples=40)
@given(simplicial_maps(max_vertices=4))
def test_cylinder_deformation(f):
    C = mapping_cylinder(f)
    inc = SimplicialMap(f.target, C, {x: x for x in f.target.ground.labels})
    for d in range(-1, C.dim + 1):
        M = induced_map(inc, d, QQ)
        n = len(M)
        cols = len(M[0]) if M else 0
        assert n == cols
        if n:
            assert Matrix(M).rank() == n


def test_counterexample_structure():
    ce = build_counterexample_K(fixture("ETA12"))
    K = ce.K
    assert K.m == 55 and len(ce.V) == 52
    assert len(K.facets) == 1 + len(ce.L.facets) + len(ce.F.facets) + 36 == 145
    assert K.is_face(list(ce.V) + [ce.v0])
    # the sphere copy is a subcomplex of K and the link of {w1,w2} is that copy
    assert is_subcomplex(ce.sphere_copy, K)
    lk = link(K, [ce.w1, ce.w2])
    assert {frozenset(f) for f in lk.facet_labels()} == {frozenset(f) for f in ce.sphere_copy.facet_labels()}
    # K is a union along the face V of the simplex on V+v0 and K2
    K1, K2 = ce.K1(), ce.K2()
    U = union_along_face(
        Complex(list(ce.V) + [ce.v0], [K1.ground.transfer(f, K1.ground) for f in K1.facets]),
        make_complex([x for x in K.ground.labels if x != ce.v0], [K2.labels(f) for f in K2.facets]),
        list(ce.V),
    )
    assert {frozenset(f) for f in U.facet_labels()} == {frozenset(f) for f in K.facet_labels()}


def test_counterexample_fixture_renders():
    text = render_scx(fixture("COUNTEREXAMPLE_K"))
    assert text.count("\nfacet ") == 145
