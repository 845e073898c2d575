from itertools import combinations

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from macx.complex import (
    Complex,
    ComplexError,
    FaceCountExceeded,
    GroundSet,
    SimplicialMap,
    alexander_dual,
    deletion,
    is_subcomplex,
    join,
    link,
    make_complex,
    minimal_non_faces,
    relabel,
    restriction,
    star,
    union,
    union_along_face,
)
from macx.constructions import boundary_simplex, simplex
from strategies import all_subsets, brute_faces, complexes, proper_complexes


def on(ground, K):
    """``K`` moved onto a larger ground set."""
    g = GroundSet(ground)
    return Complex(g, [K.ground.transfer(f, g) for f in K.facets])


def is_antichain(K):
    return all(a == b or a & ~b for a in K.facets for b in K.facets)


def test_ground_set_masks():
    g = GroundSet("xyz")
    assert g.mask(["x", "z"]) == 0b101
    assert g.labels_of(0b110) == ("y", "z")
    with pytest.raises(ComplexError):
        g.mask(["w"])
    with pytest.raises(ComplexError):
        GroundSet("xx")


def test_void_and_ghosts():
    K = Complex("ab", [])
    assert K.is_void_simplex()
    assert K.ghosts == ("a", "b")
    assert K.dim == -1
    assert K.f_vector() == []


def test_boundary_simplex_counts():
    K = boundary_simplex("abcd")
    assert K.f_vector() == [4, 6, 4]
    assert K.euler_characteristic() == 2
    assert minimal_non_faces(K) == [K.ground.full]


def test_facets_pruned():
    K = make_complex("abc", ["ab", "a", "abc", "bc"])
    assert K.facets == (0b111,)


def test_link_and_star_examples():
    K = boundary_simplex("abcd")
    assert link(K, ["a"]) == boundary_simplex("bcd")
    assert star(K, ["a"]).facet_labels() == [("a", "b", "c"), ("a", "b", "d"), ("a", "c", "d")]
    with pytest.raises(ComplexError):
        link(K, ["a", "b", "c", "d"])


def test_face_guard():
    K = simplex("abcdefghijklmnopqrstuvwxyz")
    with pytest.raises(FaceCountExceeded):
        K.faces(12, max_faces=1000)


def test_join_needs_disjoint_ground():
    with pytest.raises(ComplexError):
        join(simplex("ab"), simplex("bc"))


def test_union_along_face_requires_common_face():
    with pytest.raises(ComplexError):
        union_along_face(boundary_simplex("ab"), simplex("abd"))
    U = union_along_face(simplex("abc"), simplex("bcd"))
    assert U.facet_labels() == [("a", "b", "c"), ("b", "c", "d")]


def test_dual_of_simplex_boundary_is_void():
    D = alexander_dual(boundary_simplex("abcd"))
    assert D.is_void_simplex() and D.m == 4
    with pytest.raises(ComplexError):
        alexander_dual(simplex("ab"))


def test_dual_ground_override_adds_ghosts():
    D = alexander_dual(boundary_simplex("ab"), ground="abc")
    assert D.m == 3


@given(complexes())
def test_faces_match_brute_force(K):
    assert set(K.all_faces()) == brute_faces(K)
    assert is_antichain(K)
    assert sum(K.f_vector()) + 1 == len(brute_faces(K))


@given(complexes(), st.data())
def test_star_is_simplex_join_link(K, data):
    sigma = data.draw(st.sampled_from(sorted(brute_faces(K))))
    lk = link(K, sigma)
    combined = Complex(K.ground, [sigma | lk.ground.transfer(t, K.ground) for t in lk.facets])
    assert star(K, sigma) == combined
    assert is_antichain(lk) and is_antichain(star(K, sigma))


@given(complexes(max_vertices=4), complexes(max_vertices=4, labels="pqrs"), st.data())
def test_restriction_of_join(K, L, data):
    J = join(K, L)
    I = data.draw(st.integers(0, J.ground.full))
    labs = set(J.labels(I))
    lhs = restriction(J, [x for x in J.ground.labels if x in labs])
    rhs = join(restriction(K, [x for x in K.ground.labels if x in labs]),
               restriction(L, [x for x in L.ground.labels if x in labs]))
    assert lhs == rhs


@given(complexes(max_vertices=4), complexes(max_vertices=4, labels="pqrs"))
def test_join_faces(K, L):
    J = join(K, L)
    assert len(brute_faces(J)) == len(brute_faces(K)) * len(brute_faces(L))
    assert is_antichain(J)


@given(proper_complexes(max_vertices=7))
def test_dual_definition_and_involution(K):
    D = alexander_dual(K)
    full = K.ground.full
    faces = brute_faces(K)
    assert brute_faces(D) == {s for s in all_subsets(full) if full & ~s not in faces}
    assert alexander_dual(D) == K
    assert D.ground == K.ground


@given(proper_complexes(max_vertices=7))
def test_minimal_non_faces_brute(K):
    faces = brute_faces(K)
    expected = sorted(s for s in all_subsets(K.ground.full)
                      if s not in faces and all(s & ~(1 << i) in faces for i in range(K.m) if s >> i & 1))
    assert sorted(minimal_non_faces(K)) == expected


@given(proper_complexes(max_vertices=7), st.data())
def test_dual_of_full_subcomplex_is_link_of_complement(K, data):
    # (K*)_I = (lk_K(I^c))* whenever I^c is a face of K
    faces = sorted(brute_faces(K))
    tau = data.draw(st.sampled_from(faces))
    I = K.ground.full & ~tau
    assume(I)
    lk = link(K, tau)
    assume(not lk.is_full_simplex())
    D = alexander_dual(K)
    assert restriction(D, K.labels(I)) == alexander_dual(lk)


def _exhaustive_5():
    full = 31
    seen = set()
    for r in range(1, 4):
        for combo in combinations(range(1, full + 1), r):
            K = Complex("abcde", combo)
            if K.facets in seen or K.is_full_simplex():
                continue
            seen.add(K.facets)
            yield K


def test_double_dual_and_link_duality_exhaustive_5():
    n = 0
    for K in _exhaustive_5():
        n += 1
        D = alexander_dual(K)
        assert alexander_dual(D) == K
        for tau in K.all_faces():
            I = K.ground.full & ~tau
            lk = link(K, tau)
            if not I or lk.is_full_simplex():
                continue
            assert restriction(D, K.labels(I)) == alexander_dual(lk)
    assert n > 1000


@st.composite
def face_unions(draw):
    a = draw(st.integers(0, 3))
    p = draw(st.integers(1, 7 - a))
    q = draw(st.integers(1, 8 - a - p))
    alpha = list("xyz"[:a])
    V = alpha + [f"v{i}" for i in range(p)]
    W = alpha + [f"w{i}" for i in range(q)]

    def side(labels):
        g = GroundSet(labels)
        fs = draw(st.lists(st.integers(1, g.full), max_size=4))
        fs += [g.mask(alpha)] + [1 << i for i in range(len(g))]
        return Complex(g, fs)

    K, L = side(V), side(W)
    assume(not K.is_full_simplex() and not L.is_full_simplex())
    return K, L, alpha


@given(face_unions())
def test_dual_of_union_along_face(data):
    K, L, alpha = data
    U = union_along_face(K, L, alpha)
    g = U.ground.labels
    Va = [x for x in K.ground.labels if x not in alpha]
    Wa = [x for x in L.ground.labels if x not in alpha]
    pieces = [join(join(boundary_simplex(Va), simplex(alpha) if alpha else Complex([], [])),
                   boundary_simplex(Wa)),
              join(alexander_dual(K), simplex(Wa)),
              join(simplex(Va), alexander_dual(L))]
    rhs = on(g, union(union(pieces[0], pieces[1]), pieces[2]))
    assert alexander_dual(U) == rhs


def test_relabel_and_subcomplex():
    K = boundary_simplex("abc")
    R = relabel(K, {"a": "x"})
    assert R.ground.labels == ("x", "b", "c")
    assert is_subcomplex(deletion(K, "a"), K)
    assert not is_subcomplex(simplex("abc"), K)


def test_simplicial_map_checks():
    K = boundary_simplex("abc")
    T = simplex("pq")
    f = SimplicialMap(K, T, {"a": "p", "b": "q", "c": "q"})
    assert f.image(K.ground.mask(["a", "b"])) == T.ground.full
    with pytest.raises(ComplexError):
        SimplicialMap(K, boundary_simplex("pq"), {"a": "p", "b": "q", "c": "q"})
