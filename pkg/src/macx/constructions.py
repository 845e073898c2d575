"""Derived complexes: simplices, staircase products, facet cones, subdivisions,
mapping cylinders and cones, and the 55-vertex counterexample."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Sequence

from .complex import (
    DEFAULT_MAX_FACES,
    Complex,
    ComplexError,
    FaceCountExceeded,
    GroundSet,
    SimplicialMap,
    bits,
    popcount,
)

APEX = "@apex"


def simplex(V: Iterable[str]) -> Complex:
    g = GroundSet(V)
    if not len(g):
        raise ComplexError("a simplex needs at least one vertex")
    return Complex(g, [g.full])


def boundary_simplex(V: Iterable[str]) -> Complex:
    g = GroundSet(V)
    if not len(g):
        raise ComplexError("boundary of a simplex needs at least one vertex")
    return Complex(g, [g.full & ~(1 << i) for i in range(len(g))])


@dataclass(frozen=True)
class OrderedComplex:
    """A complex together with a total order on its ground labels."""

    complex: Complex
    order: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.order is not None:
            if sorted(self.order) != sorted(self.complex.ground.labels):
                raise ComplexError("order must list every ground label exactly once")
            object.__setattr__(self, "order", tuple(self.order))

    @property
    def labels(self) -> tuple[str, ...]:
        return self.order if self.order is not None else self.complex.ground.labels


def _ordered(X) -> OrderedComplex:
    return X if isinstance(X, OrderedComplex) else OrderedComplex(X)


def pair_label(x: str, y: str) -> str:
    return f"({x},{y})"


def _lattice_paths(p: int, q: int):
    """Monotone unit-step paths from (0,0) to (p,q), as lists of points."""
    for ups in itertools.combinations(range(p + q), q):
        x = y = 0
        path = [(0, 0)]
        upset = set(ups)
        for s in range(p + q):
            if s in upset:
                y += 1
            else:
                x += 1
            path.append((x, y))
        yield path


def box_product(K, L) -> Complex:
    """Staircase product ``K ⊠ L`` with vertex labels ``"(x,y)"``.

    The ground set is ordered lexicographically by the orders of the factors.
    """
    K, L = _ordered(K), _ordered(L)
    kl, ll = K.labels, L.labels
    g = GroundSet(pair_label(x, y) for x in kl for y in ll)
    nl = len(ll)
    kpos = {lab: i for i, lab in enumerate(kl)}
    lpos = {lab: i for i, lab in enumerate(ll)}
    facets = []
    for F in K.complex.facets:
        fx = sorted(kpos[lab] for lab in K.complex.labels(F))
        if not fx:
            continue
        for G in L.complex.facets:
            gy = sorted(lpos[lab] for lab in L.complex.labels(G))
            if not gy:
                continue
            for path in _lattice_paths(len(fx) - 1, len(gy) - 1):
                m = 0
                for a, b in path:
                    m |= 1 << (fx[a] * nl + gy[b])
                facets.append(m)
    return Complex(g, facets)


def facet_cone_F(K: Complex, prefix: str = "v", start: int = 1) -> tuple[Complex, list[str]]:
    """``F(K)``: cone every facet ``F_i`` off its own new vertex ``prefix+i``."""
    if K.is_void_simplex():
        raise ComplexError("F(K) needs at least one nonempty facet")
    new = [f"{prefix}{start + i}" for i in range(len(K.facets))]
    clash = set(new) & set(K.ground.labels)
    if clash:
        raise ComplexError(f"new vertex labels clash with {sorted(clash)}")
    g = GroundSet(list(K.ground.labels) + new)
    m = K.m
    return Complex(g, [f | (1 << (m + i)) for i, f in enumerate(K.facets)]), new


def face_label(labels: Sequence[str]) -> str:
    return "[" + ",".join(labels) + "]"


def barycentric_subdivision(K: Complex, max_faces: int = DEFAULT_MAX_FACES) -> Complex:
    """``Sd K``: vertices are the nonempty faces ``"[a,b,...]"``, faces are flags."""
    est = sum(factorial(popcount(f)) for f in K.facets)
    if est > max_faces:
        raise FaceCountExceeded(est, max_faces)
    nonempty = [f for f in K.all_faces(max_faces) if f]
    g = GroundSet(face_label(K.labels(f)) for f in nonempty)
    pos = {f: i for i, f in enumerate(nonempty)}
    facets = []
    for F in K.facets:
        if not F:
            continue
        for perm in itertools.permutations(bits(F)):
            m = 0
            acc = 0
            for v in perm:
                acc |= 1 << v
                m |= 1 << pos[acc]
            facets.append(m)
    return Complex(g, facets)


def _cylinder_parts(f: SimplicialMap):
    src, tgt = f.source, f.target
    interval = simplex(["1", "2"])
    box = box_product(src, interval)
    bottom = [pair_label(v, "1") for v in src.ground.labels]
    labels = bottom + [x for x in tgt.ground.labels if x not in set(bottom)]
    if len(set(labels)) != len(labels) or len(labels) != len(bottom) + tgt.m:
        raise ComplexError("target labels clash with the cylinder's '(v,1)' labels")
    g = GroundSet(labels)
    bpos = {pair_label(v, "1"): i for i, v in enumerate(src.ground.labels)}
    tpos = {x: len(bottom) + i for i, x in enumerate(tgt.ground.labels)}
    top = {pair_label(v, "2"): f.vertex_map.get(v) for v in src.ground.labels}
    facets = []
    for F in box.facets:
        m = 0
        for lab in box.labels(F):
            if lab in bpos:
                m |= 1 << bpos[lab]
            else:
                m |= 1 << tpos[top[lab]]
        facets.append(m)
    shift = len(bottom)
    facets.extend(t << shift for t in tgt.facets)
    return g, facets


def mapping_cylinder(f: SimplicialMap) -> Complex:
    """``(source ⊠ Δ¹) ∪_f target``; the source sits at level 1 as ``"(v,1)"``."""
    g, facets = _cylinder_parts(f)
    return Complex(g, facets)


def cylinder_source_copy(f: SimplicialMap) -> Complex:
    """The copy ``v ↦ (v,1)`` of the source inside the mapping cylinder."""
    return relabel_pairs(f.source, "1")


def relabel_pairs(K: Complex, level: str) -> Complex:
    return Complex(GroundSet(pair_label(v, level) for v in K.ground.labels), K.facets)


def mapping_cone(f: SimplicialMap) -> Complex:
    """Mapping cylinder with the source copy coned off to the vertex ``"@apex"``."""
    g, facets = _cylinder_parts(f)
    if APEX in g:
        raise ComplexError(f"label {APEX!r} is reserved for the cone apex")
    g2 = GroundSet(list(g.labels) + [APEX])
    apex = 1 << len(g)
    facets = facets + [F | apex for F in f.source.facets]  # source copy uses the low bits
    return Complex(g2, facets)


@dataclass(frozen=True)
class Counterexample:
    """The complex ``K`` together with the pieces it is glued from."""

    K: Complex
    L: Complex  # mapping cylinder of eta
    F: Complex  # facet cone of the S^3 copy
    sphere_copy: Complex  # S^3 inside L as "(v,1)"
    V: tuple[str, ...]
    v0: str
    w1: str
    w2: str

    def K1(self) -> Complex:
        """The simplex ``Δ^{V+v0}`` on the ground set of ``K``."""
        g = self.K.ground
        return Complex(g, [g.mask(self.V + (self.v0,))])

    def K2(self) -> Complex:
        """``Δ^V ∪ (L ∪ F(S)) * w1 ∪ S * {w1, w2}`` on the ground set of ``K``."""
        g = self.K.ground
        full = g.mask(self.V)
        return Complex(g, [full] + [f for f in self.K.facets if f & g.mask([self.w1])])


def build_counterexample_K(eta: SimplicialMap | None = None) -> Counterexample:
    """``K = Δ^{V+v0} ∪ (L ∪ F(S)) * w1 ∪ S * {w1, w2}`` for ``L = cyl(eta)``.

    ``S`` is the source sphere of ``eta`` embedded as ``"(v,1)"``; ``V`` is the
    vertex set of ``L ∪ F(S)``.  The default ``eta`` is the 12-vertex Hopf map.
    """
    if eta is None:
        from .fixtures import fixture

        eta = fixture("ETA12")
    L = mapping_cylinder(eta)
    S = cylinder_source_copy(eta)
    F, new = facet_cone_F(S)
    V = list(L.ground.labels) + [x for x in F.ground.labels if x not in L.ground.index]
    v0, w1, w2 = "v0", "w1", "w2"
    for lab in (v0, w1, w2):
        if lab in V:
            raise ComplexError(f"label {lab!r} already used")
    g = GroundSet(V + [v0, w1, w2])
    bw1, bw2 = (1 << g.index[x] for x in (w1, w2))
    facets = [(1 << (len(V) + 1)) - 1]
    facets += [L.ground.transfer(t, g) | bw1 for t in L.facets]
    facets += [F.ground.transfer(t, g) | bw1 for t in F.facets]
    facets += [S.ground.transfer(t, g) | bw1 | bw2 for t in S.facets]
    K = Complex(g, facets)
    return Counterexample(K, L, F, S, tuple(V), v0, w1, w2)

