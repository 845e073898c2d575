"""Finite simplicial complexes stored by their facets.

Faces are Python ints used as bitsets over the positions of a fixed,
ordered ground set.  Bit ``i`` set means the vertex ``ground.labels[i]``
belongs to the face.  Every orientation convention in the package (boundary
signs, cup products, staircase products) derives from that order.
"""

from __future__ import annotations

import itertools
from math import comb
from typing import Iterable, Sequence

DEFAULT_MAX_FACES = 5_000_000


class ComplexError(ValueError):
    pass


class FaceCountExceeded(RuntimeError):
    """Raised when an operation would enumerate more faces than allowed."""

    def __init__(self, estimate: int, limit: int):
        super().__init__(f"face enumeration needs ~{estimate} faces, limit is {limit}")
        self.estimate = estimate
        self.limit = limit


def bits(mask: int) -> list[int]:
    """Positions of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lex_key(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


def face_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Canonical sort key: dimension first, then lexicographic positions."""
    b = bits(mask)
    return (len(b), tuple(b))


class GroundSet:
    """Ordered vertex labels; position ``i`` is bit ``i`` of a face mask."""

    __slots__ = ("labels", "index")

    def __init__(self, labels: Iterable[str]):
        labels = tuple(str(x) for x in labels)
        index = {}
        for i, lab in enumerate(labels):
            if lab in index:
                raise ComplexError(f"duplicate vertex label {lab!r}")
            if not lab or any(ch.isspace() for ch in lab):
                raise ComplexError(f"vertex label {lab!r} must be a non-empty token")
            index[lab] = i
        self.labels = labels
        self.index = index

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label) -> bool:
        return label in self.index

    def __eq__(self, other) -> bool:
        return isinstance(other, GroundSet) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"GroundSet({list(self.labels)})"

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    def mask(self, face) -> int:
        """Bitmask of ``face``, given either as a mask or as an iterable of labels."""
        if isinstance(face, int):
            if face >> len(self.labels):
                raise ComplexError("face mask has bits outside the ground set")
            return face
        if isinstance(face, str):
            face = [face]
        m = 0
        for lab in face:
            lab = str(lab)
            try:
                m |= 1 << self.index[lab]
            except KeyError:
                raise ComplexError(f"unknown vertex label {lab!r}") from None
        return m

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in bits(mask))

    def transfer(self, mask: int, other: "GroundSet") -> int:
        """Re-express ``mask`` (over self) as a mask over ``other`` by label."""
        out = 0
        idx = other.index
        for i in bits(mask):
            out |= 1 << idx[self.labels[i]]
        return out


def prune_to_antichain(masks: Iterable[int]) -> list[int]:
    """Keep the inclusion-maximal members of ``masks`` (duplicates removed)."""
    uniq = sorted(set(masks), key=popcount, reverse=True)
    kept: list[int] = []
    for m in uniq:
        for k in kept:
            if m & ~k == 0:
                break
        else:
            kept.append(m)
    return kept


class Complex:
    """An immutable simplicial complex on an ordered ground set.

    The complex always contains the empty face; the complex ``{∅}`` is
    represented by the single facet ``0``.  Vertices of the ground set that
    lie in no face are ghost vertices.
    """

    __slots__ = ("ground", "facets", "_cache")

    def __init__(self, ground: GroundSet | Sequence[str], facets: Iterable[int]):
        if not isinstance(ground, GroundSet):
            ground = GroundSet(ground)
        facets = list(facets)
        full = ground.full
        for f in facets:
            if f & ~full:
                raise ComplexError("facet outside the ground set")
        facets = prune_to_antichain(facets) or [0]
        self.ground = ground
        self.facets = tuple(sorted(facets, key=face_key))
        self._cache: dict = {}

    # -- basic structure -------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.ground)

    @property
    def vertex_mask(self) -> int:
        v = 0
        for f in self.facets:
            v |= f
        return v

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.ground.labels_of(self.vertex_mask)

    @property
    def ghosts(self) -> tuple[str, ...]:
        return self.ground.labels_of(self.ground.full & ~self.vertex_mask)

    @property
    def dim(self) -> int:
        return max(popcount(f) for f in self.facets) - 1

    def is_face(self, face) -> bool:
        m = self.ground.mask(face)
        return any(m & ~f == 0 for f in self.facets)

    def __contains__(self, face) -> bool:
        return self.is_face(face)

    def is_void_simplex(self) -> bool:
        """True for the complex ``{∅}``."""
        return self.facets == (0,)

    def is_full_simplex(self) -> bool:
        return self.facets == (self.ground.full,)

    def is_pure(self) -> bool:
        return len({popcount(f) for f in self.facets}) == 1

    def labels(self, mask: int) -> tuple[str, ...]:
        return self.ground.labels_of(mask)

    def facet_labels(self) -> list[tuple[str, ...]]:
        return [self.labels(f) for f in self.facets]

    # -- equality --------------------------------------------------------
    def _signature(self):
        return (frozenset(self.ground.labels), frozenset(frozenset(self.labels(f)) for f in self.facets))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        if self.ground == other.ground:
            return self.facets == other.facets
        return self._signature() == other._signature()

    def __hash__(self) -> int:
        return hash(self._signature())

    def __repr__(self) -> str:
        fs = [" ".join(self.labels(f)) or "∅" for f in self.facets[:6]]
        more = "" if len(self.facets) <= 6 else f", ... ({len(self.facets)} facets)"
        return f"Complex(m={self.m}, facets=[{'; '.join(fs)}{more}])"

    # -- face enumeration --------------------------------------------------
    def face_count_estimate(self, d: int | None = None) -> int:
        if d is None:
            return sum(1 << popcount(f) for f in self.facets)
        return sum(comb(popcount(f), d + 1) for f in self.facets)

    def faces(self, d: int, max_faces: int = DEFAULT_MAX_FACES) -> list[int]:
        """All ``d``-dimensional faces, sorted lexicographically by position."""
        if d < -1:
            return []
        key = ("faces", d)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        if d == -1:
            out = [0]
        else:
            est = self.face_count_estimate(d)
            if est > max_faces:
                raise FaceCountExceeded(est, max_faces)
            found = set()
            for f in self.facets:
                fb = bits(f)
                if len(fb) <= d:
                    continue
                if len(fb) == d + 1:
                    found.add(f)
                    continue
                for combo in itertools.combinations(fb, d + 1):
                    m = 0
                    for i in combo:
                        m |= 1 << i
                    found.add(m)
            out = sorted(found, key=lex_key)
        self._cache[key] = out
        return out

    def face_index(self, d: int) -> dict[int, int]:
        key = ("index", d)
        idx = self._cache.get(key)
        if idx is None:
            idx = {f: i for i, f in enumerate(self.faces(d))}
            self._cache[key] = idx
        return idx

    def all_faces(self, max_faces: int = DEFAULT_MAX_FACES) -> list[int]:
        """Every face including ∅, by dimension then lexicographically."""
        est = self.face_count_estimate()
        if est > max_faces:
            raise FaceCountExceeded(est, max_faces)
        out = []
        for d in range(-1, self.dim + 1):
            out.extend(self.faces(d, max_faces))
        return out

    def f_vector(self) -> list[int]:
        """Face numbers ``(f_0, f_1, ..., f_dim)``."""
        return [len(self.faces(d)) for d in range(self.dim + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector()))

    # -- operations ----------------------------------------------------------
    def link(self, sigma) -> "Complex":
        return link(self, sigma)

    def star(self, sigma) -> "Complex":
        return star(self, sigma)

    def restriction(self, vertices) -> "Complex":
        return restriction(self, vertices)

    def deletion(self, v) -> "Complex":
        return deletion(self, v)


def make_complex(ground: Iterable[str], faces: Iterable[Iterable[str]]) -> Complex:
    """Build a complex from arbitrary generating faces (pruned to facets)."""
    g = ground if isinstance(ground, GroundSet) else GroundSet(ground)
    masks = [g.mask(list(f) if not isinstance(f, int) else f) for f in faces]
    return Complex(g, masks)


def faces(K: Complex, d: int) -> list[int]:
    return K.faces(d)


def _sub_ground(ground: GroundSet, keep: int) -> GroundSet:
    return GroundSet(ground.labels_of(keep))


def _require_face(K: Complex, sigma) -> int:
    s = K.ground.mask(sigma)
    if not K.is_face(s):
        raise ComplexError(f"{K.labels(s)} is not a face of the complex")
    return s


def link(K: Complex, sigma) -> Complex:
    """``lk_K(σ) = {τ ⊆ V−σ : τ ∪ σ ∈ K}`` on the ground set ``V − σ``."""
    s = _require_face(K, sigma)
    g = _sub_ground(K.ground, K.ground.full & ~s)
    return Complex(g, [K.ground.transfer(f & ~s, g) for f in K.facets if s & ~f == 0])


def star(K: Complex, sigma) -> Complex:
    """``st_K(σ) = {τ ⊆ V : τ ∪ σ ∈ K}`` on the full ground set."""
    s = _require_face(K, sigma)
    return Complex(K.ground, [f for f in K.facets if s & ~f == 0])


def restriction(K: Complex, vertices) -> Complex:
    """The full subcomplex ``K_I`` on the ground set ``I``."""
    I = K.ground.mask(vertices)
    g = _sub_ground(K.ground, I)
    return Complex(g, [K.ground.transfer(f & I, g) for f in K.facets])


def deletion(K: Complex, v) -> Complex:
    m = K.ground.mask(v)
    return restriction(K, K.ground.full & ~m)


def _merged_ground(a: GroundSet, b: GroundSet) -> GroundSet:
    return GroundSet(list(a.labels) + [x for x in b.labels if x not in a.index])


def join(K: Complex, L: Complex) -> Complex:
    """Simplicial join on the disjoint union of the ground sets."""
    clash = set(K.ground.labels) & set(L.ground.labels)
    if clash:
        raise ComplexError(f"join needs disjoint ground sets; shared labels {sorted(clash)}")
    g = _merged_ground(K.ground, L.ground)
    shift = len(K.ground)
    return Complex(g, [f | (h << shift) for f in K.facets for h in L.facets])


def union_along_face(K: Complex, L: Complex, alpha=None) -> Complex:
    """``K ∪_α L`` where ``α`` is the label intersection of the two ground sets."""
    common = set(K.ground.labels) & set(L.ground.labels)
    if alpha is None:
        alpha_labels = common
    else:
        alpha_labels = {alpha} if isinstance(alpha, str) else set(map(str, alpha))
    if alpha_labels != common:
        raise ComplexError("ground sets must intersect exactly in α")
    if not K.is_face(alpha_labels) or not L.is_face(alpha_labels):
        raise ComplexError("α must be a common face of both complexes")
    g = _merged_ground(K.ground, L.ground)
    fs = [K.ground.transfer(f, g) for f in K.facets] + [L.ground.transfer(f, g) for f in L.facets]
    return Complex(g, fs)


def union(K: Complex, L: Complex) -> Complex:
    """Union of two complexes (no face condition on the overlap)."""
    g = _merged_ground(K.ground, L.ground)
    fs = [K.ground.transfer(f, g) for f in K.facets] + [L.ground.transfer(f, g) for f in L.facets]
    return Complex(g, fs)


def minimal_transversals(edges: Iterable[int]) -> list[int]:
    """Minimal hitting sets of a family of bitmasks (Berge's incremental scheme)."""
    current = [0]
    for e in sorted(set(edges), key=popcount):
        if e == 0:
            return []
        hit = [t for t in current if t & e]
        miss = [t for t in current if not t & e]
        if not miss:
            continue
        cand = set()
        for t in miss:
            rest = e
            while rest:
                low = rest & -rest
                rest ^= low
                cand.add(t | low)
        new = [c for c in cand if not any(h & ~c == 0 for h in hit)]
        new.sort(key=popcount)
        minimal: list[int] = []
        for c in new:
            if not any(k & ~c == 0 for k in minimal):
                minimal.append(c)
        current = hit + minimal
    return current


def minimal_non_faces(K: Complex) -> list[int]:
    """Inclusion-minimal non-faces.

    A set is a non-face exactly when it meets the complement of every facet,
    so the minimal non-faces are the minimal transversals of those complements.
    """
    cached = K._cache.get("mnf")
    if cached is None:
        full = K.ground.full
        cached = sorted(minimal_transversals(full & ~f for f in K.facets), key=face_key)
        K._cache["mnf"] = cached
    return cached


def alexander_dual(K: Complex, ground: Iterable[str] | None = None) -> Complex:
    """``K* = {σ ⊆ V : V − σ ∉ K}``, kept on the same ground set.

    ``ground`` optionally enlarges ``V`` (the extra labels are ghosts of K).
    """
    if ground is not None:
        g = GroundSet(ground)
        missing = set(K.ground.labels) - set(g.labels)
        if missing:
            raise ComplexError(f"override ground set lacks {sorted(missing)}")
        K = Complex(g, [K.ground.transfer(f, g) for f in K.facets])
    if K.is_full_simplex():
        raise ComplexError("the full simplex has no Alexander dual")
    full = K.ground.full
    return Complex(K.ground, [full & ~t for t in minimal_non_faces(K)])


def relabel(K: Complex, mapping: dict[str, str]) -> Complex:
    """Rename vertices injectively (order of the ground set is kept)."""
    labels = [mapping.get(x, x) for x in K.ground.labels]
    return Complex(GroundSet(labels), K.facets)


def is_subcomplex(A: Complex, K: Complex) -> bool:
    if not set(A.ground.labels) <= set(K.ground.labels):
        return False
    return all(K.is_face(A.labels(f)) for f in A.facets)


class SimplicialMap:
    """A vertex map sending every facet of ``source`` onto a face of ``target``."""

    def __init__(self, source: Complex, target: Complex, vertex_map: dict[str, str]):
        self.source = source
        self.target = target
        self.vertex_map = {str(k): str(v) for k, v in vertex_map.items()}
        tgt = target.ground.index
        self._pos = []
        for lab in source.ground.labels:
            img = self.vertex_map.get(lab)
            if img is None:
                if lab in source.vertices:
                    raise ComplexError(f"vertex {lab!r} has no image")
                self._pos.append(None)
                continue
            if img not in tgt:
                raise ComplexError(f"image {img!r} is not a vertex of the target")
            self._pos.append(tgt[img])
        for f in source.facets:
            if not target.is_face(self.image(f)):
                raise ComplexError(
                    f"not simplicial: facet {source.labels(f)} maps to non-face "
                    f"{target.labels(self.image(f))}"
                )

    def image(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= 1 << self._pos[i]
        return out

    def compose(self, other: "SimplicialMap") -> "SimplicialMap":
        """``other ∘ self``."""
        vm = {k: other.vertex_map[v] for k, v in self.vertex_map.items() if v in other.vertex_map}
        return SimplicialMap(self.source, other.target, vm)

    @classmethod
    def inclusion(cls, A: Complex, K: Complex) -> "SimplicialMap":
        return cls(A, K, {x: x for x in A.ground.labels if x in K.ground})

    @classmethod
    def identity(cls, K: Complex) -> "SimplicialMap":
        return cls(K, K, {x: x for x in K.ground.labels})
