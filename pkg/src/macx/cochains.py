"""Simplicial cochains: cup and cup-i products, Steenrod squares, and the
multidegree cochain model of Tor with its Massey triple products.

Cochains are sparse dicts ``face mask -> coefficient`` over a field.  Faces
are ordered by the ground set; the cup product splits a face into its front
``p``-face and back ``q``-face.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .complex import Complex, ComplexError, bits, popcount, restriction
from .homology import ChainData, cohomology_basis
from .linalg import F2, Echelon, Field, RingSpec


class CochainClass:
    """A ``p``-cochain on ``K`` with coefficients in a field."""

    __slots__ = ("K", "degree", "ring", "coeffs", "_F")

    def __init__(self, K: Complex, degree: int, ring: RingSpec, coeffs: dict | None = None):
        if not ring.is_field:
            raise ValueError("cochains need field coefficients")
        self.K = K
        self.degree = degree
        self.ring = ring
        self._F = Field(ring)
        out = {}
        for f, v in (coeffs or {}).items():
            if popcount(f) != degree + 1:
                raise ComplexError("coefficient on a face of the wrong dimension")
            v = self._F.coerce(v)
            if v:
                out[f] = v
        self.coeffs = out

    @classmethod
    def zero(cls, K: Complex, degree: int, ring: RingSpec) -> "CochainClass":
        return cls(K, degree, ring)

    @classmethod
    def unit(cls, K: Complex, ring: RingSpec) -> "CochainClass":
        """The degree-0 cochain equal to 1 on every vertex."""
        return cls(K, 0, ring, {f: 1 for f in K.faces(0)})

    @classmethod
    def from_vector(cls, K: Complex, degree: int, ring: RingSpec, vec) -> "CochainClass":
        """From coefficients listed in canonical face order."""
        fs = K.faces(degree)
        if len(vec) != len(fs):
            raise ValueError("vector length must equal the number of faces")
        return cls(K, degree, ring, dict(zip(fs, vec)))

    def vector(self) -> list:
        zero = self._F.coerce(0)
        return [self.coeffs.get(f, zero) for f in self.K.faces(self.degree)]

    @property
    def field(self) -> Field:
        return self._F

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, CochainClass):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.ring == other.ring
        return (
            self.K == other.K
            and self.degree == other.degree
            and self.ring == other.ring
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def _check(self, other: "CochainClass"):
        if self.ring != other.ring:
            raise ValueError("cochains over different fields")
        if self.K is not other.K and self.K != other.K:
            raise ValueError("cochains on different complexes")

    def __add__(self, other: "CochainClass") -> "CochainClass":
        self._check(other)
        if other.degree != self.degree and not (self.is_zero() or other.is_zero()):
            raise ValueError("cannot add cochains of different degrees")
        y = dict(self.coeffs)
        self._F.axpy(y, 1, other.coeffs)
        return CochainClass(self.K, self.degree if self.coeffs else other.degree, self.ring, y)

    def __sub__(self, other: "CochainClass") -> "CochainClass":
        return self + other.scale(-1)

    def __neg__(self) -> "CochainClass":
        return self.scale(-1)

    def scale(self, a) -> "CochainClass":
        F = self._F
        return CochainClass(self.K, self.degree, self.ring, F.scale(F.coerce(a), self.coeffs))

    def __repr__(self) -> str:
        terms = [f"{v}·{''.join(self.K.labels(f)) or '∅'}" for f, v in sorted(self.coeffs.items())[:6]]
        return f"CochainClass(deg={self.degree}, {self.ring}, {' + '.join(terms) or '0'})"


def _face_set(K: Complex, d: int) -> set:
    key = ("faceset", d)
    s = K._cache.get(key)
    if s is None:
        s = set(K.faces(d)) if d <= K.dim else set()
        K._cache[key] = s
    return s


def coboundary(x: CochainClass) -> CochainClass:
    """``(δx)(σ) = Σ_j (-1)^j x(σ - v_j)``."""
    K, F = x.K, x.field
    up = _face_set(K, x.degree + 1)
    out: dict = {}
    m = K.m
    for f, c in x.coeffs.items():
        for v in range(m):
            bit = 1 << v
            if f & bit:
                continue
            g = f | bit
            if g not in up:
                continue
            s = -1 if popcount(f & (bit - 1)) % 2 else 1
            w = F.coerce(out.get(g, 0) + s * c)
            if w:
                out[g] = w
            else:
                out.pop(g, None)
    return CochainClass(K, x.degree + 1, x.ring, out)


def cup(x: CochainClass, y: CochainClass) -> CochainClass:
    """Alexander-Whitney product: front ``p``-face times back ``q``-face."""
    x._check(y)
    K, F = x.K, x.field
    p, q = x.degree, y.degree
    if p < 0 or q < 0:
        raise ValueError("cup products need cochains of degree >= 0")
    n = p + q
    if n > K.dim:
        return CochainClass(K, n, x.ring)
    faces = _face_set(K, n)
    by_min: dict = {}
    for b, c in y.coeffs.items():
        by_min.setdefault(b & -b, []).append((b, c))
    out: dict = {}
    for a, ca in x.coeffs.items():
        # the back face starts at the last vertex of the front face
        for b, cb in by_min.get(1 << (a.bit_length() - 1), ()):
            s = a | b
            if s in faces:
                out[s] = out.get(s, 0) + ca * cb
    return CochainClass(K, n, x.ring, F.vec(out))


def cup_i(x: CochainClass, y: CochainClass, i: int) -> CochainClass:
    """Steenrod's ``x ⌣_i y`` over F_2."""
    x._check(y)
    if x.ring != F2:
        raise ValueError("cup-i products are implemented over F2 only")
    p, q = x.degree, y.degree
    if i < 0:
        raise ValueError("i must be >= 0")
    K = x.K
    n = p + q - i
    if i > min(p, q) or n > K.dim or n < 0:
        return CochainClass(K, max(n, -1), x.ring)
    if i == 0:
        return cup(x, y)
    out: dict = {}
    xs, ys = x.coeffs, y.coeffs
    for sigma in K.faces(n):
        vs = bits(sigma)
        total = 0
        for js in itertools.combinations(range(n + 1), i + 1):
            cuts = (0,) + js + (n,)
            fx = fy = 0
            for k in range(len(cuts) - 1):
                seg = 0
                for t in range(cuts[k], cuts[k + 1] + 1):
                    seg |= 1 << vs[t]
                if k % 2 == 0:
                    fx |= seg
                else:
                    fy |= seg
            if popcount(fx) != p + 1 or popcount(fy) != q + 1:
                continue
            total ^= xs.get(fx, 0) & ys.get(fy, 0)
        if total:
            out[sigma] = 1
    return CochainClass(K, n, x.ring, out)


def sq(k: int, x: CochainClass) -> CochainClass:
    """``Sq^k x = x ⌣_{p-k} x`` for ``x`` of degree ``p``, over F_2."""
    if x.ring != F2:
        raise ValueError("Steenrod squares are implemented over F2 only")
    p = x.degree
    if k < 0 or k > p:
        return CochainClass(x.K, max(p + k, -1), x.ring)
    return cup_i(x, x, p - k)


# ---------------------------------------------------------------------------
# cohomology helpers


def coboundary_space(K: Complex, p: int, ring: RingSpec) -> Echelon:
    """Echelon basis of ``B^p = δ(C^{p-1})`` in face-mask coordinates."""
    key = ("cobspace", p, ring)
    E = K._cache.get(key)
    if E is None:
        F = Field(ring)
        E = Echelon(F)
        if p - 1 >= -1:
            for f in K.faces(p - 1) if p - 1 <= K.dim else []:
                E.insert(coboundary(CochainClass(K, p - 1, ring, {f: 1})).coeffs)
        K._cache[key] = E
    return E


def is_coboundary(x: CochainClass) -> bool:
    if x.is_zero():
        return True
    return coboundary_space(x.K, x.degree, x.ring).contains(x.coeffs)


def is_cocycle(x: CochainClass) -> bool:
    return coboundary(x).is_zero()


def cohomology_classes(K: Complex, p: int, ring: RingSpec) -> list[CochainClass]:
    """Cocycles representing a basis of ``H̃^p(K)``."""
    C = ChainData(K, reduced=True)
    if p not in C.faces:
        return []
    basis = cohomology_basis(C, p, ring)
    fs = C.faces[p]
    return [CochainClass(K, p, ring, {fs[i]: c for i, c in z.items()}) for z in basis.reps]


def cocycle_basis(K: Complex, p: int, ring: RingSpec) -> list[CochainClass]:
    """A basis of the cocycle space ``Z^p(K)`` (not modulo coboundaries)."""
    from .linalg import nullspace

    C = ChainData(K, reduced=True)
    if p not in C.faces:
        return []
    fs = C.faces[p]
    ker = nullspace(C.coboundary_columns(p), Field(ring))
    return [CochainClass(K, p, ring, {fs[i]: c for i, c in z.items()}) for z in ker]


# ---------------------------------------------------------------------------
# multidegree model


@dataclass
class MultidegreeClass:
    """A cochain on the full subcomplex ``K_I``, tagged by its support ``I``.

    ``I`` is a bitmask over the ground set of ``K``; the cochain's complex is
    ``restriction(K, I)``.
    """

    K: Complex
    support: int
    cochain: CochainClass

    @property
    def degree(self) -> int:
        return self.cochain.degree

    @property
    def ring(self) -> RingSpec:
        return self.cochain.ring

    @property
    def tor_degree(self) -> int:
        """Homological degree ``i`` with ``Tor_{-i, 2I} ≅ H̃^{|I|-i-1}(K_I)``."""
        return popcount(self.support) - self.degree - 1

    def support_labels(self) -> tuple[str, ...]:
        return self.K.labels(self.support)

    def is_zero_class(self) -> bool:
        return is_coboundary(self.cochain)

    @classmethod
    def from_ambient(cls, K: Complex, support, cochain_coeffs: dict, degree: int, ring: RingSpec):
        """Build from coefficients keyed by face masks over the ground of ``K``."""
        I = K.ground.mask(support)
        KI = full_subcomplex(K, I)
        co = {_to_sub(K, I, f): v for f, v in cochain_coeffs.items()}
        return cls(K, I, CochainClass(KI, degree, ring, co))


def _to_sub(K: Complex, I: int, f: int) -> int:
    # positions of I in increasing order become 0..|I|-1
    out = 0
    k = 0
    for i in bits(I):
        if f >> i & 1:
            out |= 1 << k
        k += 1
    if f & ~I:
        raise ComplexError("face outside the support")
    return out


def _from_sub(I: int, f: int) -> int:
    out = 0
    for k, i in enumerate(bits(I)):
        if f >> k & 1:
            out |= 1 << i
    return out


def full_subcomplex(K: Complex, I: int) -> Complex:
    """Cached ``K_I`` (ground labels in the order of ``K``)."""
    key = ("restr", I)
    R = K._cache.get(key)
    if R is None:
        R = restriction(K, I)
        K._cache[key] = R
    return R


def multidegree_classes(K: Complex, I, ring: RingSpec) -> list[MultidegreeClass]:
    """Basis of ``⊕_n H̃^n(K_I)`` as multidegree classes."""
    I = K.ground.mask(I)
    KI = full_subcomplex(K, I)
    out = []
    for p in range(-1, KI.dim + 1):
        out.extend(MultidegreeClass(K, I, z) for z in cohomology_classes(KI, p, ring))
    return out


def shuffle_sign(sigma: int, I: int, J: int) -> int:
    """``(-1)^{#{(i, j) : i ∈ σ∩I, j ∈ σ∩J, j < i}}``."""
    a = bits(sigma & I)
    b = sigma & J
    n = 0
    for i in a:
        n += popcount(b & ((1 << i) - 1))
    return -1 if n % 2 else 1


def multidegree_product(a: MultidegreeClass, b: MultidegreeClass) -> MultidegreeClass:
    """Product ``H̃^p(K_I) ⊗ H̃^q(K_J) → H̃^{p+q+1}(K_{I⊔J})`` at cochain level.

    Zero unless ``I ∩ J = ∅``; otherwise the join cross product restricted to
    ``K_{I⊔J}``.
    """
    if a.K is not b.K and a.K != b.K:
        raise ValueError("classes on different complexes")
    if a.ring != b.ring:
        raise ValueError("classes over different fields")
    K = a.K
    U = a.support | b.support
    KU = full_subcomplex(K, U)
    n = a.degree + b.degree + 1
    if a.support & b.support:
        return MultidegreeClass(K, U, CochainClass(KU, n, a.ring))
    F = a.cochain.field
    I, J = a.support, b.support
    faces = _face_set(KU, n) if n <= KU.dim else set()
    out: dict = {}
    for fa, ca in a.cochain.coeffs.items():
        ga = _from_sub(I, fa)
        for fb, cb in b.cochain.coeffs.items():
            gb = _from_sub(J, fb)
            s = ga | gb
            t = _to_sub(K, U, s)
            if t not in faces:
                continue
            out[t] = out.get(t, 0) + shuffle_sign(s, I, J) * ca * cb
    return MultidegreeClass(K, U, CochainClass(KU, n, a.ring, F.vec(out)))


def multidegree_coboundary(a: MultidegreeClass) -> MultidegreeClass:
    return MultidegreeClass(a.K, a.support, coboundary(a.cochain))


# ---------------------------------------------------------------------------
# Massey triples


@dataclass
class MasseyVerdict:
    """Outcome of a triple Massey product.

    ``status`` is ``"Undefined"``, ``"ContainsZero"`` or ``"NontrivialWitness"``.
    """

    status: str
    reason: str = ""
    representative: MultidegreeClass | None = None
    data: dict = field(default_factory=dict)

    @property
    def nontrivial(self) -> bool:
        return self.status == "NontrivialWitness"

    def to_json(self) -> dict:
        out = {"status": self.status, "reason": self.reason}
        if self.representative is not None:
            r = self.representative
            out["representative"] = {
                "support": list(r.support_labels()),
                "degree": r.degree,
                "faces": sorted(
                    [list(r.cochain.K.labels(f)), int(c)] for f, c in r.cochain.coeffs.items()
                ),
            }
        return out


def _solve_coboundary(x: CochainClass) -> CochainClass | None:
    """Some ``u`` with ``δu = x``, or None."""
    K, p, ring = x.K, x.degree, x.ring
    if p - 1 < -1 or p - 1 > K.dim:
        return None if x.coeffs else CochainClass(K, p - 1, ring)
    F = Field(ring)
    E = Echelon(F, track=True)
    for f in K.faces(p - 1):
        E.insert(coboundary(CochainClass(K, p - 1, ring, {f: 1})).coeffs, tag=f)
    combo = E.express(x.coeffs)
    if combo is None:
        return None
    return CochainClass(K, p - 1, ring, combo)


def massey_triple(a: MultidegreeClass, b: MultidegreeClass, c: MultidegreeClass, ring: RingSpec = F2) -> MasseyVerdict:
    """``⟨a, b, c⟩`` in the multidegree model over F_2.

    The product set is ``{A·c + a·B : δA = a·b, δB = b·c}`` modulo
    coboundaries; it contains zero exactly when one representative lies in
    ``span{z·c, a·w : z, w cocycles} + B``.
    """
    if ring != F2 or any(x.ring != F2 for x in (a, b, c)):
        raise ValueError("Massey products are implemented over F2 only")
    if not (a.K is b.K is c.K or a.K == b.K == c.K):
        raise ValueError("classes on different complexes")
    for x in (a, b, c):
        if not is_cocycle(x.cochain):
            raise ValueError("Massey products need cocycle representatives")
    ab = multidegree_product(a, b)
    bc = multidegree_product(b, c)
    A = _solve_coboundary(ab.cochain)
    B = _solve_coboundary(bc.cochain)
    if A is None or B is None:
        return MasseyVerdict("Undefined", "a·b" if A is None else "b·c")
    if a.support & b.support or b.support & c.support or a.support & c.support:
        return MasseyVerdict("ContainsZero", "supports overlap; the multidegree is not square-free")
    if any(x.cochain.is_zero() for x in (a, b, c)):
        return MasseyVerdict("ContainsZero", "a factor is the zero cochain")
    Am = MultidegreeClass(a.K, ab.support, A)
    Bm = MultidegreeClass(a.K, bc.support, B)
    value = multidegree_product(Am, c).cochain + multidegree_product(a, Bm).cochain
    KU = value.K
    E = Echelon(Field(F2))
    for g in coboundary_space(KU, value.degree, F2).rows.values():
        E.insert(g)
    for z in cocycle_basis(ab.cochain.K, A.degree, F2):
        E.insert(multidegree_product(MultidegreeClass(a.K, ab.support, z), c).cochain.coeffs)
    for w in cocycle_basis(bc.cochain.K, B.degree, F2):
        E.insert(multidegree_product(a, MultidegreeClass(a.K, bc.support, w)).cochain.coeffs)
    rep = MultidegreeClass(a.K, a.support | b.support | c.support, value)
    if E.contains(value.coeffs):
        return MasseyVerdict("ContainsZero", "the coset meets zero", rep)
    return MasseyVerdict("NontrivialWitness", "every element of the coset is nonzero", rep)
