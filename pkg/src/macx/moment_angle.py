"""Cohomology of moment-angle complexes and Golodness tests.

Bigraded conventions: a class of ``H̃^n(K_I)`` sits in homological degree
``i = |I| - n - 1`` and contributes to ``H^p(Z_K)`` with ``p = n + |I| + 1``.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .cochains import (
    CochainClass,
    MultidegreeClass,
    cohomology_classes,
    full_subcomplex,
    is_coboundary,
    massey_triple,
    multidegree_product,
    sq,
)
from .complex import (
    DEFAULT_MAX_FACES,
    Complex,
    ComplexError,
    SimplicialMap,
    alexander_dual,
    bits,
    deletion,
    face_key,
    join,
    link,
    lex_key,
    popcount,
    restriction,
    star,
    union,
    union_along_face,
)
from .homology import (
    ChainData,
    HomologyGroup,
    _homology_from_faces,
    cohomology_basis,
    cohomology_from_homology,
    inclusion_is_zero_on_homology,
)
from .linalg import F2, QQ, ZZ, Echelon, Field, Fp, RingSpec, normalize_diagonal

DEFAULT_MAX_SUBSETS = 1 << 24


class SubsetCapExceeded(RuntimeError):
    def __init__(self, m: int, limit: int):
        super().__init__(f"2^{m} subsets exceed the enumeration cap {limit}")
        self.m = m
        self.limit = limit


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("MACX_THREADS", "1")))
    except ValueError:
        return 1


def gray_code(n: int):
    """Subsets of ``range(n)`` as bitmasks; consecutive masks differ in one bit."""
    for k in range(1 << n):
        yield k ^ (k >> 1)


def _spread(code: int, positions: list[int]) -> int:
    out = 0
    for k, pos in enumerate(positions):
        if code >> k & 1:
            out |= 1 << pos
    return out


class _SubsetScanner:
    """Face lists of ``K`` by dimension, filtered per subset of vertices."""

    def __init__(self, K: Complex, max_faces: int = DEFAULT_MAX_FACES):
        self.K = K
        self.small = K.m <= 63
        self.arrays = []
        for d in range(0, K.dim + 1):
            fs = sorted(K.faces(d, max_faces))
            self.arrays.append(np.array(fs, dtype=np.uint64) if self.small else fs)

    def faces(self, I: int) -> dict[int, list[int]]:
        fd = {-1: [0]}
        if self.small:
            mask = np.uint64(~I & ((1 << 64) - 1))
            for d, arr in enumerate(self.arrays):
                sub = arr[(arr & mask) == 0]
                if not len(sub):
                    break
                fd[d] = sub.tolist()
        else:
            for d, arr in enumerate(self.arrays):
                sub = [f for f in arr if not f & ~I]
                if not sub:
                    break
                fd[d] = sub
        return fd

    def reduced_cohomology(self, I: int, ring: RingSpec) -> dict[int, HomologyGroup]:
        H = _homology_from_faces(self.faces(I), ring)
        if ring.kind == "Z":
            H = cohomology_from_homology(H)
        return {n: g for n, g in H.items() if not g.is_zero}


def scan_subsets(K: Complex, ring: RingSpec, positions: list[int] | None = None,
                 max_subsets: int = DEFAULT_MAX_SUBSETS, threads: int | None = None,
                 max_faces: int = DEFAULT_MAX_FACES) -> dict[int, dict[int, HomologyGroup]]:
    """Nonzero ``H̃^*(K_I)`` for every ``I`` over ``positions`` (Gray-code order)."""
    if positions is None:
        positions = list(range(K.m))
    n = len(positions)
    if (1 << n) > max_subsets:
        raise SubsetCapExceeded(n, max_subsets)
    scanner = _SubsetScanner(K, max_faces)
    codes = list(gray_code(n))
    threads = threads or default_threads()

    def work(chunk):
        out = {}
        for code in chunk:
            I = _spread(code, positions)
            H = scanner.reduced_cohomology(I, ring)
            if H:
                out[I] = H
        return out

    result: dict = {}
    if threads > 1 and len(codes) > 64:
        step = -(-len(codes) // threads)
        chunks = [codes[i:i + step] for i in range(0, len(codes), step)]
        with ThreadPoolExecutor(max_workers=threads) as ex:
            for part in ex.map(work, chunks):
                result.update(part)
    else:
        result = work(codes)
    return {I: result[I] for I in sorted(result, key=face_key)}


# ---------------------------------------------------------------------------
# Hochster


@dataclass
class BigradedBetti:
    """``H̃^n(K_I)`` for subsets ``I`` of the vertex set, plus the ghost count.

    ``entries`` maps ``(i, I)`` to a dimension (fields) or a
    :class:`HomologyGroup` (over Z), where ``I`` is a tuple of labels and
    ``i = |I| - n - 1``.  Ghost vertices are left out of the scan; together
    they contribute the torus factor ``(S^1)^ghosts``.
    """

    ring: RingSpec
    m: int
    labels: tuple[str, ...]
    ghosts: tuple[str, ...]
    entries: dict = field(default_factory=dict)

    def _group(self, v) -> HomologyGroup:
        return v if isinstance(v, HomologyGroup) else HomologyGroup(v)

    def total_degree(self, i: int, I: tuple) -> int:
        return 2 * len(I) - i

    def cohomology(self, torus: bool = False) -> dict[int, HomologyGroup]:
        """``H^p(Z_K)`` by degree ``p`` (optionally including the ghost torus)."""
        ranks: dict[int, int] = {}
        tors: dict[int, list[int]] = {}
        for (i, I), v in self.entries.items():
            g = self._group(v)
            p = self.total_degree(i, I)
            ranks[p] = ranks.get(p, 0) + g.rank
            tors.setdefault(p, []).extend(g.torsion)
        out = {}
        for p in set(ranks) | set(tors):
            t = tuple(x for x in normalize_diagonal(tors.get(p, [])) if x > 1)
            out[p] = HomologyGroup(ranks.get(p, 0), t)
        if torus and self.ghosts:
            # Künneth with a torsion-free torus
            from math import comb

            g = len(self.ghosts)
            new: dict[int, HomologyGroup] = {}
            for p, grp in out.items():
                for k in range(g + 1):
                    c = comb(g, k)
                    old = new.get(p + k, HomologyGroup())
                    new[p + k] = HomologyGroup(old.rank + c * grp.rank, old.torsion + grp.torsion * c)
            out = {p: HomologyGroup(h.rank, tuple(x for x in normalize_diagonal(h.torsion) if x > 1)) for p, h in new.items()}
        return {p: out[p] for p in sorted(out) if not out[p].is_zero}

    def torsion_summands(self) -> list[dict]:
        out = []
        for (i, I), v in sorted(self.entries.items(), key=lambda kv: (len(kv[0][1]), kv[0][1], kv[0][0])):
            g = self._group(v)
            if g.torsion:
                out.append({"subset": list(I), "i": i, "p": self.total_degree(i, I), "torsion": list(g.torsion)})
        return out

    def to_json(self) -> dict:
        rows = []
        for (i, I), v in sorted(self.entries.items(), key=lambda kv: (len(kv[0][1]), kv[0][1], kv[0][0])):
            g = self._group(v)
            rows.append({"subset": list(I), "i": i, "n": len(I) - i - 1, "p": self.total_degree(i, I),
                         "rank": g.rank, "torsion": list(g.torsion)})
        coh = self.cohomology()
        return {
            "ring": self.ring.to_json(),
            "m": self.m,
            "ghosts": list(self.ghosts),
            "entries": rows,
            "zk_cohomology": [coh[p].to_json(p) for p in sorted(coh)],
        }


def hochster(K: Complex, ring: RingSpec = QQ, max_subsets: int = DEFAULT_MAX_SUBSETS,
             threads: int | None = None) -> BigradedBetti:
    """``H^p(Z_K) = ⊕_I H̃^{p-|I|-1}(K_I)`` over the non-ghost vertices."""
    positions = bits(K.vertex_mask)
    table = scan_subsets(K, ring, positions, max_subsets, threads)
    entries = {}
    for I, H in table.items():
        labs = K.labels(I)
        for n, g in H.items():
            i = len(labs) - n - 1
            entries[(i, labs)] = g if ring.kind == "Z" else g.rank
    return BigradedBetti(ring, K.m, K.vertices, K.ghosts, entries)


def zk_poincare_series(b: BigradedBetti, torus: bool = False) -> list[int]:
    """Coefficients ``[c_0, c_1, ...]`` of ``Σ_p dim H^p(Z_K) t^p``."""
    if b.ring.kind == "Z":
        raise ValueError("Poincaré series need field coefficients")
    coh = b.cohomology(torus=torus)
    top = max(coh) if coh else 0
    return [coh[p].rank if p in coh else 0 for p in range(top + 1)]


# ---------------------------------------------------------------------------
# Golodness


@dataclass
class GolodReport:
    """Outcome of a Golodness test; ``verdict`` is one of ``Golod``,
    ``NonGolod`` or ``MasseyNontrivial``."""

    verdict: str
    fields_checked: list
    pairs_examined: int = 0
    triples_examined: int = 0
    witness: dict | None = None
    notes: list = field(default_factory=list)

    @property
    def golod(self) -> bool:
        return self.verdict == "Golod"

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "fields_checked": [f.to_json() for f in self.fields_checked],
            "pairs_examined": self.pairs_examined,
            "triples_examined": self.triples_examined,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def torsion_primes(K: Complex, max_subsets: int = DEFAULT_MAX_SUBSETS, threads: int | None = None) -> list[int]:
    """Primes dividing some torsion coefficient of some ``H̃_*(K_I; Z)``."""
    primes = set()
    for H in scan_subsets(K, ZZ, None, max_subsets, threads).values():
        for g in H.values():
            for t in g.torsion:
                p = 2
                while p * p <= t:
                    while t % p == 0:
                        primes.add(p)
                        t //= p
                    p += 1
                if t > 1:
                    primes.add(t)
    return sorted(primes)


def sound_fields(K: Complex, max_subsets: int = DEFAULT_MAX_SUBSETS, threads: int | None = None) -> list[RingSpec]:
    """Q together with every torsion prime of the full subcomplexes."""
    return [QQ] + [Fp(p) for p in torsion_primes(K, max_subsets, threads)]


def _pair_order(I: int) -> tuple:
    return (popcount(I), lex_key(I))


class _ClassCache:
    def __init__(self, K: Complex, ring: RingSpec, table: dict):
        self.K = K
        self.ring = ring
        self.table = table
        self._classes: dict = {}

    def classes(self, I: int, n: int) -> list[MultidegreeClass]:
        key = (I, n)
        c = self._classes.get(key)
        if c is None:
            KI = full_subcomplex(self.K, I)
            c = [MultidegreeClass(self.K, I, z) for z in cohomology_classes(KI, n, self.ring)]
            self._classes[key] = c
        return c


def _cup_scan(K: Complex, ring: RingSpec, table: dict, cache: _ClassCache):
    supports = sorted((I for I in table if I), key=_pair_order)
    examined = 0
    for a_idx, I in enumerate(supports):
        for J in supports[a_idx + 1:]:
            if I & J:
                continue
            U = I | J
            HU = table.get(U)
            if not HU:
                continue
            for p in table[I]:
                for q in table[J]:
                    if p + q + 1 not in HU:
                        continue
                    examined += 1
                    for a in cache.classes(I, p):
                        for b in cache.classes(J, q):
                            prod = multidegree_product(a, b)
                            if not is_coboundary(prod.cochain):
                                return examined, {
                                    "field": ring.to_json(),
                                    "I": list(K.labels(I)),
                                    "J": list(K.labels(J)),
                                    "degrees": [p, q, p + q + 1],
                                }
    return examined, None


def golod_cup_check(K: Complex, fields: list | None = None, max_subsets: int = DEFAULT_MAX_SUBSETS,
                    threads: int | None = None) -> GolodReport:
    """Test that every product ``H̃^*(K_I) ⊗ H̃^*(K_J) → H̃^*(K_{I⊔J})`` vanishes.

    Pairs where a factor or the target degree has zero cohomology are
    skipped (their products vanish for degree reasons).  The witness is the
    first failing pair in the order ``(|I|, I)`` then ``(|J|, J)``.
    """
    if fields is None:
        fields = sound_fields(K, max_subsets, threads)
    total = 0
    for ring in fields:
        table = scan_subsets(K, ring, None, max_subsets, threads)
        n, wit = _cup_scan(K, ring, table, _ClassCache(K, ring, table))
        total += n
        if wit is not None:
            return GolodReport("NonGolod", list(fields), total, 0, wit)
    return GolodReport("Golod", list(fields), total, 0, None, ["cup products vanish over every listed field"])


def find_union_decomposition(P: Complex, max_faces: int = 200_000):
    """Split ``P = K1 ∪_α K2`` along a face ``α`` with both sides larger than α.

    Returns ``(side1, side2, alpha)`` as label tuples, or None.  A split
    exists iff deleting ``α`` disconnects the 1-skeleton of ``P`` (ghost
    vertices count as isolated points).
    """
    if P.face_count_estimate() > max_faces:
        return None
    full = P.ground.full
    adj = [0] * P.m
    for e in P.faces(1):
        i, j = bits(e)
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    for alpha in P.all_faces(max_faces):
        rest = full & ~alpha
        if not rest:
            continue
        start = rest & -rest
        comp = start
        frontier = start
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            nb = adj[low.bit_length() - 1] & rest & ~comp
            comp |= nb
            frontier |= nb
        if comp != rest:
            return P.labels(comp), P.labels(rest & ~comp), P.labels(alpha)
    return None


def _massey_scan(K: Complex, table: dict, cache: _ClassCache):
    supports = sorted((I for I in table if I), key=_pair_order)
    examined = 0
    for I in supports:
        for J in supports:
            if I & J:
                continue
            for L in supports:
                if L & (I | J):
                    continue
                U = I | J | L
                HU = table.get(U)
                if not HU:
                    continue
                for p in table[I]:
                    for q in table[J]:
                        for r in table[L]:
                            if p + q + r + 1 not in HU:
                                continue
                            for a in cache.classes(I, p):
                                for b in cache.classes(J, q):
                                    for c in cache.classes(L, r):
                                        examined += 1
                                        v = massey_triple(a, b, c, F2)
                                        if v.nontrivial:
                                            return examined, {
                                                "field": "fp:2",
                                                "supports": [list(K.labels(X)) for X in (I, J, L)],
                                                "degrees": [p, q, r],
                                            }
    return examined, None


def golod_check(K: Complex, fields: list | None = None, max_subsets: int = DEFAULT_MAX_SUBSETS,
                threads: int | None = None, union_hint=None) -> GolodReport:
    """Cup products over ``fields`` plus the triple Massey layer.

    When ``K`` is the dual of a union along a face (found automatically or
    passed as ``union_hint``), all higher Massey products vanish for
    multidegree reasons.  Otherwise triple products over F_2 are computed
    on bases of the admissible multidegrees.
    """
    rep = golod_cup_check(K, fields, max_subsets, threads)
    if not rep.golod:
        return rep
    notes = list(rep.notes)
    decomp = union_hint
    if decomp is None and not K.is_full_simplex():
        try:
            decomp = find_union_decomposition(alexander_dual(K))
        except ComplexError:
            decomp = None
    if decomp is not None:
        s1, s2, alpha = decomp
        notes.append(
            "dual is a union along the face {%s}; higher Massey products vanish by multidegree"
            % ",".join(alpha)
        )
        return GolodReport("Golod", rep.fields_checked, rep.pairs_examined, 0, None, notes)
    table = scan_subsets(K, F2, None, max_subsets, threads)
    n, wit = _massey_scan(K, table, _ClassCache(K, F2, table))
    notes.append("triple Massey products checked over F2 on class bases")
    if wit is not None:
        return GolodReport("MasseyNontrivial", rep.fields_checked, rep.pairs_examined, n, wit, notes)
    return GolodReport("Golod", rep.fields_checked, rep.pairs_examined, n, None, notes)


# ---------------------------------------------------------------------------
# unions along a face


@dataclass
class DetectorResult:
    non_golod: bool
    witness: dict | None
    pairs_examined: int
    ring: RingSpec

    def to_json(self) -> dict:
        out = {"non_golod": self.non_golod, "pairs_examined": self.pairs_examined, "ring": self.ring.to_json()}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def union_dual_nongolod_detector(K1: Complex, K2: Complex, alpha=None, ring: RingSpec = QQ) -> DetectorResult:
    """Decide whether ``(K1 ∪_α K2)^*`` is non-Golod over ``ring``.

    Searches faces ``σ ⊇ V(K1)-α`` and ``τ ⊇ V(K2)-α`` with ``σ ∪ τ`` the
    whole vertex set, and asks whether
    ``st_{lk ρ}(σ-ρ) ∪ st_{lk ρ}(τ-ρ) → lk ρ`` (``ρ = σ∩τ``) is nonzero on
    reduced homology.
    """
    if not ring.is_field:
        raise ValueError("the detector works over a field")
    K = union_along_face(K1, K2, alpha)
    g = K.ground
    V1 = g.mask(K1.ground.labels)
    V2 = g.mask(K2.ground.labels)
    A = V1 & V2
    if A == V1 or A == V2:
        raise ComplexError("α must differ from both vertex sets")
    a_bits = bits(A)
    cands = []
    for s_code in range(1 << len(a_bits)):
        sa = _spread(s_code, a_bits)
        sigma = (V1 & ~A) | sa
        if not K.is_face(sigma):
            continue
        rest = A & ~sa
        free = bits(sa)
        for t_code in range(1 << len(free)):
            ta = rest | _spread(t_code, free)
            tau = (V2 & ~A) | ta
            if not K.is_face(tau):
                continue
            cands.append((sigma, tau))
    cands.sort(key=lambda st: (popcount(st[0] & st[1]), popcount(st[1]), lex_key(st[0]), lex_key(st[1])))
    examined = 0
    for sigma, tau in cands:
        examined += 1
        rho = sigma & tau
        lk = link(K, rho)
        lg = lk.ground
        s_l = g.transfer(sigma & ~rho, lg)
        t_l = g.transfer(tau & ~rho, lg)
        sub = union(star(lk, s_l), star(lk, t_l))
        if not inclusion_is_zero_on_homology(sub, lk, ring):
            return DetectorResult(True, {
                "sigma": list(K.labels(sigma)),
                "tau": list(K.labels(tau)),
                "I": list(K.labels(g.full & ~sigma)),
                "J": list(K.labels(g.full & ~tau)),
            }, examined, ring)
    return DetectorResult(False, None, examined, ring)


# ---------------------------------------------------------------------------
# Steenrod squares on mapping cones


class _CohomologyModel:
    """Bases of ``H̃^n(X; F_2)`` with coordinate maps, degree by degree."""

    def __init__(self, X: Complex):
        self.X = X
        self.C = ChainData(X, reduced=True)
        self._q: dict = {}

    def basis(self, n: int):
        q = self._q.get(n)
        if q is None:
            q = cohomology_basis(self.C, n, F2) if n in self.C.faces else None
            self._q[n] = q
        return q

    def dim(self, n: int) -> int:
        q = self.basis(n)
        return q.dim if q is not None else 0

    def classes(self, n: int) -> list[CochainClass]:
        q = self.basis(n)
        if q is None:
            return []
        fs = self.C.faces[n]
        return [CochainClass(self.X, n, F2, {fs[i]: c for i, c in z.items()}) for z in q.reps]

    def coords(self, x: CochainClass) -> list:
        q = self.basis(x.degree)
        if q is None:
            return []
        idx = {f: i for i, f in enumerate(self.C.faces[x.degree])}
        return q.coords({idx[f]: c for f, c in x.coeffs.items()})


def _span_dim(vectors) -> int:
    E = Echelon(Field(F2))
    for v in vectors:
        E.insert({i: c for i, c in enumerate(v) if c})
    return E.dim


@dataclass
class SteenrodReport:
    certified: bool
    cohomology_ranks: dict
    witnesses: list
    squares: list

    def to_json(self) -> dict:
        return {
            "certified_stably_essential": self.certified,
            "interpretation": (
                "Sq acts on the cone in a way no splitting allows: the map is stably essential"
                if self.certified
                else "no Steenrod obstruction found; this proves nothing about the map"
            ),
            "cohomology_ranks_f2": {str(k): v for k, v in sorted(self.cohomology_ranks.items())},
            "witnesses": self.witnesses,
            "squares": self.squares,
        }


def steenrod_obstruction_map(f: SimplicialMap, max_k: int | None = None) -> SteenrodReport:
    """Look for Steenrod squares on the mapping cone ``C_f`` that rule out a
    stable splitting ``C_f ≃ X ∨ ΣA``.

    With ``S = ker(H̃^*(C_f) → H̃^*(X))`` (the classes coming from ``ΣA``), a
    stable null-homotopy forces ``Sq^k(H^n) ∩ S = Sq^k(S^n)``.  A strictly
    larger intersection certifies that ``f`` is stably essential.
    """
    from .constructions import mapping_cone

    C = mapping_cone(f)
    X = f.target
    HC = _CohomologyModel(C)
    HX = _CohomologyModel(X)
    top = C.dim
    ranks = {n: HC.dim(n) for n in range(-1, top + 1)}
    # restriction to X inside C: X keeps its labels in the cone
    xfaces = {}
    for n in range(0, top + 1):
        if n in HX.C.faces:
            xfaces[n] = [(xf, X.ground.transfer(xf, C.ground)) for xf in HX.C.faces[n]]

    def restrict(x: CochainClass) -> CochainClass:
        pairs = xfaces.get(x.degree, [])
        return CochainClass(X, x.degree, F2, {xf: x.coeffs[cf] for xf, cf in pairs if cf in x.coeffs})

    S: dict[int, list[list]] = {}
    for n in range(0, top + 1):
        reps = HC.classes(n)
        if not reps:
            S[n] = []
            continue
        # kernel of the restriction, in coordinates of H^n(C)
        rows = [HX.coords(restrict(z)) if HX.dim(n) else [] for z in reps]
        F = Field(F2)
        E = Echelon(F, track=True)
        kern = []
        for j, r in enumerate(rows):
            rel = E.insert({i: c for i, c in enumerate(r) if c}, tag=j)
            if rel is not None:
                kern.append([rel.get(i, 0) for i in range(len(reps))])
        S[n] = kern
    witnesses = []
    squares = []
    max_k = top if max_k is None else max_k
    for n in range(0, top + 1):
        reps = HC.classes(n)
        if not reps:
            continue
        for k in range(1, max_k + 1):
            if n + k > top or not HC.dim(n + k):
                continue
            images = [HC.coords(sq(k, z)) for z in reps]
            img_dim = _span_dim(images)
            squares.append({"k": k, "from": n, "rank": img_dim})
            if not img_dim:
                continue
            Sk = S.get(n + k, [])
            inter = img_dim + _span_dim(Sk) - _span_dim(images + Sk)
            s_images = []
            for v in S.get(n, []):
                acc = [0] * HC.dim(n + k)
                for j, c in enumerate(v):
                    if c:
                        acc = [(x + y) % 2 for x, y in zip(acc, images[j])]
                s_images.append(acc)
            sq_s = _span_dim(s_images)
            if inter > sq_s:
                witnesses.append({"k": k, "n": n, "dim_image_in_S": inter, "dim_sq_of_S": sq_s})
    return SteenrodReport(bool(witnesses), ranks, witnesses, squares)


def steenrod_obstruction(K: Complex, I, J, max_k: int | None = None) -> SteenrodReport:
    """Steenrod test for the inclusion ``K_{I⊔J} → K_I * K_J``."""
    I = K.ground.mask(I)
    J = K.ground.mask(J)
    if I & J:
        raise ComplexError("I and J must be disjoint")
    KU = restriction(K, I | J)
    target = join(restriction(K, I), restriction(K, J))
    f = SimplicialMap(KU, target, {x: x for x in KU.ground.labels})
    return steenrod_obstruction_map(f, max_k)


# ---------------------------------------------------------------------------
# the counterexample, via its finite reductions

PIPELINE_CHECKS = ("golod", "torsion", "sq2")


def _certificate(check: str, ok: bool, t0: float, data: dict, witness=None) -> dict:
    out = {"check": check, "status": "pass" if ok else "fail"}
    if witness is not None:
        out["witness"] = witness
    out["data"] = data
    out["runtime_ms"] = int((time.perf_counter() - t0) * 1000)
    return out


def _groups(H: dict) -> dict:
    return {str(d): str(g) for d, g in sorted(H.items()) if not g.is_zero}


def _check_golod(ce, eta) -> dict:
    from .collapse import collapse_onto
    from .constructions import box_product, simplex
    from .homology import homology, relative_homology

    t0 = time.perf_counter()
    K, L, S, F = ce.K, ce.L, ce.sphere_copy, ce.F
    g = K.ground
    # ρ = ∅: by excision H̃(K) = H(X, X_V) and H̃(Δ ∪ S*w1w2) = H(S*w1w2, S),
    # where X is K without the big simplex
    big = g.mask(ce.V + (ce.v0,))
    X = Complex(g, [f for f in K.facets if f != big])
    XV = union(L, F)
    ww = g.mask([ce.w1, ce.w2])
    Y = Complex(g, [f for f in K.facets if f & ww == ww])
    HX = relative_homology(X, XV, ZZ)
    HY = relative_homology(Y, S, ZZ)
    overlap = sorted(d for d in HX if not HX[d].is_zero and d in HY and not HY[d].is_zero)
    empty_ok = not overlap
    data = {
        "rho_empty": {
            "H_K": _groups(HX),
            "H_simplex_union_join": _groups(HY),
            "common_degrees": overlap,
            "argument": "the two sides are nonzero in different degrees, so the inclusion is zero",
        }
    }
    box = box_product(eta.source, simplex(["1", "2"]))
    failures = []
    faces_checked = 0
    for rho in S.all_faces():
        if not rho:
            continue
        labs = S.labels(rho)
        lk_s = link(S, labs)
        lk_l = link(L, labs)
        faces_checked += 1
        for ring in (QQ, F2):
            if not inclusion_is_zero_on_homology(lk_s, lk_l, ring):
                failures.append({"rho": list(labs), "ring": ring.to_json(), "reason": "nonzero induced map"})
        Hb = homology(link(box, labs), ZZ)
        if any(not x.is_zero for x in Hb.values()):
            failures.append({"rho": list(labs), "reason": "prism link not acyclic"})
    data["faces_checked"] = faces_checked
    data["failures"] = failures
    target = eta.target
    collapses = {}
    for v in S.ground.labels:
        r = collapse_onto(deletion(L, v), target)
        collapses[v] = len(r.steps) if r else None
    data["collapse_steps"] = collapses
    ok = empty_ok and not failures and all(n is not None for n in collapses.values())
    return _certificate("golod", ok, t0, data, failures[0] if failures else None)


def _check_torsion(ce, eta) -> dict:
    from .homology import homology, torsion_scan_links

    t0 = time.perf_counter()
    L, S = ce.L, ce.sphere_copy
    scan = torsion_scan_links(L)
    sphere3 = {3: HomologyGroup(1)}
    sphere2 = {2: HomologyGroup(1)}

    def nz(H):
        return {d: g for d, g in H.items() if not g.is_zero}

    aux = []
    ok = scan["torsion_free"]
    T = eta.target.ground.labels
    for v in T:
        H = nz(homology(link(L, [v]), ZZ))
        good = H == sphere3
        ok &= good
        aux.append({"face": [v], "homology": _groups(H), "expected": "S3", "match": good})
    pairs = [(x, y) for i, x in enumerate(T) for y in T[i + 1:] if x != T[0] or y != T[1]]
    pairs += [(x, y) for x in S.ground.labels for y in T[2:]]
    for fc in pairs:
        if not L.is_face(list(fc)):
            continue
        H = nz(homology(link(L, list(fc)), ZZ))
        good = H == sphere2
        ok &= good
        aux.append({"face": list(fc), "homology": _groups(H), "expected": "S2", "match": good})
    acyclic = []
    for v in S.ground.labels:
        H = nz(homology(link(L, [v]), ZZ))
        acyclic.append(not H)
    ok &= all(acyclic)
    data = {
        "faces_scanned": scan["faces_scanned"],
        "torsion_faces": scan["torsion_faces"],
        "auxiliary_links": aux,
        "sphere_vertex_links_acyclic": all(acyclic),
    }
    return _certificate("torsion", ok, t0, data, scan["torsion_faces"][0] if scan["torsion_faces"] else None)


def _check_sq2(ce, eta) -> dict:
    from .constructions import mapping_cone
    from .homology import cohomology

    t0 = time.perf_counter()
    C = mapping_cone(eta)
    H = cohomology(C, F2, reduced=False)
    ranks = [H[d].rank if d in H else 0 for d in range(0, 5)]
    gens = cohomology_classes(C, 2, F2)
    nonzero = [not is_coboundary(sq(2, x)) for x in gens]
    rep = steenrod_obstruction_map(eta)
    ok = ranks == [1, 0, 1, 0, 1] and any(nonzero) and rep.certified
    data = {
        "cone_vertices": C.m,
        "cohomology_ranks_f2": ranks,
        "sq2_nonzero": any(nonzero),
        "obstruction": rep.to_json(),
    }
    return _certificate("sq2", ok, t0, data)


def counterexample_pipeline(checks=PIPELINE_CHECKS, eta: SimplicialMap | None = None) -> dict:
    """Certificates for the 55-vertex counterexample, one per requested check.

    The complex itself is never scanned; each check runs on the small pieces
    the argument reduces to.
    """
    from .constructions import build_counterexample_K
    from .fixtures import fixture

    checks = list(checks)
    unknown = set(checks) - set(PIPELINE_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}")
    eta = eta or fixture("ETA12")
    ce = build_counterexample_K(eta)
    runners = {"golod": _check_golod, "torsion": _check_torsion, "sq2": _check_sq2}
    certs = [runners[c](ce, eta) for c in PIPELINE_CHECKS if c in checks]
    D = alexander_dual(ce.K)
    return {
        "complex": {"vertices": ce.K.m, "facets": len(ce.K.facets), "dual_ghosts": list(D.ghosts)},
        "certificates": certs,
        "all_pass": all(c["status"] == "pass" for c in certs),
    }
