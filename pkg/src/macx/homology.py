"""Simplicial (co)homology over Z, Q and F_p.

Chains are indexed by the canonical face order of :meth:`Complex.faces`.
Orientation: a face is its vertex list in ground-set order, and
``∂[v_0..v_d] = Σ (-1)^j [v_0..v̂_j..v_d]``.  Reduced complexes carry the
empty face in degree -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import kernels
from .complex import (
    DEFAULT_MAX_FACES,
    Complex,
    ComplexError,
    FaceCountExceeded,
    SimplicialMap,
    bits,
    is_subcomplex,
    link,
    alexander_dual,
)
from .linalg import (
    ZZ,
    Echelon,
    Field,
    IntMatrix,
    QuotientBasis,
    RingSpec,
    invariant_factors,
    nullspace,
    rank_over_field,
    rational_rank,
)


@dataclass(frozen=True)
class HomologyGroup:
    """``Z^rank ⊕ Z/t_1 ⊕ ...`` (over a field ``rank`` is the dimension)."""

    rank: int = 0
    torsion: tuple[int, ...] = field(default_factory=tuple)

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) or "0"

    def to_json(self, degree: int) -> dict:
        return {"degree": degree, "rank": self.rank, "torsion": list(self.torsion)}


def homology_to_json(H: dict[int, HomologyGroup]) -> list[dict]:
    return [H[d].to_json(d) for d in sorted(H)]


def betti(H: dict[int, HomologyGroup]) -> dict[int, int]:
    return {d: g.rank for d, g in H.items()}


def has_torsion(H: dict[int, HomologyGroup]) -> bool:
    return any(g.torsion for g in H.values())


def is_acyclic(H: dict[int, HomologyGroup]) -> bool:
    return all(g.is_zero for g in H.values())


# ---------------------------------------------------------------------------
# chain-level data


def _chain_faces(K: Complex, reduced: bool, max_faces: int, exclude=None) -> dict[int, list[int]]:
    lo = -1 if reduced else 0
    out = {}
    for d in range(lo, K.dim + 1):
        fs = K.faces(d, max_faces)
        if exclude is not None:
            fs = [f for f in fs if f not in exclude]
        out[d] = fs
    return out


def _boundary_columns(hi: list[int], lo: list[int]) -> list[dict]:
    """Column ``j`` is the boundary of ``hi[j]`` in coordinates of ``lo``."""
    idx = {f: i for i, f in enumerate(lo)}
    cols = []
    for f in hi:
        col = {}
        j = 0
        rest = f
        while rest:
            low = rest & -rest
            rest ^= low
            k = idx.get(f ^ low)
            if k is not None:
                col[k] = 1 if j % 2 == 0 else -1
            j += 1
        cols.append(col)
    return cols


def boundary_matrix(K: Complex, d: int, reduced: bool = True, max_faces: int = DEFAULT_MAX_FACES) -> IntMatrix:
    """Matrix of ``∂_d : C_d → C_{d-1}`` (rows are ``(d-1)``-faces)."""
    if d < 0:
        raise ValueError("d must be >= 0")
    hi = K.faces(d, max_faces)
    lo = K.faces(d - 1, max_faces) if (d > 0 or reduced) else []
    M = IntMatrix(len(lo), len(hi))
    for j, col in enumerate(_boundary_columns(hi, lo)):
        for i, v in col.items():
            M.rows[i][j] = v
    return M


def _matrix_from_columns(cols: list[dict], nrows: int) -> IntMatrix:
    M = IntMatrix(nrows, len(cols))
    for j, col in enumerate(cols):
        for i, v in col.items():
            M.rows[i][j] = v
    return M


def _homology_from_faces(fd: dict[int, list[int]], ring: RingSpec) -> dict[int, HomologyGroup]:
    degrees = sorted(fd)
    if not degrees:
        return {}
    counts = {d: len(fd[d]) for d in degrees}
    ranks: dict[int, int] = {}
    tors: dict[int, list[int]] = {}
    for d in degrees:
        if d - 1 not in fd or not fd[d] or not fd[d - 1]:
            ranks[d] = 0
            continue
        if ring.kind == "Fp":
            ranks[d] = kernels.boundary_rank_mod_p(sorted(fd[d - 1]), fd[d], ring.p)
            continue
        cols = _boundary_columns(fd[d], fd[d - 1])
        if ring.kind == "Q":
            ranks[d] = rational_rank(cols)
        else:
            inv = invariant_factors(_matrix_from_columns(cols, len(fd[d - 1])))
            ranks[d] = len(inv)
            tors[d - 1] = [t for t in inv if t > 1]
    out = {}
    for d in degrees:
        r = counts[d] - ranks.get(d, 0) - ranks.get(d + 1, 0)
        out[d] = HomologyGroup(r, tuple(tors.get(d, ())))
    return out


def homology(K: Complex, ring: RingSpec = ZZ, reduced: bool = True, max_faces: int = DEFAULT_MAX_FACES):
    """(Reduced) homology groups of ``K`` by degree."""
    return _homology_from_faces(_chain_faces(K, reduced, max_faces), ring)


def _coboundary_columns(lo: list[int], hi: list[int], m: int) -> list[dict]:
    """Column ``i`` is ``δ`` of the dual cochain of ``lo[i]`` in coordinates of ``hi``."""
    idx = {f: i for i, f in enumerate(hi)}
    cols = []
    for f in lo:
        col = {}
        for v in range(m):
            bit = 1 << v
            if f & bit:
                continue
            k = idx.get(f | bit)
            if k is not None:
                # sign of v's slot in f ∪ v
                col[k] = -1 if bin(f & (bit - 1)).count("1") % 2 else 1
        cols.append(col)
    return cols


def cohomology(K: Complex, ring: RingSpec = ZZ, reduced: bool = True, max_faces: int = DEFAULT_MAX_FACES):
    """(Reduced) cohomology, computed from the coboundary matrices directly."""
    fd = _chain_faces(K, reduced, max_faces)
    degrees = sorted(fd)
    counts = {d: len(fd[d]) for d in degrees}
    ranks: dict[int, int] = {}  # ranks[d] = rank of δ: C^{d-1} -> C^d
    tors: dict[int, list[int]] = {}
    for d in degrees:
        if d - 1 not in fd or not fd[d] or not fd[d - 1]:
            continue
        cols = _coboundary_columns(fd[d - 1], fd[d], K.m)
        if ring.kind == "Z":
            inv = invariant_factors(_matrix_from_columns(cols, len(fd[d])))
            ranks[d] = len(inv)
            tors[d] = [t for t in inv if t > 1]
        elif ring.kind == "Q":
            ranks[d] = rational_rank(cols)
        else:
            ranks[d] = rank_over_field(cols, Field(ring))
    out = {}
    for d in degrees:
        r = counts[d] - ranks.get(d, 0) - ranks.get(d + 1, 0)
        out[d] = HomologyGroup(r, tuple(tors.get(d, ())))
    return out


def relative_homology(K: Complex, A: Complex, ring: RingSpec = ZZ, max_faces: int = DEFAULT_MAX_FACES):
    """``H_*(K, A)`` for a subcomplex ``A`` (labels matched by name)."""
    if not is_subcomplex(A, K):
        raise ComplexError("A is not a subcomplex of K")
    a_faces = set()
    for d in range(-1, A.dim + 1):
        for f in A.faces(d, max_faces):
            a_faces.add(A.ground.transfer(f, K.ground))
    fd = _chain_faces(K, True, max_faces, exclude=a_faces)
    fd = {d: fs for d, fs in fd.items() if d >= 0}
    H = _homology_from_faces(fd, ring)
    return {d: H.get(d, HomologyGroup()) for d in range(0, K.dim + 1)}


def cohomology_from_homology(H: dict[int, HomologyGroup]) -> dict[int, HomologyGroup]:
    """Universal coefficients over Z: ``H^n = Free(H_n) ⊕ Tors(H_{n-1})``."""
    return {d: HomologyGroup(g.rank, tuple(H[d - 1].torsion) if d - 1 in H else ()) for d, g in H.items()}


# ---------------------------------------------------------------------------
# bases over a field


class ChainData:
    """Faces and boundary columns of the (reduced) chain complex of ``K``."""

    def __init__(self, K: Complex, reduced: bool = True, max_faces: int = DEFAULT_MAX_FACES):
        self.K = K
        self.reduced = reduced
        self.faces = _chain_faces(K, reduced, max_faces)
        self._cols: dict[int, list[dict]] = {}

    def boundary_columns(self, d: int) -> list[dict]:
        cols = self._cols.get(d)
        if cols is None:
            if d in self.faces and d - 1 in self.faces:
                cols = _boundary_columns(self.faces[d], self.faces[d - 1])
            else:
                cols = [{} for _ in self.faces.get(d, ())]
            self._cols[d] = cols
        return cols

    def coboundary_columns(self, d: int) -> list[dict]:
        """Column ``i`` is ``δ`` of the dual of the ``i``-th ``d``-face."""
        lo = self.faces.get(d, [])
        if d + 1 not in self.faces:
            return [{} for _ in lo]
        return _coboundary_columns(lo, self.faces[d + 1], self.K.m)


def homology_basis(K: Complex | ChainData, d: int, ring: RingSpec, reduced: bool = True) -> QuotientBasis:
    """Cycle representatives of ``H_d(K; k)`` with a coordinate map."""
    C = K if isinstance(K, ChainData) else ChainData(K, reduced)
    F = Field(ring)
    cycles = nullspace(C.boundary_columns(d), F)
    bounds = [F.vec(c) for c in C.boundary_columns(d + 1)]
    return QuotientBasis(F, cycles, bounds)


def cohomology_basis(K: Complex | ChainData, d: int, ring: RingSpec, reduced: bool = True) -> QuotientBasis:
    """Cocycle representatives of ``H^d(K; k)`` with a coordinate map."""
    C = K if isinstance(K, ChainData) else ChainData(K, reduced)
    F = Field(ring)
    cocycles = nullspace(C.coboundary_columns(d), F)
    cobounds = [F.vec(c) for c in C.coboundary_columns(d - 1)] if d - 1 in C.faces else []
    return QuotientBasis(F, cocycles, cobounds)


def _perm_sign(seq: list[int]) -> int:
    s = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def chain_map(f: SimplicialMap, d: int, src: ChainData, dst: ChainData):
    """Images of the ``d``-faces of the source as chains of the target."""
    tindex = {x: i for i, x in enumerate(dst.faces.get(d, ()))}
    out = []
    for face in src.faces.get(d, ()):
        img_pos = [f._pos[i] for i in bits(face)]
        if len(set(img_pos)) < len(img_pos):
            out.append({})
            continue
        mask = 0
        for q in img_pos:
            mask |= 1 << q
        out.append({tindex[mask]: _perm_sign(img_pos)})
    return out


def induced_map(f: SimplicialMap, d: int, ring: RingSpec, reduced: bool = True) -> list[list]:
    """Matrix of ``f_* : H_d(source) → H_d(target)`` over a field.

    Rows index the target basis, columns the source basis.
    """
    if not ring.is_field:
        raise ValueError("induced maps are computed over fields only")
    src = ChainData(f.source, reduced)
    dst = ChainData(f.target, reduced)
    F = Field(ring)
    hs = homology_basis(src, d, ring)
    ht = homology_basis(dst, d, ring)
    images = chain_map(f, d, src, dst)
    cols = []
    for z in hs.reps:
        img: dict = {}
        for i, c in z.items():
            F.axpy(img, c, F.vec(images[i]))
        cols.append(ht.coords(img))
    return [[cols[j][i] for j in range(len(cols))] for i in range(ht.dim)]


def inclusion_is_zero_on_homology(A: Complex, K: Complex, ring: RingSpec, reduced: bool = True) -> bool:
    """True when ``A ↪ K`` induces the zero map on (reduced) homology in all degrees."""
    f = SimplicialMap.inclusion(A, K)
    src = ChainData(A, reduced)
    dst = ChainData(K, reduced)
    F = Field(ring)
    for d in sorted(src.faces):
        if d not in dst.faces:
            continue
        hs = homology_basis(src, d, ring)
        if not hs.dim:
            continue
        images = chain_map(f, d, src, dst)
        bounds = [F.vec(c) for c in dst.boundary_columns(d + 1)]
        B = Echelon(F)
        for b in bounds:
            B.insert(b)
        for z in hs.reps:
            img: dict = {}
            for i, c in z.items():
                F.axpy(img, c, F.vec(images[i]))
            if not B.contains(img):
                return False
    return True


# ---------------------------------------------------------------------------
# scans and checks


def torsion_scan_links(K: Complex, max_faces: int = DEFAULT_MAX_FACES) -> dict:
    """Integral homology of every link; lists the faces whose link has torsion."""
    est = K.face_count_estimate()
    if est > max_faces:
        raise FaceCountExceeded(est, max_faces)
    bad = []
    scanned = 0
    for face in K.all_faces(max_faces):
        H = homology(link(K, face), ZZ)
        scanned += 1
        if has_torsion(H):
            bad.append({"face": list(K.labels(face)), "homology": homology_to_json(H)})
    return {"faces_scanned": scanned, "torsion_faces": bad, "torsion_free": not bad}


def alexander_duality_check(K: Complex) -> dict:
    """Compare ``H̃_i(K*; Z)`` with ``H̃^{m-i-3}(K; Z)`` in every degree."""
    D = alexander_dual(K)
    m = K.m
    hd = homology(D, ZZ)
    hc = cohomology(K, ZZ)
    rows = []
    ok = True
    degrees = set(hd) | {m - j - 3 for j in hc}
    for i in sorted(degrees):
        a = hd.get(i, HomologyGroup())
        b = hc.get(m - i - 3, HomologyGroup())
        match = a == b
        ok &= match
        rows.append({"degree": i, "dual_homology": str(a), "cohomology": str(b), "match": match})
    return {"m": m, "ok": ok, "degrees": rows}
