"""Exact linear algebra: coefficient rings, sparse echelon forms, Smith normal form.

Vectors are sparse ``dict[int, value]`` with no stored zeros.  Field values
are ``Fraction`` over Q and reduced ``int`` over F_p.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class RingSpec:
    """Coefficient ring: ``Z``, ``Q`` or ``F_p``."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Fp":
            if not (_is_prime(self.p) and self.p < 2**31):
                raise ValueError(f"F_p needs a prime p < 2^31, got {self.p}")
        elif self.p:
            raise ValueError("only F_p carries a characteristic")

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        t = text.strip().lower()
        if t == "z":
            return ZZ
        if t == "q":
            return QQ
        if t.startswith("fp:") or t.startswith("f"):
            digits = t[3:] if t.startswith("fp:") else t[1:]
            return cls("Fp", int(digits))
        raise ValueError(f"cannot parse ring {text!r} (use z, q or fp:P)")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def characteristic(self) -> int:
        return self.p

    def __str__(self) -> str:
        return {"Z": "Z", "Q": "Q"}.get(self.kind) or f"F{self.p}"

    def to_json(self) -> str:
        return {"Z": "z", "Q": "q"}.get(self.kind) or f"fp:{self.p}"


ZZ = RingSpec("Z")
QQ = RingSpec("Q")


def Fp(p: int) -> RingSpec:
    return RingSpec("Fp", p)


F2 = Fp(2)


class Field:
    """Arithmetic helpers for Q or F_p."""

    __slots__ = ("spec", "p")

    def __init__(self, spec: RingSpec):
        if not spec.is_field:
            raise ValueError(f"{spec} is not a field")
        self.spec = spec
        self.p = spec.p

    def __repr__(self) -> str:
        return f"Field({self.spec})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.spec == self.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def coerce(self, x):
        if self.p:
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if self.p:
            return pow(x, self.p - 2, self.p) if self.p > 2 else 1
        return 1 / x

    def vec(self, entries: dict) -> dict:
        out = {}
        for k, v in entries.items():
            v = self.coerce(v)
            if v:
                out[k] = v
        return out

    def axpy(self, y: dict, a, x: dict) -> None:
        """In place ``y += a * x``."""
        p = self.p
        if p:
            for k, v in x.items():
                w = (y.get(k, 0) + a * v) % p
                if w:
                    y[k] = w
                else:
                    y.pop(k, None)
        else:
            for k, v in x.items():
                w = y.get(k, 0) + a * v
                if w:
                    y[k] = w
                else:
                    y.pop(k, None)

    def scale(self, a, x: dict) -> dict:
        if self.p:
            p = self.p
            return {k: (a * v) % p for k, v in x.items() if (a * v) % p}
        return {k: a * v for k, v in x.items() if a * v}

    def neg(self, a):
        return (-a) % self.p if self.p else -a


class Echelon:
    """Incrementally built echelon basis of a subspace, with optional tracking.

    With ``track=True`` every stored row remembers which combination of the
    inserted vectors (identified by their tags) produced it, so membership
    tests can report coordinates and dependent insertions yield kernel
    vectors.
    """

    def __init__(self, fld: Field, track: bool = False):
        self.field = fld
        self.track = track
        self.rows: dict[int, dict] = {}
        self.combos: dict[int, dict] = {}

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduce(self, v: dict, combo: dict | None):
        F = self.field
        v = dict(v)
        rows = self.rows
        if not rows:
            return v, combo
        # pivot columns are row minima, so eliminating k only creates keys > k
        heap = [k for k in v if k in rows]
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            k = heapq.heappop(heap)
            c = v.get(k)
            if not c:
                continue
            a = F.neg(c)
            row = rows[k]
            F.axpy(v, a, row)
            if combo is not None:
                F.axpy(combo, a, self.combos[k])
            for j in row:
                if j in rows and j not in seen and j in v:
                    seen.add(j)
                    heapq.heappush(heap, j)
        return v, combo

    def reduce(self, v: dict) -> dict:
        return self._reduce(v, None)[0]

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def insert(self, v: dict, tag=None):
        """Add ``v``; returns ``None`` if it was independent.

        With tracking, a dependent ``v`` returns the relation (as a combination
        of tags, including ``tag`` itself) that sums to zero.
        """
        combo = {tag: self.field.coerce(1)} if self.track else None
        r, combo = self._reduce(v, combo)
        if not r:
            return combo if self.track else False
        piv = min(r)
        inv = self.field.inv(r[piv])
        self.rows[piv] = self.field.scale(inv, r)
        if self.track:
            self.combos[piv] = self.field.scale(inv, combo)
        return None

    def express(self, v: dict) -> dict | None:
        """Coordinates of ``v`` in terms of inserted tags, or None if outside."""
        if not self.track:
            raise ValueError("express() needs a tracked echelon")
        r, combo = self._reduce(v, {})
        if r:
            return None
        return {k: self.field.neg(c) for k, c in combo.items() if c}


def rank_over_field(rows: Iterable[dict], fld: Field) -> int:
    e = Echelon(fld)
    for r in rows:
        e.insert(fld.vec(r))
    return e.dim


def nullspace(columns: Sequence[dict], fld: Field) -> list[dict]:
    """Kernel of the linear map sending basis vector ``j`` to ``columns[j]``."""
    e = Echelon(fld, track=True)
    kernel = []
    for j, col in enumerate(columns):
        rel = e.insert(fld.vec(col), tag=j)
        if rel is not None:
            kernel.append({k: v for k, v in rel.items() if v})
    return kernel


class QuotientBasis:
    """Basis of ``Z / B`` for subspaces ``B ⊆ Z`` given by spanning sets.

    ``reps`` are vectors of ``Z`` whose classes form a basis of the quotient;
    :meth:`coords` returns the coordinates of the class of a vector of ``Z``.
    """

    def __init__(self, fld: Field, cycles: Iterable[dict], boundaries: Iterable[dict]):
        self.field = fld
        self.B = Echelon(fld)
        for b in boundaries:
            self.B.insert(b)
        self.H = Echelon(fld, track=True)
        self.reps: list[dict] = []
        for z in cycles:
            r = self.B.reduce(z)
            if r and self.H.insert(r, tag=len(self.reps)) is None:
                self.reps.append(z)

    @property
    def dim(self) -> int:
        return len(self.reps)

    def is_zero(self, v: dict) -> bool:
        return self.B.contains(v)

    def coords(self, v: dict) -> list:
        r = self.B.reduce(v)
        c = self.H.express(r)
        if c is None:
            raise ValueError("vector does not lie in the cycle space")
        zero = self.field.coerce(0)
        return [c.get(i, zero) for i in range(len(self.reps))]


# ---------------------------------------------------------------------------
# integer matrices


@dataclass
class IntMatrix:
    """Sparse integer matrix stored row-wise."""

    nrows: int
    ncols: int
    rows: list[dict] = field(default_factory=list)

    def __post_init__(self):
        if not self.rows:
            self.rows = [dict() for _ in range(self.nrows)]

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]]) -> "IntMatrix":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        rows = [{j: int(v) for j, v in enumerate(r) if v} for r in data]
        return cls(nrows, ncols, rows or [dict() for _ in range(nrows)])

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[i][j] = v
        return out

    def transpose(self) -> "IntMatrix":
        t = IntMatrix(self.ncols, self.nrows)
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                t.rows[j][i] = v
        return t

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = IntMatrix(self.nrows, other.ncols)
        for i, r in enumerate(self.rows):
            acc: dict = {}
            for k, v in r.items():
                for j, w in other.rows[k].items():
                    acc[j] = acc.get(j, 0) + v * w
            out.rows[i] = {j: v for j, v in acc.items() if v}
        return out

    def is_zero(self) -> bool:
        return not any(self.rows)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)


@dataclass
class SNFResult:
    """Invariant factors ``d_1 | d_2 | ...`` (nonzero only) and optional transforms."""

    diagonal: list[int]
    left: list[list[int]] | None = None
    right: list[list[int]] | None = None

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.diagonal if d > 1]


def normalize_diagonal(entries: Iterable[int]) -> list[int]:
    """Turn any nonzero diagonal into the divisibility chain with the same cokernel."""
    ds = sorted(abs(d) for d in entries if d)
    ones = [d for d in ds if d == 1]
    rest = [d for d in ds if d != 1]
    changed = True
    while changed:
        changed = False
        for i in range(len(rest)):
            for j in range(i + 1, len(rest)):
                a, b = rest[i], rest[j]
                if b % a:
                    g = gcd(a, b)
                    rest[i], rest[j] = g, a // g * b
                    changed = True
        rest.sort()
    ones.extend(d for d in rest if d == 1)
    return ones + [d for d in rest if d != 1]


def invariant_factors(A: IntMatrix) -> list[int]:
    """Nonzero invariant factors of an integer matrix (sparse elimination).

    Unit pivots are eliminated first; the remaining block is reduced with a
    minimal-absolute-value pivot until every pivot divides its row and column.
    """
    rows = {i: dict(r) for i, r in enumerate(A.rows) if r}
    cols: dict[int, set] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    diag: list[int] = []

    def drop_entry(i, j):
        s = cols.get(j)
        if s is not None:
            s.discard(i)
            if not s:
                del cols[j]

    def row_add(dst, a, src):
        # rows[dst] += a * rows[src]
        rd = rows[dst]
        for j, v in rows[src].items():
            w = rd.get(j, 0) + a * v
            if w:
                if j not in rd:
                    cols.setdefault(j, set()).add(dst)
                rd[j] = w
            elif j in rd:
                del rd[j]
                drop_entry(dst, j)
        if not rd:
            del rows[dst]

    def remove_row(i):
        for j in rows[i]:
            drop_entry(i, j)
        del rows[i]

    def eliminate_unit(pi, pj):
        pv = rows[pi][pj]
        for i in list(cols.get(pj, ())):
            if i == pi:
                continue
            row_add(i, -rows[i][pj] * pv, pi)
        remove_row(pi)
        diag.append(1)

    # phase 1: unit pivots
    progress = True
    while progress and rows:
        progress = False
        for i in list(rows):
            r = rows.get(i)
            if not r:
                continue
            for j, v in r.items():
                if v == 1 or v == -1:
                    eliminate_unit(i, j)
                    progress = True
                    break

    # phase 2: general pivots on the leftover block
    while rows:
        pi, pj, pv = None, None, None
        for i, r in rows.items():
            for j, v in r.items():
                if pv is None or abs(v) < abs(pv):
                    pi, pj, pv = i, j, v
                    if abs(v) == 1:
                        break
            if pv is not None and abs(pv) == 1:
                break
        clean = True
        for i in list(cols.get(pj, ())):
            if i == pi:
                continue
            q = rows[i][pj] // pv
            row_add(i, -q, pi)
            if i in rows and pj in rows[i]:
                clean = False
        # column operations on the pivot row
        prow = rows[pi]
        for j in list(prow):
            if j == pj:
                continue
            q = prow[j] // pv
            if q:
                # column j -= q * column pj, touching every row with an entry in pj
                for i in list(cols.get(pj, ())):
                    r = rows[i]
                    w = r.get(j, 0) - q * r[pj]
                    if w:
                        if j not in r:
                            cols.setdefault(j, set()).add(i)
                        r[j] = w
                    elif j in r:
                        del r[j]
                        drop_entry(i, j)
            if j in prow:
                clean = False
        if clean:
            remove_row(pi)
            diag.append(abs(pv))
    return normalize_diagonal(diag)


def smith_normal_form(A: IntMatrix | Sequence[Sequence[int]], transforms: bool = False) -> SNFResult:
    """Smith normal form over Z.

    Without transforms the sparse path is used.  With ``transforms=True`` a
    dense reduction returns unimodular ``U, V`` with ``U·A·V`` diagonal.
    """
    if not isinstance(A, IntMatrix):
        A = IntMatrix.from_dense(A)
    if not transforms:
        return SNFResult(invariant_factors(A))
    D, U, V = _dense_snf(A.to_dense(), A.nrows, A.ncols)
    diag = [D[i][i] for i in range(min(A.nrows, A.ncols)) if D[i][i]]
    return SNFResult(diag, U, V)


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _dense_snf(M, m, n):
    A = [list(r) for r in M]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(X, i, j):
        X[i], X[j] = X[j], X[i]

    def swap_cols(X, i, j):
        for r in X:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(m, n):
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        swap_rows(A, t, i)
        swap_rows(U, t, i)
        swap_cols(A, t, j)
        swap_cols(V, t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    for r in A:
                        r[j] -= q * r[t]
                    for r in V:
                        r[j] -= q * r[t]
                    if A[t][j]:
                        done = False
            if done:
                # divisibility against the remaining block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if A[i][j] % A[t][t]:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad])]
                U[t] = [a + b for a, b in zip(U[t], U[bad])]
                continue
            # bring the smallest entry of row/column t to the pivot
            best = (abs(A[t][t]), t, t)
            for i in range(t + 1, m):
                if A[i][t] and abs(A[i][t]) < best[0]:
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, n):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            if i != t:
                swap_rows(A, t, i)
                swap_rows(U, t, i)
            if j != t:
                swap_cols(A, t, j)
                swap_cols(V, t, j)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return A, U, V


def rational_rank(rows: Iterable[dict]) -> int:
    """Exact rank over Q of integer rows, by fraction-free elimination."""
    pivots: dict[int, dict] = {}
    for r in rows:
        v = {k: int(x) for k, x in r.items() if x}
        while v:
            piv = min(v)
            prow = pivots.get(piv)
            if prow is None:
                g = 0
                for x in v.values():
                    g = gcd(g, x)
                pivots[piv] = {k: x // g for k, x in v.items()}
                break
            a, b = prow[piv], v[piv]
            g = gcd(a, b)
            ca, cb = a // g, b // g
            nv = {}
            for k, x in v.items():
                nv[k] = ca * x
            for k, x in prow.items():
                w = nv.get(k, 0) - cb * x
                if w:
                    nv[k] = w
                else:
                    nv.pop(k, None)
            g = 0
            for x in nv.values():
                g = gcd(g, x)
            v = {k: x // g for k, x in nv.items()} if g > 1 else nv
    return len(pivots)
