"""Free faces, elementary collapses and collapse schedules."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .complex import (
    DEFAULT_MAX_FACES,
    Complex,
    ComplexError,
    FaceCountExceeded,
    bits,
    face_key,
    is_subcomplex,
    popcount,
)
from .constructions import pair_label

DEFAULT_BUDGET = 1_000_000


class CollapseError(ComplexError):
    pass


@dataclass(frozen=True)
class CollapseStep:
    """Remove ``free_face`` and everything above it inside ``coface``."""

    free_face: tuple[str, ...]
    coface: tuple[str, ...]

    def to_json(self) -> list:
        return [list(self.free_face), list(self.coface)]


@dataclass
class CollapseTrace:
    start: Complex
    end: Complex
    steps: list = field(default_factory=list)

    def to_json(self) -> list:
        return [s.to_json() for s in self.steps]

    def replay(self) -> Complex:
        K = self.start
        for s in self.steps:
            K = elementary_collapse(K, s)
        return K


@dataclass
class CollapseFailure:
    """The search stopped without reaching the target (inconclusive)."""

    reason: str
    steps_tried: int
    partial: CollapseTrace | None = None

    def __bool__(self) -> bool:
        return False


def _free_pairs(K: Complex, max_faces: int = DEFAULT_MAX_FACES) -> list[tuple[int, int]]:
    est = K.face_count_estimate()
    if est > max_faces:
        raise FaceCountExceeded(est, max_faces)
    owner: dict[int, int] = {}
    shared = set()
    facets = set(K.facets)
    for t in K.facets:
        tb = bits(t)
        # the empty face is never free
        for r in range(1, len(tb)):
            for combo in combinations(tb, r):
                s = 0
                for i in combo:
                    s |= 1 << i
                if s in shared:
                    continue
                if s in owner and owner[s] != t:
                    shared.add(s)
                    del owner[s]
                else:
                    owner[s] = t
    pairs = [(s, t) for s, t in owner.items() if s not in facets and s not in shared]
    pairs.sort(key=lambda st: (-popcount(st[0]),) + face_key(st[0])[1:])
    return pairs


def free_faces(K: Complex, max_faces: int = DEFAULT_MAX_FACES) -> list[CollapseStep]:
    """Non-facets lying in exactly one facet (highest dimension first, then lex)."""
    return [CollapseStep(K.labels(s), K.labels(t)) for s, t in _free_pairs(K, max_faces)]


def _collapse_masks(K: Complex, s: int, t: int) -> Complex:
    rest = [f for f in K.facets if f != t]
    rest.extend(t & ~(1 << v) for v in bits(s))
    return Complex(K.ground, rest)


def _is_valid(K: Complex, s: int, t: int) -> bool:
    if not s or s & ~t or s == t or t not in K.facets:
        return False
    return all(f == t or s & ~f for f in K.facets)


def elementary_collapse(K: Complex, step: CollapseStep) -> Complex:
    """Remove a free face and all faces containing it."""
    s = K.ground.mask(step.free_face)
    t = K.ground.mask(step.coface)
    if not _is_valid(K, s, t):
        raise CollapseError(f"{step.free_face} is not a free face of {step.coface} here")
    return _collapse_masks(K, s, t)


def apply_steps(K: Complex, steps) -> CollapseTrace:
    """Replay ``steps`` from ``K``, validating each one."""
    cur = K
    done = []
    for st in steps:
        cur = elementary_collapse(cur, st)
        done.append(st)
    return CollapseTrace(K, cur, done)


def _target_on(K: Complex, target: Complex) -> Complex:
    if not is_subcomplex(target, K):
        raise CollapseError("target is not a subcomplex")
    return Complex(K.ground, [target.ground.transfer(f, K.ground) for f in target.facets])


def collapse_onto(K: Complex, target: Complex, budget: int = DEFAULT_BUDGET, hint=None):
    """Search for a sequence of elementary collapses from ``K`` to ``target``.

    Greedy (largest free faces first, lexicographic tie-break) with
    backtracking; ``budget`` bounds the number of collapses tried.  ``hint``
    is an optional list of steps tried first, in order, while they stay
    valid.  Returns a :class:`CollapseTrace` or a :class:`CollapseFailure`.
    """
    T = _target_on(K, target)
    tfaces = set(T.facets)

    def in_target(s: int) -> bool:
        return any(not s & ~f for f in tfaces)

    cur = K
    steps: list[CollapseStep] = []
    tried = 0
    if hint:
        for st in hint:
            try:
                s = cur.ground.mask(st.free_face)
                t = cur.ground.mask(st.coface)
            except ComplexError:
                continue
            if in_target(s) or not _is_valid(cur, s, t):
                continue
            cur = _collapse_masks(cur, s, t)
            steps.append(st)
            tried += 1
    seen = set()
    # stack of (complex, steps so far, remaining candidate pairs)
    stack = []

    def candidates(X: Complex):
        return [(s, t) for s, t in _free_pairs(X) if not in_target(s)]

    stack.append((cur, list(steps), candidates(cur)))
    while stack:
        X, path, cands = stack[-1]
        if X.facets == T.facets:
            return CollapseTrace(K, X, path)
        if not cands:
            stack.pop()
            continue
        if tried >= budget:
            return CollapseFailure("budget exhausted", tried, CollapseTrace(K, X, path))
        s, t = cands.pop(0)
        Y = _collapse_masks(X, s, t)
        tried += 1
        if Y.facets in seen:
            continue
        seen.add(Y.facets)
        stack.append((Y, path + [CollapseStep(X.labels(s), X.labels(t))], candidates(Y)))
    return CollapseFailure("no collapse sequence reaches the target", tried)


def staircase_pairs(vertices: list[str], low: str = "1", high: str = "2") -> list[CollapseStep]:
    """The collapse pairs of one prism ``Δ^m ⊠ Δ¹`` onto its boundary and top.

    For vertices ``x_1 < ... < x_{m+1}`` and ``i = m+1, ..., 1`` the free face is
    ``x_1..x_i`` at level ``low`` followed by ``x_{i+1}..x_{m+1}`` at level
    ``high``; its coface adds ``x_i`` at level ``high``.
    """
    out = []
    n = len(vertices)
    for i in range(n, 0, -1):
        sigma = [pair_label(x, low) for x in vertices[:i]] + [pair_label(x, high) for x in vertices[i:]]
        tau = [pair_label(x, low) for x in vertices[:i]] + [pair_label(x, high) for x in vertices[i - 1:]]
        out.append(CollapseStep(tuple(sigma), tuple(tau)))
    return out


def box_schedule(K: Complex, order=None, low: str = "1", high: str = "2") -> list[CollapseStep]:
    """Collapse schedule of ``K ⊠ Δ¹`` onto ``K ⊠ {high}``.

    Prisms are processed over the nonempty faces of ``K`` in descending
    dimension, then lexicographically.
    """
    labels = list(order) if order is not None else list(K.ground.labels)
    pos = {x: i for i, x in enumerate(labels)}
    faces = [f for f in K.all_faces() if f]
    faces.sort(key=lambda f: (-popcount(f), sorted(pos[x] for x in K.labels(f))))
    steps = []
    for f in faces:
        vs = sorted(K.labels(f), key=pos.__getitem__)
        steps.extend(staircase_pairs(vs, low, high))
    return steps
