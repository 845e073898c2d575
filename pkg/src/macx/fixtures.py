"""Named fixture complexes and maps, built lazily from embedded data."""

from __future__ import annotations

import threading

from .complex import Complex, ComplexError, GroundSet, SimplicialMap, make_complex

# The 12-vertex 3-sphere, four table rows of nine tetrahedra each.
S3_12_TABLE = r"""
a_0b_0c_0c_1&a_0b_0b_1c_1&a_0a_1b_1c_1&a_1a_2b_1c_1&a_2b_1c_1c_2&a_2b_1b_2c_2&a_2b_0b_2c_2&a_0a_2b_0c_2&a_0b_0c_0c_2\\
a_0a_2b_0d_1&a_0b_0b_1d_1&b_0b_1c_1d_1&b_1c_1c_2d_1&a_2c_1c_2d_1&a_0a_2c_2d_1&a_0b_1d_0d_1&b_1c_2d_0d_1&a_0c_2d_0d_1\\
a_0b_1d_0d_2&b_1c_2d_0d_2&a_0c_2d_0d_2&a_0a_1b_1d_2&a_1a_2b_1d_2&a_2b_1b_2d_2&a_2b_0b_2d_2&b_1b_2c_2d_2&b_0b_2c_2d_2\\
b_0c_0c_2d_2&b_0c_0c_1d_2&a_0c_0c_2d_2&a_0c_0c_1d_2&a_0a_1c_1d_2&a_1a_2c_1d_2&a_2b_0d_1d_2&b_0c_1d_1d_2&a_2c_1d_1d_2
"""

S3_12_LABELS = tuple(f"{x}{i}" for x in "abcd" for i in range(3))
S2_4_LABELS = ("a", "b", "c", "d")

# Example complex on {2,...,7}; glued to the simplex on 12345 along 2345.
EXAMPLE_534_L_FACETS = ("267", "367", "467", "567", "236", "456", "2345")

RP2_6_FACETS = ("123", "134", "145", "156", "126", "235", "245", "246", "346", "356")


def parse_table(table: str) -> list[tuple[str, ...]]:
    """Rows separated by ``\\\\``, cells by ``&``; a cell is ``x_iy_j...``."""
    facets = []
    for row in table.strip().split("\\\\"):
        row = row.strip()
        if not row:
            continue
        for cell in row.split("&"):
            cell = cell.strip()
            parts = cell.split("_")
            # "a_0b_0c_0c_1" -> a, 0b, 0c, 0c, 1
            labels = []
            letter = parts[0]
            for p in parts[1:]:
                labels.append(letter + p[0])
                letter = p[1:]
            if letter:
                raise ComplexError(f"malformed table cell {cell!r}")
            facets.append(tuple(labels))
    return facets


def _s2_4() -> Complex:
    from .constructions import boundary_simplex

    return boundary_simplex(S2_4_LABELS)


def _s3_12() -> Complex:
    return make_complex(S3_12_LABELS, parse_table(S3_12_TABLE))


def _eta12() -> SimplicialMap:
    return SimplicialMap(fixture("S3_12"), fixture("S2_4"), {v: v[0] for v in S3_12_LABELS})


def _example534_L() -> Complex:
    return make_complex("234567", [list(f) for f in EXAMPLE_534_L_FACETS])


def _example534_K() -> Complex:
    return make_complex("1234567", [list("12345")] + [list(f) for f in EXAMPLE_534_L_FACETS])


def _rp2_6() -> Complex:
    return make_complex("123456", [list(f) for f in RP2_6_FACETS])


def _counterexample():
    from .constructions import build_counterexample_K

    return build_counterexample_K(fixture("ETA12")).K


_BUILDERS = {
    "S2_4": _s2_4,
    "S3_12": _s3_12,
    "ETA12": _eta12,
    "EXAMPLE_534_L": _example534_L,
    "EXAMPLE_534_K": _example534_K,
    "RP2_6": _rp2_6,
    "COUNTEREXAMPLE_K": _counterexample,
}

FIXTURE_NAMES = tuple(_BUILDERS)

_cache: dict = {}
_lock = threading.RLock()


def fixture(name: str):
    """The named fixture (a :class:`Complex` or, for ``ETA12``, a map)."""
    obj = _cache.get(name)
    if obj is not None:
        return obj
    try:
        build = _BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}") from None
    with _lock:
        obj = _cache.get(name)
        if obj is None:
            obj = build()
            _cache[name] = obj
    return obj


def s3_12_ground() -> GroundSet:
    return GroundSet(S3_12_LABELS)
