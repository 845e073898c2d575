"""The ``.scx`` text format.

::

    # comment
    vertices 1 2 3
    facet 1 2
    facet 2 3

One ``vertices`` line, then any number of ``facet`` lines.  A bare
``facet`` line denotes the empty face.  Declared vertices that appear in
no facet are ghosts.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .complex import Complex, ComplexError, GroundSet


class ScxError(ComplexError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(msg if line is None else f"line {line}: {msg}")
        self.line = line


def parse_scx(text: str) -> Complex:
    ground = None
    facets = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *toks = line.split()
        if head == "vertices":
            if ground is not None:
                raise ScxError("second 'vertices' line", n)
            if not toks:
                raise ScxError("empty 'vertices' line", n)
            seen = set()
            for t in toks:
                if t in seen:
                    raise ScxError(f"duplicate vertex {t!r}", n)
                seen.add(t)
            ground = GroundSet(toks)
        elif head == "facet":
            if ground is None:
                raise ScxError("'facet' before 'vertices'", n)
            m = 0
            for t in toks:
                i = ground.index.get(t)
                if i is None:
                    raise ScxError(f"unknown vertex {t!r}", n)
                m |= 1 << i
            facets.append(m)
        else:
            raise ScxError(f"unknown keyword {head!r}", n)
    if ground is None:
        raise ScxError("missing 'vertices' line")
    return Complex(ground, facets)


def render_scx(K: Complex, comments: list[str] | None = None) -> str:
    out = [f"# {c}" for c in comments or ()]
    out.append("vertices " + " ".join(K.ground.labels))
    for f in K.facets:
        out.append(" ".join(["facet", *K.labels(f)]))
    return "\n".join(out) + "\n"


def data_path(name: str):
    return resources.files("macx") / "data" / name


def read_scx(path: str | Path) -> Complex:
    """Parse a file; a bare name that does not exist locally falls back to shipped data."""
    p = Path(path)
    if p.exists():
        return parse_scx(p.read_text(encoding="utf-8"))
    if p.name == str(path):
        d = data_path(p.name)
        if d.is_file():
            return parse_scx(d.read_text(encoding="utf-8"))
    raise FileNotFoundError(str(path))


def write_scx(K: Complex, path: str | Path, comments: list[str] | None = None) -> None:
    Path(path).write_text(render_scx(K, comments), encoding="utf-8")
