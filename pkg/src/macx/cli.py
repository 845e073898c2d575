"""Command-line interface.

Exit codes: 0 computed, 1 a property was refuted (non-Golod, torsion found,
nontrivial Massey product, failed certificate), 2 usage or guard error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import __version__
from .collapse import DEFAULT_BUDGET, collapse_onto
from .complex import (
    DEFAULT_MAX_FACES,
    Complex,
    ComplexError,
    FaceCountExceeded,
    alexander_dual,
    join,
    link,
    star,
    union,
    union_along_face,
)
from .constructions import box_product
from .homology import betti, has_torsion, homology, homology_to_json
from .linalg import F2, ZZ, RingSpec
from .moment_angle import SubsetCapExceeded
from .report import dumps, envelope, input_digest
from .scx import ScxError, data_path, parse_scx, render_scx

EXIT_OK, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class _Ctx:
    def __init__(self, args):
        self.args = args
        self.blobs: list[bytes] = []

    def load(self, path: str) -> Complex:
        p = Path(path)
        if not p.exists() and p.name == path and data_path(path).is_file():
            raw = data_path(path).read_bytes()
        else:
            try:
                raw = p.read_bytes()
            except OSError as e:
                raise UsageError(f"cannot read {path}: {e.strerror}") from None
        self.blobs.append(raw)
        return parse_scx(raw.decode("utf-8"))

    @property
    def threads(self) -> int | None:
        if self.args.threads is not None:
            return self.args.threads
        env = os.environ.get("MACX_THREADS")
        return int(env) if env and env.isdigit() else None

    def ring(self, default: RingSpec) -> RingSpec:
        return RingSpec.parse(self.args.ring) if self.args.ring else default


def _complex_json(K: Complex) -> dict:
    return {
        "vertices": list(K.ground.labels),
        "ghosts": list(K.ghosts),
        "dim": K.dim,
        "f_vector": K.f_vector(),
        "facets": [list(f) for f in K.facet_labels()],
    }


def _faces_arg(toks: list[str]) -> list[str]:
    out = []
    for t in toks:
        out.extend(x for x in t.split(",") if x)
    return out


# each command returns (results, exit code, text lines)

def cmd_validate(ctx):
    K = ctx.load(ctx.args.file)
    pure = K.is_pure()
    res = _complex_json(K)
    res["pure"] = pure
    res["euler_characteristic"] = K.euler_characteristic()
    lines = [
        f"{K.m} vertices ({len(K.ghosts)} ghost), {len(K.facets)} facets, dim {K.dim}",
        "f-vector " + " ".join(map(str, K.f_vector())),
        "pure" if pure else "not pure",
    ]
    return res, EXIT_OK, lines


def cmd_homology(ctx):
    K = ctx.load(ctx.args.file)
    ring = ctx.ring(ZZ)
    reduced = ctx.args.reduced
    H = homology(K, ring, reduced=reduced, max_faces=ctx.args.max_faces)
    degrees = range(-1 if reduced else 0, K.dim + 1)
    b = betti(H)
    bv = [b.get(d, 0) for d in degrees] if K.dim >= 0 else []
    tor = has_torsion(H)
    res = {
        "ring": ring.to_json(),
        "reduced": reduced,
        "homology": homology_to_json(H),
        "betti": bv,
        "torsion_found": tor,
    }
    lines = [f"H_{d} = {H[d]}" for d in sorted(H) if not H[d].is_zero] or ["all groups vanish"]
    lines.append("Betti (" + ",".join(map(str, bv)) + ")")
    return res, EXIT_REFUTED if tor else EXIT_OK, lines


def _emit_complex(ctx, K: Complex):
    return {"complex": _complex_json(K), "scx": render_scx(K)}, EXIT_OK, [render_scx(K).rstrip("\n")]


def cmd_dual(ctx):
    return _emit_complex(ctx, alexander_dual(ctx.load(ctx.args.file)))


def cmd_link(ctx):
    K = ctx.load(ctx.args.file)
    return _emit_complex(ctx, link(K, _faces_arg(ctx.args.face)))


def cmd_star(ctx):
    K = ctx.load(ctx.args.file)
    return _emit_complex(ctx, star(K, _faces_arg(ctx.args.face)))


def cmd_join(ctx):
    return _emit_complex(ctx, join(ctx.load(ctx.args.file), ctx.load(ctx.args.other)))


def cmd_union(ctx):
    A, B = ctx.load(ctx.args.file), ctx.load(ctx.args.other)
    if ctx.args.alpha is not None:
        return _emit_complex(ctx, union_along_face(A, B, _faces_arg([ctx.args.alpha])))
    return _emit_complex(ctx, union(A, B))


def cmd_boxprod(ctx):
    return _emit_complex(ctx, box_product(ctx.load(ctx.args.file), ctx.load(ctx.args.other)))


def cmd_hochster(ctx):
    from .moment_angle import hochster

    K = ctx.load(ctx.args.file)
    ring = ctx.ring(ZZ)
    b = hochster(K, ring, ctx.args.max_subsets, ctx.threads)
    res = b.to_json()
    tor = b.torsion_summands()
    res["torsion_found"] = bool(tor)
    res["torsion_summands"] = tor
    lines = [f"H^{p}(Z_K) = {g}" for p, g in b.cohomology(torus=True).items()]
    for t in tor:
        lines.append(f"torsion {t['torsion']} from subset {{{','.join(t['subset'])}}} in degree {t['p']}")
    return res, EXIT_REFUTED if tor else EXIT_OK, lines


def cmd_golod(ctx):
    from .moment_angle import golod_check, golod_cup_check

    K = ctx.load(ctx.args.file)
    fields = [RingSpec.parse(ctx.args.ring)] if ctx.args.ring else None
    if fields and not fields[0].is_field:
        raise UsageError("golod needs a field: use --ring q or --ring fp:P")
    run = golod_cup_check if ctx.args.cup_only else golod_check
    rep = run(K, fields, ctx.args.max_subsets, ctx.threads)
    res = rep.to_json()
    lines = [f"{rep.verdict} over {', '.join(str(f) for f in rep.fields_checked)}"]
    if rep.witness:
        w = rep.witness
        if "I" in w:
            lines.append(f"witness I={{{','.join(w['I'])}}} J={{{','.join(w['J'])}}} degrees {w['degrees']}")
        else:
            lines.append(f"witness supports {w['supports']} degrees {w['degrees']}")
    lines.extend(rep.notes)
    return res, EXIT_OK if rep.golod else EXIT_REFUTED, lines


def cmd_collapse(ctx):
    K = ctx.load(ctx.args.file)
    T = ctx.load(ctx.args.target)
    r = collapse_onto(K, T, ctx.args.budget)
    if r:
        res = {"status": "collapsed", "steps": r.to_json()}
        return res, EXIT_OK, [f"collapsed in {len(r.steps)} elementary steps"]
    res = {"status": "inconclusive" if r.reason == "budget exhausted" else "no_collapse",
           "reason": r.reason, "steps_tried": r.steps_tried}
    code = EXIT_USAGE if res["status"] == "inconclusive" else EXIT_REFUTED
    return res, code, [f"{res['status']}: {r.reason} after {r.steps_tried} steps"]


def cmd_massey(ctx):
    from .cochains import massey_triple, multidegree_classes

    K = ctx.load(ctx.args.file)
    sup = [_faces_arg([s]) for s in ctx.args.supports]
    bases = [multidegree_classes(K, s, F2) for s in sup]
    rows = []
    nontrivial = False
    for ia, a in enumerate(bases[0]):
        for ib, b in enumerate(bases[1]):
            for ic, c in enumerate(bases[2]):
                v = massey_triple(a, b, c, F2)
                nontrivial |= v.nontrivial
                row = {"classes": [ia, ib, ic], "degrees": [a.degree, b.degree, c.degree]}
                row.update(v.to_json())
                rows.append(row)
    res = {"ring": F2.to_json(), "supports": sup, "class_counts": [len(x) for x in bases],
           "triples": rows, "nontrivial_found": nontrivial}
    lines = [f"<{r['classes']}> degrees {r['degrees']}: {r['status']} {r['reason']}".rstrip() for r in rows]
    if not rows:
        lines = ["some support carries no reduced cohomology; nothing to compute"]
    return res, EXIT_REFUTED if nontrivial else EXIT_OK, lines


def cmd_counterexample(ctx):
    from .moment_angle import PIPELINE_CHECKS, counterexample_pipeline

    checks = ctx.args.check or ["all"]
    if "all" in checks:
        checks = list(PIPELINE_CHECKS)
    res = counterexample_pipeline(checks)
    lines = [f"{c['check']}: {c['status']} ({c['runtime_ms']} ms)" for c in res["certificates"]]
    return res, EXIT_OK if res["all_pass"] else EXIT_REFUTED, lines


COMMANDS = {
    "validate": cmd_validate,
    "homology": cmd_homology,
    "dual": cmd_dual,
    "link": cmd_link,
    "star": cmd_star,
    "join": cmd_join,
    "union": cmd_union,
    "boxprod": cmd_boxprod,
    "hochster": cmd_hochster,
    "golod": cmd_golod,
    "collapse": cmd_collapse,
    "massey": cmd_massey,
    "counterexample": cmd_counterexample,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--ring", help="z, q or fp:P")
    common.add_argument("--json", action="store_true", help="print the JSON report envelope")
    common.add_argument("--max-subsets", type=int, default=1 << 24)
    common.add_argument("--max-faces", type=int, default=DEFAULT_MAX_FACES)
    common.add_argument("--threads", type=int, default=None, help="defaults to $MACX_THREADS")

    p = _Parser(prog="macx", description="Simplicial complexes and moment-angle complexes.")
    p.add_argument("--version", action="version", version=f"macx {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_, *files):
        sp = sub.add_parser(name, parents=[common], help=help_)
        for f in files:
            sp.add_argument(f)
        return sp

    add("validate", "parse a .scx file and summarize it", "file")
    add("homology", "reduced or unreduced homology", "file").add_argument("--reduced", action="store_true")
    add("dual", "Alexander dual on the same ground set", "file")
    add("link", "link of a face", "file").add_argument("face", nargs="+")
    add("star", "star of a face", "file").add_argument("face", nargs="+")
    add("join", "join of two complexes", "file", "other")
    add("union", "union, optionally along a face", "file", "other").add_argument("--alpha")
    add("boxprod", "staircase product in ground order", "file", "other")
    add("hochster", "bigraded Betti numbers and H^*(Z_K)", "file")
    add("golod", "Golodness test", "file").add_argument("--cup-only", action="store_true")
    add("collapse", "search for collapses onto a subcomplex", "file", "target").add_argument(
        "--budget", type=int, default=DEFAULT_BUDGET)
    add("massey", "triple Massey products over F2", "file").add_argument(
        "supports", nargs=3, help="three comma-separated vertex sets")
    add("counterexample", "certify the 55-vertex counterexample").add_argument(
        "--check", action="append", choices=["golod", "torsion", "sq2", "all"])
    return p


def _normalized_args(args) -> list:
    d = vars(args).copy()
    d.pop("json", None)
    d.pop("threads", None)
    return sorted((k, v) for k, v in d.items())


def main(argv=None) -> int:
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"macx: {e}", file=sys.stderr)
        return EXIT_USAGE
    ctx = _Ctx(args)
    try:
        results, code, lines = COMMANDS[args.command](ctx)
    except (UsageError, ScxError, ComplexError, FaceCountExceeded, ValueError, KeyError) as e:
        code, results, lines = EXIT_USAGE, {"error": type(e).__name__, "message": str(e)}, None
    except SubsetCapExceeded as e:
        code, results, lines = EXIT_USAGE, {"error": type(e).__name__, "message": str(e)}, None
    ms = int((time.perf_counter() - t0) * 1000)
    if args.json:
        digest = input_digest(args.command, _normalized_args(args), ctx.blobs)
        print(dumps(envelope(args.command, digest, results, ms)))
    elif lines is None:
        print(f"macx: {results['message']}", file=sys.stderr)
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
