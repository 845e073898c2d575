"""Compare the compiled and pure-Python mod-p rank kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Workloads are boundary maps of fixture complexes and random dense matrices.
"""

import argparse
import random
import timeit

from macx import _kernels_py
from macx.constructions import box_product, mapping_cylinder, simplex
from macx.fixtures import fixture

try:
    from macx import _ckernels
except ImportError:
    _ckernels = None


def boundary_workloads():
    cyl = mapping_cylinder(fixture("ETA12"))
    prism = box_product(fixture("S3_12"), simplex(["1", "2"]))
    out = []
    for name, K in (("cyl(eta12)", cyl), ("S3_12 box D1", prism)):
        for d in range(1, K.dim + 1):
            out.append((f"{name} d={d}", sorted(K.faces(d - 1)), sorted(K.faces(d))))
    return out


def dense_workloads(seed=0):
    rng = random.Random(seed)
    out = []
    for n in (60, 120, 240):
        rows = [[rng.randrange(3) for _ in range(n)] for _ in range(n)]
        out.append((f"dense {n}x{n}", rows))
    return out


def bench(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("-p", type=int, default=2)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the Python timings are shown")
    print(f"{'workload':28} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    rows = [(n, lambda m, lo=lo, up=up: m.boundary_rank_mod_p(lo, up, args.p)) for n, lo, up in boundary_workloads()]
    rows += [(n, lambda m, M=M: m.rank_mod_p(M, args.p)) for n, M in dense_workloads()]
    for name, call in rows:
        tp = bench(lambda: call(_kernels_py), args.repeat)
        if _ckernels is not None:
            rp, rc = call(_kernels_py), call(_ckernels)
            assert rp == rc, f"rank mismatch on {name}: {rp} vs {rc}"
            tc = bench(lambda: call(_ckernels), args.repeat)
            print(f"{name:28} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}")
        else:
            print(f"{name:28} {tp:10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
