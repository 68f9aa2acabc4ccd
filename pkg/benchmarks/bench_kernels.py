"""Compare the compiled and pure-Python kernel backends.

Each case builds its groups from scratch so that no cached lattice or
prepared table carries over between backends.  Results of the two backends
are checked for equality before timings are reported.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from marksmith import kernels
from marksmith.catalogue import alternating, parse_group, symmetric
from marksmith.groups import direct_product
from marksmith.lattice import all_subgroups
from marksmith.marks import brute_force_tom


def lattice_a5():
    return len(all_subgroups(alternating(5)))


def lattice_s5():
    return len(all_subgroups(symmetric(5)))


def lattice_s4xc2():
    return len(all_subgroups(direct_product(symmetric(4), parse_group("C2"))[0]))


def marks_s3xs3():
    prod = direct_product(symmetric(3), symmetric(3))[0]
    return brute_force_tom(prod).to_json()


def marks_a4xs3():
    prod = direct_product(alternating(4), symmetric(3))[0]
    return brute_force_tom(prod).to_json()


CASES = [
    ("subgroups of A5", lattice_a5),
    ("subgroups of S5", lattice_s5),
    ("subgroups of S4 x C2", lattice_s4xc2),
    ("table of marks of S3 x S3", marks_s3xs3),
    ("table of marks of A4 x S3", marks_a4xs3),
]


def timed(fn, repeat: int):
    best, result = None, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available()
    if "cython" not in backends:
        print("compiled extension not built; only the python backend is available")
    print(f"{'case':32}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in CASES:
        times, results = [], []
        for b in backends:
            kernels.use(b)
            t, r = timed(fn, args.repeat)
            times.append(t)
            results.append(r)
        if any(r != results[0] for r in results):
            raise SystemExit(f"backends disagree on {name}")
        line = f"{name:32}" + "".join(f"{t:11.3f}s" for t in times)
        if len(times) > 1:
            line += f"{times[0] / times[1]:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
