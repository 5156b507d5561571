#!/usr/bin/env python3
"""Compare the compiled and pure Python scan kernels on one square.

Streams a freshly constructed degree-n square over F_q through full
multimagic verification with each kernel and reports wall times.  With
--workers > 1 the compiled kernel also demonstrates thread scaling
(it releases the GIL; the pure kernel does not benefit from threads).

    python benchmarks/compare_kernels.py --n 4 --q 7
    python benchmarks/compare_kernels.py --n 3 --q 7 --workers 4
"""

import argparse
import time

from multimagic import HAVE_COMPILED
from multimagic.construct import construct_square
from multimagic.genmat import explicit_generator
from multimagic.verify import check_multimagic


def run(vh, degree, kernel, workers):
    start = time.perf_counter()
    report = check_multimagic(vh, degree, workers=workers, kernel=kernel)
    elapsed = time.perf_counter() - start
    assert report.ok, report.failures[:2]
    return elapsed


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=4, help="multimagic degree")
    ap.add_argument("--q", type=int, default=7, help="prime modulus")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    gm = explicit_generator(args.n, args.q)
    vh = construct_square(gm, t=tuple(range(gm.size)))
    print(f"square: order {vh.order} ({vh.cells} cells), "
          f"degrees 1..{args.n}, workers={args.workers}")
    vh.axis_tables()  # build once so both kernels time only the scan

    kernels = ["python"]
    if HAVE_COMPILED:
        kernels.insert(0, "compiled")
    else:
        print("compiled kernel not built; timing the pure kernel only")

    times = {}
    for kernel in kernels:
        best = min(run(vh, args.n, kernel, args.workers)
                   for _ in range(args.repeat))
        times[kernel] = best
        rate = vh.cells / best / 1e6
        print(f"  {kernel:>8}: {best:8.3f} s   ({rate:6.1f} Mcells/s)")
    if len(times) == 2:
        print(f"  speedup: {times['python'] / times['compiled']:.1f}x")


if __name__ == "__main__":
    main()
