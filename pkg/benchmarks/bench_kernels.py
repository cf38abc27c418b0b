"""Compare the compiled and pure-numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--n-points 4608]
"""
import argparse
import timeit

import numpy as np

from linecurrents import kernels
from linecurrents.forward import circle_points
from linecurrents.harness import table1_scenario
from linecurrents.model import conductor_arrays
from linecurrents.moments import gauss_legendre_01


def cases(n_points, m_max, quad_order):
    s = table1_scenario()
    xy = circle_points(s.r_meas, n_points)
    cx, cy, cur = conductor_arrays(s.conductors)
    px, py = np.ascontiguousarray(xy[:, 0]), np.ascontiguousarray(xy[:, 1])
    bx, by = kernels.field_at_points(px, py, cx, cy, cur)
    nodes, weights = gauss_legendre_01(quad_order)
    return {
        "field_at_points": lambda: kernels.field_at_points(px, py, cx, cy, cur),
        "polygon_moments": lambda: kernels.polygon_moments(px, py, bx, by, s.r_meas, m_max, nodes, weights),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-points", type=int, default=4608)
    ap.add_argument("--m-max", type=int, default=6)
    ap.add_argument("--quad-order", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    previous = kernels.backend_name()
    results = {}
    try:
        for backend in sorted(kernels.BACKENDS):
            kernels.use_backend(backend)
            for name, fn in cases(args.n_points, args.m_max, args.quad_order).items():
                number = 20
                best = min(timeit.repeat(fn, number=number, repeat=args.repeat)) / number
                results[name, backend] = best
    finally:
        kernels.use_backend(previous)

    print(f"{'kernel':<18}{'backend':<10}{'time [ms]':>12}{'speedup':>10}")
    for name in ("field_at_points", "polygon_moments"):
        ref = results.get((name, "python"))
        for backend in sorted(kernels.BACKENDS):
            t = results[name, backend]
            speed = f"{ref / t:.1f}x" if ref else "-"
            print(f"{name:<18}{backend:<10}{1e3 * t:>12.3f}{speed:>10}")


if __name__ == "__main__":
    main()
