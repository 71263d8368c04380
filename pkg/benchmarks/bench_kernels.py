"""Compare the numba and numpy paths of the integer segment kernels.

Run once per backend; TOPOFACE_NO_NUMBA picks the path at import time:

    python benchmarks/bench_kernels.py
    TOPOFACE_NO_NUMBA=1 python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from topoface import kernels, random_point_drawing


def segment_arrays(n, seed):
    d = random_point_drawing(n, seed)
    segs = [(d.vertex_points[u], d.vertex_points[v]) for u, v in d.edge_keys]
    ax = np.array([int(a[0]) for a, _ in segs], dtype=np.int64)
    ay = np.array([int(a[1]) for a, _ in segs], dtype=np.int64)
    bx = np.array([int(b[0]) for _, b in segs], dtype=np.int64)
    by = np.array([int(b[1]) for _, b in segs], dtype=np.int64)
    return ax, ay, bx, by


def bench(label, fn, repeats=3):
    fn()  # warm-up (JIT compilation for the numba path)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    print(f"  {label:<34} {best * 1e3:9.2f} ms")
    return best


def main():
    backend = "numba" if kernels.USING_NUMBA else "numpy"
    print(f"backend: {backend}")

    for n in (40, 64, 80):
        ax, ay, bx, by = segment_arrays(n, seed=1)
        print(f"n={n} ({len(ax)} segments)")
        bench(f"segment_crossings", lambda: kernels.segment_crossings(ax, ay, bx, by))
        px, py = np.int64(2 ** 19), np.int64(2 ** 19)
        bench(
            "ray_crossing_counts (1000 rays)",
            lambda: [
                kernels.ray_crossing_counts(px + k, py, (1, 0), ax, ay, bx, by)
                for k in range(1000)
            ],
        )


if __name__ == "__main__":
    main()
