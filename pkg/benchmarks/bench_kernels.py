"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--sizes 256,4096,65536] [--repeat 5]

Each kernel is checked for agreement before it is timed.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from kgbench import _kernels_py as py

try:
    from kgbench import _ckernels as cy
except ImportError:
    cy = None


def _cases(n: int, rng: np.random.Generator):
    u = rng.standard_normal(n)
    up = u + 1e-3 * rng.standard_normal(n)
    v = rng.standard_normal(n)
    z = [rng.standard_normal(n) for _ in range(4)]
    chi = [rng.standard_normal(n) + 1j * rng.standard_normal(n) for _ in range(2)]
    ab = [rng.standard_normal(n) for _ in range(2)]
    steps = max(1, 200_000 // n)
    return {
        "second_difference": lambda m: m.second_difference(u, 64.0),
        f"lffd_run x{steps}": lambda m: m.lffd_run(up, u, steps, 0.1, 1e-3, 1e-3)[1],
        "cubic_kick": lambda m: m.cubic_kick(v.copy(), u, 0.01),
        "li2_potential": lambda m: m.li2_potential(*z, ab[0].copy(), ab[1].copy(), *chi, 1e-2,
                                                   1.0)[0],
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="256,4096,65536")
    ap.add_argument("--repeat", type=int, default=5)
    a = ap.parse_args(argv)
    if cy is None:
        print("compiled extension not built; only the numpy fallback is available")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<22}{'N':>8}{'numpy [us]':>13}{'cython [us]':>13}{'speedup':>9}")
    for n in (int(s) for s in a.sizes.split(",")):
        for name, fn in _cases(n, rng).items():
            t_py = min(timeit.repeat(lambda: fn(py), number=3, repeat=a.repeat)) / 3
            if cy is None:
                print(f"{name:<22}{n:>8}{t_py * 1e6:>13.1f}{'-':>13}{'-':>9}")
                continue
            diff = np.max(np.abs(np.asarray(fn(py)) - np.asarray(fn(cy))))
            if not diff <= 1e-9 * max(1.0, np.max(np.abs(np.asarray(fn(py))))):
                raise SystemExit(f"{name}: backends disagree by {diff:.3e}")
            t_cy = min(timeit.repeat(lambda: fn(cy), number=3, repeat=a.repeat)) / 3
            print(f"{name:<22}{n:>8}{t_py * 1e6:>13.1f}{t_cy * 1e6:>13.1f}{t_py / t_cy:>9.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
