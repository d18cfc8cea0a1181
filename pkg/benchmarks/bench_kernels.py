"""Compare the compiled and the numpy kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Prints the best-of-N wall time per kernel and backend and the speedup.
"""

import argparse
import timeit

import numpy as np

from edtradeoff import _kernels
from edtradeoff.majorization import section_table
from edtradeoff.numerics import random_prob_dist, random_unitary
from edtradeoff.oracle import _candidate_stats
from edtradeoff.quantum import random_scenario


def cases(rng):
    p = np.sort(random_prob_dist(14, rng))[::-1]
    q = np.sort(random_prob_dist(14, rng))[::-1]
    ok = section_table(p, q)

    s2 = random_scenario(2, rng)
    p2, q2 = np.sort(s2.P.values)[::-1], np.sort(s2.Q.values)[::-1]
    al, be = rng.uniform(0, np.pi, 4096), rng.uniform(0, 2 * np.pi, 4096)
    qubit_args = (s2.state.density, s2.basis_a.matrix, s2.basis_b.matrix, al, be, p2, q2)

    s4 = random_scenario(4, rng)
    Ms = np.stack([random_unitary(4, rng) for _ in range(2048)])
    Pp, Qt = _candidate_stats(s4, Ms)
    p4, q4 = np.sort(s4.P.values)[::-1], np.sort(s4.Q.values)[::-1]

    return {
        "partition_scan d=14": lambda k: k.partition_scan(ok),
        "qubit_err_dis n=4096": lambda k: k.qubit_err_dis(*qubit_args),
        "sorted_err_dis 2048x4": lambda k: k.sorted_err_dis(p4, q4, Pp, Qt),
        "s1_qubit_grid n=500": lambda k: k.s1_qubit_grid(0.75, 0.93, 500),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    try:
        cy = _kernels.get_backend("cython")
    except ImportError:
        print("compiled kernels are not built; only the numpy backend is available")
        cy = None
    py = _kernels.get_backend("python")
    print(f"{'kernel':<24}{'numpy [ms]':>12}{'cython [ms]':>13}{'speedup':>10}")
    for name, fn in cases(np.random.default_rng(0)).items():
        t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat)) * 1e3
        if cy is None:
            print(f"{name:<24}{t_py:>12.2f}{'-':>13}{'-':>10}")
            continue
        t_cy = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<24}{t_py:>12.2f}{t_cy:>13.2f}{t_py / t_cy:>9.1f}x")


if __name__ == "__main__":
    main()
