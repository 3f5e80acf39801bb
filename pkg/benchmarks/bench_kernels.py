"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from swapenum import backend
from swapenum.states import random_density, random_pure_vector
from swapenum.swap_test import run_circuit
from swapenum.tensor import SubsystemShape


def best_of(repeat, func):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        func()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(rng):
    for n in (16, 20):
        v = rng.normal(size=1 << n)
        yield f"fwht n={n}", lambda k, v=v: k.fwht(v)
    for n in (3, 5):
        shape = SubsystemShape.uniform(n, 2)
        psi, phi = random_pure_vector(1 << n, rng), random_pure_vector(1 << n, rng)
        yield f"circuit n={n}", lambda k, a=psi, b=phi, s=shape: run_circuit(a, b, s, k)
    for n in (7, 9):
        rho = random_density(1 << n, rng)
        yield f"pauli sums n={n}", lambda k, r=rho, n=n: k.pauli_weight_sums(r, n)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    names = backend.available()
    rng = np.random.default_rng(0)
    print(f"{'kernel':<18}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for label, func in cases(rng):
        t = [best_of(args.repeat, lambda k=backend.get(n): func(k)) for n in names]
        row = f"{label:<18}" + "".join(f"{x * 1e3:>10.2f}ms" for x in t)
        if len(t) == 2:
            row += f"{t[1] / t[0]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
