"""Time the compiled and numpy kernels on the same registers.

    python benchmarks/bench_kernels.py [--qubits 12 16 20] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from cghz.kernels import compiled_backend, python_backend


def workload(mod, n):
    def go(amps):
        for q in range(n):
            mod.apply_h(amps, q)
        for q in range(n - 1):
            mod.apply_cnot(amps, q, q + 1)
        for q in range(n):
            mod.apply_z(amps, q)
        mod.prob_one(amps, n - 1)

    return go


def bench(mod, n, repeat):
    rng = np.random.default_rng(n)
    amps = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    amps /= np.linalg.norm(amps)
    go = workload(mod, n)
    return min(timeit.repeat(lambda: go(amps), number=1, repeat=repeat))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--qubits", type=int, nargs="+", default=[12, 16, 20])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = [("python", python_backend)]
    if compiled_backend is not None:
        backends.append(("cython", compiled_backend))
    else:
        print("compiled extension not built; timing the numpy kernels only")

    print(f"{'qubits':>6}  " + "  ".join(f"{name:>10}" for name, _ in backends) + "  speedup")
    for n in args.qubits:
        times = [bench(mod, n, args.repeat) for _, mod in backends]
        speedup = f"{times[0] / times[-1]:7.2f}x" if len(times) > 1 else "      -"
        print(f"{n:>6}  " + "  ".join(f"{t * 1e3:8.2f}ms" for t in times) + f"  {speedup}")


if __name__ == "__main__":
    main()
