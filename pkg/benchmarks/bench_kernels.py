"""Time the residue kernels under both backends.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--modulus 103]

The modulus is a rational integer m0, taken inside Z[i] so that the residue
ring has m0^2 elements.
"""

import argparse
import random
import timeit

from congk import _kernels_py

try:
    from congk import _kernels_c
except ImportError:
    _kernels_c = None


def workloads(mod, m0, rng):
    a, b, c, t, n = m0, 0, m0, 0, 1  # Z[i] / m0 Z[i]
    pairs = [(rng.randrange(a * c), rng.randrange(a * c)) for _ in range(20000)]
    coords = [(rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)) for _ in range(20000)]
    units = mod.unit_residues(a, b, c, [(m0, 0, m0)])
    gens = rng.sample(units, 2)

    def reduce_loop():
        for X, Y in coords:
            mod.reduce_residue(X, Y, a, b, c)

    def mul_loop():
        for u, v in pairs:
            mod.residue_mul(u, v, a, b, c, t, n)

    return {
        "reduce_residue x20000": reduce_loop,
        "residue_mul x20000": mul_loop,
        "unit_residues": lambda: mod.unit_residues(a, b, c, [(m0, 0, m0)]),
        "residue_bfs (2 gens)": lambda: mod.residue_bfs(gens, a, b, c, t, n),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--modulus", type=int, default=103, help="rational integer m0 (a prime 3 mod 4 stays inert in Z[i])")
    args = ap.parse_args()

    backends = [("python", _kernels_py)]
    if _kernels_c is not None:
        backends.append(("cython", _kernels_c))
    else:
        print("compiled extension not built; timing the Python kernels only")

    results = {}
    for name, mod in backends:
        for label, fn in workloads(mod, args.modulus, random.Random(0)).items():
            results.setdefault(label, {})[name] = min(timeit.repeat(fn, number=1, repeat=args.repeat))

    print(f"{'kernel':<24}{'python (s)':>12}{'cython (s)':>12}{'speedup':>9}")
    for label, row in results.items():
        py, cy = row["python"], row.get("cython")
        cy_text = f"{cy:12.4f}" if cy is not None else f"{'-':>12}"
        speed = f"{py / cy:8.1f}x" if cy else f"{'-':>9}"
        print(f"{label:<24}{py:12.4f}{cy_text}{speed}")


if __name__ == "__main__":
    main()
