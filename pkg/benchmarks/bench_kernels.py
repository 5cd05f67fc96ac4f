"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--json]

Cases cover the Toeplitz moment accumulation at k_theta = 4m+4 (k_r = 64,
or 12 for n = 3 to keep the run short) and the Jacobi eigensolver on random Hermitian
matrices of the sizes that occur for n <= 3, m <= 6. Each case checks that
both backends agree before reporting the best-of-``repeat`` wall time.
"""
import argparse
import json
import sys
import timeit

import numpy as np

from cpn_toeplitz import _backend
from cpn_toeplitz.bergman import _chunks, exponent_table
from cpn_toeplitz.multiindex import SpaceParams
from cpn_toeplitz.quadrature import QuadConfig


def moment_case(n, m, radial_points=64):
    params = SpaceParams(n, m)
    config = QuadConfig(radial_points)
    exps = exponent_table(params)
    size = len(exps)

    def run(module):
        # chunks are regenerated per call, as in the library, to bound memory
        out = np.zeros((size, size), dtype=complex)
        for z, w in _chunks(params, config, toeplitz=True):
            module.accumulate_moments(np.ascontiguousarray(z), np.ascontiguousarray(w.astype(complex)), exps, out)
        return out

    points = radial_points**n * config.angular_for(m, toeplitz=True) ** n
    return f"moments n={n} m={m} k_r={radial_points} ({points} pts, {size}x{size})", run


def jacobi_case(size, seed=0):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
    H = np.ascontiguousarray(X + X.conj().T)

    def run(module):
        values, _, sweeps = module.jacobi_hermitian(H.copy(), 1e-13, 100)
        assert sweeps >= 0
        return np.sort(np.asarray(values))

    return f"jacobi {size}x{size}", run


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--json", action="store_true", help="print results as JSON")
    args = parser.parse_args(argv)

    if "compiled" not in _backend.KERNELS:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 2

    cases = [moment_case(1, 4), moment_case(2, 2), moment_case(2, 4), moment_case(3, 2, radial_points=12)]
    cases += [jacobi_case(s) for s in (6, 15, 28, 56)]
    results = []
    for label, run in cases:
        ref = run(_backend.KERNELS["python"])
        fast = run(_backend.KERNELS["compiled"])
        agree = float(np.max(np.abs(ref - fast)) / max(1.0, float(np.max(np.abs(ref)))))
        timing = {}
        for name, module in _backend.KERNELS.items():
            timing[name] = min(timeit.repeat(lambda: run(module), number=1, repeat=args.repeat))
        results.append({"case": label, "python_s": timing["python"], "compiled_s": timing["compiled"],
                        "speedup": timing["python"] / timing["compiled"], "max_rel_diff": agree})

    if args.json:
        print(json.dumps(results, indent=2))
    else:
        print(f"{'case':<44}{'python [s]':>12}{'compiled [s]':>14}{'speedup':>9}{'rel diff':>11}")
        for r in results:
            print(f"{r['case']:<44}{r['python_s']:>12.4f}{r['compiled_s']:>14.4f}"
                  f"{r['speedup']:>8.1f}x{r['max_rel_diff']:>11.1e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
