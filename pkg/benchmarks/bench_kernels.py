"""Compare the compiled class-number kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py --limit 20000 --repeat 3
"""

from __future__ import annotations

import argparse
import math
import sys
import timeit

from capitulation import _kernels_py as py
from capitulation.quadfield import fundamental_discriminant, is_fundamental

try:
    from capitulation import _ckernels as cy
except ImportError:
    cy = None


def workloads(limit: int) -> dict[str, tuple[str, list[int]]]:
    neg = [D for D in range(-3, -limit, -1) if is_fundamental(D)][::25]
    squarefree = [m for m in range(2, limit // 40)
                  if all(m % (q * q) for q in range(2, math.isqrt(m) + 1))]
    pos = [fundamental_discriminant(m) for m in squarefree][::5]
    return {
        "count_reduced_forms": ("count_reduced_forms", neg),
        "class_number_analytic": ("class_number_analytic", neg),
        "count_form_cycles": ("count_form_cycles", pos),
        "real_log_sin_sum": ("real_log_sin_sum", pos),
    }


def time_backend(mod, name: str, inputs: list[int], repeat: int) -> float:
    fn = getattr(mod, name)
    return min(timeit.repeat(lambda: [fn(D) for D in inputs], number=1, repeat=repeat))


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", type=int, default=20000, help="largest |D| sampled")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if cy is None:
        print("compiled kernels are not built; only the Python backend is available",
              file=sys.stderr)
        return 1
    print(f"{'kernel':<24}{'inputs':>8}{'cython s':>12}{'python s':>12}{'speedup':>10}")
    for label, (name, inputs) in workloads(args.limit).items():
        # results must agree before timing means anything
        for D in inputs[:50]:
            a, b = getattr(cy, name)(D), getattr(py, name)(D)
            if not math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-9):
                raise SystemExit(f"{name}({D}): cython {a} != python {b}")
        t_c = time_backend(cy, name, inputs, args.repeat)
        t_p = time_backend(py, name, inputs, args.repeat)
        print(f"{label:<24}{len(inputs):>8}{t_c:>12.4f}{t_p:>12.4f}{t_p / t_c:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
