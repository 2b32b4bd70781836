"""Compare the compiled and pure-Python GF(p) kernels.

Two measurements per backend: raw row reduction / multiplication on square
matrices, and end-to-end decomposition of a planted instance stream.

    python3 benchmarks/bench_backends.py --size 120 --count 200
"""

from __future__ import annotations

import argparse
import random
import time

from thinrep import _backend
from thinrep.bench import run_bench
from thinrep.field import FieldSpec


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_timings(size: int, p: int, repeat: int) -> dict[str, tuple[float, float]]:
    rng = random.Random(0)
    a = [[rng.randrange(p) for _ in range(size)] for _ in range(size)]
    b = [[rng.randrange(p) for _ in range(size)] for _ in range(size)]
    out = {}
    for name in _backend.available():
        k = _backend.python_kernels if name == "python" else _backend.compiled_kernels
        t_rref = _time(lambda: k.rref_modp([list(r) for r in a], size, p), repeat)
        t_mul = _time(lambda: k.matmul_modp(a, b, size, p), repeat)
        out[name] = (t_rref, t_mul)
    return out


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=120, help="square matrix size for the kernel timings")
    ap.add_argument("--p", type=int, default=101)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--dim", type=int, default=8)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    print(f"kernels on {args.size}x{args.size} over GF({args.p}), best of {args.repeat}")
    timings = kernel_timings(args.size, args.p, args.repeat)
    for name, (t_rref, t_mul) in timings.items():
        print(f"  {name:9s} rref {t_rref * 1000:9.2f} ms   matmul {t_mul * 1000:9.2f} ms")
    if "compiled" in timings:
        (pr, pm), (cr, cm) = timings["python"], timings["compiled"]
        print(f"  speedup   rref {pr / cr:8.1f}x      matmul {pm / cm:8.1f}x")

    field = FieldSpec(args.p)
    print(f"\ndecompose {args.count} planted instances, n={args.n}, dims<={args.dim}, {field}")
    for name in _backend.available():
        r = run_bench(args.n, args.dim, args.count, field, args.seed, backend=name)
        print(f"  {name:9s} {r.seconds:7.3f} s   verified {r.passed}/{r.count}")


if __name__ == "__main__":
    main()
