"""Timing harness: decompose a seeded stream of planted instances."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import _backend
from .decompose import certificate_problems, decompose
from .field import FieldSpec
from .oracle import PlantSpec, plant_instance, random_barcode, random_orientation


def instance_seeds(seed: int, count: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(64) for _ in range(count)]


def planted(n: int, max_dim: int, field: FieldSpec, seed: int):
    """One planted instance, fully determined by ``seed``."""
    rng = random.Random(seed)
    orientation = random_orientation(n, rng)
    barcode = random_barcode(n, rng, max_mult=3, max_dim=max_dim)
    return plant_instance(PlantSpec(orientation, barcode, field, rng.getrandbits(64)))


def _run_one(args):
    n, max_dim, field, seed, backend = args
    if backend != "auto":
        _backend.set_backend(backend)
    A, barcode = planted(n, max_dim, field, seed)
    t0 = time.perf_counter()
    dec = decompose(A)
    elapsed = time.perf_counter() - t0
    ok = dec.barcode == barcode and not certificate_problems(A, dec)
    return elapsed, ok


@dataclass(frozen=True)
class BenchReport:
    backend: str
    field: FieldSpec
    n: int
    max_dim: int
    count: int
    seconds: float
    passed: int

    def to_text(self) -> str:
        if not self.count:
            return "instances: 0\n"
        return (
            f"backend: {self.backend}\n"
            f"field: {self.field}\n"
            f"n: {self.n}\n"
            f"max_dim: {self.max_dim}\n"
            f"instances: {self.count}\n"
            f"decompose_seconds: {self.seconds:.4f}\n"
            f"mean_ms: {1000 * self.seconds / self.count:.3f}\n"
            f"verified: {self.passed}/{self.count} ({100.0 * self.passed / self.count:.1f}%)\n"
        )


def run_bench(n: int, max_dim: int, count: int, field: FieldSpec, seed: int,
              backend: str = "auto", jobs: int = 1) -> BenchReport:
    """Decompose ``count`` planted instances and time the decomposition step only."""
    tasks = [(n, max_dim, field, s, backend) for s in instance_seeds(seed, count)]
    if jobs > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, tasks))
    else:
        saved = _backend.active
        try:
            results = [_run_one(t) for t in tasks]
        finally:
            _backend.active = saved
    name = backend if backend != "auto" else _backend.active.NAME
    return BenchReport(name, field, n, max_dim, count,
                       sum(r[0] for r in results), sum(1 for r in results if r[1]))


def compare_backends(n: int, max_dim: int, count: int, field: FieldSpec, seed: int) -> list[BenchReport]:
    """Run the same instance stream once per available backend."""
    return [run_bench(n, max_dim, count, field, seed, backend=b) for b in _backend.available()]
