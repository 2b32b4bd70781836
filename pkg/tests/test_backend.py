from __future__ import annotations

import random

import pytest

from thinrep import _backend
from thinrep._kernels_py import matmul_modp as py_matmul, rref_modp as py_rref
from thinrep.decompose import decompose
from thinrep.field import GF
from thinrep.oracle import random_instance, random_orientation

compiled = pytest.mark.skipif(_backend.compiled_kernels is None, reason="compiled kernels not built")


def _rows(rng, r, c, p):
    return [[rng.randrange(p) for _ in range(c)] for _ in range(r)]


def test_python_rref_small():
    rows, piv = py_rref([[0, 1], [0, 0]], 2, 2)
    assert rows == [[0, 1], [0, 0]] and piv == [1]
    rows, piv = py_rref([[2, 4, 1], [1, 2, 3]], 2, 5)
    assert piv == [0] and rows[0][:2] == [1, 2]


@compiled
@pytest.mark.parametrize("p", [2, 3, 101, 2**31 - 1])
def test_kernels_agree(p):
    rng = random.Random(p)
    ck = _backend.compiled_kernels
    for _ in range(200):
        r, c = rng.randint(0, 7), rng.randint(0, 7)
        a = _rows(rng, r, c, p)
        if r > 1 and rng.random() < 0.4:
            a[-1] = list(a[0])
        npiv = rng.randint(0, c)
        assert ck.rref_modp([list(x) for x in a], npiv, p) == py_rref([list(x) for x in a], npiv, p)
        k = rng.randint(0, 6)
        b = _rows(rng, c, k, p)
        assert ck.matmul_modp(a, b, k, p) == py_matmul(a, b, k, p)


@compiled
def test_decompositions_identical_across_backends():
    rng = random.Random(9)
    for _ in range(20):
        n = rng.randint(1, 7)
        A = random_instance(random_orientation(n, rng), 4, GF(rng.choice([2, 3, 101])), rng.getrandbits(32))
        with _backend.use_backend("python"):
            d_py = decompose(A)
        with _backend.use_backend("compiled"):
            d_c = decompose(A)
        assert d_py == d_c


def test_backend_selection():
    assert "python" in _backend.available()
    before = _backend.active
    with _backend.use_backend("python"):
        assert _backend.active.NAME == "python"
    assert _backend.active is before
    with pytest.raises((ValueError, RuntimeError)):
        _backend.set_backend("fortran")


def test_benchmark_script_runs(capsys):
    import runpy
    from pathlib import Path

    script = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_backends.py"
    mod = runpy.run_path(str(script))
    mod["main"](["--size", "8", "--repeat", "1", "--n", "3", "--dim", "2", "--count", "2"])
    out = capsys.readouterr().out
    assert "verified 2/2" in out
