"""Benchmark the numba kernels against the pure NumPy/Python fallback.

Times the three hot paths (batch circuit application, uniform key search,
memory-guided key search) on both backends and verifies they return
identical results. Run from the repo root:

    python benchmarks/compare_backends.py
"""

import time

import numpy as np

from ganenc import GateKind, random_circuit
from ganenc._kernels import load_backend, stream_draw


def timeit(func, *args, n_warmup=2, n_iter=5):
    for _ in range(n_warmup):
        func(*args)
    start = time.perf_counter()
    for _ in range(n_iter):
        result = func(*args)
    return (time.perf_counter() - start) / n_iter * 1000, result


def compare(name, np_mod, nb_mod, func_name, *args):
    ms_np, out_np = timeit(getattr(np_mod, func_name), *args)
    ms_nb, out_nb = timeit(getattr(nb_mod, func_name), *args)
    if isinstance(out_np, np.ndarray):
        agree = np.array_equal(out_np, out_nb)
    else:
        agree = out_np == out_nb
    flag = "" if agree else "  << RESULTS DIVERGE"
    print(f"{name:<46} numpy {ms_np:9.2f} ms   numba {ms_nb:9.2f} ms   "
          f"({ms_np / ms_nb:6.1f}x){flag}")
    return agree


def main():
    np_mod = load_backend("numpy")
    try:
        nb_mod = load_backend("numba")
    except ImportError:
        print("numba is not importable; nothing to compare")
        return 1

    print("hot-kernel backends, mean wall time per call")
    print("=" * 100)
    ok = True

    for width in (16, 24):
        config = random_circuit(width, width, tuple(GateKind), rng=width)
        values = np.random.default_rng(0).integers(
            0, 1 << width, size=1 << 16).astype(np.uint64)
        ok &= compare(f"apply_batch      width={width:<2} batch=65536",
                      np_mod, nb_mod, "apply_batch", *config._compiled, values)

    for width in (14, 16, 18):
        config = random_circuit(width, width, (GateKind.NOT,), rng=width)
        target = stream_draw(width, 0) & ((1 << width) - 1)
        ok &= compare(f"uniform_search   width={width:<2} budget=2^{width + 2}",
                      np_mod, nb_mod, "uniform_search",
                      *config._compiled, target, width, 1 << (width + 2), 42)

    def sweep(mod):
        config = random_circuit(24, 24, (GateKind.NOT,), rng=99)
        results = []
        for k in range(2000):
            target = stream_draw(7, k) & ((1 << 24) - 1)
            results.append(mod.memory_guided_search(
                *config._compiled, target, 24, 1 << 12, k))
        return tuple(results)

    ms_np, out_np = timeit(lambda: sweep(np_mod))
    ms_nb, out_nb = timeit(lambda: sweep(nb_mod))
    agree = out_np == out_nb
    ok &= agree
    print(f"{'memory_guided    width=24 x2000 derivations':<46} "
          f"numpy {ms_np:9.2f} ms   numba {ms_nb:9.2f} ms   "
          f"({ms_np / ms_nb:6.1f}x){'' if agree else '  << RESULTS DIVERGE'}")

    print("=" * 100)
    print("backends agree on every result" if ok else "BACKEND MISMATCH DETECTED")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
