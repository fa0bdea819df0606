"""numba-compiled implementations of the hot kernels.

Same contract and same splitmix64 candidate stream as ``_kernels_np``, so
both backends return identical values; nogil lets callers parallelize
across threads. Everything inside the jitted bodies is uint64.
"""

import numpy as np
from numba import njit

_U = np.uint64
_GAMMA = _U(0x9E3779B97F4A7C15)
_C1 = _U(0xBF58476D1CE4E5B9)
_C2 = _U(0x94D049BB133111EB)
_MASK64 = _U(0xFFFFFFFFFFFFFFFF)

_JIT = {"cache": True, "nogil": True}


@njit(**_JIT)
def _fin64(z):
    z = (z ^ (z >> _U(30))) * _C1
    z = (z ^ (z >> _U(27))) * _C2
    return z ^ (z >> _U(31))


@njit(**_JIT)
def _apply_u64(kinds, in_a, in_b, targets, v):
    one = _U(1)
    for i in range(kinds.shape[0]):
        k = kinds[i]
        if k == 0:
            v = v ^ (one << _U(in_a[i]))
        else:
            ba = (v >> _U(in_a[i])) & one
            bb = (v >> _U(in_b[i])) & one
            if k == 1:
                o = ba & bb
            elif k == 2:
                o = ba | bb
            elif k == 3:
                o = (ba | bb) ^ one
            else:
                o = ba ^ bb
            t = _U(targets[i])
            v = (v & ~(one << t)) | (o << t)
    return v


@njit(**_JIT)
def _pop64(x):
    x = x - ((x >> _U(1)) & _U(0x5555555555555555))
    x = (x & _U(0x3333333333333333)) + ((x >> _U(2)) & _U(0x3333333333333333))
    x = (x + (x >> _U(4))) & _U(0x0F0F0F0F0F0F0F0F)
    return (x * _U(0x0101010101010101)) >> _U(56)


@njit(**_JIT)
def _apply_batch(kinds, in_a, in_b, targets, values):
    out = np.empty_like(values)
    for i in range(values.shape[0]):
        out[i] = _apply_u64(kinds, in_a, in_b, targets, values[i])
    return out


@njit(**_JIT)
def _uniform_search(kinds, in_a, in_b, targets, target, width, budget, seed):
    mask = _MASK64 >> _U(64 - width)
    best_dev = _U(65)
    best_g = _U(0)
    for it in range(1, budget + 1):
        cand = _fin64(seed + _U(it) * _GAMMA) & mask
        dev = _pop64(_apply_u64(kinds, in_a, in_b, targets, cand) ^ target)
        if dev < best_dev:
            best_dev = dev
            best_g = cand
            if dev == _U(0):
                return best_g, it, best_dev, True
    return best_g, budget, best_dev, False


@njit(**_JIT)
def _memory_guided_search(kinds, in_a, in_b, targets, target, width, budget, seed):
    mask = _MASK64 >> _U(64 - width)
    one = _U(1)
    g = _fin64(seed + _GAMMA) & mask
    d = _pop64(_apply_u64(kinds, in_a, in_b, targets, g) ^ target)
    evals = 1
    if d == _U(0):
        return g, evals, d, True
    while evals < budget:
        improved = False
        for w in range(width):
            if evals >= budget:
                break
            g2 = g ^ (one << _U(w))
            d2 = _pop64(_apply_u64(kinds, in_a, in_b, targets, g2) ^ target)
            evals += 1
            if d2 < d:
                g = g2
                d = d2
                improved = True
                if d == _U(0):
                    return g, evals, d, True
        if not improved:
            break
    return g, evals, d, False


# int-in/int-out wrappers so callers never touch numpy scalars

def apply_value(kinds, in_a, in_b, targets, value: int) -> int:
    return int(_apply_u64(kinds, in_a, in_b, targets, _U(value)))


def apply_batch(kinds, in_a, in_b, targets, values: np.ndarray) -> np.ndarray:
    return _apply_batch(kinds, in_a, in_b, targets, values.astype(np.uint64, copy=False))


def uniform_search(kinds, in_a, in_b, targets, target: int, width: int,
                   budget: int, seed: int):
    g, iters, dev, found = _uniform_search(
        kinds, in_a, in_b, targets, _U(target), width, budget, _U(seed))
    return int(g), int(iters), int(dev), bool(found)


def memory_guided_search(kinds, in_a, in_b, targets, target: int, width: int,
                         budget: int, seed: int):
    g, iters, dev, found = _memory_guided_search(
        kinds, in_a, in_b, targets, _U(target), width, budget, _U(seed))
    return int(g), int(iters), int(dev), bool(found)
