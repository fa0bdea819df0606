"""Pure NumPy/Python implementations of the hot kernels.

A circuit is compiled into four parallel int64 arrays (kind, input_a,
input_b, target); gate kind codes are 0=NOT, 1=AND, 2=OR, 3=NOR, 4=XOR.
Keys are machine words: bit j of the integer is wire j, so every kernel
works on plain ints (scalars) or uint64 arrays (batches).

Candidate keys inside the search kernels come from a counter-based
splitmix64 stream, so results are bit-identical to the numba backend.
"""

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_C1 = 0xBF58476D1CE4E5B9
_C2 = 0x94D049BB133111EB

_U64 = np.uint64
_HAVE_BITCOUNT = hasattr(np, "bitwise_count")


def fin64(z: int) -> int:
    """splitmix64 finalizer on a 64-bit integer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _C1) & MASK64
    z = ((z ^ (z >> 27)) * _C2) & MASK64
    return z ^ (z >> 31)


def stream_draw(seed: int, i: int) -> int:
    """Draw i (0-based) of the counter-based splitmix64 stream for ``seed``."""
    return fin64((seed + (i + 1) * GAMMA) & MASK64)


def mix64(x: int) -> int:
    """One splitmix64 step; used to derive independent substream seeds."""
    return stream_draw(x, 0)


def _width_mask(width: int) -> int:
    return MASK64 >> (64 - width)


def _as_lists(kinds, in_a, in_b, targets):
    if hasattr(kinds, "tolist"):
        return kinds.tolist(), in_a.tolist(), in_b.tolist(), targets.tolist()
    return kinds, in_a, in_b, targets


def apply_value(kinds, in_a, in_b, targets, value: int) -> int:
    """Run the compiled gate list over one key value."""
    kinds, in_a, in_b, targets = _as_lists(kinds, in_a, in_b, targets)
    v = value
    for k, a, b, t in zip(kinds, in_a, in_b, targets):
        if k == 0:
            v ^= 1 << a
        else:
            ba = (v >> a) & 1
            bb = (v >> b) & 1
            if k == 1:
                o = ba & bb
            elif k == 2:
                o = ba | bb
            elif k == 3:
                o = (ba | bb) ^ 1
            else:
                o = ba ^ bb
            v = (v & ~(1 << t)) | (o << t)
    return v


def apply_batch(kinds, in_a, in_b, targets, values: np.ndarray) -> np.ndarray:
    """Run the compiled gate list over a uint64 batch of key values."""
    v = values.astype(np.uint64, copy=True)
    one = _U64(1)
    for k, a, b, t in zip(kinds.tolist(), in_a.tolist(), in_b.tolist(), targets.tolist()):
        if k == 0:
            v ^= _U64(1 << a)
        else:
            ba = (v >> _U64(a)) & one
            bb = (v >> _U64(b)) & one
            if k == 1:
                o = ba & bb
            elif k == 2:
                o = ba | bb
            elif k == 3:
                o = (ba | bb) ^ one
            else:
                o = ba ^ bb
            v = (v & _U64(MASK64 ^ (1 << t))) | (o << _U64(t))
    return v


def _popcount_batch(values: np.ndarray) -> np.ndarray:
    if _HAVE_BITCOUNT:
        return np.bitwise_count(values)
    # SWAR popcount for older numpy
    x = values.astype(np.uint64, copy=True)
    x -= (x >> _U64(1)) & _U64(0x5555555555555555)
    x = (x & _U64(0x3333333333333333)) + ((x >> _U64(2)) & _U64(0x3333333333333333))
    x = (x + (x >> _U64(4))) & _U64(0x0F0F0F0F0F0F0F0F)
    return (x * _U64(0x0101010101010101)) >> _U64(56)


_CHUNK = 4096


def uniform_search(kinds, in_a, in_b, targets, target: int, width: int,
                   budget: int, seed: int):
    """Resample keys uniformly until the circuit image equals ``target``.

    Returns ``(best_key, iterations, best_deviation, found)``; ``best_key``
    is the first candidate achieving the smallest deviation seen.
    """
    mask = _width_mask(width)
    gamma = _U64(GAMMA)
    seed_u = _U64(seed & MASK64)
    target_u = _U64(target)
    mask_u = _U64(mask)
    best_dev = 65
    best_g = 0
    done = 0
    while done < budget:
        n = min(_CHUNK, budget - done)
        idx = np.arange(done + 1, done + n + 1, dtype=np.uint64)
        z = seed_u + idx * gamma
        z = (z ^ (z >> _U64(30))) * _U64(_C1)
        z = (z ^ (z >> _U64(27))) * _U64(_C2)
        cand = (z ^ (z >> _U64(31))) & mask_u
        dev = _popcount_batch(apply_batch(kinds, in_a, in_b, targets, cand) ^ target_u)
        j = int(np.argmin(dev))
        if int(dev[j]) < best_dev:
            best_dev = int(dev[j])
            best_g = int(cand[j])
            if best_dev == 0:
                return best_g, done + j + 1, 0, True
        done += n
    return best_g, budget, best_dev, False


def memory_guided_search(kinds, in_a, in_b, targets, target: int, width: int,
                         budget: int, seed: int):
    """Single-bit hill climbing on the deviation checksum.

    Starts from a random key and sweeps the wires in order, keeping a flip
    only when it strictly lowers the deviation; stops at zero deviation, a
    full sweep without improvement, or budget exhaustion.
    """
    mask = _width_mask(width)
    gate_lists = _as_lists(kinds, in_a, in_b, targets)
    g = stream_draw(seed, 0) & mask
    d = (apply_value(*gate_lists, g) ^ target).bit_count()
    evals = 1
    if d == 0:
        return g, evals, 0, True
    while evals < budget:
        improved = False
        for w in range(width):
            if evals >= budget:
                break
            g2 = g ^ (1 << w)
            d2 = (apply_value(*gate_lists, g2) ^ target).bit_count()
            evals += 1
            if d2 < d:
                g, d = g2, d2
                improved = True
                if d == 0:
                    return g, evals, 0, True
        if not improved:
            break
    return g, evals, d, False
