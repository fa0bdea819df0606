"""Random-source plumbing.

Public APIs accept either a ``numpy.random.Generator``, an int seed, or
``None`` (fresh OS entropy). Hot loops never consume the Generator
directly; they draw one 64-bit seed from it and continue on the
counter-based splitmix64 stream (see ``_kernels``), which keeps
per-character work deterministic and scheduling-independent.
"""

from __future__ import annotations

import numpy as np

from ._kernels import stream_draw

RandomSource = "np.random.Generator | int | None"


def as_generator(rng=None) -> np.random.Generator:
    if rng is None:
        return np.random.default_rng()
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, (int, np.integer)):
        return np.random.default_rng(int(rng))
    raise TypeError(f"expected a numpy Generator, an int seed, or None; got {type(rng).__name__}")


def draw_u64(rng: np.random.Generator) -> int:
    """One uniform 64-bit integer from a Generator."""
    return int.from_bytes(rng.bytes(8), "little")


def substream(master: int, index: int) -> int:
    """Seed for the ``index``-th independent substream of ``master``."""
    return stream_draw(master, index)
