"""Backend selection for the hot kernels.

``GANENC_BACKEND=numba`` (default) uses the jitted kernels; ``=numpy``
forces the pure NumPy/Python fallback. When numba is unavailable the
fallback is selected automatically. Both backends are deterministic and
produce identical results for identical seeds.
"""

import os
import warnings

from . import _kernels_np

# seeding helpers are pure Python and backend-independent
MASK64 = _kernels_np.MASK64
GAMMA = _kernels_np.GAMMA
mix64 = _kernels_np.mix64
stream_draw = _kernels_np.stream_draw
fin64 = _kernels_np.fin64

_ENV_VAR = "GANENC_BACKEND"


def load_backend(name: str):
    """Return the kernel module for ``name`` ('numba' or 'numpy')."""
    if name == "numpy":
        return _kernels_np
    if name == "numba":
        from . import _kernels_nb
        return _kernels_nb
    raise ValueError(f"unknown kernel backend {name!r} (expected 'numba' or 'numpy')")


def _select():
    requested = os.environ.get(_ENV_VAR, "numba").strip().lower()
    if requested not in ("numba", "numpy"):
        raise ValueError(
            f"{_ENV_VAR}={requested!r} is not a valid backend (expected 'numba' or 'numpy')")
    if requested == "numba":
        try:
            return "numba", load_backend("numba")
        except ImportError:
            warnings.warn("numba is not importable; falling back to the numpy kernels",
                          RuntimeWarning, stacklevel=2)
    return "numpy", load_backend("numpy")


BACKEND, _impl = _select()

apply_value = _impl.apply_value
apply_batch = _impl.apply_batch
uniform_search = _impl.uniform_search
memory_guided_search = _impl.memory_guided_search
