"""Generator/discriminator key search.

Given a reference key, the generator proposes dynamic-key candidates and
the discriminator answers only with the deviation checksum (the Hamming
distance between the candidate's circuit image and the reference key);
zero deviation means the dynamic key is recovered. Three strategies:

* ``UNIFORM_RANDOM`` resamples candidates uniformly; expected cost grows
  as 2**N on NOT-only circuits.
* ``MEMORY_GUIDED`` keeps a best-so-far candidate and sweeps the wires,
  keeping single-bit flips only when the deviation strictly drops.
* ``DIRECT_INVERSION`` folds a NOT-only circuit into its XOR mask and
  answers in one evaluation; this is the fast path used for encryption.

Iteration counts are circuit evaluations. All derivations are driven by
counter-based substreams, so per-character work is reproducible and safe
to run concurrently.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ._kernels import memory_guided_search, stream_draw, uniform_search
from ._random import as_generator, draw_u64
from .bitkey import BitVector, KeyPair, random_bitvector
from .circuit import CircuitConfig, invert_image, is_reversible
from .errors import ConvergenceError, IrreversibleCircuitError, WidthMismatchError

MAX_BUDGET = 1 << 32


class StrategyKind(enum.Enum):
    UNIFORM_RANDOM = "uniform"
    MEMORY_GUIDED = "memory"
    DIRECT_INVERSION = "direct"


@dataclass(frozen=True)
class SearchStrategy:
    """A search kind plus its evaluation budget (None = width-based default)."""

    kind: StrategyKind
    budget: int | None = None

    def __post_init__(self):
        if self.budget is not None and self.budget < 1:
            raise ValueError(f"budget must be >= 1, got {self.budget}")

    def resolve_budget(self, width: int) -> int:
        return self.budget if self.budget is not None else default_budget(width)


def uniform_random(budget: int | None = None) -> SearchStrategy:
    return SearchStrategy(StrategyKind.UNIFORM_RANDOM, budget)


def memory_guided(budget: int | None = None) -> SearchStrategy:
    return SearchStrategy(StrategyKind.MEMORY_GUIDED, budget)


def direct_inversion() -> SearchStrategy:
    return SearchStrategy(StrategyKind.DIRECT_INVERSION, 1)


def default_budget(width: int) -> int:
    return min(1 << (width + 4), MAX_BUDGET)


@dataclass(frozen=True)
class ConvergenceReport:
    """How a derivation went: evaluations spent and the deviation reached."""

    iterations: int
    converged: bool
    final_deviation: int

    def __post_init__(self):
        if self.iterations < 0 or self.final_deviation < 0:
            raise ValueError("iterations and final_deviation must be nonnegative")
        if self.converged != (self.final_deviation == 0):
            raise ValueError("converged means exactly: final_deviation == 0")


def derive_dynamic_key(config: CircuitConfig, reference: BitVector,
                       strategy: SearchStrategy, rng=None) -> tuple[BitVector, ConvergenceReport]:
    """Recover a dynamic key whose circuit image equals ``reference``.

    Raises :class:`ConvergenceError` (carrying the report) when the budget
    runs out or the guided search stalls before reaching zero deviation.
    """
    if reference.width != config.width:
        raise WidthMismatchError(
            f"reference width {reference.width} does not match circuit width {config.width}")
    if strategy.kind == StrategyKind.DIRECT_INVERSION:
        if not is_reversible(config):
            raise IrreversibleCircuitError(
                "direct inversion needs a NOT-only circuit; use a search strategy instead")
        return invert_image(config, reference), ConvergenceReport(1, True, 0)
    seed = draw_u64(as_generator(rng))
    return _derive_seeded(config, reference, strategy, seed)


def _derive_seeded(config: CircuitConfig, reference: BitVector,
                   strategy: SearchStrategy, seed: int) -> tuple[BitVector, ConvergenceReport]:
    budget = strategy.resolve_budget(config.width)
    if strategy.kind == StrategyKind.UNIFORM_RANDOM:
        search = uniform_search
    elif strategy.kind == StrategyKind.MEMORY_GUIDED:
        search = memory_guided_search
    else:
        if not is_reversible(config):
            raise IrreversibleCircuitError(
                "direct inversion needs a NOT-only circuit; use a search strategy instead")
        return invert_image(config, reference), ConvergenceReport(1, True, 0)
    value, iterations, deviation, found = search(
        *config._compiled, reference.value, config.width, budget, seed)
    report = ConvergenceReport(iterations, found, deviation)
    if not found:
        raise ConvergenceError(
            f"no key found for the reference within {iterations} evaluations "
            f"(deviation still {deviation})", report)
    return BitVector(value, config.width), report


def generate_key_pair(config: CircuitConfig, strategy: SearchStrategy,
                      rng=None) -> tuple[KeyPair, ConvergenceReport]:
    """Sample a fresh reference key and derive its dynamic key."""
    gen = as_generator(rng)
    reference = random_bitvector(config.width, gen)
    key, report = derive_dynamic_key(config, reference, strategy, gen)
    return KeyPair(generator_key=key, reference_key=reference), report


def generate_key_pair_seeded(config: CircuitConfig, strategy: SearchStrategy,
                             seed: int) -> tuple[KeyPair, ConvergenceReport]:
    """Deterministic :func:`generate_key_pair` driven by one substream seed."""
    mask = (1 << config.width) - 1
    reference = BitVector(stream_draw(seed, 0) & mask, config.width)
    key, report = _derive_seeded(config, reference, strategy, stream_draw(seed, 1))
    return KeyPair(generator_key=key, reference_key=reference), report
