"""Fixed-width binary keys and their decimal valuation.

A :class:`BitVector` is an immutable N-bit word (1 <= N <= 64). Bit index
1 is the least significant position, so the decimal value of a key is
``sum(bit_j * 2**(j-1))`` and ranges over ``0 .. 2**N - 1``. The textual
rendering is most-significant-bit first, matching the key files.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from ._random import as_generator, draw_u64
from .errors import WidthMismatchError

MAX_WIDTH = 64


@dataclass(frozen=True)
class BitVector:
    """An immutable vector of N bits stored as a machine word."""

    value: int
    width: int

    def __post_init__(self):
        if not 1 <= self.width <= MAX_WIDTH:
            raise ValueError(f"width must be in 1..{MAX_WIDTH}, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value} does not fit in {self.width} bits")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        """Build from bits in least-significant-first order."""
        bits = list(bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("bits must be 0 or 1")
        value = 0
        for j, b in enumerate(bits):
            value |= b << j
        return cls(value, len(bits))

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        """Parse a most-significant-bit-first string of '0'/'1'."""
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"not a bit string: {text!r}")
        return cls(int(text, 2), len(text))

    @property
    def bits(self) -> tuple[int, ...]:
        """Bits in least-significant-first order."""
        return tuple((self.value >> j) & 1 for j in range(self.width))

    def bit(self, j: int) -> int:
        if not 0 <= j < self.width:
            raise IndexError(f"bit index {j} out of range for width {self.width}")
        return (self.value >> j) & 1

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b")

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __xor__(self, other: "BitVector") -> "BitVector":
        _check_widths(self, other)
        return BitVector(self.value ^ other.value, self.width)


@dataclass(frozen=True)
class DecimalPair:
    """Decimal values of a (generator, reference) key pair.

    ``re`` is the keystream value used by the cipher; ``im`` is the
    reference side's value, carried along but not consumed by encryption.
    """

    re: int
    im: int


@dataclass(frozen=True)
class KeyPair:
    """A dynamic (private) key and the reference (public) key it maps to."""

    generator_key: BitVector
    reference_key: BitVector

    def __post_init__(self):
        if self.generator_key.width != self.reference_key.width:
            raise WidthMismatchError(
                f"key widths differ: {self.generator_key.width} vs {self.reference_key.width}")

    @property
    def width(self) -> int:
        return self.generator_key.width

    @property
    def decimals(self) -> DecimalPair:
        return complex_pair(self.generator_key, self.reference_key)


def _check_widths(a: BitVector, b: BitVector) -> None:
    if a.width != b.width:
        raise WidthMismatchError(f"widths differ: {a.width} vs {b.width}")


def random_bitvector(width: int, rng=None) -> BitVector:
    """A uniformly random N-bit key; deterministic for a seeded source."""
    if not 1 <= width <= MAX_WIDTH:
        raise ValueError(f"width must be in 1..{MAX_WIDTH}, got {width}")
    gen = as_generator(rng)
    return BitVector(draw_u64(gen) >> (MAX_WIDTH - width), width)


def decimal_value(v: BitVector) -> int:
    """Decimal value of a key under the canonical binary weighting."""
    return v.value


def complex_pair(g: BitVector, r: BitVector) -> DecimalPair:
    """Pair the decimal values of a generator-side and reference-side key."""
    _check_widths(g, r)
    return DecimalPair(re=decimal_value(g), im=decimal_value(r))


def hamming_deviation(a: BitVector, b: BitVector) -> int:
    """Number of positions where two equal-width keys differ."""
    _check_widths(a, b)
    return (a.value ^ b.value).bit_count()
