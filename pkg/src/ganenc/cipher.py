"""Character-level keystream encryption over a finite alphabet.

Each in-alphabet character gets a fresh key pair; the character index is
shifted by the dynamic key's decimal value modulo the alphabet size, and
only the reference keys accompany the ciphertext. Decryption re-derives
each dynamic key from its reference key (which requires a NOT-only
circuit) and undoes the shift. Shredding runs the same forward pipeline
through an irreversible circuit and throws the dynamic keys away.
"""

from __future__ import annotations

import hashlib
import string
from dataclasses import dataclass, field
from functools import cached_property

from ._kernels import stream_draw
from ._random import as_generator, draw_u64, substream
from .bitkey import BitVector
from .circuit import CircuitConfig, apply_circuit, is_reversible
from .errors import (AlphabetFormatError, AlphabetMismatchError, IrreversibleCircuitError,
                     OutOfAlphabetError, ReversibleCircuitError)
from .gan import (ConvergenceReport, SearchStrategy, direct_inversion,
                  generate_key_pair_seeded, _derive_seeded)

ALPHABET_MAGIC = "GANENC-ALPHABET v1"
MAX_ALPHABET_SIZE = 65535  # cipher indices travel as u16


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of distinct characters; index <-> symbol is the f map."""

    symbols: str

    def __post_init__(self):
        if len(self.symbols) < 2:
            raise ValueError("an alphabet needs at least 2 symbols")
        if len(self.symbols) > MAX_ALPHABET_SIZE:
            raise ValueError(f"alphabet too large (> {MAX_ALPHABET_SIZE} symbols)")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be distinct")

    @property
    def size(self) -> int:
        return len(self.symbols)

    @cached_property
    def digest(self) -> bytes:
        return hashlib.sha256(self.symbols.encode("utf-8")).digest()

    @cached_property
    def _index(self) -> dict[str, int]:
        return {ch: i for i, ch in enumerate(self.symbols)}

    def __contains__(self, ch: str) -> bool:
        return ch in self._index

    def to_text(self) -> str:
        lines = [ALPHABET_MAGIC]
        for ch in self.symbols:
            lines.append({"\n": "\\n", "\\": "\\\\"}.get(ch, ch))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Alphabet":
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if not lines or lines[0] != ALPHABET_MAGIC:
            raise AlphabetFormatError("not an alphabet file (bad header line)")
        symbols = []
        for lineno, line in enumerate(lines[1:], start=2):
            if line == "\\n":
                symbols.append("\n")
            elif line == "\\\\":
                symbols.append("\\")
            elif len(line) == 1:
                symbols.append(line)
            else:
                raise AlphabetFormatError(f"line {lineno}: expected one symbol, got {line!r}")
        try:
            return cls("".join(symbols))
        except ValueError as exc:
            raise AlphabetFormatError(str(exc)) from None


LOWER26 = Alphabet(string.ascii_lowercase)
PRINTABLE95 = Alphabet("".join(chr(c) for c in range(32, 127)))

BUILTIN_ALPHABETS = {"lower26": LOWER26, "printable95": PRINTABLE95}


def encode_char(alphabet: Alphabet, ch: str) -> int:
    try:
        return alphabet._index[ch]
    except KeyError:
        raise OutOfAlphabetError(ch) from None


def decode_index(alphabet: Alphabet, index: int) -> str:
    if not 0 <= index < alphabet.size:
        raise ValueError(f"index {index} out of range for alphabet of size {alphabet.size}")
    return alphabet.symbols[index]


def mask_index(index: int, keystream_value: int, size: int) -> int:
    """Encrypt one character index by modular addition of the keystream value."""
    return (index + keystream_value) % size


def unmask_index(index: int, keystream_value: int, size: int) -> int:
    """Invert :func:`mask_index` (mathematical, always-nonnegative modulus)."""
    return (index - keystream_value) % size


@dataclass(frozen=True)
class EncryptedMessage:
    """Cipher indices plus the metadata needed to decrypt or refuse to.

    ``passthrough`` lists (position, character) pairs that were copied
    unencrypted; positions refer to the full reconstructed text.
    """

    cipher_indices: tuple[int, ...]
    alphabet_id: bytes
    width: int
    passthrough: tuple[tuple[int, str], ...] = field(default=())

    @property
    def length(self) -> int:
        return len(self.cipher_indices)


def encrypt_text(text: str, config: CircuitConfig, alphabet: Alphabet = PRINTABLE95,
                 strategy: SearchStrategy | None = None, rng=None, *,
                 passthrough: bool = False,
                 reports: list | None = None) -> tuple[EncryptedMessage, tuple[BitVector, ...]]:
    """Encrypt ``text`` character by character with fresh key pairs.

    Returns the encrypted message and the per-character reference keys, in
    position order. The dynamic keys are not retained. Only NOT-only
    circuits are accepted; irreversible deletion goes through
    :func:`shred_text` instead.
    """
    if not is_reversible(config):
        raise IrreversibleCircuitError(
            "encryption needs a NOT-only circuit so the text stays recoverable; "
            "use shred_text for irreversible deletion")
    if strategy is None:
        strategy = direct_inversion()
    master = draw_u64(as_generator(rng))
    indices: list[int] = []
    refs: list[BitVector] = []
    passed: list[tuple[int, str]] = []
    for position, ch in enumerate(text):
        if ch not in alphabet:
            if passthrough:
                passed.append((position, ch))
                continue
            raise OutOfAlphabetError(ch, position)
        pair, report = generate_key_pair_seeded(config, strategy, substream(master, len(refs)))
        if reports is not None:
            reports.append(report)
        indices.append(mask_index(alphabet._index[ch], pair.generator_key.value, alphabet.size))
        refs.append(pair.reference_key)
    message = EncryptedMessage(tuple(indices), alphabet.digest, config.width, tuple(passed))
    return message, tuple(refs)


def decrypt_text(message: EncryptedMessage, refs, config: CircuitConfig,
                 alphabet: Alphabet = PRINTABLE95, strategy: SearchStrategy | None = None,
                 rng=None, *, reports: list | None = None) -> str:
    """Re-derive each dynamic key from its reference key and undo the shift.

    The recovered text does not depend on ``rng``: a NOT-only circuit has a
    unique preimage per reference key, whatever search path finds it.
    """
    refs = tuple(refs)
    if len(refs) != message.length:
        raise ValueError(
            f"got {len(refs)} reference keys for {message.length} cipher characters")
    if alphabet.digest != message.alphabet_id:
        raise AlphabetMismatchError(
            "the offered alphabet does not match the one the message was encrypted with")
    if not is_reversible(config):
        raise IrreversibleCircuitError(
            "decryption needs a NOT-only circuit; irreversibly shredded text cannot be recovered")
    if strategy is None:
        strategy = direct_inversion()
    master = draw_u64(as_generator(rng))
    chars: list[str] = []
    for k, (index, ref) in enumerate(zip(message.cipher_indices, refs)):
        key, report = _derive_seeded(config, ref, strategy, substream(master, k))
        if reports is not None:
            reports.append(report)
        chars.append(decode_index(alphabet, unmask_index(index, key.value, alphabet.size)))
    return _weave(chars, message.passthrough)


def shred_text(text: str, config: CircuitConfig, alphabet: Alphabet = PRINTABLE95,
               rng=None, *, reports: list | None = None) -> tuple[EncryptedMessage, tuple[BitVector, ...]]:
    """Irreversibly delete ``text``: encrypt forward through a lossy circuit.

    Dynamic keys are sampled directly and discarded; their circuit images
    become the reference keys. Because the circuit merges key preimages,
    nothing in this package can reconstruct the plaintext from the output.
    """
    if is_reversible(config):
        raise ReversibleCircuitError(
            "shredding needs a circuit with at least one binary gate; "
            "a NOT-only circuit would leave the text recoverable")
    mask = (1 << config.width) - 1
    master = draw_u64(as_generator(rng))
    indices: list[int] = []
    refs: list[BitVector] = []
    for position, ch in enumerate(text):
        if ch not in alphabet:
            raise OutOfAlphabetError(ch, position)
        g_value = stream_draw(substream(master, position), 0) & mask
        dynamic = BitVector(g_value, config.width)
        refs.append(apply_circuit(config, dynamic))
        indices.append(mask_index(alphabet._index[ch], g_value, alphabet.size))
        if reports is not None:
            reports.append(ConvergenceReport(1, True, 0))
    message = EncryptedMessage(tuple(indices), alphabet.digest, config.width)
    return message, tuple(refs)


def _weave(chars: list[str], passthrough: tuple[tuple[int, str], ...]) -> str:
    if not passthrough:
        return "".join(chars)
    total = len(chars) + len(passthrough)
    out: list[str | None] = [None] * total
    for position, ch in passthrough:
        if not 0 <= position < total or out[position] is not None:
            raise ValueError(f"invalid passthrough position {position}")
        out[position] = ch
    it = iter(chars)
    for i in range(total):
        if out[i] is None:
            out[i] = next(it)
    return "".join(out)
