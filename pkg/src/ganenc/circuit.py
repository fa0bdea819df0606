"""The secret encryptor: an ordered list of logic gates over N wires.

Gates are applied in list order to a working copy of the input key. NOT
flips its wire in place; a binary gate reads two distinct input wires and
writes its output to a target wire, leaving every other wire unchanged.
A circuit built only from NOT gates is a bijection on the key space (it
reduces to XOR with a fixed mask); any generated circuit containing a
binary gate loses information and cannot be inverted uniquely.

Note on hand-built gates: a XOR gate whose target is one of its own
inputs is a controlled-NOT and therefore bijective even though
``is_reversible`` reports False. :func:`random_circuit` never emits that
wiring (XOR targets are drawn from the remaining wires), so generated
circuits are bijective exactly when they are NOT-only.
"""

from __future__ import annotations

import enum
import hashlib
import hmac
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels
from ._random import as_generator
from .bitkey import BitVector
from .errors import (CircuitFormatError, IrreversibleCircuitError, TagMismatchError,
                     WidthMismatchError)

CIRCUIT_MAGIC = "GANENC-CIRCUIT v1"
LOCKED_MAGIC = "GANENC-LOCKED v1"


class GateKind(enum.IntEnum):
    NOT = 0
    AND = 1
    OR = 2
    NOR = 3
    XOR = 4


BINARY_KINDS = frozenset({GateKind.AND, GateKind.OR, GateKind.NOR, GateKind.XOR})

# single-gate truth tables, indexed by (a, b)
TRUTH_TABLES = {
    GateKind.AND: {(0, 0): 0, (0, 1): 0, (1, 0): 0, (1, 1): 1},
    GateKind.OR: {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1},
    GateKind.NOR: {(0, 0): 1, (0, 1): 0, (1, 0): 0, (1, 1): 0},
    GateKind.XOR: {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0},
}


@dataclass(frozen=True)
class Gate:
    """One gate: NOT acts on ``input_a``; binary kinds write to ``target``."""

    kind: GateKind
    input_a: int
    input_b: int | None = None
    target: int | None = None

    def __post_init__(self):
        if self.input_a < 0:
            raise ValueError(f"negative wire index {self.input_a}")
        if self.kind == GateKind.NOT:
            if self.input_b is not None or (self.target is not None and self.target != self.input_a):
                raise ValueError("NOT takes a single wire")
            object.__setattr__(self, "target", self.input_a)
        else:
            if self.input_b is None:
                raise ValueError(f"{self.kind.name} needs two input wires")
            if self.input_b < 0:
                raise ValueError(f"negative wire index {self.input_b}")
            if self.input_b == self.input_a:
                raise ValueError(f"{self.kind.name} inputs must be distinct wires")
            if self.target is None:
                object.__setattr__(self, "target", self.input_a)
            elif self.target < 0:
                raise ValueError(f"negative wire index {self.target}")

    @classmethod
    def inverter(cls, wire: int) -> "Gate":
        return cls(GateKind.NOT, wire)

    @classmethod
    def binary(cls, kind: GateKind, input_a: int, input_b: int, target: int | None = None) -> "Gate":
        if kind not in BINARY_KINDS:
            raise ValueError(f"{kind!r} is not a binary gate kind")
        return cls(kind, input_a, input_b, target)

    def max_wire(self) -> int:
        if self.kind == GateKind.NOT:
            return self.input_a
        return max(self.input_a, self.input_b, self.target)

    def to_line(self) -> str:
        if self.kind == GateKind.NOT:
            return f"NOT {self.input_a}"
        return f"{self.kind.name} {self.input_a} {self.input_b} -> {self.target}"

    @classmethod
    def from_line(cls, line: str) -> "Gate":
        parts = line.split()
        try:
            kind = GateKind[parts[0]]
        except (KeyError, IndexError):
            raise CircuitFormatError(f"unknown gate line: {line!r}") from None
        try:
            if kind == GateKind.NOT:
                if len(parts) != 2:
                    raise ValueError
                return cls(kind, int(parts[1]))
            if len(parts) != 5 or parts[3] != "->":
                raise ValueError
            return cls(kind, int(parts[1]), int(parts[2]), int(parts[4]))
        except ValueError:
            raise CircuitFormatError(f"malformed gate line: {line!r}") from None


@dataclass(frozen=True)
class CircuitConfig:
    """An immutable circuit: width plus an ordered gate list."""

    width: int
    gates: tuple[Gate, ...]

    def __post_init__(self):
        if self.width < 1 or self.width > 64:
            raise ValueError(f"circuit width must be in 1..64, got {self.width}")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if g.max_wire() >= self.width:
                raise ValueError(f"gate {g.to_line()!r} uses a wire >= width {self.width}")

    def __len__(self) -> int:
        return len(self.gates)

    @cached_property
    def config_id(self) -> str:
        return hashlib.sha256(self.to_text().encode("utf-8")).hexdigest()

    @cached_property
    def _compiled(self):
        n = len(self.gates)
        kinds = np.empty(n, dtype=np.int64)
        in_a = np.empty(n, dtype=np.int64)
        in_b = np.empty(n, dtype=np.int64)
        targets = np.empty(n, dtype=np.int64)
        for i, g in enumerate(self.gates):
            kinds[i] = int(g.kind)
            in_a[i] = g.input_a
            in_b[i] = g.input_a if g.input_b is None else g.input_b
            targets[i] = g.target
        return kinds, in_a, in_b, targets

    def to_text(self) -> str:
        lines = [CIRCUIT_MAGIC, f"bits {self.width}", f"gates {len(self.gates)}"]
        lines.extend(g.to_line() for g in self.gates)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "CircuitConfig":
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if not lines or lines[0] != CIRCUIT_MAGIC:
            raise CircuitFormatError("not a circuit file (bad header line)")
        if len(lines) < 3:
            raise CircuitFormatError("circuit file truncated before gate list")
        width = _parse_header_int(lines[1], "bits")
        count = _parse_header_int(lines[2], "gates")
        if len(lines) != 3 + count:
            raise CircuitFormatError(
                f"expected {count} gate lines, found {len(lines) - 3}")
        gates = tuple(Gate.from_line(line) for line in lines[3:])
        try:
            return cls(width, gates)
        except ValueError as exc:
            raise CircuitFormatError(str(exc)) from None


def _parse_header_int(line: str, key: str) -> int:
    parts = line.split()
    if len(parts) != 2 or parts[0] != key:
        raise CircuitFormatError(f"expected '{key} <n>' line, got {line!r}")
    try:
        return int(parts[1])
    except ValueError:
        raise CircuitFormatError(f"expected '{key} <n>' line, got {line!r}") from None


def random_circuit(width: int, gate_count: int, kinds=(GateKind.NOT,), rng=None) -> CircuitConfig:
    """Draw a circuit of ``gate_count`` gates with uniform kinds and wirings.

    Targets of AND/OR/NOR gates may be any wire (the write destroys
    information either way); XOR targets are drawn from the wires outside
    its input pair so that every generated binary gate is lossy, which
    keeps generated circuits bijective exactly when NOT-only. XOR
    therefore needs width >= 3, other binary kinds width >= 2.
    """
    if width < 1 or width > 64:
        raise ValueError(f"width must be in 1..64, got {width}")
    if gate_count < 1:
        raise ValueError(f"gate count must be >= 1, got {gate_count}")
    kinds = sorted(set(kinds), key=int)
    if not kinds:
        raise ValueError("at least one gate kind is required")
    if width < 2 and any(k in BINARY_KINDS for k in kinds):
        raise ValueError("binary gates need width >= 2")
    if width < 3 and GateKind.XOR in kinds:
        raise ValueError("XOR gates need width >= 3 (the target wire must differ from both inputs)")
    gen = as_generator(rng)
    gates = []
    for _ in range(gate_count):
        kind = kinds[int(gen.integers(len(kinds)))]
        if kind == GateKind.NOT:
            gates.append(Gate.inverter(int(gen.integers(width))))
            continue
        a = int(gen.integers(width))
        b = int(gen.integers(width - 1))
        if b >= a:
            b += 1
        if kind == GateKind.XOR:
            t = int(gen.integers(width - 2))
            for taken in sorted((a, b)):
                if t >= taken:
                    t += 1
        else:
            t = int(gen.integers(width))
        gates.append(Gate.binary(kind, a, b, t))
    return CircuitConfig(width, tuple(gates))


def apply_circuit(config: CircuitConfig, key: BitVector) -> BitVector:
    """Image of ``key`` under the circuit (the discriminator-side key)."""
    if key.width != config.width:
        raise WidthMismatchError(
            f"key width {key.width} does not match circuit width {config.width}")
    value = _kernels.apply_value(*config._compiled, key.value)
    return BitVector(value, config.width)


def apply_circuit_to_values(config: CircuitConfig, values: np.ndarray) -> np.ndarray:
    """Batch form of :func:`apply_circuit` over a uint64 array of key values."""
    return _kernels.apply_batch(*config._compiled, values)


def is_reversible(config: CircuitConfig) -> bool:
    """True when every gate is a NOT (the circuit is then a bijection)."""
    return all(g.kind == GateKind.NOT for g in config.gates)


def net_mask(config: CircuitConfig) -> BitVector:
    """Fold a NOT-only circuit into its XOR mask (bit = NOT-count parity per wire)."""
    if not is_reversible(config):
        raise IrreversibleCircuitError("net_mask is only defined for NOT-only circuits")
    mask = 0
    for g in config.gates:
        mask ^= 1 << g.input_a
    return BitVector(mask, config.width)


def invert_image(config: CircuitConfig, reference: BitVector) -> BitVector:
    """The unique key mapping to ``reference`` under a NOT-only circuit."""
    if reference.width != config.width:
        raise WidthMismatchError(
            f"key width {reference.width} does not match circuit width {config.width}")
    return reference ^ net_mask(config)


@dataclass(frozen=True)
class LockedCircuit:
    """A passphrase-scrambled circuit file: salt, XORed payload, digest tag."""

    salt: bytes
    payload: bytes
    tag: bytes

    def __post_init__(self):
        if len(self.salt) != 16:
            raise ValueError("salt must be 16 bytes")
        if len(self.tag) != 32:
            raise ValueError("tag must be 32 bytes")

    def to_text(self) -> str:
        return (f"{LOCKED_MAGIC}\n"
                f"salt {self.salt.hex()}\n"
                f"tag {self.tag.hex()}\n"
                f"payload {self.payload.hex()}\n")

    @classmethod
    def from_text(cls, text: str) -> "LockedCircuit":
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if not lines or lines[0] != LOCKED_MAGIC:
            raise CircuitFormatError("not a locked-circuit file (bad header line)")
        if len(lines) != 4:
            raise CircuitFormatError("locked-circuit file must have salt, tag, payload lines")
        fields = {}
        for line, key in zip(lines[1:], ("salt", "tag", "payload")):
            parts = line.split()
            if len(parts) != 2 or parts[0] != key:
                raise CircuitFormatError(f"expected '{key} <hex>' line, got {line!r}")
            try:
                fields[key] = bytes.fromhex(parts[1])
            except ValueError:
                raise CircuitFormatError(f"bad hex in {key!r} line") from None
        try:
            return cls(fields["salt"], fields["payload"], fields["tag"])
        except ValueError as exc:
            raise CircuitFormatError(str(exc)) from None


def _passphrase_bytes(passphrase) -> bytes:
    data = passphrase.encode("utf-8") if isinstance(passphrase, str) else bytes(passphrase)
    if not data:
        raise ValueError("passphrase must be nonempty")
    return data


def _keystream(passphrase: bytes, salt: bytes, length: int) -> bytes:
    out = bytearray()
    counter = 0
    while len(out) < length:
        out += hashlib.sha256(passphrase + salt + counter.to_bytes(8, "big")).digest()
        counter += 1
    return bytes(out[:length])


def lock_circuit(config: CircuitConfig, passphrase, rng=None) -> LockedCircuit:
    """Scramble a circuit under a passphrase (obfuscation-grade, not AEAD)."""
    key = _passphrase_bytes(passphrase)
    salt = as_generator(rng).bytes(16)
    plaintext = config.to_text().encode("utf-8")
    stream = _keystream(key, salt, len(plaintext))
    payload = bytes(p ^ s for p, s in zip(plaintext, stream))
    tag = hashlib.sha256(key + salt + plaintext).digest()
    return LockedCircuit(salt=salt, payload=payload, tag=tag)


def unlock_circuit(locked: LockedCircuit, passphrase) -> CircuitConfig:
    """Recover the circuit; raises :class:`TagMismatchError` on a wrong passphrase."""
    key = _passphrase_bytes(passphrase)
    stream = _keystream(key, locked.salt, len(locked.payload))
    plaintext = bytes(p ^ s for p, s in zip(locked.payload, stream))
    tag = hashlib.sha256(key + locked.salt + plaintext).digest()
    if not hmac.compare_digest(tag, locked.tag):
        raise TagMismatchError("wrong passphrase or corrupted payload")
    return CircuitConfig.from_text(plaintext.decode("utf-8"))
