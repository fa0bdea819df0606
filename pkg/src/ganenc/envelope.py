"""The transfer unit: ciphertext indices plus the M reference keys.

Binary layout (all integers big-endian):

    magic ``GANENC-MSG1`` | u8 version | u8 width | u32 length M |
    32-byte alphabet digest | M x ceil(N/8) key bytes | M x u16 indices |
    u16 passthrough count | entries (u32 position, u8 size, UTF-8 bytes)

Key bytes pack each key LSB-first (little-endian within the key). The
circuit itself is never part of an envelope; it is the shared secret.

Transport frames an envelope over a byte stream as
``GANENCV1 | u32 payload length | payload`` with a 64 MiB cap.
"""

from __future__ import annotations

import socket
import struct
from dataclasses import dataclass, field

from .bitkey import BitVector
from .cipher import EncryptedMessage
from .errors import (BadMagicError, CountMismatchError, EnvelopeFormatError,
                     FrameOversizeError, ProtocolError, TruncatedEnvelopeError,
                     UnsupportedVersionError)

ENVELOPE_MAGIC = b"GANENC-MSG1"
ENVELOPE_VERSION = 1
FRAME_MAGIC = b"GANENCV1"
MAX_FRAME_BYTES = 64 << 20


@dataclass(frozen=True)
class MessageEnvelope:
    """Everything a sender transmits for one message."""

    width: int
    alphabet_id: bytes
    cipher_indices: tuple[int, ...]
    reference_keys: tuple[BitVector, ...]
    passthrough: tuple[tuple[int, str], ...] = field(default=())
    version: int = ENVELOPE_VERSION

    def __post_init__(self):
        object.__setattr__(self, "cipher_indices", tuple(self.cipher_indices))
        object.__setattr__(self, "reference_keys", tuple(self.reference_keys))
        object.__setattr__(self, "passthrough", tuple(sorted(self.passthrough)))
        if not 1 <= self.width <= 64:
            raise ValueError(f"width must be in 1..64, got {self.width}")
        if len(self.alphabet_id) != 32:
            raise ValueError("alphabet_id must be a 32-byte digest")
        if len(self.reference_keys) != len(self.cipher_indices):
            raise ValueError(
                f"{len(self.reference_keys)} reference keys for "
                f"{len(self.cipher_indices)} cipher indices")
        for key in self.reference_keys:
            if key.width != self.width:
                raise ValueError(f"reference key width {key.width} != envelope width {self.width}")
        for index in self.cipher_indices:
            if not 0 <= index <= 0xFFFF:
                raise ValueError(f"cipher index {index} does not fit in u16")
        positions = [p for p, _ in self.passthrough]
        if len(set(positions)) != len(positions):
            raise ValueError("duplicate passthrough positions")
        for position, ch in self.passthrough:
            if not 0 <= position <= 0xFFFFFFFF:
                raise ValueError(f"passthrough position {position} does not fit in u32")
            if len(ch) != 1 or not 1 <= len(ch.encode("utf-8")) <= 255:
                raise ValueError(f"passthrough entry must be a single character, got {ch!r}")

    @property
    def length(self) -> int:
        return len(self.cipher_indices)

    @property
    def key_payload_bits(self) -> int:
        """Size of the serialized reference-key section, in bits."""
        return self.length * ((self.width + 7) // 8) * 8

    @classmethod
    def from_message(cls, message: EncryptedMessage, reference_keys) -> "MessageEnvelope":
        return cls(width=message.width, alphabet_id=message.alphabet_id,
                   cipher_indices=message.cipher_indices,
                   reference_keys=tuple(reference_keys),
                   passthrough=message.passthrough)

    def to_message(self) -> tuple[EncryptedMessage, tuple[BitVector, ...]]:
        message = EncryptedMessage(self.cipher_indices, self.alphabet_id,
                                   self.width, self.passthrough)
        return message, self.reference_keys


def write_envelope(env: MessageEnvelope) -> bytes:
    """Canonical serialization; equal envelopes produce identical bytes."""
    out = bytearray()
    out += ENVELOPE_MAGIC
    out += struct.pack(">BBI", env.version, env.width, env.length)
    out += env.alphabet_id
    key_bytes = (env.width + 7) // 8
    for key in env.reference_keys:
        out += key.value.to_bytes(key_bytes, "little")
    for index in env.cipher_indices:
        out += struct.pack(">H", index)
    out += struct.pack(">H", len(env.passthrough))
    for position, ch in env.passthrough:
        raw = ch.encode("utf-8")
        out += struct.pack(">IB", position, len(raw))
        out += raw
    return bytes(out)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise TruncatedEnvelopeError(
                f"envelope ends after {len(self.data)} bytes; needed {self.pos + n}")
        chunk = self.data[self.pos:self.pos + n]
        self.pos += n
        return chunk

    def remaining(self) -> int:
        return len(self.data) - self.pos


def read_envelope(data: bytes) -> MessageEnvelope:
    """Parse :func:`write_envelope` output, failing with a precise error."""
    reader = _Reader(bytes(data))
    magic = reader.take(len(ENVELOPE_MAGIC))
    if magic != ENVELOPE_MAGIC:
        raise BadMagicError(f"bad envelope magic {magic!r}")
    version, width, length = struct.unpack(">BBI", reader.take(6))
    if version != ENVELOPE_VERSION:
        raise UnsupportedVersionError(f"unsupported envelope version {version}")
    if not 1 <= width <= 64:
        raise EnvelopeFormatError(f"envelope declares invalid key width {width}")
    alphabet_id = reader.take(32)
    key_bytes = (width + 7) // 8
    keys = []
    for _ in range(length):
        raw = reader.take(key_bytes)
        keys.append(int.from_bytes(raw, "little"))
    indices = [struct.unpack(">H", reader.take(2))[0] for _ in range(length)]
    (pass_count,) = struct.unpack(">H", reader.take(2))
    passthrough = []
    for _ in range(pass_count):
        position, size = struct.unpack(">IB", reader.take(5))
        try:
            ch = reader.take(size).decode("utf-8")
        except UnicodeDecodeError:
            raise EnvelopeFormatError("passthrough entry is not valid UTF-8") from None
        passthrough.append((position, ch))
    if reader.remaining():
        raise CountMismatchError(
            f"{reader.remaining()} unexpected trailing bytes after the declared counts")
    try:
        return MessageEnvelope(
            width=width, alphabet_id=alphabet_id, cipher_indices=tuple(indices),
            reference_keys=tuple(BitVector(v, width) for v in keys),
            passthrough=tuple(passthrough), version=version)
    except ValueError as exc:
        raise EnvelopeFormatError(str(exc)) from None


# ---------------------------------------------------------------------------
# framed stream transport

def write_frame(stream, env: MessageEnvelope) -> None:
    payload = write_envelope(env)
    if len(payload) > MAX_FRAME_BYTES:
        raise FrameOversizeError(
            f"envelope of {len(payload)} bytes exceeds the {MAX_FRAME_BYTES}-byte frame cap")
    stream.write(FRAME_MAGIC + struct.pack(">I", len(payload)) + payload)


def read_frame(stream) -> MessageEnvelope:
    """Read one framed envelope; raises EOFError on a cleanly closed stream."""
    head = stream.read(len(FRAME_MAGIC))
    if not head:
        raise EOFError("stream closed before a frame")
    if len(head) != len(FRAME_MAGIC):
        raise ProtocolError("stream ended inside a frame header")
    if head != FRAME_MAGIC:
        raise ProtocolError(f"bad frame magic {head!r}")
    raw_len = stream.read(4)
    if len(raw_len) != 4:
        raise ProtocolError("stream ended inside a frame header")
    (size,) = struct.unpack(">I", raw_len)
    if size > MAX_FRAME_BYTES:
        raise FrameOversizeError(
            f"frame declares {size} bytes, more than the {MAX_FRAME_BYTES}-byte cap")
    payload = b""
    while len(payload) < size:
        chunk = stream.read(size - len(payload))
        if not chunk:
            raise ProtocolError("stream ended inside a frame payload")
        payload += chunk
    return read_envelope(payload)


def send_envelope(env: MessageEnvelope, host: str, port: int, timeout: float = 10.0) -> None:
    """Connect to a listening peer and transmit one framed envelope."""
    with socket.create_connection((host, port), timeout=timeout) as conn:
        with conn.makefile("wb") as stream:
            write_frame(stream, env)
            stream.flush()


class EnvelopeListener:
    """A bound TCP listener handing out envelopes one connection at a time."""

    def __init__(self, port: int = 0, host: str = "127.0.0.1"):
        self._sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        self._sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        self._sock.bind((host, port))
        self._sock.listen(1)

    @property
    def port(self) -> int:
        return self._sock.getsockname()[1]

    def accept_one(self, timeout: float | None = None) -> MessageEnvelope:
        self._sock.settimeout(timeout)
        conn, _ = self._sock.accept()
        with conn:
            conn.settimeout(timeout)
            with conn.makefile("rb") as stream:
                return read_frame(stream)

    def close(self) -> None:
        self._sock.close()

    def __enter__(self) -> "EnvelopeListener":
        return self

    def __exit__(self, *_exc) -> None:
        self.close()


def receive_envelope(port: int, host: str = "127.0.0.1",
                     timeout: float | None = None) -> MessageEnvelope:
    """Listen on ``host:port``, accept one peer, return its envelope."""
    with EnvelopeListener(port, host) as listener:
        return listener.accept_one(timeout)
