import io
import socket
import struct
import threading

import pytest
from hypothesis import given, settings, strategies as st

import numpy as np

from ganenc import (GateKind, MessageEnvelope, PRINTABLE95, decrypt_text,
                    encrypt_text, random_bitvector, random_circuit, read_envelope,
                    send_envelope, write_envelope)
from ganenc.envelope import (ENVELOPE_MAGIC, FRAME_MAGIC, MAX_FRAME_BYTES, EnvelopeListener,
                             read_frame, write_frame)
from ganenc.errors import (BadMagicError, CountMismatchError, EnvelopeFormatError,
                           FrameOversizeError, ProtocolError, TruncatedEnvelopeError,
                           UnsupportedVersionError)


def random_envelope(rng, width=None, length=None, with_passthrough=True):
    width = width if width is not None else int(rng.integers(1, 65))
    length = length if length is not None else int(rng.integers(0, 40))
    passthrough = []
    if with_passthrough and rng.integers(2):
        used = set()
        for ch in ("\n", "€", "\t"):
            position = int(rng.integers(0, length + 4))
            if position not in used:
                used.add(position)
                passthrough.append((position, ch))
    return MessageEnvelope(
        width=width,
        alphabet_id=bytes(rng.bytes(32)),
        cipher_indices=tuple(int(i) for i in rng.integers(0, 0x10000, size=length)),
        reference_keys=tuple(random_bitvector(width, rng) for _ in range(length)),
        passthrough=tuple(passthrough),
    )


class TestEnvelopeValidation:
    def test_count_mismatch_rejected(self, rng):
        with pytest.raises(ValueError):
            MessageEnvelope(width=8, alphabet_id=bytes(32), cipher_indices=(1, 2),
                            reference_keys=(random_bitvector(8, rng),))

    def test_key_width_mismatch_rejected(self, rng):
        with pytest.raises(ValueError):
            MessageEnvelope(width=8, alphabet_id=bytes(32), cipher_indices=(1,),
                            reference_keys=(random_bitvector(9, rng),))

    def test_index_must_fit_u16(self, rng):
        with pytest.raises(ValueError):
            MessageEnvelope(width=8, alphabet_id=bytes(32), cipher_indices=(70000,),
                            reference_keys=(random_bitvector(8, rng),))

    def test_duplicate_passthrough_positions(self):
        with pytest.raises(ValueError):
            MessageEnvelope(width=8, alphabet_id=bytes(32), cipher_indices=(),
                            reference_keys=(), passthrough=((1, "a"), (1, "b")))


class TestSerialization:
    def test_three_character_round_trip(self, rng):
        env = random_envelope(rng, width=8, length=3, with_passthrough=False)
        assert read_envelope(write_envelope(env)) == env

    def test_byte_exact_reserialization(self, rng):
        env = random_envelope(rng)
        data = write_envelope(env)
        assert write_envelope(read_envelope(data)) == data

    def test_canonical_for_equal_envelopes(self, rng):
        env = random_envelope(rng)
        clone = MessageEnvelope(width=env.width, alphabet_id=env.alphabet_id,
                                cipher_indices=list(env.cipher_indices),
                                reference_keys=list(env.reference_keys),
                                passthrough=tuple(reversed(env.passthrough)))
        assert clone == env
        assert write_envelope(clone) == write_envelope(env)

    def test_many_random_round_trips(self):
        gen = np.random.default_rng(7)
        for _ in range(200):
            env = random_envelope(gen)
            assert read_envelope(write_envelope(env)) == env

    @given(st.integers(0, 2 ** 32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_round_trip_property(self, seed):
        env = random_envelope(np.random.default_rng(seed))
        assert read_envelope(write_envelope(env)) == env

    def test_key_payload_accounting_3000_chars(self, rng):
        env = random_envelope(rng, width=8, length=3000, with_passthrough=False)
        assert env.key_payload_bits == 24_000
        data = write_envelope(env)
        overhead = len(ENVELOPE_MAGIC) + 6 + 32   # magic, version/width/length, digest
        trailer = 2 * 3000 + 2                    # u16 indices + passthrough count
        assert (len(data) - overhead - trailer) * 8 == 24_000

    def test_bad_magic(self):
        with pytest.raises(BadMagicError):
            read_envelope(b"NOTANENVELOPE" + bytes(40))

    def test_unsupported_version(self, rng):
        data = bytearray(write_envelope(random_envelope(rng)))
        data[len(ENVELOPE_MAGIC)] = 9
        with pytest.raises(UnsupportedVersionError):
            read_envelope(bytes(data))

    def test_truncation(self, rng):
        data = write_envelope(random_envelope(rng, length=5))
        with pytest.raises(TruncatedEnvelopeError):
            read_envelope(data[:-3])

    def test_trailing_garbage_is_count_mismatch(self, rng):
        data = write_envelope(random_envelope(rng))
        with pytest.raises(CountMismatchError):
            read_envelope(data + b"xx")

    def test_invalid_width_rejected(self):
        data = ENVELOPE_MAGIC + struct.pack(">BBI", 1, 0, 0) + bytes(32) + struct.pack(">H", 0)
        with pytest.raises(EnvelopeFormatError):
            read_envelope(data)


class TestFraming:
    def test_stream_round_trip(self, rng):
        env = random_envelope(rng)
        buffer = io.BytesIO()
        write_frame(buffer, env)
        buffer.seek(0)
        assert read_frame(buffer) == env

    def test_bad_frame_magic(self):
        with pytest.raises(ProtocolError):
            read_frame(io.BytesIO(b"GARBAGE!" + bytes(8)))

    def test_oversize_frame_rejected(self):
        head = FRAME_MAGIC + struct.pack(">I", MAX_FRAME_BYTES + 1)
        with pytest.raises(FrameOversizeError):
            read_frame(io.BytesIO(head))

    def test_eof_before_frame(self):
        with pytest.raises(EOFError):
            read_frame(io.BytesIO(b""))

    def test_truncated_frame_payload(self, rng):
        env = random_envelope(rng, length=4)
        buffer = io.BytesIO()
        write_frame(buffer, env)
        with pytest.raises(ProtocolError):
            read_frame(io.BytesIO(buffer.getvalue()[:-2]))

    def test_two_frames_in_order(self, rng):
        first = random_envelope(rng, width=6, length=3)
        second = random_envelope(rng, width=6, length=5)
        buffer = io.BytesIO()
        write_frame(buffer, first)
        write_frame(buffer, second)
        buffer.seek(0)
        assert read_frame(buffer) == first
        assert read_frame(buffer) == second


class TestTransport:
    def test_loopback_send_receive(self, rng):
        env = random_envelope(rng)
        with EnvelopeListener() as listener:
            sender = threading.Thread(
                target=send_envelope, args=(env, "127.0.0.1", listener.port))
            sender.start()
            received = listener.accept_one(timeout=10)
            sender.join()
        assert received == env

    def test_two_sequential_envelopes_on_one_connection(self, rng):
        first = random_envelope(rng, width=9, length=4)
        second = random_envelope(rng, width=9, length=6)
        server = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        server.bind(("127.0.0.1", 0))
        server.listen(1)
        port = server.getsockname()[1]

        def sender():
            with socket.create_connection(("127.0.0.1", port), timeout=10) as conn:
                with conn.makefile("wb") as stream:
                    write_frame(stream, first)
                    write_frame(stream, second)

        thread = threading.Thread(target=sender)
        thread.start()
        conn, _ = server.accept()
        with conn, conn.makefile("rb") as stream:
            assert read_frame(stream) == first
            assert read_frame(stream) == second
        thread.join()
        server.close()

    def test_end_to_end_encrypt_transfer_decrypt(self, rng):
        config = random_circuit(16, 16, (GateKind.NOT,), rng=rng)
        text = "meet me at the usual place at 9"
        message, refs = encrypt_text(text, config, PRINTABLE95, rng=rng)
        env = MessageEnvelope.from_message(message, refs)
        with EnvelopeListener() as listener:
            sender = threading.Thread(
                target=send_envelope, args=(env, "127.0.0.1", listener.port))
            sender.start()
            received = listener.accept_one(timeout=10)
            sender.join()
        got_message, got_refs = received.to_message()
        assert decrypt_text(got_message, got_refs, config, PRINTABLE95) == text
