import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ganenc import (BitVector, CircuitConfig, Gate, GateKind, TRUTH_TABLES, apply_circuit,
                    apply_circuit_to_values, invert_image, is_reversible, lock_circuit,
                    net_mask, random_circuit, unlock_circuit)
from ganenc.circuit import LockedCircuit
from ganenc.errors import (CircuitFormatError, IrreversibleCircuitError, TagMismatchError,
                           WidthMismatchError)

from oracles import is_bijective_exhaustive, naive_apply_vector


def make_mixed_circuit(rng, width=None, gate_count=None):
    width = width if width is not None else int(rng.integers(3, 13))
    gate_count = gate_count if gate_count is not None else int(rng.integers(1, 2 * width))
    return random_circuit(width, gate_count, tuple(GateKind), rng=rng)


class TestGate:
    def test_not_takes_single_wire(self):
        g = Gate.inverter(3)
        assert g.input_b is None and g.target == 3
        with pytest.raises(ValueError):
            Gate(GateKind.NOT, 1, input_b=2)

    def test_binary_needs_distinct_inputs(self):
        with pytest.raises(ValueError):
            Gate.binary(GateKind.AND, 2, 2)

    def test_binary_target_defaults_to_first_input(self):
        g = Gate.binary(GateKind.OR, 4, 1)
        assert g.target == 4

    def test_line_round_trip(self):
        for gate in (Gate.inverter(7), Gate.binary(GateKind.XOR, 0, 3, 5)):
            assert Gate.from_line(gate.to_line()) == gate

    def test_bad_lines(self):
        for line in ("FOO 1", "AND 1 2", "NOT", "NOT x", "AND 1 2 => 3"):
            with pytest.raises(CircuitFormatError):
                Gate.from_line(line)


class TestTruthTables:
    @pytest.mark.parametrize("kind", sorted(TRUTH_TABLES, key=int))
    @pytest.mark.parametrize("a,b", [(0, 0), (0, 1), (1, 0), (1, 1)])
    def test_binary_gate_semantics(self, kind, a, b):
        config = CircuitConfig(3, (Gate.binary(kind, 0, 1, target=2),))
        image = apply_circuit(config, BitVector.from_bits([a, b, 0]))
        assert image.bit(2) == TRUTH_TABLES[kind][(a, b)]
        # inputs pass through untouched
        assert image.bit(0) == a and image.bit(1) == b

    @pytest.mark.parametrize("x", [0, 1])
    def test_not_semantics(self, x):
        config = CircuitConfig(1, (Gate.inverter(0),))
        assert apply_circuit(config, BitVector.from_bits([x])).bit(0) == 1 - x


class TestApplyCircuit:
    def test_not_gates_flip(self):
        config = CircuitConfig(3, (Gate.inverter(0), Gate.inverter(2)))
        out = apply_circuit(config, BitVector.from_bits([0, 1, 0]))
        assert out == BitVector.from_bits([1, 1, 1])

    def test_and_writes_to_target(self):
        config = CircuitConfig(2, (Gate.binary(GateKind.AND, 0, 1, target=0),))
        assert apply_circuit(config, BitVector.from_bits([1, 1])) == BitVector.from_bits([1, 1])
        assert apply_circuit(config, BitVector.from_bits([1, 0])) == BitVector.from_bits([0, 0])

    def test_double_not_is_identity(self):
        config = CircuitConfig(4, (Gate.inverter(2), Gate.inverter(2)))
        v = BitVector.from_bits([1, 0, 1, 1])
        assert apply_circuit(config, v) == v

    def test_width_mismatch(self):
        config = CircuitConfig(4, (Gate.inverter(0),))
        with pytest.raises(WidthMismatchError):
            apply_circuit(config, BitVector(0, 5))

    def test_matches_naive_interpreter(self, rng):
        for _ in range(100):
            config = make_mixed_circuit(rng)
            value = int(rng.integers(1 << config.width))
            v = BitVector(value, config.width)
            assert apply_circuit(config, v) == naive_apply_vector(config, v)

    def test_batch_matches_scalar(self, rng):
        config = make_mixed_circuit(rng, width=10)
        values = np.arange(1 << 10, dtype=np.uint64)
        batch = apply_circuit_to_values(config, values)
        for value in rng.integers(0, 1 << 10, size=20):
            assert int(batch[value]) == apply_circuit(config, BitVector(int(value), 10)).value

    def test_width_64_round_trip(self):
        config = CircuitConfig(64, (Gate.inverter(63), Gate.inverter(0)))
        v = BitVector((1 << 64) - 1, 64)
        out = apply_circuit(config, v)
        assert out.value == (1 << 63) - 2  # top and bottom bits cleared
        assert apply_circuit(config, out) == v


class TestReversibility:
    def test_all_not_is_reversible(self, rng):
        config = random_circuit(8, 12, (GateKind.NOT,), rng=rng)
        assert is_reversible(config)

    def test_single_and_is_not(self):
        config = CircuitConfig(4, (Gate.inverter(1), Gate.binary(GateKind.AND, 0, 2)))
        assert not is_reversible(config)

    def test_empty_gate_list_is_reversible(self):
        config = CircuitConfig(5, ())
        assert is_reversible(config)
        v = BitVector.from_bits([1, 0, 1, 0, 1])
        assert apply_circuit(config, v) == v

    def test_predicate_matches_exhaustive_bijectivity(self, rng):
        for _ in range(40):
            if rng.integers(4) == 0:
                config = random_circuit(int(rng.integers(2, 9)), int(rng.integers(1, 10)),
                                        (GateKind.NOT,), rng=rng)
            else:
                config = make_mixed_circuit(rng, width=int(rng.integers(3, 9)))
            assert is_reversible(config) == is_bijective_exhaustive(config)

    def test_binary_gate_forces_collision(self, rng):
        # generated circuits with >= 1 binary gate always merge two inputs
        for _ in range(30):
            config = make_mixed_circuit(rng, width=int(rng.integers(3, 9)))
            if is_reversible(config):
                continue
            values = np.arange(1 << config.width, dtype=np.uint64)
            images = apply_circuit_to_values(config, values)
            assert len(np.unique(images)) < len(values)


class TestNetMask:
    def test_single_not(self):
        config = CircuitConfig(3, (Gate.inverter(1),))
        assert net_mask(config) == BitVector.from_bits([0, 1, 0])

    def test_parity_cancels(self):
        config = CircuitConfig(3, (Gate.inverter(1), Gate.inverter(1)))
        assert net_mask(config) == BitVector.from_bits([0, 0, 0])

    def test_refuses_binary_gates(self):
        config = CircuitConfig(3, (Gate.binary(GateKind.OR, 0, 1),))
        with pytest.raises(IrreversibleCircuitError):
            net_mask(config)

    def test_mask_equivalence_exhaustive(self, rng):
        config = random_circuit(10, 17, (GateKind.NOT,), rng=rng)
        mask = net_mask(config).value
        values = np.arange(1 << 10, dtype=np.uint64)
        images = apply_circuit_to_values(config, values)
        assert np.array_equal(images, values ^ np.uint64(mask))

    def test_all_not_bijective_at_width_16(self, rng):
        config = random_circuit(16, 23, (GateKind.NOT,), rng=rng)
        values = np.arange(1 << 16, dtype=np.uint64)
        images = apply_circuit_to_values(config, values)
        assert len(np.unique(images)) == 1 << 16

    def test_involution(self, rng):
        config = random_circuit(12, 20, (GateKind.NOT,), rng=rng)
        v = BitVector(int(rng.integers(1 << 12)), 12)
        assert apply_circuit(config, apply_circuit(config, v)) == v


class TestInvertImage:
    def test_identity_circuit(self):
        config = CircuitConfig(4, ())
        r = BitVector.from_bits([1, 1, 0, 0])
        assert invert_image(config, r) == r

    def test_xor_arithmetic(self):
        config = CircuitConfig(2, (Gate.inverter(0),))
        assert invert_image(config, BitVector.from_bits([0, 0])) == BitVector.from_bits([1, 0])

    @given(st.integers(0, (1 << 10) - 1), st.integers(0, 2 ** 32 - 1))
    @settings(max_examples=50, deadline=None)
    def test_round_trip_property(self, r_value, seed):
        config = random_circuit(10, 15, (GateKind.NOT,), rng=seed)
        r = BitVector(r_value, 10)
        assert apply_circuit(config, invert_image(config, r)) == r

    def test_refuses_binary_gates(self):
        config = CircuitConfig(3, (Gate.binary(GateKind.XOR, 0, 1, 2),))
        with pytest.raises(IrreversibleCircuitError):
            invert_image(config, BitVector(0, 3))


class TestRandomCircuit:
    def test_structure_all_not(self, rng):
        config = random_circuit(8, 8, (GateKind.NOT,), rng=rng)
        assert len(config) == 8
        assert all(g.kind == GateKind.NOT and g.input_a < 8 for g in config.gates)

    def test_width2_and(self, rng):
        config = random_circuit(2, 1, (GateKind.AND,), rng=rng)
        gate = config.gates[0]
        assert gate.kind == GateKind.AND
        assert {gate.input_a, gate.input_b} == {0, 1}

    def test_deterministic_config_id(self):
        kinds = tuple(GateKind)
        a = random_circuit(9, 14, kinds, rng=77)
        b = random_circuit(9, 14, kinds, rng=77)
        assert a == b and a.config_id == b.config_id

    def test_argument_validation(self):
        with pytest.raises(ValueError):
            random_circuit(0, 1)
        with pytest.raises(ValueError):
            random_circuit(4, 0)
        with pytest.raises(ValueError):
            random_circuit(4, 4, ())
        with pytest.raises(ValueError):
            random_circuit(1, 1, (GateKind.AND,))
        with pytest.raises(ValueError):
            random_circuit(2, 1, (GateKind.XOR,))

    def test_xor_target_avoids_inputs(self, rng):
        for _ in range(20):
            config = random_circuit(4, 10, (GateKind.XOR,), rng=rng)
            for gate in config.gates:
                assert gate.target not in (gate.input_a, gate.input_b)


class TestSerialization:
    def test_text_round_trip_and_stability(self, rng):
        config = make_mixed_circuit(rng)
        text = config.to_text()
        assert CircuitConfig.from_text(text) == config
        assert CircuitConfig.from_text(text).to_text() == text
        assert text == config.to_text()

    def test_known_layout(self):
        config = CircuitConfig(3, (Gate.inverter(2), Gate.binary(GateKind.NOR, 0, 1, 2)))
        assert config.to_text() == (
            "GANENC-CIRCUIT v1\nbits 3\ngates 2\nNOT 2\nNOR 0 1 -> 2\n")

    def test_config_id_tracks_changes(self):
        base = CircuitConfig(3, (Gate.inverter(0),))
        assert base.config_id != CircuitConfig(4, (Gate.inverter(0),)).config_id
        assert base.config_id != CircuitConfig(3, (Gate.inverter(1),)).config_id

    def test_parse_errors(self):
        with pytest.raises(CircuitFormatError):
            CircuitConfig.from_text("nope\n")
        with pytest.raises(CircuitFormatError):
            CircuitConfig.from_text("GANENC-CIRCUIT v1\nbits 3\n")
        with pytest.raises(CircuitFormatError):
            CircuitConfig.from_text("GANENC-CIRCUIT v1\nbits 3\ngates 2\nNOT 0\n")
        with pytest.raises(CircuitFormatError):
            CircuitConfig.from_text("GANENC-CIRCUIT v1\nbits 3\ngates 1\nNOT 7\n")


class TestLocking:
    def test_round_trip(self, rng):
        config = make_mixed_circuit(rng)
        locked = lock_circuit(config, "hunter2", rng=rng)
        assert unlock_circuit(locked, "hunter2") == config

    def test_wrong_passphrase(self, rng):
        config = make_mixed_circuit(rng)
        locked = lock_circuit(config, "pw", rng=rng)
        with pytest.raises(TagMismatchError):
            unlock_circuit(locked, "pW")

    def test_corrupted_payload(self, rng):
        config = make_mixed_circuit(rng)
        locked = lock_circuit(config, "pw", rng=rng)
        tampered = LockedCircuit(locked.salt,
                                 bytes([locked.payload[0] ^ 1]) + locked.payload[1:],
                                 locked.tag)
        with pytest.raises(TagMismatchError):
            unlock_circuit(tampered, "pw")

    def test_salt_freshness(self, rng):
        config = make_mixed_circuit(rng)
        first = lock_circuit(config, "pw", rng=rng)
        second = lock_circuit(config, "pw", rng=rng)
        assert first.salt != second.salt
        assert first.payload != second.payload

    def test_empty_passphrase_rejected(self, rng):
        config = make_mixed_circuit(rng)
        with pytest.raises(ValueError):
            lock_circuit(config, "", rng=rng)

    def test_locked_text_round_trip(self, rng):
        locked = lock_circuit(make_mixed_circuit(rng), b"bytes-pass", rng=rng)
        assert LockedCircuit.from_text(locked.to_text()) == locked
