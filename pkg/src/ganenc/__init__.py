"""Keystream text encryption driven by a hidden logic-gate circuit.

Per-character dynamic keys are tied to public reference keys through a
randomly generated gate circuit; decryption recovers each dynamic key by
an adversarial search that drives the deviation checksum to zero (or by
direct inversion when the circuit is NOT-only). Includes irreversible
shredding, password tooling, transfer envelopes, and a scaling benchmark.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .bitkey import (BitVector, DecimalPair, KeyPair, complex_pair, decimal_value,
                     hamming_deviation, random_bitvector)
from .circuit import (BINARY_KINDS, CircuitConfig, Gate, GateKind, LockedCircuit,
                      TRUTH_TABLES, apply_circuit, apply_circuit_to_values, invert_image,
                      is_reversible, lock_circuit, net_mask, random_circuit, unlock_circuit)
from .gan import (ConvergenceReport, SearchStrategy, StrategyKind, default_budget,
                  derive_dynamic_key, direct_inversion, generate_key_pair, memory_guided,
                  uniform_random)
from .cipher import (Alphabet, BUILTIN_ALPHABETS, EncryptedMessage, LOWER26, PRINTABLE95,
                     decode_index, decrypt_text, encode_char, encrypt_text, mask_index,
                     shred_text, unmask_index)
from .envelope import (EnvelopeListener, MessageEnvelope, read_envelope, receive_envelope,
                       send_envelope, write_envelope)
from .password import (ComplexityProfile, classify_password, generate_password,
                       validate_password)
from .bench import BenchCase, BenchRow, run_bench, write_csv
from . import errors

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "BitVector", "DecimalPair", "KeyPair",
    "complex_pair", "decimal_value", "hamming_deviation", "random_bitvector",
    "BINARY_KINDS", "CircuitConfig", "Gate", "GateKind", "LockedCircuit", "TRUTH_TABLES",
    "apply_circuit", "apply_circuit_to_values", "invert_image", "is_reversible",
    "lock_circuit", "net_mask", "random_circuit", "unlock_circuit",
    "ConvergenceReport", "SearchStrategy", "StrategyKind", "default_budget",
    "derive_dynamic_key", "direct_inversion", "generate_key_pair", "memory_guided",
    "uniform_random",
    "Alphabet", "BUILTIN_ALPHABETS", "EncryptedMessage", "LOWER26", "PRINTABLE95",
    "decode_index", "decrypt_text", "encode_char", "encrypt_text", "mask_index",
    "shred_text", "unmask_index",
    "EnvelopeListener", "MessageEnvelope", "read_envelope", "receive_envelope",
    "send_envelope", "write_envelope",
    "ComplexityProfile", "classify_password", "generate_password", "validate_password",
    "BenchCase", "BenchRow", "run_bench", "write_csv",
    "errors",
]
