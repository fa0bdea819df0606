"""Command-line entry point.

Subcommands: circuit new/inspect/lock/unlock, encrypt, decrypt, shred,
send, recv, password gen/check, bench. Exit codes: 0 success, 1 usage
error, 2 crypto/protocol/IO error. ``--seed`` makes any subcommand's
non-timing output reproducible. Output files are written atomically
(temp file + rename), so failures never leave partial output behind.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

from . import bench as bench_mod
from . import envelope as envelope_mod
from .cipher import BUILTIN_ALPHABETS, Alphabet, decrypt_text, encrypt_text, shred_text
from .circuit import (CIRCUIT_MAGIC, LOCKED_MAGIC, CircuitConfig, GateKind, LockedCircuit,
                      is_reversible, lock_circuit, random_circuit, unlock_circuit)
from .corpus import TEXTS
from .errors import GanencError
from .gan import SearchStrategy, StrategyKind
from .password import ComplexityProfile, classify_password, generate_password

PASSPHRASE_ENV = "GANENC_PASSPHRASE"

_STRATEGIES = {kind.value: kind for kind in StrategyKind}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0
    try:
        return args.func(args)
    except GanencError as exc:
        print(f"ganenc: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"ganenc: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"ganenc: {exc}", file=sys.stderr)
        return 2


# ---------------------------------------------------------------------------
# parser

def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ganenc",
                     description="Keystream text encryption through a hidden logic-gate circuit.")
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="print per-run statistics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p_circuit = sub.add_parser("circuit", help="create and manage circuit files")
    csub = p_circuit.add_subparsers(dest="circuit_command", required=True)

    p_new = csub.add_parser("new", help="generate a random circuit")
    p_new.add_argument("--bits", type=int, default=18, help="key width N (default 18)")
    p_new.add_argument("--gates", type=int, default=None,
                       help="gate count L (default: same as --bits)")
    p_new.add_argument("--kinds", default="NOT",
                       help="comma list of gate kinds: NOT,AND,OR,NOR,XOR (default NOT)")
    p_new.add_argument("--out", required=True, help="circuit file to write")
    _add_seed(p_new)
    p_new.set_defaults(func=_cmd_circuit_new)

    p_inspect = csub.add_parser("inspect", help="describe a circuit file")
    p_inspect.add_argument("file")
    p_inspect.add_argument("--passphrase", help="passphrase for locked files")
    p_inspect.set_defaults(func=_cmd_circuit_inspect)

    p_lock = csub.add_parser("lock", help="scramble a circuit under a passphrase")
    p_lock.add_argument("file")
    p_lock.add_argument("--out", required=True)
    p_lock.add_argument("--passphrase", help=f"or set {PASSPHRASE_ENV}")
    _add_seed(p_lock)
    p_lock.set_defaults(func=_cmd_circuit_lock)

    p_unlock = csub.add_parser("unlock", help="recover a locked circuit")
    p_unlock.add_argument("file")
    p_unlock.add_argument("--out", required=True)
    p_unlock.add_argument("--passphrase", help=f"or set {PASSPHRASE_ENV}")
    p_unlock.set_defaults(func=_cmd_circuit_unlock)

    p_enc = sub.add_parser("encrypt", help="encrypt a text file into an envelope")
    _add_cipher_flags(p_enc)
    p_enc.add_argument("--passthrough", action="store_true",
                       help="copy out-of-alphabet characters unencrypted instead of failing")
    p_enc.set_defaults(func=_cmd_encrypt)

    p_dec = sub.add_parser("decrypt", help="decrypt an envelope back to text")
    _add_cipher_flags(p_dec)
    p_dec.set_defaults(func=_cmd_decrypt)

    p_shred = sub.add_parser("shred", help="irreversibly delete a text file into an envelope")
    p_shred.add_argument("--circuit", required=True)
    p_shred.add_argument("--in", dest="infile", required=True)
    p_shred.add_argument("--out", required=True)
    p_shred.add_argument("--alphabet", default="printable95")
    p_shred.add_argument("--passphrase", help=f"or set {PASSPHRASE_ENV}")
    _add_seed(p_shred)
    p_shred.set_defaults(func=_cmd_shred)

    p_send = sub.add_parser("send", help="send an envelope file to a listening peer")
    p_send.add_argument("--in", dest="infile", required=True)
    p_send.add_argument("--to", required=True, metavar="HOST:PORT")
    p_send.add_argument("--timeout", type=float, default=10.0)
    p_send.set_defaults(func=_cmd_send)

    p_recv = sub.add_parser("recv", help="listen for one envelope and write it to a file")
    p_recv.add_argument("--listen", type=int, required=True, metavar="PORT")
    p_recv.add_argument("--host", default="127.0.0.1")
    p_recv.add_argument("--out", required=True)
    p_recv.add_argument("--timeout", type=float, default=None)
    p_recv.set_defaults(func=_cmd_recv)

    p_pw = sub.add_parser("password", help="password generation and checking")
    pwsub = p_pw.add_subparsers(dest="password_command", required=True)

    p_gen = pwsub.add_parser("gen", help="generate a password")
    p_gen.add_argument("--length", type=int, default=16)
    p_gen.add_argument("--classes", default="1,2,3",
                       help="required complexity classes, e.g. 1,3 (default 1,2,3)")
    _add_seed(p_gen)
    p_gen.set_defaults(func=_cmd_password_gen)

    p_check = pwsub.add_parser("check", help="classify a password and check requirements")
    p_check.add_argument("password")
    p_check.add_argument("--classes", default="",
                         help="classes that must be present (default: none, report only)")
    p_check.set_defaults(func=_cmd_password_check)

    p_bench = sub.add_parser("bench", help="run the scaling benchmark")
    p_bench.add_argument("--gates", default="NOT", help="comma list of NOT,AND (default NOT)")
    p_bench.add_argument("--bits", default="8,12,16",
                         help="widths: comma list and/or A..B[:STEP] ranges (default 8,12,16)")
    p_bench.add_argument("--strategy", default="memory",
                         help="comma list of direct,memory,uniform (default memory)")
    p_bench.add_argument("--texts", default="password25",
                         help=f"comma list from {sorted(TEXTS)} (default password25)")
    p_bench.add_argument("--trials", type=int, default=5)
    p_bench.add_argument("--budget", type=int, default=None,
                         help="evaluation budget per key (default: width-based)")
    p_bench.add_argument("--csv", default=None, help="write CSV here (default: stdout)")
    p_bench.add_argument("--allow-large", action="store_true",
                         help="lift the 24-bit guard on uniform search")
    p_bench.add_argument("--parallel", action="store_true",
                         help="run cases in parallel (wall times get noisy)")
    _add_seed(p_bench)
    p_bench.set_defaults(func=_cmd_bench)

    return parser


def _add_seed(parser) -> None:
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for reproducible output")


def _add_cipher_flags(parser) -> None:
    parser.add_argument("--circuit", required=True, help="circuit file (plain or locked)")
    parser.add_argument("--in", dest="infile", required=True)
    parser.add_argument("--out", required=True)
    parser.add_argument("--alphabet", default="printable95",
                        help="builtin name (printable95, lower26) or alphabet file path")
    parser.add_argument("--strategy", default="direct",
                        choices=sorted(_STRATEGIES), help="key search strategy (default direct)")
    parser.add_argument("--budget", type=int, default=None,
                        help="evaluation budget per key (default: width-based)")
    parser.add_argument("--passphrase", help=f"for locked circuit files, or set {PASSPHRASE_ENV}")
    _add_seed(parser)


# ---------------------------------------------------------------------------
# shared helpers

def _atomic_write(path, data: bytes) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent) or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _read_text(path) -> str:
    return Path(path).read_bytes().decode("utf-8")


def _passphrase(args) -> str | None:
    given = getattr(args, "passphrase", None)
    return given if given is not None else os.environ.get(PASSPHRASE_ENV)


def _load_circuit(path, args) -> CircuitConfig:
    text = _read_text(path)
    first = text.split("\n", 1)[0]
    if first == CIRCUIT_MAGIC:
        return CircuitConfig.from_text(text)
    if first == LOCKED_MAGIC:
        passphrase = _passphrase(args)
        if not passphrase:
            raise GanencError(
                f"{path} is locked; provide --passphrase or set {PASSPHRASE_ENV}")
        return unlock_circuit(LockedCircuit.from_text(text), passphrase)
    raise GanencError(f"{path} is not a circuit file")


def _resolve_alphabet(spec: str) -> Alphabet:
    if spec in BUILTIN_ALPHABETS:
        return BUILTIN_ALPHABETS[spec]
    return Alphabet.from_text(_read_text(spec))


def _strategy(args) -> SearchStrategy:
    return SearchStrategy(_STRATEGIES[args.strategy], args.budget)


def _parse_kinds(spec: str) -> tuple[GateKind, ...]:
    kinds = []
    for name in spec.split(","):
        name = name.strip().upper()
        if not name:
            continue
        try:
            kinds.append(GateKind[name])
        except KeyError:
            raise ValueError(f"unknown gate kind {name!r}") from None
    if not kinds:
        raise ValueError("no gate kinds given")
    return tuple(kinds)


def _parse_bits(spec: str) -> list[int]:
    out = []
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        if ".." in item:
            span, _, step = item.partition(":")
            lo, _, hi = span.partition("..")
            out.extend(range(int(lo), int(hi) + 1, int(step) if step else 1))
        else:
            out.append(int(item))
    if not out:
        raise ValueError("no widths given")
    return out


def _parse_classes(spec: str) -> ComplexityProfile:
    wanted = {item.strip() for item in spec.split(",") if item.strip()}
    unknown = wanted - {"1", "2", "3"}
    if unknown:
        raise ValueError(f"unknown password classes: {sorted(unknown)}")
    return ComplexityProfile("1" in wanted, "2" in wanted, "3" in wanted)


def _report_stats(args, reports, label: str) -> None:
    if getattr(args, "verbose", False) and reports:
        total = sum(r.iterations for r in reports)
        print(f"ganenc: {label}: {len(reports)} keys, {total} circuit evaluations",
              file=sys.stderr)


# ---------------------------------------------------------------------------
# commands

def _cmd_circuit_new(args) -> int:
    gates = args.gates if args.gates is not None else args.bits
    config = random_circuit(args.bits, gates, _parse_kinds(args.kinds), rng=args.seed)
    _atomic_write(args.out, config.to_text().encode("utf-8"))
    kind = "reversible" if is_reversible(config) else "irreversible"
    print(f"wrote {kind} circuit {config.config_id[:16]} "
          f"({config.width} bits, {len(config)} gates) to {args.out}")
    return 0


def _cmd_circuit_inspect(args) -> int:
    text = _read_text(args.file)
    first = text.split("\n", 1)[0]
    if first == LOCKED_MAGIC and not _passphrase(args):
        locked = LockedCircuit.from_text(text)
        print("locked circuit file")
        print(f"salt {locked.salt.hex()}")
        print(f"payload bytes {len(locked.payload)}")
        return 0
    config = _load_circuit(args.file, args)
    kinds = {}
    for gate in config.gates:
        kinds[gate.kind.name] = kinds.get(gate.kind.name, 0) + 1
    print(f"width {config.width}")
    print(f"gates {len(config)} ({', '.join(f'{k}={v}' for k, v in sorted(kinds.items()))})")
    print(f"reversible {'yes' if is_reversible(config) else 'no'}")
    print(f"config_id {config.config_id}")
    return 0


def _cmd_circuit_lock(args) -> int:
    passphrase = _passphrase(args)
    if not passphrase:
        raise GanencError(f"provide --passphrase or set {PASSPHRASE_ENV}")
    config = CircuitConfig.from_text(_read_text(args.file))
    locked = lock_circuit(config, passphrase, rng=args.seed)
    _atomic_write(args.out, locked.to_text().encode("utf-8"))
    print(f"locked circuit written to {args.out}")
    return 0


def _cmd_circuit_unlock(args) -> int:
    passphrase = _passphrase(args)
    if not passphrase:
        raise GanencError(f"provide --passphrase or set {PASSPHRASE_ENV}")
    locked = LockedCircuit.from_text(_read_text(args.file))
    config = unlock_circuit(locked, passphrase)
    _atomic_write(args.out, config.to_text().encode("utf-8"))
    print(f"unlocked circuit {config.config_id[:16]} written to {args.out}")
    return 0


def _cmd_encrypt(args) -> int:
    config = _load_circuit(args.circuit, args)
    alphabet = _resolve_alphabet(args.alphabet)
    text = _read_text(args.infile)
    reports = []
    message, refs = encrypt_text(text, config, alphabet, _strategy(args), rng=args.seed,
                                 passthrough=args.passthrough, reports=reports)
    env = envelope_mod.MessageEnvelope.from_message(message, refs)
    _atomic_write(args.out, envelope_mod.write_envelope(env))
    _report_stats(args, reports, "encrypt")
    passed = f" + {len(env.passthrough)} passthrough" if env.passthrough else ""
    print(f"encrypted {env.length} characters{passed} "
          f"({env.key_payload_bits} key bits) to {args.out}")
    return 0


def _cmd_decrypt(args) -> int:
    config = _load_circuit(args.circuit, args)
    alphabet = _resolve_alphabet(args.alphabet)
    env = envelope_mod.read_envelope(Path(args.infile).read_bytes())
    message, refs = env.to_message()
    reports = []
    text = decrypt_text(message, refs, config, alphabet, _strategy(args), rng=args.seed,
                        reports=reports)
    _atomic_write(args.out, text.encode("utf-8"))
    _report_stats(args, reports, "decrypt")
    print(f"decrypted {len(text)} characters to {args.out}")
    return 0


def _cmd_shred(args) -> int:
    config = _load_circuit(args.circuit, args)
    alphabet = _resolve_alphabet(args.alphabet)
    text = _read_text(args.infile)
    message, refs = shred_text(text, config, alphabet, rng=args.seed)
    env = envelope_mod.MessageEnvelope.from_message(message, refs)
    _atomic_write(args.out, envelope_mod.write_envelope(env))
    print(f"shredded {env.length} characters to {args.out} (not recoverable)")
    return 0


def _cmd_send(args) -> int:
    env = envelope_mod.read_envelope(Path(args.infile).read_bytes())
    host, _, port = args.to.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"--to expects HOST:PORT, got {args.to!r}")
    envelope_mod.send_envelope(env, host, int(port), timeout=args.timeout)
    print(f"sent {env.length} characters to {args.to}")
    return 0


def _cmd_recv(args) -> int:
    with envelope_mod.EnvelopeListener(args.listen, args.host) as listener:
        print(f"listening on {args.host}:{listener.port}", file=sys.stderr, flush=True)
        env = listener.accept_one(timeout=args.timeout)
    _atomic_write(args.out, envelope_mod.write_envelope(env))
    print(f"received {env.length} characters into {args.out}")
    return 0


def _cmd_password_gen(args) -> int:
    print(generate_password(args.length, _parse_classes(args.classes), rng=args.seed))
    return 0


def _cmd_password_check(args) -> int:
    profile = classify_password(args.password)
    required = _parse_classes(args.classes)
    print(f"class1(special)={'yes' if profile.class1 else 'no'} "
          f"class2(digit)={'yes' if profile.class2 else 'no'} "
          f"class3(mixed-case)={'yes' if profile.class3 else 'no'}")
    if not profile.satisfies(required):
        print("requirement not met", file=sys.stderr)
        return 2
    return 0


def _cmd_bench(args) -> int:
    strategies = []
    for name in args.strategy.split(","):
        name = name.strip()
        if not name:
            continue
        if name not in _STRATEGIES:
            raise ValueError(f"unknown strategy {name!r}")
        strategies.append(SearchStrategy(_STRATEGIES[name], args.budget))
    kinds = _parse_kinds(args.gates)
    labels = [t.strip() for t in args.texts.split(",") if t.strip()]
    cases = [bench_mod.BenchCase(label, kind, bits, strategy, args.trials)
             for kind in kinds
             for label in labels
             for bits in _parse_bits(args.bits)
             for strategy in strategies]
    rows = bench_mod.run_bench(cases, rng=args.seed, allow_large=args.allow_large,
                               parallel=args.parallel)
    csv_text = bench_mod.write_csv(rows)
    if args.csv:
        _atomic_write(args.csv, csv_text.encode("utf-8"))
        print(f"wrote {len(rows)} rows to {args.csv}")
    else:
        sys.stdout.write(csv_text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
