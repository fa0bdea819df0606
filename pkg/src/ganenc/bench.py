"""Scaling benchmark: iteration counts and wall time versus key width.

NOT cases run the full encrypt/decrypt round trip (every character costs
one key derivation per direction); AND cases shred forward-only. Iteration
counts are deterministic under a fixed seed; wall times are measured but
naturally vary. Uniform search above 24 bits is refused unless explicitly
allowed, since its expected cost doubles per bit.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from ._random import as_generator, draw_u64, substream
from .cipher import PRINTABLE95, decrypt_text, encrypt_text, shred_text
from .circuit import GateKind, random_circuit
from .corpus import TEXTS
from .errors import ConvergenceError
from .gan import SearchStrategy, StrategyKind

UNIFORM_BITS_GUARD = 24
CSV_HEADER = "text_label,text_length,gate,strategy,n_bits,trials,mean_iter,wall_s,converged"


@dataclass(frozen=True)
class BenchCase:
    """One measurement point: a corpus text, gate kind, width, and strategy."""

    text_label: str
    gate_kind: GateKind
    n_bits: int
    strategy: SearchStrategy
    trials: int

    def __post_init__(self):
        if self.text_label not in TEXTS:
            raise ValueError(f"unknown text label {self.text_label!r} "
                             f"(choose from {sorted(TEXTS)})")
        if self.gate_kind not in (GateKind.NOT, GateKind.AND):
            raise ValueError("benchmark circuits are built from NOT or AND gates")
        if not 1 <= self.n_bits <= 64:
            raise ValueError(f"n_bits must be in 1..64, got {self.n_bits}")
        if self.trials < 3:
            raise ValueError(f"trials must be >= 3, got {self.trials}")

    @property
    def text_length(self) -> int:
        return len(TEXTS[self.text_label])

    @property
    def total_key_bits(self) -> int:
        """Per-message key material: one N-bit key per character."""
        return self.text_length * self.n_bits


@dataclass(frozen=True)
class BenchRow:
    case: BenchCase
    mean_iterations_per_key: float
    total_wall_time_s: float
    converged_fraction: float

    def __post_init__(self):
        if not 0.0 <= self.converged_fraction <= 1.0:
            raise ValueError("converged_fraction must be in [0, 1]")


def run_bench(cases, rng=None, *, allow_large: bool = False,
              parallel: bool = False) -> list[BenchRow]:
    """Run every case and return one row per case, in input order.

    Iteration counts are reproducible for a seeded ``rng`` regardless of
    ``parallel``; wall times are not. Pass ``allow_large=True`` to lift the
    24-bit guard on uniform-search cases.
    """
    cases = list(cases)
    if not cases:
        raise ValueError("no benchmark cases given")
    for case in cases:
        if (case.strategy.kind == StrategyKind.UNIFORM_RANDOM
                and case.n_bits > UNIFORM_BITS_GUARD and not allow_large):
            raise ValueError(
                f"uniform search at {case.n_bits} bits exceeds the "
                f"{UNIFORM_BITS_GUARD}-bit guard (expected cost ~2**{case.n_bits} "
                f"evaluations per key); pass allow_large to override")
    master = draw_u64(as_generator(rng))
    jobs = [(case, substream(master, i)) for i, case in enumerate(cases)]
    if parallel and len(jobs) > 1:
        with ThreadPoolExecutor() as pool:
            return list(pool.map(lambda job: _run_case(*job), jobs))
    return [_run_case(case, seed) for case, seed in jobs]


def _run_case(case: BenchCase, case_seed: int) -> BenchRow:
    text = TEXTS[case.text_label]
    reports = []
    started = time.perf_counter()
    for trial in range(case.trials):
        trial_seed = substream(case_seed, trial)
        circuit = random_circuit(case.n_bits, case.n_bits, (case.gate_kind,),
                                 rng=substream(trial_seed, 0))
        try:
            if case.gate_kind == GateKind.NOT:
                message, refs = encrypt_text(text, circuit, PRINTABLE95, case.strategy,
                                             rng=substream(trial_seed, 1), reports=reports)
                decrypt_text(message, refs, circuit, PRINTABLE95, case.strategy,
                             rng=substream(trial_seed, 2), reports=reports)
            else:
                shred_text(text, circuit, PRINTABLE95,
                           rng=substream(trial_seed, 1), reports=reports)
        except ConvergenceError as exc:
            reports.append(exc.report)
    wall = time.perf_counter() - started
    total_iter = sum(r.iterations for r in reports)
    converged = sum(1 for r in reports if r.converged)
    return BenchRow(
        case=case,
        mean_iterations_per_key=total_iter / len(reports),
        total_wall_time_s=wall,
        converged_fraction=converged / len(reports),
    )


def write_csv(rows) -> str:
    """Plot-ready CSV, rows sorted by (gate, text label, width)."""
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to write")
    rows.sort(key=lambda r: (r.case.gate_kind.name, r.case.text_label, r.case.n_bits))
    lines = [CSV_HEADER]
    for row in rows:
        case = row.case
        lines.append(",".join([
            case.text_label,
            str(case.text_length),
            case.gate_kind.name,
            case.strategy.kind.value,
            str(case.n_bits),
            str(case.trials),
            str(row.mean_iterations_per_key),
            str(row.total_wall_time_s),
            str(row.converged_fraction),
        ]))
    return "\n".join(lines) + "\n"
