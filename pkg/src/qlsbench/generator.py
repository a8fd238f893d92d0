"""Benchmark circuits with a known optimal schedule baked in.

Construction runs in three phases over a depth-T grid of (cycle, qubit)
slots on the target device:

1. backbone: one gate per cycle, each sharing a physical qubit with its
   predecessor, so a dependency chain of exactly T exists;
2. sprinkle: the remaining gates drop into free slots (two-qubit gates onto
   free device edges), which can never lengthen the chain;
3. scramble: a random relabeling tau hides the placement, and gates are
   listed by (cycle, lowest logical operand).

Undoing tau therefore schedules every gate at its recorded cycle with zero
inserted SWAPs: the benchmark's optimal depth is T by construction.

Randomness: all draws come from stdlib Mersenne streams seeded by
sha256("qlsbench:<seed>:<phase>:<attempt>"), one independent stream per
phase and per whole-attempt retry. Each placement makes at most two draws:
an arity coin (only when both arities are feasible and not quota-forced)
followed by one index draw over the sorted feasible continuations; the
sprinkle index covers the feasible (cycle, slot) grid row-major.
"""
from __future__ import annotations

import hashlib
import random
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .circuits import Circuit, Gate, GateDensity
from .devices import DeviceGraph, matching_bound, resolve_device

DENSITY_PRESETS = {
    # measured on the 15-gate controlled-controlled-not decomposition
    "tfl": GateDensity("0.27", "0.36"),
    # measured on random-sampling experiment circuits
    "qse": GateDensity("0.51", "0.4"),
}


class AdmissibilityError(ValueError):
    """Target parameters cannot yield a depth-T benchmark on this device."""

    def __init__(self, message: str, predicates: tuple[str, ...]):
        super().__init__(message)
        self.predicates = predicates


class GenerationError(RuntimeError):
    """All retry attempts dead-ended; carries the phase that failed last."""

    def __init__(self, message: str, phase: str, attempts: int):
        super().__init__(message)
        self.phase = phase
        self.attempts = attempts


class _DeadEnd(Exception):
    def __init__(self, phase: str):
        self.phase = phase


@dataclass(frozen=True)
class GenSpec:
    """One generation request: device, target depth, densities, seed."""

    device: DeviceGraph
    depth: int
    density: GateDensity
    seed: int
    retry_limit: int = 64

    def __post_init__(self) -> None:
        if self.depth < 1:
            raise ValueError(f"depth must be positive, got {self.depth}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned value, got {self.seed}")
        if self.retry_limit < 1:
            raise ValueError(f"retry_limit must be positive, got {self.retry_limit}")


@dataclass(frozen=True)
class PlacedGate:
    """A gate pinned to its cycle and physical qubit(s), pre-scramble."""

    cycle: int
    qubits: tuple[int, ...]


@dataclass(frozen=True)
class SolutionSidecar:
    """The hidden solution shipped next to a benchmark.

    scramble_map[p] is the logical name given to physical qubit p, so its
    inverse is an initial mapping that schedules gate i of the benchmark at
    placed_gates[i].cycle without any SWAPs.
    """

    scramble_map: tuple[int, ...]
    optimal_depth: int
    optimal_gate_count: int
    placed_gates: tuple[PlacedGate, ...]
    spec: GenSpec

    def initial_mapping(self) -> dict[int, int]:
        """logical -> physical map undoing the scramble."""
        return {q: p for p, q in enumerate(self.scramble_map)}


def _rng(seed: int, phase: str, attempt: int) -> random.Random:
    digest = hashlib.sha256(f"qlsbench:{seed}:{phase}:{attempt}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def check_admissible(spec: GenSpec) -> tuple[int, int]:
    """Target gate counts (M1, M2), or AdmissibilityError naming every
    violated predicate."""
    n, t = spec.device.num_qubits, spec.depth
    m1, m2 = spec.density.gate_counts(n, t)
    u = matching_bound(spec.device)
    problems = []
    predicates = []
    if m1 + m2 < t:
        problems.append(f"M1+M2 = {m1 + m2} cannot fill a depth-{t} dependency chain")
        predicates.append("chain")
    if m1 + 2 * m2 > n * t:
        problems.append(f"M1+2*M2 = {m1 + 2 * m2} exceeds the {n * t} qubit-cycle slots")
        predicates.append("capacity")
    if m2 > u.value * t:
        problems.append(
            f"M2 = {m2} exceeds the guaranteed per-cycle matching capacity "
            f"{u.value}*{t}"
        )
        predicates.append("matching")
    if problems:
        raise AdmissibilityError("; ".join(problems), tuple(predicates))
    return m1, m2


def _backbone(
    spec: GenSpec, m1: int, m2: int, attempt: int
) -> tuple[list[tuple[int, tuple[int, ...]]], int, int]:
    rng = _rng(spec.seed, "backbone", attempt)
    edges = spec.device.sorted_edges()
    t = spec.depth
    placed: list[tuple[int, tuple[int, ...]]] = []
    used1 = used2 = 0
    prev: tuple[int, ...] | None = None
    for i in range(1, t + 1):
        if prev is None:
            cands1: list[int] = list(range(spec.device.num_qubits))
            cands2 = edges
        else:
            cands1 = sorted(prev)
            cands2 = [e for e in edges if e[0] in prev or e[1] in prev]
        can1 = used1 < m1
        can2 = used2 < m2 and bool(cands2)
        remaining_slots = t - i + 1
        if can2 and remaining_slots == m2 - used2:
            arity = 2  # the rest of the chain must absorb the two-qubit quota
        elif can1 and can2:
            arity = 2 if rng.random() < 0.5 else 1
        elif can1:
            arity = 1
        elif can2:
            arity = 2
        else:
            raise _DeadEnd("backbone")
        if arity == 1:
            node = cands1[rng.randrange(len(cands1))]
            prev = (node,)
            used1 += 1
        else:
            edge = cands2[rng.randrange(len(cands2))]
            prev = edge
            used2 += 1
        placed.append((i, prev))
    return placed, used1, used2


def _sprinkle(
    spec: GenSpec,
    placed: list[tuple[int, tuple[int, ...]]],
    r1: int,
    r2: int,
    attempt: int,
) -> None:
    rng = _rng(spec.seed, "sprinkle", attempt)
    n, t = spec.device.num_qubits, spec.depth
    edges = spec.device.sorted_edges()
    free = np.ones((t, n), dtype=bool)
    for cycle, qubits in placed:
        for p in qubits:
            free[cycle - 1, p] = False
    if edges:
        ea = np.array([a for a, b in edges])
        eb = np.array([b for a, b in edges])
    while r1 + r2 > 0:
        pair_mask = None
        if r2 > 0 and edges:
            pair_mask = free[:, ea] & free[:, eb]
        can1 = r1 > 0 and bool(free.any())
        can2 = pair_mask is not None and bool(pair_mask.any())
        if can1 and can2:
            arity = 2 if rng.random() < 0.5 else 1
        elif can1:
            arity = 1
        elif can2:
            arity = 2
        else:
            raise _DeadEnd("sprinkle")
        if arity == 1:
            slots = np.flatnonzero(free.ravel())
            cycle0, p = divmod(int(slots[rng.randrange(len(slots))]), n)
            free[cycle0, p] = False
            placed.append((cycle0 + 1, (p,)))
            r1 -= 1
        else:
            slots = np.flatnonzero(pair_mask.ravel())
            cycle0, ei = divmod(int(slots[rng.randrange(len(slots))]), len(edges))
            a, b = edges[ei]
            free[cycle0, a] = False
            free[cycle0, b] = False
            placed.append((cycle0 + 1, (a, b)))
            r2 -= 1


def generate(spec: GenSpec) -> tuple[Circuit, SolutionSidecar]:
    """Build one benchmark plus its hidden solution.

    Raises AdmissibilityError before drawing anything if the targets cannot
    fit, and GenerationError if every retry attempt dead-ends.
    """
    m1, m2 = check_admissible(spec)
    n = spec.device.num_qubits
    last_phase = "backbone"
    for attempt in range(spec.retry_limit):
        try:
            placed, used1, used2 = _backbone(spec, m1, m2, attempt)
            _sprinkle(spec, placed, m1 - used1, m2 - used2, attempt)
        except _DeadEnd as dead:
            last_phase = dead.phase
            continue
        tau = list(range(n))
        _rng(spec.seed, "scramble", attempt).shuffle(tau)
        records = [
            (cycle, qubits, tuple(tau[p] for p in qubits))
            for cycle, qubits in placed
        ]
        # lowest logical operand breaks ties inside a cycle; a qubit
        # appears at most once per cycle, so the key is unique
        records.sort(key=lambda r: (r[0], min(r[2])))
        gates = tuple(
            Gate("x" if len(logical) == 1 else "cx", logical)
            for _, _, logical in records
        )
        sidecar = SolutionSidecar(
            scramble_map=tuple(tau),
            optimal_depth=spec.depth,
            optimal_gate_count=m1 + m2,
            placed_gates=tuple(PlacedGate(c, q) for c, q, _ in records),
            spec=spec,
        )
        return Circuit(n, gates), sidecar
    raise GenerationError(
        f"no placement found after {spec.retry_limit} attempts "
        f"(last dead end in the {last_phase} phase)",
        last_phase,
        spec.retry_limit,
    )


def _fraction_str(f: Fraction) -> str:
    """Exact decimal rendering when one exists, else num/den."""
    for k in range(0, 30):
        scaled = f * 10**k
        if scaled.denominator == 1:
            if k == 0:
                return str(scaled.numerator)
            digits = str(scaled.numerator).rjust(k + 1, "0")
            return f"{digits[:-k]}.{digits[-k:]}"
    return f"{f.numerator}/{f.denominator}"


def benchmark_filename(spec: GenSpec) -> str:
    d1 = _fraction_str(spec.density.d1).replace("/", "d")
    d2 = _fraction_str(spec.density.d2).replace("/", "d")
    return f"{spec.device.name}_{spec.depth}cyc_{d1}_{d2}_{spec.seed}.qasm"


_GATE_ROW_RE = re.compile(r"^\((\d+),\s*(\d+)(?:,\s*(\d+))?\)$")


def emit_sidecar(sidecar: SolutionSidecar) -> str:
    """Serialize the solution as diffable key-value text."""
    spec = sidecar.spec
    lines = [
        f"device: {spec.device.name}",
        f"qubits: {spec.device.num_qubits}",
        f"directed: {'true' if spec.device.directed else 'false'}",
        f"depth: {sidecar.optimal_depth}",
        f"d1: {_fraction_str(spec.density.d1)}",
        f"d2: {_fraction_str(spec.density.d2)}",
        f"seed: {spec.seed}",
        f"retry_limit: {spec.retry_limit}",
        f"tau: {' '.join(str(q) for q in sidecar.scramble_map)}",
        f"gates: {sidecar.optimal_gate_count}",
    ]
    for pg in sidecar.placed_gates:
        lines.append(f"gate: ({pg.cycle}, {', '.join(str(p) for p in pg.qubits)})")
    return "\n".join(lines) + "\n"


def parse_sidecar(text: str, device: DeviceGraph | None = None) -> SolutionSidecar:
    """Rebuild a SolutionSidecar from emit_sidecar text.

    The file stores only the device's name, so pass the device when it is
    not a bundled one or a gridRxC; mismatched name/size/orientation raises.
    """
    fields: dict[str, str] = {}
    rows: list[PlacedGate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition(":")
        key, value = key.strip(), value.strip()
        if not key or not value:
            raise ValueError(f"line {lineno}: expected 'key: value', got {raw!r}")
        if key == "gate":
            m = _GATE_ROW_RE.match(value)
            if not m:
                raise ValueError(f"line {lineno}: bad gate row {value!r}")
            cycle, a, b = int(m.group(1)), int(m.group(2)), m.group(3)
            qubits = (a,) if b is None else (a, int(b))
            rows.append(PlacedGate(cycle, qubits))
        elif key in fields:
            raise ValueError(f"line {lineno}: duplicate field {key!r}")
        else:
            fields[key] = value

    required = ["device", "qubits", "depth", "d1", "d2", "seed", "tau", "gates"]
    missing = [k for k in required if k not in fields]
    if missing:
        raise ValueError(f"sidecar is missing fields: {', '.join(missing)}")

    name = fields["device"]
    n = int(fields["qubits"])
    directed = fields.get("directed", "false") == "true"
    if device is None:
        device = resolve_device(name)
    if device.name != name or device.num_qubits != n or device.directed != directed:
        raise ValueError(
            f"sidecar was generated for device {name!r} ({n} qubits), "
            f"got {device.name!r} ({device.num_qubits} qubits)"
        )
    spec = GenSpec(
        device=device,
        depth=int(fields["depth"]),
        density=GateDensity(Fraction(fields["d1"]), Fraction(fields["d2"])),
        seed=int(fields["seed"]),
        retry_limit=int(fields.get("retry_limit", "64")),
    )
    tau = tuple(int(tok) for tok in fields["tau"].split())
    if sorted(tau) != list(range(n)):
        raise ValueError(f"tau is not a permutation of 0..{n - 1}")
    count = int(fields["gates"])
    if count != len(rows):
        raise ValueError(f"sidecar announces {count} gates but lists {len(rows)}")
    depth = spec.depth
    for pg in rows:
        if not 1 <= pg.cycle <= depth:
            raise ValueError(f"gate row cycle {pg.cycle} outside 1..{depth}")
        for p in pg.qubits:
            if not 0 <= p < n:
                raise ValueError(f"gate row qubit {p} outside device of size {n}")
    return SolutionSidecar(
        scramble_map=tau,
        optimal_depth=depth,
        optimal_gate_count=count,
        placed_gates=tuple(rows),
        spec=spec,
    )
