"""Schedule checking against an input circuit and a device.

A schedule asserts that gate j runs at cycle t_j on physical qubits x_j,
starting from an initial logical-to-physical mapping that inserted SWAP
gates may permute over time. Validity means, in order of checking:

1. every two-qubit placement sits on a device edge;
2. no two gates share a (cycle, qubit) slot;
3. replaying cycles in ascending order, every non-SWAP gate pulled back
   through the current mapping matches the head of each of its logical
   operands' pending-gate queues (labels are opaque; matching is by arity
   and operand set), which certifies both the injection into the input
   gate list and the dependency order;
4. no input gate is left pending at the end.

The first failed check is reported with its gate index; schedules on
unknown qubits or against a mismatched sidecar are hard errors instead.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .circuits import Circuit
from .devices import DeviceGraph
from .generator import SolutionSidecar

VIOLATION_KINDS = (
    "two-qubit-not-on-edge",
    "slot-conflict",
    "dependency-order",
    "unexecuted-gates",
)


class VerifyInconsistency(RuntimeError):
    """A verified depth beat the recorded optimum: someone has a bug."""


@dataclass(frozen=True)
class Mapping:
    """Injective logical -> physical assignment; index is the logical qubit."""

    to_physical: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "to_physical", tuple(self.to_physical))
        if len(set(self.to_physical)) != len(self.to_physical):
            raise ValueError(f"mapping is not injective: {self.to_physical}")
        if any(p < 0 for p in self.to_physical):
            raise ValueError(f"negative physical qubit in mapping {self.to_physical}")

    @classmethod
    def from_dict(cls, assignment: dict[int, int]) -> Mapping:
        if sorted(assignment) != list(range(len(assignment))):
            raise ValueError(
                f"mapping must cover logical qubits 0..{len(assignment) - 1}"
            )
        return cls(tuple(assignment[q] for q in range(len(assignment))))

    def __getitem__(self, q: int) -> int:
        return self.to_physical[q]

    def __len__(self) -> int:
        return len(self.to_physical)


@dataclass(frozen=True)
class ScheduledGate:
    cycle: int
    label: str
    qubits: tuple[int, ...]
    is_swap: bool = False

    def __post_init__(self) -> None:
        if self.cycle < 1:
            raise ValueError(f"cycles are 1-based, got {self.cycle}")
        if len(self.qubits) not in (1, 2) or len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"bad operand tuple {self.qubits}")
        if self.is_swap and len(self.qubits) != 2:
            raise ValueError("SWAP needs two operands")
        object.__setattr__(self, "qubits", tuple(self.qubits))


@dataclass(frozen=True)
class ScheduledCircuit:
    device: DeviceGraph
    mapping: Mapping
    gates: tuple[ScheduledGate, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))
        n = self.device.num_qubits
        for p in self.mapping.to_physical:
            if p >= n:
                raise ValueError(f"mapping target p{p} outside device of size {n}")
        for i, gate in enumerate(self.gates):
            for p in gate.qubits:
                if p >= n:
                    raise ValueError(
                        f"scheduled gate {i} references p{p} outside device of size {n}"
                    )

    def depth(self) -> int:
        return max((g.cycle for g in self.gates), default=0)


@dataclass(frozen=True)
class Violation:
    kind: str
    gate_index: int  # index into the schedule's gate list; -1 for end-of-replay
    reason: str


@dataclass(frozen=True)
class VerifyReport:
    valid: bool
    depth: int
    inserted_swap_count: int
    extra_gate_count: int
    depth_ratio: Fraction | None
    violation: Violation | None


@dataclass(frozen=True)
class Infeasible:
    """asap_schedule result when the fixed mapping cannot run the circuit."""

    gate_index: int
    reason: str


def _detect_cx_swap_triples(sc: ScheduledCircuit) -> dict[int, int]:
    """Indices of gates forming back-to-back CX triples equivalent to SWAPs.

    Returns {gate_index: closing_cycle} role markers: parts map to the cycle
    after which the transposition applies. A triple is three consecutive
    cycles on one edge with alternating orientation; runs longer than three
    are consumed greedily from the front.
    """
    by_pair: dict[tuple[int, int], list[int]] = {}
    for i, gate in enumerate(sc.gates):
        if len(gate.qubits) == 2 and not gate.is_swap:
            pair = (min(gate.qubits), max(gate.qubits))
            by_pair.setdefault(pair, []).append(i)
    roles: dict[int, int] = {}
    for indices in by_pair.values():
        indices.sort(key=lambda i: sc.gates[i].cycle)
        k = 0
        while k + 2 < len(indices):
            a, b, c = indices[k], indices[k + 1], indices[k + 2]
            ga, gb, gc = sc.gates[a], sc.gates[b], sc.gates[c]
            if (
                gb.cycle == ga.cycle + 1
                and gc.cycle == ga.cycle + 2
                and gb.qubits == ga.qubits[::-1]
                and gc.qubits == ga.qubits
            ):
                roles[a] = roles[b] = roles[c] = gc.cycle
                k += 3
            else:
                k += 1
    return roles


def verify(
    sc: ScheduledCircuit,
    circuit: Circuit,
    sidecar: SolutionSidecar | None = None,
    detect_cx_swaps: bool = False,
) -> VerifyReport:
    """Check a schedule against its input circuit.

    With detect_cx_swaps, alternating CX triples on one edge are treated as
    inserted SWAPs rather than matched against the input; leave it off
    unless the producing tool is known to decompose its SWAPs, because a
    misread triple would silently change what is being verified.

    Passing the benchmark's sidecar adds the depth ratio to the report; a
    valid schedule beating the recorded optimal depth raises
    VerifyInconsistency.
    """
    n_logical = circuit.num_qubits
    if n_logical > sc.device.num_qubits:
        raise ValueError(
            f"{n_logical} logical qubits cannot map into "
            f"{sc.device.num_qubits} physical qubits"
        )
    if len(sc.mapping) != n_logical:
        raise ValueError(
            f"mapping covers {len(sc.mapping)} logical qubits, circuit has {n_logical}"
        )
    if sidecar is not None:
        if sidecar.optimal_gate_count != len(circuit.gates):
            raise ValueError(
                f"sidecar pairs with a {sidecar.optimal_gate_count}-gate benchmark, "
                f"this circuit has {len(circuit.gates)} gates"
            )
        if sidecar.spec.device.name != sc.device.name:
            raise ValueError(
                f"sidecar was generated for {sidecar.spec.device.name}, "
                f"schedule targets {sc.device.name}"
            )

    swap_roles = _detect_cx_swap_triples(sc) if detect_cx_swaps else {}
    depth = sc.depth()
    swap_count = sum(1 for g in sc.gates if g.is_swap) + len(swap_roles) // 3
    extra = len(sc.gates) - len(circuit.gates)

    def report(violation: Violation | None) -> VerifyReport:
        ratio = None
        if violation is None and sidecar is not None:
            ratio = depth_ratio(depth, sidecar)
        return VerifyReport(
            valid=violation is None,
            depth=depth,
            inserted_swap_count=swap_count,
            extra_gate_count=extra,
            depth_ratio=ratio,
            violation=violation,
        )

    # 1: two-qubit placements must be device edges
    for i, gate in enumerate(sc.gates):
        if len(gate.qubits) == 2 and not sc.device.has_edge(*gate.qubits):
            return report(
                Violation(
                    "two-qubit-not-on-edge",
                    i,
                    f"({gate.qubits[0]}, {gate.qubits[1]}) is not an edge "
                    f"of {sc.device.name}",
                )
            )

    # 2: one gate per (cycle, qubit) slot
    occupied: set[tuple[int, int]] = set()
    for i, gate in enumerate(sc.gates):
        for p in gate.qubits:
            slot = (gate.cycle, p)
            if slot in occupied:
                return report(
                    Violation(
                        "slot-conflict",
                        i,
                        f"qubit p{p} is used twice in cycle {gate.cycle}",
                    )
                )
            occupied.add(slot)

    # 3: replay cycles in order, matching pulled-back gates against
    # per-qubit pending queues and applying SWAP transpositions
    queues: list[list[int]] = [[] for _ in range(n_logical)]
    for j, gate in enumerate(circuit.gates):
        for q in gate.qubits:
            queues[q].append(j)
    heads = [0] * n_logical
    inverse: dict[int, int] = {p: q for q, p in enumerate(sc.mapping.to_physical)}

    order = sorted(range(len(sc.gates)), key=lambda i: sc.gates[i].cycle)
    pending_swaps: list[tuple[int, int]] = []
    current_cycle = 0

    def head_of(q: int) -> int | None:
        return queues[q][heads[q]] if heads[q] < len(queues[q]) else None

    for i in order:
        gate = sc.gates[i]
        if gate.cycle != current_cycle:
            for a, b in pending_swaps:
                qa, qb = inverse.get(a), inverse.get(b)
                if qb is None:
                    inverse.pop(a, None)
                else:
                    inverse[a] = qb
                if qa is None:
                    inverse.pop(b, None)
                else:
                    inverse[b] = qa
            pending_swaps = []
            current_cycle = gate.cycle
        if gate.is_swap:
            pending_swaps.append((gate.qubits[0], gate.qubits[1]))
            continue
        if i in swap_roles:
            # the triple permutes the mapping once, after its closing part
            if swap_roles[i] == gate.cycle:
                pending_swaps.append((gate.qubits[0], gate.qubits[1]))
            continue
        logical = []
        for p in gate.qubits:
            q = inverse.get(p)
            if q is None:
                return report(
                    Violation(
                        "dependency-order",
                        i,
                        f"gate at cycle {gate.cycle} touches p{p}, which holds "
                        f"no logical qubit",
                    )
                )
            logical.append(q)
        expected = {head_of(q) for q in logical}
        if None in expected or len(expected) != 1:
            return report(
                Violation(
                    "dependency-order",
                    i,
                    f"cycle {gate.cycle}: pulled-back operands {sorted(logical)} "
                    f"do not point at one pending input gate",
                )
            )
        j = expected.pop()
        assert j is not None
        if set(circuit.gates[j].qubits) != set(logical):
            return report(
                Violation(
                    "dependency-order",
                    i,
                    f"cycle {gate.cycle}: pulled-back gate on {sorted(logical)} "
                    f"does not match pending input gate {j} "
                    f"on {sorted(circuit.gates[j].qubits)}",
                )
            )
        for q in logical:
            heads[q] += 1

    # 4: nothing may be left pending
    missing = sorted(
        {j for q in range(n_logical) for j in queues[q][heads[q]:]}
    )
    if missing:
        j = missing[0]
        return report(
            Violation(
                "unexecuted-gates",
                -1,
                f"{len(missing)} input gates never executed "
                f"(first: gate {j} {circuit.gates[j].label} "
                f"on {circuit.gates[j].qubits})",
            )
        )
    return report(None)


def depth_ratio(depth: int, sidecar: SolutionSidecar) -> Fraction:
    """Achieved depth over the benchmark's hidden optimal depth.

    A ratio below 1 is impossible for a correct generator and verifier, so
    it raises instead of returning.
    """
    ratio = Fraction(depth, sidecar.optimal_depth)
    if ratio < 1:
        raise VerifyInconsistency(
            f"verified depth {depth} beats the recorded optimum "
            f"{sidecar.optimal_depth}"
        )
    return ratio


def asap_schedule(
    circuit: Circuit, mapping: Mapping, device: DeviceGraph
) -> ScheduledCircuit | Infeasible:
    """Schedule under a fixed mapping, each gate as early as dependencies
    allow. Returns Infeasible (a normal result, not an error) naming the
    first gate whose operands are not adjacent."""
    if len(mapping) != circuit.num_qubits:
        raise ValueError(
            f"mapping covers {len(mapping)} logical qubits, "
            f"circuit has {circuit.num_qubits}"
        )
    for p in mapping.to_physical:
        if p >= device.num_qubits:
            raise ValueError(f"mapping target p{p} outside device of size {device.num_qubits}")
    for i, gate in enumerate(circuit.gates):
        if len(gate.qubits) == 2:
            pa, pb = mapping[gate.qubits[0]], mapping[gate.qubits[1]]
            if not device.has_edge(pa, pb):
                return Infeasible(
                    i,
                    f"gate {i} ({gate.label}) needs edge ({pa}, {pb}), "
                    f"which {device.name} lacks",
                )
    # with the mapping fixed, per-qubit readiness is the only constraint
    ready = [0] * circuit.num_qubits
    scheduled = []
    for gate in circuit.gates:
        cycle = 1 + max(ready[q] for q in gate.qubits)
        for q in gate.qubits:
            ready[q] = cycle
        scheduled.append(
            ScheduledGate(cycle, gate.label, tuple(mapping[q] for q in gate.qubits))
        )
    return ScheduledCircuit(device, mapping, tuple(scheduled))


def swap_depth_accounting(sc: ScheduledCircuit) -> ScheduledCircuit:
    """Expand each SWAP into three alternating CX gates and re-pack times.

    Gates keep their per-qubit order and are re-timed as early as their
    physical operands allow, so a SWAP on the critical path stretches the
    depth by exactly two cycles while one with slack may be absorbed. The
    result is the depth metric comparable across tools that do and do not
    decompose their SWAPs.
    """
    ready = [0] * sc.device.num_qubits

    def emit(label: str, qubits: tuple[int, ...], out: list[ScheduledGate]) -> None:
        cycle = 1 + max(ready[p] for p in qubits)
        for p in qubits:
            ready[p] = cycle
        out.append(ScheduledGate(cycle, label, qubits))

    out: list[ScheduledGate] = []
    for i in sorted(range(len(sc.gates)), key=lambda i: (sc.gates[i].cycle, i)):
        gate = sc.gates[i]
        if gate.is_swap:
            a, b = gate.qubits
            emit("cx", (a, b), out)
            emit("cx", (b, a), out)
            emit("cx", (a, b), out)
        else:
            emit(gate.label, gate.qubits, out)
    return ScheduledCircuit(sc.device, sc.mapping, tuple(out))


def schedule_from_sidecar(sidecar: SolutionSidecar) -> ScheduledCircuit:
    """The hidden solution as a runnable schedule: undo the scramble and
    place gate i at its recorded cycle."""
    n = sidecar.spec.device.num_qubits
    to_physical = [0] * n
    for p, q in enumerate(sidecar.scramble_map):
        to_physical[q] = p
    gates = tuple(
        ScheduledGate(pg.cycle, "x" if len(pg.qubits) == 1 else "cx", pg.qubits)
        for pg in sidecar.placed_gates
    )
    return ScheduledCircuit(sidecar.spec.device, Mapping(tuple(to_physical)), gates)


_MAPPING_RE = re.compile(r"^mapping:\s*(.*)$")
_MAPPING_ENTRY_RE = re.compile(r"^q(\d+)\s*=\s*p(\d+)$")
_ROW_RE = re.compile(
    r"^cycle\s+(\d+)\s*:\s*(\S+)\s+p(\d+)(?:\s*,\s*p(\d+))?(\s+swap)?$"
)


def emit_schedule(sc: ScheduledCircuit) -> str:
    """Serialize to the exchange format parse_schedule reads."""
    entries = ", ".join(
        f"q{q}=p{p}" for q, p in enumerate(sc.mapping.to_physical)
    )
    lines = [f"mapping: {entries}"]
    for gate in sc.gates:
        ops = ",".join(f"p{p}" for p in gate.qubits)
        suffix = " swap" if gate.is_swap else ""
        lines.append(f"cycle {gate.cycle}: {gate.label} {ops}{suffix}")
    return "\n".join(lines) + "\n"


def parse_schedule(text: str, device: DeviceGraph) -> ScheduledCircuit:
    """Parse the exchange format: a mapping header then one gate per row."""
    mapping: Mapping | None = None
    gates: list[ScheduledGate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if mapping is None:
            m = _MAPPING_RE.match(line)
            if not m:
                raise ValueError(f"line {lineno}: expected 'mapping: q0=p..., ...'")
            assignment: dict[int, int] = {}
            for entry in m.group(1).split(","):
                em = _MAPPING_ENTRY_RE.match(entry.strip())
                if not em:
                    raise ValueError(f"line {lineno}: bad mapping entry {entry.strip()!r}")
                q, p = int(em.group(1)), int(em.group(2))
                if q in assignment:
                    raise ValueError(f"line {lineno}: q{q} mapped twice")
                assignment[q] = p
            try:
                mapping = Mapping.from_dict(assignment)
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
            continue
        m = _ROW_RE.match(line)
        if not m:
            raise ValueError(f"line {lineno}: cannot parse schedule row {line!r}")
        cycle, label = int(m.group(1)), m.group(2)
        qubits = (int(m.group(3)),) if m.group(4) is None else (
            int(m.group(3)),
            int(m.group(4)),
        )
        try:
            gates.append(ScheduledGate(cycle, label, qubits, is_swap=bool(m.group(5))))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if mapping is None:
        raise ValueError("schedule is missing its mapping header")
    return ScheduledCircuit(device, mapping, tuple(gates))
