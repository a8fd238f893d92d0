"""Gate-list circuits, gate densities, and dependency structure.

Gates are opaque labels over one or two qubit operands; only operands drive
dependencies and densities. The file format is the OPENQASM 2.0 subset with
a single quantum register.

Contains:
- Gate, Circuit: immutable gate-list model
- GateDensity: exact-decimal density pair with the gate-count formulas
- DependencyProfile / dependency_profile: per-gate chain depths
- extract_density: measured densities of a circuit
- parse_qasm / emit_qasm: file round trip
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Gate:
    """One opaque gate: a label plus 1 or 2 distinct qubit operands."""

    label: str
    qubits: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.label:
            raise ValueError("gate label must be non-empty")
        if len(self.qubits) not in (1, 2):
            raise ValueError(f"gate takes 1 or 2 operands, got {len(self.qubits)}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"repeated operand in {self.label} {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"negative qubit index in {self.qubits}")
        object.__setattr__(self, "qubits", tuple(self.qubits))


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...]

    def __post_init__(self) -> None:
        if self.num_qubits < 1:
            raise ValueError(f"circuit needs at least one qubit, got {self.num_qubits}")
        object.__setattr__(self, "gates", tuple(self.gates))
        for i, gate in enumerate(self.gates):
            for q in gate.qubits:
                if q >= self.num_qubits:
                    raise ValueError(
                        f"gate {i} ({gate.label}) references qubit {q} "
                        f"outside register of size {self.num_qubits}"
                    )

    def two_qubit_pairs(self) -> set[tuple[int, int]]:
        """Distinct unordered operand pairs of the two-qubit gates."""
        return {
            (min(g.qubits), max(g.qubits)) for g in self.gates if len(g.qubits) == 2
        }


def _as_fraction(value: object) -> Fraction:
    # floats go through repr so 0.4 means the decimal 2/5, not the binary
    # float nearest it; the distinction changes ceil() at exact boundaries
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a density")


@dataclass(frozen=True)
class GateDensity:
    """Single- and two-qubit gate densities, held as exact rationals."""

    d1: Fraction
    d2: Fraction

    def __post_init__(self) -> None:
        d1 = _as_fraction(self.d1)
        d2 = _as_fraction(self.d2)
        if not (0 <= d1 <= 1 and 0 <= d2 <= 1):
            raise ValueError(f"densities must lie in [0, 1], got ({d1}, {d2})")
        if d1 + d2 > 1:
            raise ValueError(f"d1 + d2 must not exceed 1, got {d1} + {d2}")
        object.__setattr__(self, "d1", d1)
        object.__setattr__(self, "d2", d2)

    def gate_counts(self, num_qubits: int, depth: int) -> tuple[int, int]:
        """Target (M1, M2) for a device of num_qubits at the given depth."""
        m1 = math.ceil(self.d1 * num_qubits * depth)
        m2 = math.ceil(self.d2 * num_qubits * depth / 2)
        return m1, m2

    def __str__(self) -> str:
        return f"({float(self.d1):g}, {float(self.d2):g})"


@dataclass(frozen=True)
class DependencyProfile:
    """Chain depth of every gate; longest_chain is the circuit depth bound."""

    per_gate_depth: tuple[int, ...]
    longest_chain: int


def dependency_profile(c: Circuit) -> DependencyProfile:
    """Depth of each gate's longest dependency chain, in one forward pass.

    Gate j depends on the latest earlier gate sharing an operand, so its
    chain depth is one more than the max over its operands' last depths.
    """
    last = [0] * c.num_qubits
    depths: list[int] = []
    for gate in c.gates:
        d = 1 + max(last[q] for q in gate.qubits)
        for q in gate.qubits:
            last[q] = d
        depths.append(d)
    return DependencyProfile(tuple(depths), max(depths, default=0))


def extract_density(c: Circuit) -> GateDensity:
    """Measured (d1, d2) of a circuit: gate counts over qubits x chain depth."""
    if not c.gates:
        raise ValueError("density of an empty circuit is undefined")
    m1 = sum(1 for g in c.gates if len(g.qubits) == 1)
    m2 = len(c.gates) - m1
    volume = c.num_qubits * dependency_profile(c).longest_chain
    return GateDensity(Fraction(m1, volume), Fraction(2 * m2, volume))


_OPENQASM_RE = re.compile(r"^OPENQASM\s+(\S+)$")
_INCLUDE_RE = re.compile(r'^include\s+"[^"]*"$')
_REG_RE = re.compile(r"^(qreg|creg)\s+([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(\d+)\s*\]$")
_GATE_RE = re.compile(
    r"^([A-Za-z_][A-Za-z0-9_]*)\s*(?:\(([^()]*)\))?\s+(.+)$"
)
_OPERAND_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(\d+)\s*\]$")


def parse_qasm(text: str) -> Circuit:
    """Parse the supported OPENQASM 2.0 subset into a Circuit.

    One quantum register; creg and measure are ignored; barrier and 3+
    operand gates are rejected; parameters stay inside the gate label.
    Errors carry the 1-based source line.
    """
    statements: list[tuple[str, int]] = []
    buf = ""
    buf_line = 1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0]
        if not buf.strip():
            buf_line = lineno
        buf += line + " "
        while ";" in buf:
            head, buf = buf.split(";", 1)
            if head.strip():
                statements.append((head.strip(), buf_line))
            buf_line = lineno
    if buf.strip():
        raise ValueError(f"line {buf_line}: statement missing terminating ';'")

    qreg: tuple[str, int] | None = None
    cregs: set[str] = set()
    gates: list[Gate] = []

    def err(lineno: int, msg: str) -> ValueError:
        return ValueError(f"line {lineno}: {msg}")

    for index, (stmt, lineno) in enumerate(statements):
        m = _OPENQASM_RE.match(stmt)
        if m:
            if index != 0:
                raise err(lineno, "OPENQASM header must be the first statement")
            if m.group(1) != "2.0":
                raise err(lineno, f"unsupported OPENQASM version {m.group(1)}")
            continue
        if _INCLUDE_RE.match(stmt):
            continue
        m = _REG_RE.match(stmt)
        if m:
            kind, name, size = m.group(1), m.group(2), int(m.group(3))
            if kind == "creg":
                cregs.add(name)
                continue
            if qreg is not None:
                raise err(lineno, "only one quantum register is supported")
            if size < 1:
                raise err(lineno, f"register {name} must have positive size")
            qreg = (name, size)
            continue
        first = stmt.split(None, 1)[0]
        if first == "measure":
            continue
        if first == "barrier":
            raise err(lineno, "barrier statements are not supported")
        if first in ("gate", "opaque", "if"):
            raise err(lineno, f"{first} statements are not supported")
        m = _GATE_RE.match(stmt)
        if not m:
            raise err(lineno, f"cannot parse statement {stmt!r}")
        name, params, ops = m.group(1), m.group(2), m.group(3)
        if qreg is None:
            raise err(lineno, "gate before any qreg declaration")
        operands: list[int] = []
        for op in ops.split(","):
            om = _OPERAND_RE.match(op.strip())
            if not om:
                raise err(lineno, f"bad operand {op.strip()!r} (expected reg[index])")
            reg, idx = om.group(1), int(om.group(2))
            if reg != qreg[0]:
                if reg in cregs:
                    raise err(lineno, f"classical register {reg!r} used as gate operand")
                raise err(lineno, f"reference to undeclared register {reg!r}")
            if idx >= qreg[1]:
                raise err(lineno, f"index {idx} out of range for {reg}[{qreg[1]}]")
            operands.append(idx)
        if len(operands) > 2:
            raise err(lineno, f"gates with {len(operands)} operands are not supported")
        label = name.lower()
        if params is not None:
            label += f"({params.strip().lower()})"
        try:
            gates.append(Gate(label, tuple(operands)))
        except ValueError as exc:
            raise err(lineno, str(exc)) from None

    if qreg is None:
        raise ValueError("no quantum register declared")
    return Circuit(qreg[1], tuple(gates))


def emit_qasm(c: Circuit) -> str:
    """Serialize a Circuit; parse_qasm(emit_qasm(c)) == c."""
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{c.num_qubits}];"]
    for gate in c.gates:
        ops = ",".join(f"q[{q}]" for q in gate.qubits)
        lines.append(f"{gate.label} {ops};")
    return "\n".join(lines) + "\n"
