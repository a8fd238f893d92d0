/**
 * Tool adapters. Each adapter knows how to probe for one layout toolchain,
 * run it on a benchmark file, and hand back the tool's schedule in
 * exchange form plus the raw output it came from. Adapters are looked up
 * by id from the run config; an id nobody registered, or a probe that
 * fails, degrades to skipped rows rather than a harness failure.
 */
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { parseSchedule, type Schedule } from "./exchange.js";
import { primaryVersion, runCommand } from "./primary.js";

export interface ToolProbe {
  available: boolean;
  /** tool version recorded verbatim when available, otherwise the reason */
  detail: string;
}

export interface AdapterContext {
  primary: string;
  device: string;
  timeoutMs: number;
  options: Record<string, unknown>;
}

export interface RawRun {
  rawOutput: string;
  schedule: Schedule;
}

export interface Adapter {
  id: string;
  description: string;
  probe(ctx: AdapterContext): ToolProbe;
  run(benchmark: string, ctx: AdapterContext): RawRun;
}

const registry = new Map<string, Adapter>();

export function registerAdapter(adapter: Adapter): void {
  if (registry.has(adapter.id)) {
    throw new Error(`adapter id ${adapter.id} registered twice`);
  }
  registry.set(adapter.id, adapter);
}

export function resolveAdapter(id: string): Adapter | undefined {
  return registry.get(id);
}

export function adapterIds(): string[] {
  return [...registry.keys()].sort();
}

// ---------------------------------------------------------------------------
// baseline-route: the routing baseline that ships with the benchmark
// package, driven through its command line exactly like a third-party tool
// ---------------------------------------------------------------------------

const baselineRoute: Adapter = {
  id: "baseline-route",
  description: "bundled router (placement plus SWAP insertion) via the qlsbench CLI",
  probe(ctx) {
    const result = runCommand(ctx.primary, ["devices"], 30_000);
    if (result.status !== 0) {
      return { available: false, detail: `${ctx.primary} not runnable: ${result.stderr.trim()}` };
    }
    return { available: true, detail: primaryVersion(ctx.primary) };
  },
  run(benchmark, ctx) {
    const strategy = String(ctx.options["strategy"] ?? "degree-greedy");
    const workDir = mkdtempSync(join(tmpdir(), "baseline-route-"));
    try {
      const out = join(workDir, "routed.sched");
      const result = runCommand(
        ctx.primary,
        ["route", "--circuit", benchmark, "--device", ctx.device,
         "--strategy", strategy, "--out", out],
        ctx.timeoutMs,
      );
      if (result.timedOut) {
        throw new Error(`route timed out after ${ctx.timeoutMs}ms`);
      }
      if (result.status !== 0) {
        throw new Error(`route exited ${result.status}: ${result.stderr.trim()}`);
      }
      const raw = readFileSync(out, "utf8");
      return { rawOutput: raw, schedule: parseSchedule(raw) };
    } finally {
      rmSync(workDir, { recursive: true, force: true });
    }
  },
};

// ---------------------------------------------------------------------------
// Python-based external toolchains. Each adapter probes for its import,
// then runs an embedded driver script that loads the benchmark, invokes
// the tool's layout and routing passes with default settings, and prints
// the result in exchange form (initial layout from the tool's metadata,
// SWAPs marked so normalization can expand them).
// ---------------------------------------------------------------------------

function pythonProbe(module: string): ToolProbe {
  const result = runCommand(
    "python3",
    ["-c", `import ${module}; print(getattr(${module}, "__version__", "unknown"))`],
    30_000,
  );
  if (result.status !== 0) {
    return { available: false, detail: `python module ${module} not installed` };
  }
  return { available: true, detail: `${module} ${result.stdout.trim()}` };
}

function runPythonDriver(
  script: string,
  benchmark: string,
  ctx: AdapterContext,
): RawRun {
  const workDir = mkdtempSync(join(tmpdir(), "tool-driver-"));
  try {
    const driver = join(workDir, "driver.py");
    writeFileSync(driver, script);
    const result = runCommand(
      "python3",
      [driver, benchmark, ctx.device],
      ctx.timeoutMs,
    );
    if (result.timedOut) {
      throw new Error(`tool timed out after ${ctx.timeoutMs}ms`);
    }
    if (result.status !== 0) {
      throw new Error(`tool driver exited ${result.status}: ${result.stderr.trim()}`);
    }
    return { rawOutput: result.stdout, schedule: parseSchedule(result.stdout) };
  } finally {
    rmSync(workDir, { recursive: true, force: true });
  }
}

/** Shared device-file reader for the embedded drivers. */
const READ_DEVICE_PY = `
def read_edges(path):
    edges = []
    with open(path) as handle:
        for line in handle:
            line = line.split("#", 1)[0].strip()
            if not line or line.startswith("device"):
                continue
            a, b = line.split()
            edges.append((int(a), int(b)))
    return edges
`;

export const DENSE_STOCHASTIC_DRIVER = `import sys

from qiskit import QuantumCircuit, transpile
from qiskit.transpiler import CouplingMap
${READ_DEVICE_PY}

def main():
    benchmark, device = sys.argv[1], sys.argv[2]
    edges = read_edges(device)
    coupling = CouplingMap()
    for a, b in edges:
        coupling.add_edge(a, b)
        coupling.add_edge(b, a)
    circuit = QuantumCircuit.from_qasm_file(benchmark)
    routed = transpile(
        circuit,
        coupling_map=coupling,
        layout_method="dense",
        routing_method="stochastic",
        optimization_level=0,
        seed_transpiler=0,
    )
    layout = routed.layout.initial_virtual_layout(filter_ancillas=True)
    entries = []
    for virtual, physical in layout.get_virtual_bits().items():
        entries.append((virtual.index, physical))
    entries.sort()
    print("mapping: " + ", ".join(f"q{q}=p{p}" for q, p in entries))
    busy = {}
    for instruction in routed.data:
        name = instruction.operation.name
        qubits = [routed.find_bit(q).index for q in instruction.qubits]
        if name in ("barrier", "measure"):
            continue
        cycle = 1 + max((busy.get(p, 0) for p in qubits), default=0)
        for p in qubits:
            busy[p] = cycle
        operands = ",".join(f"p{p}" for p in qubits)
        marker = " swap" if name == "swap" else ""
        print(f"cycle {cycle}: {name} {operands}{marker}")

main()
`;

const denseStochastic: Adapter = {
  id: "dense-stochastic",
  description: "densest-subgraph placement plus stochastic SWAP routing (qiskit passes)",
  probe() {
    return pythonProbe("qiskit");
  },
  run(benchmark, ctx) {
    return runPythonDriver(DENSE_STOCHASTIC_DRIVER, benchmark, ctx);
  },
};

export const GRAPH_ROUTE_DRIVER = `import sys

from pytket.architecture import Architecture
from pytket.circuit import OpType
from pytket.passes import RoutingPass
from pytket.placement import GraphPlacement
from pytket.qasm import circuit_from_qasm
${READ_DEVICE_PY}

def main():
    benchmark, device = sys.argv[1], sys.argv[2]
    architecture = Architecture(read_edges(device))
    circuit = circuit_from_qasm(benchmark)
    placement = GraphPlacement(architecture)
    qubit_to_node = placement.get_placement_map(circuit)
    entries = sorted(
        (qubit.index[0], node.index[0]) for qubit, node in qubit_to_node.items()
    )
    placement.place(circuit)
    RoutingPass(architecture).apply(circuit)
    print("mapping: " + ", ".join(f"q{q}=p{p}" for q, p in entries))
    busy = {}
    for command in circuit.get_commands():
        if command.op.type == OpType.Barrier:
            continue
        qubits = [q.index[0] for q in command.qubits]
        cycle = 1 + max((busy.get(p, 0) for p in qubits), default=0)
        for p in qubits:
            busy[p] = cycle
        operands = ",".join(f"p{p}" for p in qubits)
        marker = " swap" if command.op.type == OpType.SWAP else ""
        name = command.op.get_name().lower().split("(")[0] or "gate"
        print(f"cycle {cycle}: {name} {operands}{marker}")

main()
`;

const graphRoute: Adapter = {
  id: "graph-route",
  description: "graph-monomorphism placement plus routing (pytket mapping pass)",
  probe() {
    return pythonProbe("pytket");
  },
  run(benchmark, ctx) {
    return runPythonDriver(GRAPH_ROUTE_DRIVER, benchmark, ctx);
  },
};

registerAdapter(baselineRoute);
registerAdapter(denseStochastic);
registerAdapter(graphRoute);
