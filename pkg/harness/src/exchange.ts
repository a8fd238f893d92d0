/**
 * Readers and writers for the qlsbench file formats the harness touches:
 * the schedule exchange format, the solution sidecar header, and the CSV
 * manifest the generator prints.
 *
 * Only the fields the harness consumes are modeled; everything else in a
 * file is passed through or ignored.
 */

export interface ScheduleRow {
  cycle: number;
  label: string;
  qubits: [number] | [number, number];
  isSwap: boolean;
}

export interface Schedule {
  /** mapping[q] is the physical qubit the initial layout assigns to q */
  mapping: number[];
  rows: ScheduleRow[];
}

const MAPPING_ENTRY = /^q(\d+)\s*=\s*p(\d+)$/;
const ROW = /^cycle\s+(\d+)\s*:\s*(\S+)\s+p(\d+)(?:\s*,\s*p(\d+))?(\s+swap)?$/;

export function parseSchedule(text: string): Schedule {
  const lines = text.split("\n");
  let mapping: number[] | undefined;
  const rows: ScheduleRow[] = [];
  for (let i = 0; i < lines.length; i++) {
    const line = (lines[i] ?? "").trim();
    if (line === "" || line.startsWith("#")) {
      continue;
    }
    if (mapping === undefined) {
      if (!line.startsWith("mapping:")) {
        throw new Error(`line ${i + 1}: expected the mapping header`);
      }
      const entries = new Map<number, number>();
      for (const part of line.slice("mapping:".length).split(",")) {
        const m = MAPPING_ENTRY.exec(part.trim());
        if (!m) {
          throw new Error(`line ${i + 1}: bad mapping entry ${part.trim()}`);
        }
        entries.set(Number(m[1]), Number(m[2]));
      }
      mapping = [];
      for (let q = 0; q < entries.size; q++) {
        const p = entries.get(q);
        if (p === undefined) {
          throw new Error(`line ${i + 1}: mapping skips q${q}`);
        }
        mapping.push(p);
      }
      continue;
    }
    const m = ROW.exec(line);
    if (!m) {
      throw new Error(`line ${i + 1}: cannot parse schedule row ${line}`);
    }
    const qubits: [number] | [number, number] =
      m[4] === undefined ? [Number(m[3])] : [Number(m[3]), Number(m[4])];
    rows.push({
      cycle: Number(m[1]),
      label: m[2] as string,
      qubits,
      isSwap: m[5] !== undefined,
    });
  }
  if (mapping === undefined) {
    throw new Error("schedule is missing its mapping header");
  }
  return { mapping, rows };
}

export function emitSchedule(schedule: Schedule): string {
  const parts = schedule.mapping.map((p, q) => `q${q}=p${p}`);
  const lines = [`mapping: ${parts.join(", ")}`];
  const order = schedule.rows
    .map((row, i) => ({ row, i }))
    .sort((a, b) => a.row.cycle - b.row.cycle || a.i - b.i);
  for (const { row } of order) {
    const operands = row.qubits.map((p) => `p${p}`).join(",");
    lines.push(
      `cycle ${row.cycle}: ${row.label} ${operands}${row.isSwap ? " swap" : ""}`,
    );
  }
  return lines.join("\n") + "\n";
}

export interface SidecarHeader {
  device: string;
  qubits: number;
  depth: number;
  d1: string;
  d2: string;
  seed: number;
}

export function parseSidecarHeader(text: string): SidecarHeader {
  const fields = new Map<string, string>();
  for (const raw of text.split("\n")) {
    const line = raw.trim();
    if (line === "" || line.startsWith("#") || line.startsWith("gate")) {
      continue;
    }
    const colon = line.indexOf(":");
    if (colon > 0) {
      fields.set(line.slice(0, colon).trim(), line.slice(colon + 1).trim());
    }
  }
  for (const key of ["device", "qubits", "depth", "d1", "d2", "seed"]) {
    if (!fields.has(key)) {
      throw new Error(`solution sidecar is missing its ${key} field`);
    }
  }
  return {
    device: fields.get("device")!,
    qubits: Number(fields.get("qubits")),
    depth: Number(fields.get("depth")),
    d1: fields.get("d1")!,
    d2: fields.get("d2")!,
    seed: Number(fields.get("seed")),
  };
}

export interface ManifestRow {
  device: string;
  depth: number;
  d1: string;
  d2: string;
  seed: number;
  status: string;
  qasm: string;
  solution: string;
}

/** The CSV the generator prints: one row per requested instance. */
export function parseManifest(text: string): ManifestRow[] {
  // The generator terminates CSV rows with \r\n.
  const lines = text.split(/\r?\n/).filter((l) => l.trim() !== "");
  if (lines.length === 0) {
    throw new Error("empty generator manifest");
  }
  const header = (lines[0] ?? "").split(",");
  const index = new Map(header.map((name, i) => [name, i]));
  for (const key of ["device", "depth", "d1", "d2", "seed", "status", "qasm", "solution"]) {
    if (!index.has(key)) {
      throw new Error(`generator manifest has no ${key} column`);
    }
  }
  const cell = (cols: string[], key: string) => cols[index.get(key)!] ?? "";
  return lines.slice(1).map((line) => {
    const cols = line.split(",");
    return {
      device: cell(cols, "device"),
      depth: Number(cell(cols, "depth")),
      d1: cell(cols, "d1"),
      d2: cell(cols, "d2"),
      seed: Number(cell(cols, "seed")),
      status: cell(cols, "status"),
      qasm: cell(cols, "qasm"),
      solution: cell(cols, "solution"),
    };
  });
}
