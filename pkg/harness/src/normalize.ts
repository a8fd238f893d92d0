/**
 * Normalization of tool output into verifier-ready schedules.
 *
 * Tools report SWAPs in different ways; the depth convention here charges
 * every SWAP three cycles by spelling it as three alternating CNOTs, the
 * form the verifier recognizes with its swap-detection flag. All gates are
 * re-timed as early as their per-qubit predecessors allow, so expanding a
 * SWAP pushes later gates back instead of colliding with them. Per-qubit
 * gate order is preserved, which is what the verifier's dependency replay
 * checks; gate count never changes except for the SWAP expansion.
 */
import type { Schedule, ScheduleRow } from "./exchange.js";

export function normalizeSchedule(raw: Schedule): Schedule {
  const order = raw.rows
    .map((row, i) => ({ row, i }))
    .sort((a, b) => a.row.cycle - b.row.cycle || a.i - b.i);
  const lastCycle = new Map<number, number>();
  const busyUntil = (qubits: readonly number[]) =>
    Math.max(0, ...qubits.map((p) => lastCycle.get(p) ?? 0));
  const rows: ScheduleRow[] = [];
  for (const { row } of order) {
    if (row.isSwap) {
      const [a, b] = row.qubits as [number, number];
      const start = busyUntil([a, b]) + 1;
      rows.push(
        { cycle: start, label: "cx", qubits: [a, b], isSwap: false },
        { cycle: start + 1, label: "cx", qubits: [b, a], isSwap: false },
        { cycle: start + 2, label: "cx", qubits: [a, b], isSwap: false },
      );
      lastCycle.set(a, start + 2);
      lastCycle.set(b, start + 2);
    } else {
      const cycle = busyUntil(row.qubits) + 1;
      rows.push({ ...row, cycle });
      for (const p of row.qubits) {
        lastCycle.set(p, cycle);
      }
    }
  }
  return { mapping: [...raw.mapping], rows };
}

export function scheduleDepth(schedule: Schedule): number {
  return schedule.rows.reduce((d, row) => Math.max(d, row.cycle), 0);
}
