/**
 * Aggregation of run records into the comparison table and its plots.
 * Rows are grouped per (tool, device, density, optimal depth) and averaged
 * over seeds; the plot puts optimal depth on the horizontal axis and depth
 * ratio on the vertical axis, one mean line per tool. Only runs the
 * verifier accepted may enter a table; skipped tools keep one row each so
 * a report always says what was absent.
 */
import { compare, meanOf, parseRational, toNumber, type Rational } from "./rational.js";
import type { ToolRun } from "./runs.js";

export interface TableRow {
  tool: string;
  toolVersion: string;
  status: "ok" | "skipped";
  device: string;
  optimalDepth: number;
  d1: string;
  d2: string;
  runsOk: number;
  runsFailed: number;
  ratioMean: number | null;
  ratioMin: string | null;
  ratioMax: string | null;
  wallMsMean: number | null;
}

export function tabulate(runs: readonly ToolRun[]): TableRow[] {
  if (runs.length === 0) {
    throw new Error("no runs to tabulate");
  }
  for (const run of runs) {
    if (run.status === "ok" && (run.verification === undefined || !run.verification.valid)) {
      throw new Error(
        `run of ${run.tool} on ${run.benchmark} entered tabulation without a passing verification`,
      );
    }
  }
  const groups = new Map<string, ToolRun[]>();
  for (const run of runs) {
    if (run.status === "skipped") {
      continue;
    }
    const key = [run.tool, run.device, run.d1, run.d2, run.optimalDepth].join("\u0000");
    const existing = groups.get(key);
    if (existing === undefined) {
      groups.set(key, [run]);
    } else {
      existing.push(run);
    }
  }

  const rows: TableRow[] = [];
  for (const group of groups.values()) {
    const sample = group[0]!;
    const accepted = group.filter((run) => run.status === "ok");
    const ratios: Rational[] = accepted.map((run) => parseRational(run.verification!.ratio));
    const sorted = [...ratios].sort(compare);
    rows.push({
      tool: sample.tool,
      toolVersion: sample.toolVersion,
      status: "ok",
      device: sample.device,
      optimalDepth: sample.optimalDepth,
      d1: sample.d1,
      d2: sample.d2,
      runsOk: accepted.length,
      runsFailed: group.length - accepted.length,
      ratioMean: ratios.length > 0 ? meanOf(ratios) : null,
      ratioMin: sorted.length > 0 ? formatExact(sorted[0]!) : null,
      ratioMax: sorted.length > 0 ? formatExact(sorted[sorted.length - 1]!) : null,
      wallMsMean:
        accepted.length > 0
          ? accepted.reduce((acc, run) => acc + run.wallMs, 0) / accepted.length
          : null,
    });
  }
  for (const run of runs) {
    if (run.status === "skipped") {
      rows.push({
        tool: run.tool,
        toolVersion: run.toolVersion,
        status: "skipped",
        device: run.device,
        optimalDepth: run.optimalDepth,
        d1: run.d1,
        d2: run.d2,
        runsOk: 0,
        runsFailed: 0,
        ratioMean: null,
        ratioMin: null,
        ratioMax: null,
        wallMsMean: null,
      });
    }
  }
  rows.sort(
    (a, b) =>
      a.tool.localeCompare(b.tool) ||
      a.device.localeCompare(b.device) ||
      a.d1.localeCompare(b.d1) ||
      a.d2.localeCompare(b.d2) ||
      a.optimalDepth - b.optimalDepth,
  );
  return rows;
}

function formatExact(r: Rational): string {
  return r.den === 1 ? `${r.num}` : `${r.num}/${r.den}`;
}

const CSV_HEADER =
  "tool,tool_version,status,device,optimal_depth,d1,d2,runs_ok,runs_failed,ratio_mean,ratio_min,ratio_max,wall_ms_mean";

export function emitTableCsv(rows: readonly TableRow[]): string {
  const quote = (value: string) =>
    /[",\n]/.test(value) ? `"${value.replaceAll('"', '""')}"` : value;
  const lines = [CSV_HEADER];
  for (const row of rows) {
    lines.push(
      [
        quote(row.tool),
        quote(row.toolVersion),
        row.status,
        quote(row.device),
        String(row.optimalDepth),
        row.d1,
        row.d2,
        String(row.runsOk),
        String(row.runsFailed),
        row.ratioMean === null ? "" : row.ratioMean.toFixed(4),
        row.ratioMin ?? "",
        row.ratioMax ?? "",
        row.wallMsMean === null ? "" : row.wallMsMean.toFixed(1),
      ].join(","),
    );
  }
  return lines.join("\n") + "\n";
}

// ---------------------------------------------------------------------------
// Plots: self-contained SVG, no charting dependency
// ---------------------------------------------------------------------------

const PLOT = { width: 640, height: 420, left: 60, right: 160, top: 30, bottom: 50 };
const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/** Depth-ratio study: optimal depth on x, mean depth ratio on y. */
export function plotRatioLines(rows: readonly TableRow[]): string {
  const plotted = rows.filter((row) => row.status === "ok" && row.ratioMean !== null);
  if (plotted.length === 0) {
    throw new Error("no verified rows to plot");
  }
  const tools = [...new Set(plotted.map((row) => row.tool))].sort();
  const xs = plotted.map((row) => row.optimalDepth);
  const ys = plotted.map((row) => row.ratioMean!);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMin = 1;
  const yMax = Math.max(1.05, ...ys) * 1.02;
  const innerW = PLOT.width - PLOT.left - PLOT.right;
  const innerH = PLOT.height - PLOT.top - PLOT.bottom;
  const sx = (x: number) =>
    PLOT.left + (xMax === xMin ? innerW / 2 : ((x - xMin) / (xMax - xMin)) * innerW);
  const sy = (y: number) => PLOT.top + innerH - ((y - yMin) / (yMax - yMin)) * innerH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${PLOT.width}" height="${PLOT.height}" font-family="sans-serif" font-size="12">`,
    `<rect width="${PLOT.width}" height="${PLOT.height}" fill="white"/>`,
    `<line x1="${PLOT.left}" y1="${PLOT.top + innerH}" x2="${PLOT.left + innerW}" y2="${PLOT.top + innerH}" stroke="black"/>`,
    `<line x1="${PLOT.left}" y1="${PLOT.top}" x2="${PLOT.left}" y2="${PLOT.top + innerH}" stroke="black"/>`,
  );
  const xTicks = [...new Set(xs)].sort((a, b) => a - b);
  for (const tick of xTicks) {
    const x = sx(tick);
    parts.push(
      `<line x1="${x}" y1="${PLOT.top + innerH}" x2="${x}" y2="${PLOT.top + innerH + 5}" stroke="black"/>`,
      `<text x="${x}" y="${PLOT.top + innerH + 20}" text-anchor="middle">${tick}</text>`,
    );
  }
  for (let i = 0; i <= 4; i++) {
    const value = yMin + ((yMax - yMin) * i) / 4;
    const y = sy(value);
    parts.push(
      `<line x1="${PLOT.left - 5}" y1="${y}" x2="${PLOT.left}" y2="${y}" stroke="black"/>`,
      `<text x="${PLOT.left - 8}" y="${y + 4}" text-anchor="end">${value.toFixed(2)}</text>`,
    );
  }
  parts.push(
    `<text x="${PLOT.left + innerW / 2}" y="${PLOT.height - 12}" text-anchor="middle">optimal depth</text>`,
    `<text x="16" y="${PLOT.top + innerH / 2}" text-anchor="middle" transform="rotate(-90 16 ${PLOT.top + innerH / 2})">depth ratio</text>`,
  );
  tools.forEach((tool, index) => {
    const color = COLORS[index % COLORS.length]!;
    const line = plotted
      .filter((row) => row.tool === tool)
      .sort((a, b) => a.optimalDepth - b.optimalDepth);
    const points = line.map((row) => `${sx(row.optimalDepth)},${sy(row.ratioMean!)}`);
    if (points.length > 1) {
      parts.push(`<polyline points="${points.join(" ")}" fill="none" stroke="${color}" stroke-width="2"/>`);
    }
    for (const point of points) {
      const [x, y] = point.split(",");
      parts.push(`<circle cx="${x}" cy="${y}" r="4" fill="${color}"/>`);
    }
    const legendY = PLOT.top + 10 + index * 18;
    parts.push(
      `<rect x="${PLOT.left + innerW + 14}" y="${legendY - 9}" width="12" height="12" fill="${color}"/>`,
      `<text x="${PLOT.left + innerW + 30}" y="${legendY + 1}">${tool}</text>`,
    );
  });
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

/** Density sweeps: one cell per (d1, d2), shaded by mean depth ratio. */
export function plotDensityHeatmap(rows: readonly TableRow[], tool: string): string {
  const cells = rows.filter(
    (row) => row.tool === tool && row.status === "ok" && row.ratioMean !== null,
  );
  if (cells.length === 0) {
    throw new Error(`no verified rows for tool ${tool}`);
  }
  const d1Values = [...new Set(cells.map((row) => row.d1))].sort(
    (a, b) => Number(a) - Number(b),
  );
  const d2Values = [...new Set(cells.map((row) => row.d2))].sort(
    (a, b) => Number(a) - Number(b),
  );
  const ratios = cells.map((row) => row.ratioMean!);
  const low = Math.min(...ratios);
  const high = Math.max(...ratios);
  const cellSize = 40;
  const left = 70;
  const top = 40;
  const width = left + d1Values.length * cellSize + 40;
  const height = top + d2Values.length * cellSize + 60;
  const shade = (ratio: number) => {
    const t = high === low ? 0 : (ratio - low) / (high - low);
    const channel = Math.round(235 - t * 165);
    return `rgb(245,${channel},${channel})`;
  };
  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" font-family="sans-serif" font-size="11">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
    `<text x="${left + (d1Values.length * cellSize) / 2}" y="${height - 16}" text-anchor="middle">single-qubit density d1</text>`,
    `<text x="18" y="${top + (d2Values.length * cellSize) / 2}" text-anchor="middle" transform="rotate(-90 18 ${top + (d2Values.length * cellSize) / 2})">two-qubit density d2</text>`,
    `<text x="${left}" y="20">mean depth ratio, ${tool}</text>`,
  ];
  for (const cell of cells) {
    const col = d1Values.indexOf(cell.d1);
    const rowIndex = d2Values.indexOf(cell.d2);
    const x = left + col * cellSize;
    const y = top + (d2Values.length - 1 - rowIndex) * cellSize;
    parts.push(
      `<rect x="${x}" y="${y}" width="${cellSize}" height="${cellSize}" fill="${shade(cell.ratioMean!)}" stroke="white"/>`,
      `<text x="${x + cellSize / 2}" y="${y + cellSize / 2 + 4}" text-anchor="middle">${cell.ratioMean!.toFixed(2)}</text>`,
    );
  }
  d1Values.forEach((value, i) => {
    parts.push(
      `<text x="${left + i * cellSize + cellSize / 2}" y="${top + d2Values.length * cellSize + 16}" text-anchor="middle">${value}</text>`,
    );
  });
  d2Values.forEach((value, i) => {
    parts.push(
      `<text x="${left - 6}" y="${top + (d2Values.length - 1 - i) * cellSize + cellSize / 2 + 4}" text-anchor="end">${value}</text>`,
    );
  });
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
