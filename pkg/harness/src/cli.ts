/**
 * Harness entry point.
 *
 * Usage:
 *   node dist/cli.js run    [--config harness.config.json] [--out-dir DIR]
 *   node dist/cli.js report [--runs DIR/runs.json] [--out-dir DIR]
 *
 * `run` generates the configured benchmark point, pushes it through every
 * configured tool, verifies each normalized schedule, and writes
 * runs.json. `report` turns a runs.json into table.csv and ratio-plot.svg,
 * plus one heatmap-<tool>.svg per tool whose runs sweep several densities.
 */
import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { loadConfig } from "./config.js";
import { runPoint, type ToolRun } from "./runs.js";
import { emitTableCsv, plotDensityHeatmap, plotRatioLines, tabulate } from "./tabulate.js";

function argValue(argv: string[], flag: string): string | undefined {
  const index = argv.indexOf(flag);
  if (index === -1) {
    return undefined;
  }
  const value = argv[index + 1];
  if (value === undefined) {
    throw new Error(`${flag} needs a value`);
  }
  return value;
}

function commandRun(argv: string[]): number {
  const configPath = argValue(argv, "--config") ?? "harness.config.json";
  const config = loadConfig(configPath);
  const outDir = argValue(argv, "--out-dir") ?? config.outDir;
  mkdirSync(outDir, { recursive: true });
  const report = runPoint(config, outDir);
  const runsPath = join(outDir, "runs.json");
  writeFileSync(runsPath, JSON.stringify(report.runs, null, 2) + "\n");
  const byStatus = { ok: 0, failed: 0, skipped: 0 };
  for (const run of report.runs) {
    byStatus[run.status] += 1;
  }
  for (const run of report.runs) {
    if (run.status === "skipped") {
      console.log(`${run.tool}: skipped (${run.toolVersion})`);
    }
  }
  console.log(
    `runs: ${byStatus.ok} ok, ${byStatus.failed} failed, ${byStatus.skipped} skipped`,
  );
  console.log(`wrote ${runsPath}`);
  return byStatus.ok > 0 || byStatus.failed === 0 ? 0 : 2;
}

function commandReport(argv: string[]): number {
  const outDir = argValue(argv, "--out-dir") ?? "out";
  const runsPath = argValue(argv, "--runs") ?? join(outDir, "runs.json");
  const runs = JSON.parse(readFileSync(runsPath, "utf8")) as ToolRun[];
  mkdirSync(outDir, { recursive: true });
  const rows = tabulate(runs);
  const tablePath = join(outDir, "table.csv");
  writeFileSync(tablePath, emitTableCsv(rows));
  console.log(`wrote ${tablePath} (${rows.length} rows)`);
  const verified = rows.filter((row) => row.status === "ok" && row.ratioMean !== null);
  if (verified.length > 0) {
    const plotPath = join(outDir, "ratio-plot.svg");
    writeFileSync(plotPath, plotRatioLines(rows));
    console.log(`wrote ${plotPath}`);
  } else {
    console.log("no verified rows, skipping the plot");
  }
  for (const tool of [...new Set(verified.map((row) => row.tool))].sort()) {
    const densities = new Set(
      verified.filter((row) => row.tool === tool).map((row) => `${row.d1},${row.d2}`),
    );
    if (densities.size > 1) {
      const heatPath = join(outDir, `heatmap-${tool}.svg`);
      writeFileSync(heatPath, plotDensityHeatmap(rows, tool));
      console.log(`wrote ${heatPath}`);
    }
  }
  return 0;
}

export function main(argv: string[]): number {
  const [command, ...rest] = argv;
  try {
    if (command === "run") {
      return commandRun(rest);
    }
    if (command === "report") {
      return commandReport(rest);
    }
    console.error("usage: cli.js run|report [options]");
    return 1;
  } catch (error) {
    console.error(`harness: ${error instanceof Error ? error.message : error}`);
    return 2;
  }
}

process.exitCode = main(process.argv.slice(2));
