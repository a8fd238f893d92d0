import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, describe, expect, it } from "vitest";

import { loadConfig } from "../src/config.js";
import { runPoint } from "../src/runs.js";
import { meanOf, parseRational, toNumber } from "../src/rational.js";
import { emitTableCsv, plotRatioLines, tabulate } from "../src/tabulate.js";

const outDir = mkdtempSync(join(tmpdir(), "harness-point-"));
afterAll(() => rmSync(outDir, { recursive: true, force: true }));

// The full configured experiment: a 20-qubit device file, depth 45, the
// sparse density preset, ten seeds, every configured tool. Runs against
// the installed benchmark CLI; external toolchains may be absent, in
// which case their adapters must degrade to skipped records.
describe("configured experiment point", () => {
  const config = loadConfig("harness.config.json");
  const report = runPoint(config, outDir);

  it("generates the ten-seed point behind the experiment", () => {
    expect(config.point.depth).toBe(45);
    expect(config.point.seeds).toBe(10);
    const baseline = report.runs.filter((run) => run.tool === "baseline-route");
    expect(baseline).toHaveLength(10);
  });

  it("passes every normalized schedule through the verifier", () => {
    const baseline = report.runs.filter((run) => run.tool === "baseline-route");
    for (const run of baseline) {
      expect(run.status, run.error ?? "").toBe("ok");
      expect(run.verification?.valid).toBe(true);
      expect(run.schedulePath).toBeDefined();
    }
  });

  it("never beats the hidden optimum: mean depth ratio at least 1", () => {
    const ratios = report.runs
      .filter((run) => run.status === "ok")
      .map((run) => parseRational(run.verification!.ratio));
    expect(ratios.length).toBeGreaterThanOrEqual(10);
    for (const ratio of ratios) {
      expect(toNumber(ratio)).toBeGreaterThanOrEqual(1);
    }
    const mean = meanOf(ratios);
    console.info(`mean depth ratio over ${ratios.length} runs: ${mean.toFixed(4)}`);
    expect(mean).toBeGreaterThanOrEqual(1);
  });

  it("degrades absent toolchains to skipped records, never failures", () => {
    for (const id of ["dense-stochastic", "graph-route"]) {
      const runs = report.runs.filter((run) => run.tool === id);
      expect(runs.length).toBeGreaterThanOrEqual(1);
      const skipped = runs.filter((run) => run.status === "skipped");
      if (skipped.length > 0) {
        expect(runs).toHaveLength(1);
        expect(skipped[0]!.toolVersion).toContain("not installed");
      } else {
        expect(runs.every((run) => run.status !== "skipped")).toBe(true);
      }
    }
  });

  it("tabulates with optimal depth against depth ratio", () => {
    const rows = tabulate(report.runs);
    const baseline = rows.find((row) => row.tool === "baseline-route")!;
    expect(baseline.optimalDepth).toBe(45);
    expect(baseline.runsOk).toBe(10);
    expect(baseline.ratioMean).toBeGreaterThanOrEqual(1);
    expect(baseline.toolVersion).toMatch(/qlsbench/);

    const csv = emitTableCsv(rows);
    const header = csv.split("\n")[0]!;
    expect(header).toContain("optimal_depth");
    expect(header).toContain("ratio_mean");

    const svg = plotRatioLines(rows);
    expect(svg).toContain("optimal depth");
    expect(svg).toContain("depth ratio");
  });

  it("records tool versions verbatim on every run", () => {
    for (const run of report.runs) {
      expect(run.toolVersion).not.toBe("");
    }
  });
});
