import { spawnSync } from "node:child_process";
import { existsSync, mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, describe, expect, it } from "vitest";

// Drives the built command line the way a user would. `npm test` builds
// first (pretest), so dist/ is present.
const workDir = mkdtempSync(join(tmpdir(), "harness-cli-"));
afterAll(() => rmSync(workDir, { recursive: true, force: true }));

function cli(...args: string[]) {
  return spawnSync("node", [join("dist", "cli.js"), ...args], {
    encoding: "utf8",
  });
}

describe("harness cli", () => {
  const outDir = join(workDir, "out");
  const configPath = join(workDir, "small.config.json");
  writeFileSync(
    configPath,
    JSON.stringify({
      primary: "qlsbench",
      outDir,
      point: { device: "ourense", depth: 10, density: "tfl", seeds: 2, seedBase: 0 },
      tools: [
        { id: "baseline-route", timeoutMs: 60000 },
        { id: "dense-stochastic", timeoutMs: 60000 },
      ],
    }),
  );

  it("runs a small point end to end and writes runs.json", () => {
    const result = cli("run", "--config", configPath);
    expect(result.status, result.stderr).toBe(0);
    expect(result.stdout).toContain("runs:");
    expect(result.stdout).toContain("wrote");
    const runs = JSON.parse(readFileSync(join(outDir, "runs.json"), "utf8"));
    const ok = runs.filter((r: { status: string }) => r.status === "ok");
    expect(ok.length).toBe(2);
  });

  it("reports the table and plot from runs.json", () => {
    const result = cli("report", "--out-dir", outDir);
    expect(result.status, result.stderr).toBe(0);
    const table = readFileSync(join(outDir, "table.csv"), "utf8");
    expect(table.split("\n")[0]).toContain("ratio_mean");
    expect(table).toContain("baseline-route");
    expect(existsSync(join(outDir, "ratio-plot.svg"))).toBe(true);
  });

  it("adds a density heatmap when runs sweep several densities", () => {
    const sweepDir = join(workDir, "sweep");
    const run = (d1: string, d2: string, ratio: string, depth: number) => ({
      tool: "baseline-route",
      toolVersion: "qlsbench 0.1.0",
      status: "ok",
      device: "ourense",
      optimalDepth: 10,
      d1,
      d2,
      seed: 0,
      benchmark: "a.qasm",
      solution: "a.solution",
      wallMs: 5,
      rawOutput: "",
      schedulePath: "a.sched",
      verification: { valid: true, depth, swaps: 0, extraGates: 0, ratio },
    });
    writeFileSync(
      join(workDir, "sweep.runs.json"),
      JSON.stringify([run("0.27", "0.36", "1", 10), run("0.51", "0.4", "3/2", 15)]),
    );
    const result = cli(
      "report",
      "--runs", join(workDir, "sweep.runs.json"),
      "--out-dir", sweepDir,
    );
    expect(result.status, result.stderr).toBe(0);
    const heatmap = readFileSync(join(sweepDir, "heatmap-baseline-route.svg"), "utf8");
    expect(heatmap).toContain("two-qubit density d2");
    expect(heatmap).toContain("1.50");
  });

  it("rejects an unknown subcommand", () => {
    const result = cli("tabulate");
    expect(result.status).toBe(1);
    expect(result.stderr).toContain("usage");
  });

  it("reports a broken config as a harness error", () => {
    const bad = join(workDir, "bad.config.json");
    writeFileSync(bad, JSON.stringify({ point: {} }));
    const result = cli("run", "--config", bad);
    expect(result.status).toBe(2);
    expect(result.stderr).toContain("harness:");
  });
});
