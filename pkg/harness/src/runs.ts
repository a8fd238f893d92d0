/**
 * One experiment point: generate the benchmarks, push each one through
 * every configured tool, normalize, and let the benchmark package's
 * verifier judge the result. Tool crashes and timeouts become failed run
 * records; tools that are not installed become skipped records. Nothing
 * here throws for a tool's sake, only for harness misuse.
 */
import { writeFileSync } from "node:fs";
import { join } from "node:path";

import { resolveAdapter, type AdapterContext } from "./adapters.js";
import { emitSchedule, parseSidecarHeader } from "./exchange.js";
import { normalizeSchedule } from "./normalize.js";
import { generateBenchmarks, verifySchedule } from "./primary.js";
import type { HarnessConfig, ToolConfig } from "./config.js";
import { readFileSync } from "node:fs";
import { formatRational } from "./rational.js";

export interface RunVerification {
  valid: boolean;
  depth: number;
  swaps: number;
  extraGates: number;
  /** exact ratio as the verifier printed it, e.g. "1" or "9/8" */
  ratio: string;
}

export interface ToolRun {
  tool: string;
  toolVersion: string;
  status: "ok" | "failed" | "skipped";
  device: string;
  optimalDepth: number;
  d1: string;
  d2: string;
  seed: number;
  benchmark: string;
  solution: string;
  wallMs: number;
  rawOutput: string;
  schedulePath?: string;
  error?: string;
  verification?: RunVerification;
}

export interface PointReport {
  runs: ToolRun[];
  benchDir: string;
}

function skippedRun(
  tool: ToolConfig,
  detail: string,
  config: HarnessConfig,
): ToolRun {
  return {
    tool: tool.id,
    toolVersion: detail,
    status: "skipped",
    device: config.point.device,
    optimalDepth: config.point.depth,
    d1: "",
    d2: "",
    seed: -1,
    benchmark: "",
    solution: "",
    wallMs: 0,
    rawOutput: "",
  };
}

export function runPoint(config: HarnessConfig, outDir: string): PointReport {
  const benchDir = join(outDir, "bench");
  const manifest = generateBenchmarks(
    config.primary,
    {
      device: config.point.device,
      depth: config.point.depth,
      density: config.point.density,
      seeds: config.point.seeds,
      seedBase: config.point.seedBase,
      outDir: benchDir,
    },
    config.generationTimeoutMs,
  );
  const usable = manifest.filter((row) => row.status === "ok");
  if (usable.length === 0) {
    throw new Error("the generator produced no usable benchmarks for this point");
  }

  const runs: ToolRun[] = [];
  for (const tool of config.tools) {
    if (!tool.enabled) {
      runs.push(skippedRun(tool, "disabled in config", config));
      continue;
    }
    const adapter = resolveAdapter(tool.id);
    if (adapter === undefined) {
      runs.push(skippedRun(tool, "no adapter with this id", config));
      continue;
    }
    const ctx: AdapterContext = {
      primary: config.primary,
      device: config.point.device,
      timeoutMs: tool.timeoutMs,
      options: tool.options ?? {},
    };
    const probe = adapter.probe(ctx);
    if (!probe.available) {
      runs.push(skippedRun(tool, probe.detail, config));
      continue;
    }
    for (const row of usable) {
      const benchmark = join(benchDir, row.qasm);
      const solution = join(benchDir, row.solution);
      const optimalDepth = parseSidecarHeader(readFileSync(solution, "utf8")).depth;
      const base: ToolRun = {
        tool: tool.id,
        toolVersion: probe.detail,
        status: "failed",
        device: config.point.device,
        optimalDepth,
        d1: row.d1,
        d2: row.d2,
        seed: row.seed,
        benchmark,
        solution,
        wallMs: 0,
        rawOutput: "",
      };
      const started = performance.now();
      try {
        const raw = adapter.run(benchmark, ctx);
        base.wallMs = performance.now() - started;
        base.rawOutput = raw.rawOutput;
        const normalized = normalizeSchedule(raw.schedule);
        const swapsIn = raw.schedule.rows.filter((r) => r.isSwap).length;
        if (normalized.rows.length !== raw.schedule.rows.length + 2 * swapsIn) {
          throw new Error("normalization changed the gate count");
        }
        const schedulePath = join(
          outDir,
          `${tool.id}_${row.qasm.replace(/\.qasm$/, "")}.sched`,
        );
        writeFileSync(schedulePath, emitSchedule(normalized));
        base.schedulePath = schedulePath;
        const verification = verifySchedule(
          config.primary,
          benchmark,
          schedulePath,
          config.point.device,
          solution,
          config.verifyTimeoutMs,
        );
        base.verification = {
          valid: verification.valid,
          depth: verification.depth,
          swaps: verification.swaps,
          extraGates: verification.extraGates,
          ratio: verification.ratio === null ? "" : formatRational(verification.ratio),
        };
        base.status = verification.valid ? "ok" : "failed";
        if (!verification.valid) {
          base.error = verification.report.trim().split("\n").slice(0, 2).join("; ");
        }
      } catch (failure) {
        base.wallMs = performance.now() - started;
        base.error = failure instanceof Error ? failure.message : String(failure);
      }
      runs.push(base);
    }
  }
  return { runs, benchDir };
}
