/**
 * Subprocess access to the qlsbench command line, which is the only way
 * the harness talks to the benchmark package: files in, files out, exit
 * codes as the contract.
 */
import { spawnSync } from "node:child_process";

import { parseManifest, type ManifestRow } from "./exchange.js";
import { parseRational, type Rational } from "./rational.js";

export interface CommandResult {
  status: number;
  stdout: string;
  stderr: string;
  wallMs: number;
  timedOut: boolean;
}

export function runCommand(
  command: string,
  args: string[],
  timeoutMs: number,
  cwd?: string,
): CommandResult {
  const start = performance.now();
  const proc = spawnSync(command, args, {
    cwd,
    timeout: timeoutMs,
    encoding: "utf8",
    maxBuffer: 64 * 1024 * 1024,
  });
  const wallMs = performance.now() - start;
  const timedOut = proc.error !== undefined && (proc.error as NodeJS.ErrnoException).code === "ETIMEDOUT";
  if (proc.error && !timedOut) {
    return { status: 127, stdout: "", stderr: String(proc.error), wallMs, timedOut };
  }
  return {
    status: proc.status ?? 1,
    stdout: proc.stdout ?? "",
    stderr: proc.stderr ?? "",
    wallMs,
    timedOut,
  };
}

export interface GenRequest {
  device: string;
  depth: number;
  density: string;
  seeds: number;
  seedBase: number;
  outDir: string;
}

export function generateBenchmarks(
  primary: string,
  request: GenRequest,
  timeoutMs: number,
): ManifestRow[] {
  const result = runCommand(
    primary,
    [
      "gen",
      "--device", request.device,
      "--depths", String(request.depth),
      "--density", request.density,
      "--seeds", String(request.seeds),
      "--seed-base", String(request.seedBase),
      "--out-dir", request.outDir,
    ],
    timeoutMs,
  );
  if (result.status !== 0) {
    throw new Error(
      `benchmark generation failed (exit ${result.status}): ${result.stderr.trim()}`,
    );
  }
  return parseManifest(result.stdout);
}

export interface Verification {
  valid: boolean;
  depth: number;
  swaps: number;
  extraGates: number;
  ratio: Rational | null;
  report: string;
}

export function verifySchedule(
  primary: string,
  circuit: string,
  schedule: string,
  device: string,
  solution: string | undefined,
  timeoutMs: number,
): Verification {
  const args = [
    "verify",
    "--circuit", circuit,
    "--schedule", schedule,
    "--device", device,
    "--detect-cx-swaps",
  ];
  if (solution !== undefined) {
    args.push("--solution", solution);
  }
  const result = runCommand(primary, args, timeoutMs);
  if (result.status !== 0 && result.status !== 2) {
    throw new Error(
      `verifier did not run (exit ${result.status}): ${result.stderr.trim()}`,
    );
  }
  const fields = new Map<string, string>();
  for (const line of result.stdout.split("\n")) {
    const colon = line.indexOf(":");
    if (colon > 0) {
      fields.set(line.slice(0, colon).trim(), line.slice(colon + 1).trim());
    }
  }
  const number = (key: string) => Number(fields.get(key) ?? "0");
  return {
    valid: fields.get("valid") === "yes",
    depth: number("depth"),
    swaps: number("swaps"),
    extraGates: number("extra-gates"),
    ratio: fields.has("ratio") ? parseRational(fields.get("ratio")!) : null,
    report: result.stdout,
  };
}

/** Version string of the installed benchmark package, recorded verbatim. */
export function primaryVersion(primary: string): string {
  const shown = runCommand("pip", ["show", primary], 30_000);
  const line = shown.stdout
    .split("\n")
    .find((l) => l.toLowerCase().startsWith("version:"));
  if (shown.status === 0 && line) {
    return `${primary} ${line.split(":")[1]!.trim()}`;
  }
  return `${primary} (version unknown)`;
}
