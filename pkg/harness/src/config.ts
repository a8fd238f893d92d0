/**
 * Run configuration: which benchmark point to generate, which tools to
 * try, and how long each external process may take. Plain JSON so a config
 * can be committed next to the numbers it produced.
 */
import { readFileSync } from "node:fs";

export interface PointConfig {
  device: string;
  depth: number;
  density: string;
  seeds: number;
  seedBase: number;
}

export interface ToolConfig {
  id: string;
  enabled: boolean;
  timeoutMs: number;
  options?: Record<string, unknown>;
}

export interface HarnessConfig {
  primary: string;
  outDir: string;
  generationTimeoutMs: number;
  verifyTimeoutMs: number;
  point: PointConfig;
  tools: ToolConfig[];
}

function fail(path: string, reason: string): never {
  throw new Error(`${path}: ${reason}`);
}

export function loadConfig(path: string): HarnessConfig {
  let parsed: unknown;
  try {
    parsed = JSON.parse(readFileSync(path, "utf8"));
  } catch (error) {
    fail(path, `not readable as JSON (${error instanceof Error ? error.message : error})`);
  }
  const root = parsed as Record<string, unknown>;
  if (typeof root !== "object" || root === null) {
    fail(path, "config must be a JSON object");
  }
  const primary = root["primary"] ?? "qlsbench";
  const outDir = root["outDir"] ?? "out";
  const generationTimeoutMs = root["generationTimeoutMs"] ?? 300_000;
  const verifyTimeoutMs = root["verifyTimeoutMs"] ?? 120_000;
  if (typeof primary !== "string" || typeof outDir !== "string") {
    fail(path, "primary and outDir must be strings");
  }
  if (typeof generationTimeoutMs !== "number" || typeof verifyTimeoutMs !== "number") {
    fail(path, "timeouts must be numbers of milliseconds");
  }

  const point = root["point"] as Record<string, unknown> | undefined;
  if (point === undefined || typeof point !== "object") {
    fail(path, "config needs a point object");
  }
  const device = point["device"];
  const depth = point["depth"];
  const density = point["density"];
  const seeds = point["seeds"] ?? 10;
  const seedBase = point["seedBase"] ?? 0;
  if (typeof device !== "string" || device === "") {
    fail(path, "point.device must be a device name or file path");
  }
  if (typeof depth !== "number" || depth < 1 || !Number.isInteger(depth)) {
    fail(path, "point.depth must be a positive integer");
  }
  if (typeof density !== "string" || density === "") {
    fail(path, "point.density must be a preset name or d1,d2 pair");
  }
  if (typeof seeds !== "number" || seeds < 1 || !Number.isInteger(seeds)) {
    fail(path, "point.seeds must be a positive integer");
  }
  if (typeof seedBase !== "number" || !Number.isInteger(seedBase)) {
    fail(path, "point.seedBase must be an integer");
  }

  const toolsRaw = root["tools"];
  if (!Array.isArray(toolsRaw) || toolsRaw.length === 0) {
    fail(path, "config needs a non-empty tools array");
  }
  const tools: ToolConfig[] = toolsRaw.map((entry, i) => {
    const tool = entry as Record<string, unknown>;
    const id = tool["id"];
    if (typeof id !== "string" || id === "") {
      fail(path, `tools[${i}].id must be a non-empty string`);
    }
    const enabled = tool["enabled"] ?? true;
    const timeoutMs = tool["timeoutMs"] ?? 300_000;
    if (typeof enabled !== "boolean" || typeof timeoutMs !== "number") {
      fail(path, `tools[${i}] has a bad enabled or timeoutMs`);
    }
    const options = tool["options"];
    if (options !== undefined && (typeof options !== "object" || options === null)) {
      fail(path, `tools[${i}].options must be an object`);
    }
    return { id, enabled, timeoutMs, options: options as Record<string, unknown> | undefined };
  });

  return {
    primary,
    outDir,
    generationTimeoutMs,
    verifyTimeoutMs,
    point: { device, depth, density, seeds, seedBase },
    tools,
  };
}
