import { spawnSync } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, describe, expect, it } from "vitest";

import {
  adapterIds,
  DENSE_STOCHASTIC_DRIVER,
  GRAPH_ROUTE_DRIVER,
  resolveAdapter,
  type AdapterContext,
} from "../src/adapters.js";

const workDir = mkdtempSync(join(tmpdir(), "adapter-test-"));
afterAll(() => rmSync(workDir, { recursive: true, force: true }));

function context(overrides: Partial<AdapterContext> = {}): AdapterContext {
  return {
    primary: "qlsbench",
    device: "ourense",
    timeoutMs: 60_000,
    options: {},
    ...overrides,
  };
}

describe("adapter registry", () => {
  it("registers the three adapters by id", () => {
    expect(adapterIds()).toEqual(["baseline-route", "dense-stochastic", "graph-route"]);
    expect(resolveAdapter("baseline-route")?.id).toBe("baseline-route");
    expect(resolveAdapter("no-such-tool")).toBeUndefined();
  });
});

describe("baseline-route adapter", () => {
  it("probes the installed benchmark CLI and reports its version", () => {
    const probe = resolveAdapter("baseline-route")!.probe(context());
    expect(probe.available).toBe(true);
    expect(probe.detail).toMatch(/^qlsbench \d+\.\d+\.\d+/);
  });

  it("degrades to unavailable when the command does not exist", () => {
    const probe = resolveAdapter("baseline-route")!.probe(
      context({ primary: "no-such-command-zzz" }),
    );
    expect(probe.available).toBe(false);
    expect(probe.detail).toContain("not runnable");
  });

  it("routes a benchmark and returns a parseable schedule", () => {
    const gen = spawnSync(
      "qlsbench",
      ["gen", "--device", "ourense", "--depths", "8", "--density", "tfl",
       "--seeds", "1", "--out-dir", workDir],
      { encoding: "utf8" },
    );
    expect(gen.status).toBe(0);
    const benchmark = join(workDir, "ourense_8cyc_0.27_0.36_0.qasm");
    const raw = resolveAdapter("baseline-route")!.run(benchmark, context());
    expect(raw.schedule.mapping).toHaveLength(5);
    expect(raw.schedule.rows.length).toBeGreaterThan(0);
    expect(raw.rawOutput).toContain("mapping:");
  });

  it("surfaces a crash as a thrown error, not a bad schedule", () => {
    const missing = join(workDir, "missing.qasm");
    expect(() =>
      resolveAdapter("baseline-route")!.run(missing, context()),
    ).toThrow(/route exited/);
  });
});

describe("external toolchain adapters", () => {
  it("report unavailable without their python modules installed", () => {
    for (const id of ["dense-stochastic", "graph-route"]) {
      const probe = resolveAdapter(id)!.probe(context());
      if (!probe.available) {
        expect(probe.detail).toContain("not installed");
      }
    }
  });

  it("ship drivers that are at least valid python", () => {
    for (const [name, script] of [
      ["dense.py", DENSE_STOCHASTIC_DRIVER],
      ["graph.py", GRAPH_ROUTE_DRIVER],
    ] as const) {
      const path = join(workDir, name);
      writeFileSync(path, script);
      const check = spawnSync("python3", ["-m", "py_compile", path], {
        encoding: "utf8",
      });
      expect(check.status, check.stderr).toBe(0);
    }
  });
});
