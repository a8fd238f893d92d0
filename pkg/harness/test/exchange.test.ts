import { describe, expect, it } from "vitest";

import {
  emitSchedule,
  parseManifest,
  parseSchedule,
  parseSidecarHeader,
} from "../src/exchange.js";

const SAMPLE = `# routed by hand
mapping: q0=p1, q1=p0, q2=p3

cycle 1: x p0
cycle 1: cx p3,p1
cycle 2: swap p0,p1 swap
cycle 3: rz(0.25) p3
`;

describe("schedule exchange format", () => {
  it("round trips through parse and emit", () => {
    const schedule = parseSchedule(SAMPLE);
    expect(schedule.mapping).toEqual([1, 0, 3]);
    expect(schedule.rows).toHaveLength(4);
    expect(schedule.rows[2]).toEqual({
      cycle: 2,
      label: "swap",
      qubits: [0, 1],
      isSwap: true,
    });
    expect(schedule.rows[3]!.label).toBe("rz(0.25)");
    const again = parseSchedule(emitSchedule(schedule));
    expect(again).toEqual(schedule);
  });

  it("emits rows sorted by cycle", () => {
    const text = emitSchedule({
      mapping: [0, 1],
      rows: [
        { cycle: 5, label: "x", qubits: [1], isSwap: false },
        { cycle: 2, label: "x", qubits: [0], isSwap: false },
      ],
    });
    const lines = text.trim().split("\n");
    expect(lines[1]).toBe("cycle 2: x p0");
    expect(lines[2]).toBe("cycle 5: x p1");
  });

  it("rejects a schedule without its mapping", () => {
    expect(() => parseSchedule("cycle 1: x p0\n")).toThrow(/mapping/);
  });

  it("rejects a mapping with a hole", () => {
    expect(() => parseSchedule("mapping: q0=p0, q2=p2\n")).toThrow(/skips q1/);
  });

  it("rejects an unparseable row", () => {
    expect(() => parseSchedule("mapping: q0=p0\nnonsense\n")).toThrow(/line 2/);
  });
});

describe("solution sidecar header", () => {
  it("reads the fields the harness needs", () => {
    const header = parseSidecarHeader(
      [
        "device: tokyo",
        "qubits: 20",
        "directed: false",
        "depth: 45",
        "d1: 0.27",
        "d2: 0.36",
        "seed: 3",
        "retry_limit: 64",
        "tau: 0 1",
        "gates: 2",
        "gate: (1, 0)",
        "gate: (1, 1)",
      ].join("\n"),
    );
    expect(header).toEqual({
      device: "tokyo",
      qubits: 20,
      depth: 45,
      d1: "0.27",
      d2: "0.36",
      seed: 3,
    });
  });

  it("rejects a sidecar missing its depth", () => {
    expect(() => parseSidecarHeader("device: x\nqubits: 2\n")).toThrow(/depth/);
  });
});

describe("generator manifest", () => {
  it("parses rows and keeps inadmissible status visible", () => {
    const rows = parseManifest(
      [
        "device,depth,d1,d2,seed,status,gates,m1,m2,qasm,solution",
        "tokyo,45,0.27,0.36,0,ok,405,243,162,a.qasm,a.solution",
        "tokyo,45,0.9,0.1,1,inadmissible,,810,45,,",
      ].join("\n"),
    );
    expect(rows).toHaveLength(2);
    expect(rows[0]!.qasm).toBe("a.qasm");
    expect(rows[0]!.seed).toBe(0);
    expect(rows[1]!.status).toBe("inadmissible");
  });

  it("accepts the carriage-return row endings the generator emits", () => {
    const rows = parseManifest(
      "device,depth,d1,d2,seed,status,gates,m1,m2,qasm,solution\r\n" +
        "tokyo,45,0.27,0.36,0,ok,405,243,162,a.qasm,a.solution\r\n",
    );
    expect(rows).toHaveLength(1);
    expect(rows[0]!.solution).toBe("a.solution");
  });

  it("rejects a manifest without the expected columns", () => {
    expect(() => parseManifest("a,b,c\n1,2,3\n")).toThrow(/column/);
  });
});
