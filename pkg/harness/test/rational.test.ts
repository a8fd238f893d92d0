import { describe, expect, it } from "vitest";

import {
  compare,
  formatRational,
  meanOf,
  parseRational,
  rational,
  toNumber,
} from "../src/rational.js";

describe("exact ratios", () => {
  it("parses what the verifier prints", () => {
    expect(parseRational("1")).toEqual({ num: 1, den: 1 });
    expect(parseRational("9/8")).toEqual({ num: 9, den: 8 });
    expect(parseRational(" 46/45 ")).toEqual({ num: 46, den: 45 });
  });

  it("normalizes to lowest terms", () => {
    expect(rational(10, 8)).toEqual({ num: 5, den: 4 });
    expect(formatRational(rational(12, 4))).toBe("3");
  });

  it("compares without rounding", () => {
    expect(compare(parseRational("10/9"), parseRational("9/8"))).toBeLessThan(0);
    expect(compare(parseRational("2/2"), parseRational("1"))).toBe(0);
  });

  it("averages as numbers for the table", () => {
    const mean = meanOf([parseRational("1"), parseRational("3/2")]);
    expect(mean).toBeCloseTo(1.25, 12);
    expect(toNumber(parseRational("5/4"))).toBeCloseTo(1.25, 12);
  });

  it("rejects junk", () => {
    expect(() => parseRational("1.5")).toThrow();
    expect(() => rational(1, 0)).toThrow();
    expect(() => meanOf([])).toThrow();
  });
});
