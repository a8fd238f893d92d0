/**
 * Exact rational numbers for depth ratios.
 *
 * The verifier reports ratios like "1" or "9/8"; keeping them exact until
 * the final aggregation means a table row never shows 0.9999999 for a run
 * that was exactly optimal.
 */

export interface Rational {
  readonly num: number;
  readonly den: number;
}

function gcd(a: number, b: number): number {
  while (b !== 0) {
    [a, b] = [b, a % b];
  }
  return a;
}

export function rational(num: number, den = 1): Rational {
  if (!Number.isInteger(num) || !Number.isInteger(den) || den === 0) {
    throw new Error(`not a rational: ${num}/${den}`);
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const g = gcd(Math.abs(num), den) || 1;
  return { num: num / g, den: den / g };
}

export function parseRational(text: string): Rational {
  const m = /^(-?\d+)(?:\/(\d+))?$/.exec(text.trim());
  if (!m) {
    throw new Error(`cannot parse ratio ${JSON.stringify(text)}`);
  }
  return rational(Number(m[1]), m[2] === undefined ? 1 : Number(m[2]));
}

export function toNumber(r: Rational): number {
  return r.num / r.den;
}

export function compare(a: Rational, b: Rational): number {
  return a.num * b.den - b.num * a.den;
}

export function formatRational(r: Rational): string {
  return r.den === 1 ? `${r.num}` : `${r.num}/${r.den}`;
}

export function meanOf(values: readonly Rational[]): number {
  if (values.length === 0) {
    throw new Error("mean of no values");
  }
  return values.reduce((acc, r) => acc + toNumber(r), 0) / values.length;
}
