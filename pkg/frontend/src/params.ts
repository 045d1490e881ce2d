// Cueblot parameter record and bounds, mirroring the server's invariants.
// Controls are bounded by these, so the API's 400 path is unreachable from
// normal UI use.

export interface CueblotParams {
  seed: bigint;
  maxDiameter: number;
  numBlots: number;
  spacing: number;
  numColors: number;
}

export interface NumericBound {
  min: number;
  max: number;
}

export const BOUNDS: Record<'maxDiameter' | 'numBlots' | 'spacing' | 'numColors', NumericBound> = {
  maxDiameter: { min: 2, max: 120 },
  numBlots: { min: 1, max: 20 },
  spacing: { min: 0, max: 80 },
  numColors: { min: 1, max: 16 },
};

export function clampField(field: keyof typeof BOUNDS, value: number): number {
  const b = BOUNDS[field];
  return Math.min(Math.max(Math.round(value), b.min), b.max);
}

export function randomSeed(): bigint {
  const words = new Uint32Array(2);
  crypto.getRandomValues(words);
  return (BigInt(words[0]) << 32n) | BigInt(words[1]);
}

export function defaultParams(): CueblotParams {
  return { seed: randomSeed(), maxDiameter: 60, numBlots: 8, spacing: 30, numColors: 4 };
}

// Canonical text form understood by the register/complete endpoint.
export function toCanonicalText(p: CueblotParams): string {
  return `cueblot:v1:${p.seed}:${p.maxDiameter}:${p.numBlots}:${p.spacing}:${p.numColors}`;
}

export function previewUrl(p: CueblotParams): string {
  return `/api/cueblot/preview?seed=${p.seed}&max_diam=${p.maxDiameter}` +
    `&num_blots=${p.numBlots}&spacing=${p.spacing}&num_colors=${p.numColors}`;
}
