// Weight-triple display math: the only client-side arithmetic is
// renormalizing slider positions onto the simplex and picking the nearest
// learned grid point (both mirror the server's rules).

export type Triple = [number, number, number];

export function renormalize(raw: number[]): Triple {
  const clamped = raw.slice(0, 3).map((w) => (Number.isFinite(w) && w > 0 ? w : 0));
  while (clamped.length < 3) {
    clamped.push(0);
  }
  const total = clamped[0]! + clamped[1]! + clamped[2]!;
  if (total <= 0) {
    return [1 / 3, 1 / 3, 1 / 3];
  }
  return [clamped[0]! / total, clamped[1]! / total, clamped[2]! / total];
}

// Nearest grid point by L1 distance, ties to the lexicographically
// smallest vector; must match the server's snap rule exactly.
export function snapToGrid(weights: number[], grid: number[][]): number[] {
  if (grid.length === 0) {
    throw new Error("empty weight grid");
  }
  let best: number[] | null = null;
  let bestDist = Infinity;
  for (const candidate of grid) {
    let dist = 0;
    for (let i = 0; i < candidate.length; i += 1) {
      dist += Math.abs((weights[i] ?? 0) - candidate[i]!);
    }
    if (dist < bestDist || (dist === bestDist && best !== null && lexLess(candidate, best))) {
      best = candidate;
      bestDist = dist;
    }
  }
  return best!;
}

function lexLess(a: number[], b: number[]): boolean {
  for (let i = 0; i < Math.max(a.length, b.length); i += 1) {
    const x = a[i] ?? -Infinity;
    const y = b[i] ?? -Infinity;
    if (x !== y) {
      return x < y;
    }
  }
  return false;
}

export function weightsKey(weights: number[]): string {
  return weights.map((w) => w.toPrecision(12)).join(",");
}

export function formatWeights(weights: number[]): string {
  return weights.map((w) => w.toFixed(2)).join(" / ");
}
