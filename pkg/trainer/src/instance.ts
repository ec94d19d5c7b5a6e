/**
 * Training-side TSP instances: generation, exact euclidean distances, tour
 * costs, and the text dump the solver reads. Random instances reproduce the
 * solver's generator exactly (same splitmix64 stream recipe).
 */

import { Stream } from "./rng.js";

export interface Instance {
  name: string;
  coords: Float64Array; // flat [x0, y0, x1, y1, ...]
  n: number;
}

export function randomInstance(n: number, seed: number): Instance {
  if (n < 2) throw new Error(`need n >= 2, got ${n}`);
  const stream = Stream.fromSeed(seed);
  const coords = new Float64Array(2 * n);
  for (let i = 0; i < n; i++) {
    coords[2 * i] = stream.u01();
    coords[2 * i + 1] = stream.u01();
  }
  return { name: `rnd${n}-${seed}`, coords, n };
}

export function dist(inst: Instance, i: number, j: number): number {
  const dx = inst.coords[2 * i] - inst.coords[2 * j];
  const dy = inst.coords[2 * i + 1] - inst.coords[2 * j + 1];
  return Math.sqrt(dx * dx + dy * dy);
}

export function distanceMatrix(inst: Instance): Float64Array {
  const n = inst.n;
  const d = new Float64Array(n * n);
  for (let i = 0; i < n; i++) {
    for (let j = i + 1; j < n; j++) {
      const v = dist(inst, i, j);
      d[i * n + j] = v;
      d[j * n + i] = v;
    }
  }
  return d;
}

export function tourCost(inst: Instance, tour: number[] | Int32Array): number {
  let total = 0;
  const n = tour.length;
  for (let t = 0; t < n; t++) {
    total += dist(inst, tour[t], tour[(t + 1) % n]);
  }
  return total;
}

/** Solver dump format: `TSP <n> euclid_real` then one `<x> <y>` per node. */
export function dumpText(inst: Instance): string {
  const lines = [`TSP ${inst.n} euclid_real`];
  for (let i = 0; i < inst.n; i++) {
    lines.push(`${inst.coords[2 * i]} ${inst.coords[2 * i + 1]}`);
  }
  return lines.join("\n") + "\n";
}

/**
 * k nearest neighbors of every node, ties broken by lower index - the same
 * ordering the solver's candidate lists use, so exported rows align.
 */
export function knnLists(inst: Instance, k: number): Int32Array {
  const n = inst.n;
  const kEff = Math.min(k, n - 1);
  const out = new Int32Array(n * kEff);
  const others: number[] = new Array(n - 1);
  for (let i = 0; i < n; i++) {
    let m = 0;
    for (let j = 0; j < n; j++) if (j !== i) others[m++] = j;
    const di = (j: number) => dist(inst, i, j);
    others.sort((a, b) => di(a) - di(b) || a - b);
    for (let r = 0; r < kEff; r++) out[i * kEff + r] = others[r];
  }
  return out;
}
