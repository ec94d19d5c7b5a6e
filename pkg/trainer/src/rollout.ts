/**
 * Pheromone-free rollouts: tours are chained directly from the heuristic
 * matrix over the shrinking set of unvisited nodes, with the terminal
 * reward being the negative tour length. Per-batch reward centering gives
 * the baseline; advantages subtract the value estimate.
 *
 * Bookkeeping here is deliberately float64 (plain JS numbers): the
 * normalization identities (sum of enumerated tour probabilities = 1,
 * mean centered reward = 0) are pinned at tolerances float32 cannot meet.
 */

import { Instance, tourCost } from "./instance.js";
import { Stream } from "./rng.js";

export interface RolloutBatch {
  tours: Int32Array[];
  logpOld: Float64Array;
  rewards: Float64Array;
  baseline: number;
  normalized: Float64Array; // rewards - baseline
  advantages: Float64Array; // normalized - V
}

/**
 * Log-probability of a full tour under heuristic rows `H` (n x n, row
 * major): sum over transitions of log(H[cur][next] / sum over unvisited).
 * The start node contributes no term.
 */
export function tourLogProb(H: Float64Array | Float32Array, n: number, tour: ArrayLike<number>): number {
  const visited = new Uint8Array(n);
  visited[tour[0]] = 1;
  let logp = 0;
  for (let t = 0; t + 1 < n; t++) {
    const cur = tour[t];
    const next = tour[t + 1];
    let denom = 0;
    for (let j = 0; j < n; j++) {
      if (!visited[j] && j !== cur) denom += Number(H[cur * n + j]);
    }
    logp += Math.log(Number(H[cur * n + next]) / denom);
    visited[next] = 1;
  }
  return logp;
}

export function sampleTour(
  H: Float64Array | Float32Array,
  n: number,
  stream: Stream
): Int32Array {
  const tour = new Int32Array(n);
  const visited = new Uint8Array(n);
  let cur = stream.randint(n);
  tour[0] = cur;
  visited[cur] = 1;
  const nodes: number[] = [];
  const weights: number[] = [];
  for (let t = 1; t < n; t++) {
    nodes.length = 0;
    weights.length = 0;
    for (let j = 0; j < n; j++) {
      if (!visited[j]) {
        nodes.push(j);
        weights.push(Number(H[cur * n + j]));
      }
    }
    cur = nodes[stream.roulette(weights)];
    tour[t] = cur;
    visited[cur] = 1;
  }
  return tour;
}

/**
 * Sample M tours and fill in rewards, baseline, centered rewards, and
 * advantages. `V` is the scalar value estimate for this instance.
 */
export function sampleRollouts(
  inst: Instance,
  H: Float64Array | Float32Array,
  V: number,
  M: number,
  stream: Stream
): RolloutBatch {
  if (inst.n < 2) throw new Error(`need at least 2 nodes, got ${inst.n}`);
  if (M < 2) throw new Error(`need at least 2 rollouts for the batch baseline, got ${M}`);
  for (let i = 0; i < inst.n * inst.n; i++) {
    if (!(Number(H[i]) > 0) || !Number.isFinite(Number(H[i]))) {
      throw new Error(`heuristic matrix must be strictly positive and finite (entry ${i})`);
    }
  }
  const n = inst.n;
  const tours: Int32Array[] = [];
  const logpOld = new Float64Array(M);
  const rewards = new Float64Array(M);
  for (let m = 0; m < M; m++) {
    const tour = sampleTour(H, n, stream);
    tours.push(tour);
    logpOld[m] = tourLogProb(H, n, tour);
    rewards[m] = -tourCost(inst, tour);
  }
  let baseline = 0;
  for (let m = 0; m < M; m++) baseline += rewards[m];
  baseline /= M;
  const normalized = new Float64Array(M);
  const advantages = new Float64Array(M);
  for (let m = 0; m < M; m++) {
    normalized[m] = rewards[m] - baseline;
    advantages[m] = normalized[m] - V;
  }
  return { tours, logpOld, rewards, baseline, normalized, advantages };
}
