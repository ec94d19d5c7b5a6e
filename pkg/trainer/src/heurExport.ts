/**
 * HEUR v1 export: the solver-facing bridge. For each node, write its k
 * nearest neighbors' raw heuristic values (the solver applies its own
 * floor on load). Neighbor ordering matches the solver's candidate lists
 * (ascending distance, ties to the lower index), so every candidate edge
 * is covered.
 */

import * as tf from "@tensorflow/tfjs";

import { Instance, knnLists } from "./instance.js";
import { buildGraph, forward, Model } from "./model.js";

export function heurText(
  inst: Instance,
  H: Float64Array | Float32Array,
  k: number
): string {
  if (k < 1) throw new Error(`need k >= 1, got ${k}`);
  const n = inst.n;
  const kEff = Math.min(k, n - 1);
  const nn = knnLists(inst, kEff);
  const lines = [`HEUR 1 ${n} ${kEff}`];
  for (let i = 0; i < n; i++) {
    const pairs: string[] = [];
    for (let r = 0; r < kEff; r++) {
      const j = nn[i * kEff + r];
      pairs.push(`${j}:${Number(H[i * n + j])}`);
    }
    lines.push(pairs.join(" "));
  }
  return lines.join("\n") + "\n";
}

/** Run the policy on one instance and render its prior as HEUR v1 text. */
export function exportHeuristic(model: Model, inst: Instance, k: number): string {
  const graph = buildGraph(inst, model.cfg);
  const { H } = tf.tidy(() => ({ H: forward(model, inst, graph).H.clone() }));
  const text = heurText(inst, H.dataSync() as Float32Array, k);
  H.dispose();
  return text;
}
