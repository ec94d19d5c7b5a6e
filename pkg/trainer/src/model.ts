/**
 * Policy network: a small message-passing encoder over each instance's
 * k-NN graph. Edge scores pass through softplus so the heuristic matrix is
 * strictly positive; a value head predicts the batch-normalized return
 * from mean-pooled node embeddings.
 */

import * as tf from "@tensorflow/tfjs";

import { Instance, dist, knnLists } from "./instance.js";
import { Stream } from "./rng.js";

export interface ModelConfig {
  hidden: number;
  rounds: number;
  graphK: number;
}

export const DEFAULT_MODEL: ModelConfig = { hidden: 32, rounds: 2, graphK: 10 };

export interface Model {
  cfg: ModelConfig;
  vars: Record<string, tf.Variable>;
}

export interface PolicyOutput {
  H: tf.Tensor2D; // (n, n) strictly positive
  V: tf.Scalar;
}

const OFF_GRAPH_BASE = 1e-6;

function glorot(stream: Stream, fanIn: number, fanOut: number): tf.Tensor2D {
  const scale = Math.sqrt(6 / (fanIn + fanOut));
  const vals = new Float32Array(fanIn * fanOut);
  for (let i = 0; i < vals.length; i++) vals[i] = (stream.u01() * 2 - 1) * scale;
  return tf.tensor2d(vals, [fanIn, fanOut]);
}

let modelCounter = 0;

export function createModel(seed: number, cfg: ModelConfig = DEFAULT_MODEL): Model {
  const stream = Stream.fromSeed(seed);
  const h = cfg.hidden;
  const vars: Record<string, tf.Variable> = {};
  // tf registers variable names globally, so each model gets a fresh
  // prefix; checkpoints key on the short names and stay prefix-free
  const prefix = `m${modelCounter++}/`;
  const add = (name: string, fanIn: number, fanOut: number) => {
    vars[name] = tf.variable(glorot(stream, fanIn, fanOut), true, `${prefix}${name}`);
    vars[`${name}_b`] = tf.variable(tf.zeros([fanOut]), true, `${prefix}${name}_b`);
  };
  add("enc", 4, h);
  for (let r = 0; r < cfg.rounds; r++) {
    add(`msg${r}`, 2 * h + 1, h);
    add(`upd${r}`, 2 * h, h);
  }
  add("edge", 2 * h + 1, 1);
  add("val1", h, 16);
  add("val2", 16, 1);
  return { cfg, vars };
}

function dense(x: tf.Tensor2D, model: Model, name: string): tf.Tensor2D {
  return tf.add(
    tf.matMul(x, model.vars[name] as unknown as tf.Tensor2D),
    model.vars[`${name}_b`]
  ) as tf.Tensor2D;
}

export interface GraphData {
  src: Int32Array;
  dst: Int32Array;
  edgeDist: Float32Array; // d_ij / mean d over graph edges
  nodeFeats: Float32Array; // (n, 4) row-major
  pairDist: Float32Array; // (n, n) all-pairs distances, same scaling
  k: number;
}

export function buildGraph(inst: Instance, cfg: ModelConfig = DEFAULT_MODEL): GraphData {
  const n = inst.n;
  const k = Math.min(cfg.graphK, n - 1);
  const nn = knnLists(inst, k);
  const src = new Int32Array(n * k);
  const dst = new Int32Array(n * k);
  const edgeDist = new Float32Array(n * k);
  let meanD = 0;
  for (let i = 0; i < n; i++) {
    for (let r = 0; r < k; r++) {
      const e = i * k + r;
      src[e] = i;
      dst[e] = nn[e];
      edgeDist[e] = dist(inst, i, nn[e]);
      meanD += edgeDist[e];
    }
  }
  meanD /= n * k;
  for (let e = 0; e < n * k; e++) edgeDist[e] /= meanD;
  const pairDist = new Float32Array(n * n);
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      pairDist[i * n + j] = dist(inst, i, j) / meanD;
    }
  }

  // node features: centered/scaled coords, mean and min k-NN distance
  let cx = 0;
  let cy = 0;
  for (let i = 0; i < n; i++) {
    cx += inst.coords[2 * i];
    cy += inst.coords[2 * i + 1];
  }
  cx /= n;
  cy /= n;
  let spread = 0;
  for (let i = 0; i < n; i++) {
    spread += Math.abs(inst.coords[2 * i] - cx) + Math.abs(inst.coords[2 * i + 1] - cy);
  }
  spread = spread / (2 * n) || 1;
  const nodeFeats = new Float32Array(n * 4);
  for (let i = 0; i < n; i++) {
    let sum = 0;
    let min = Infinity;
    for (let r = 0; r < k; r++) {
      const d = edgeDist[i * k + r];
      sum += d;
      if (d < min) min = d;
    }
    nodeFeats[4 * i] = (inst.coords[2 * i] - cx) / spread;
    nodeFeats[4 * i + 1] = (inst.coords[2 * i + 1] - cy) / spread;
    nodeFeats[4 * i + 2] = sum / k;
    nodeFeats[4 * i + 3] = min;
  }
  return { src, dst, edgeDist, nodeFeats, pairDist, k };
}

/**
 * Forward pass. Differentiable w.r.t. the model variables; call inside
 * tf.tidy (or a variableGrads closure) to reclaim intermediates.
 */
export function forward(model: Model, inst: Instance, graph: GraphData): PolicyOutput {
  const n = inst.n;
  const srcT = tf.tensor1d(graph.src, "int32");
  const dstT = tf.tensor1d(graph.dst, "int32");
  const eFeat = tf.tensor2d(graph.edgeDist, [graph.edgeDist.length, 1]);
  let h = tf.relu(
    dense(tf.tensor2d(graph.nodeFeats, [n, 4]), model, "enc")
  ) as tf.Tensor2D;
  for (let r = 0; r < model.cfg.rounds; r++) {
    const hs = tf.gather(h, srcT) as tf.Tensor2D;
    const hd = tf.gather(h, dstT) as tf.Tensor2D;
    const msg = tf.relu(
      dense(tf.concat([hs, hd, eFeat], 1) as tf.Tensor2D, model, `msg${r}`)
    );
    const agg = tf.div(
      tf.unsortedSegmentSum(msg, srcT, n),
      graph.k
    ) as tf.Tensor2D;
    h = tf.relu(
      dense(tf.concat([h, agg], 1) as tf.Tensor2D, model, `upd${r}`)
    ) as tf.Tensor2D;
  }
  // dense pairwise edge head: every (i, j) gets softplus score + base, so
  // H is strictly positive and the whole matrix is differentiable
  const hRows = tf.tile(tf.expandDims(h, 1), [1, n, 1]);
  const hCols = tf.tile(tf.expandDims(h, 0), [n, 1, 1]);
  const dPair = tf.tensor3d(graph.pairDist, [n, n, 1]);
  const pairFeats = tf.reshape(
    tf.concat([hRows, hCols, dPair], 2),
    [n * n, 2 * model.cfg.hidden + 1]
  ) as tf.Tensor2D;
  const logits = dense(pairFeats, model, "edge");
  const H = tf.reshape(
    tf.add(tf.softplus(tf.squeeze(logits, [1])), OFF_GRAPH_BASE),
    [n, n]
  ) as tf.Tensor2D;
  const pooled = tf.mean(h, 0, true) as tf.Tensor2D;
  const V = tf.squeeze(
    dense(tf.relu(dense(pooled, model, "val1")) as tf.Tensor2D, model, "val2")
  ) as tf.Scalar;
  return { H, V };
}

export function variableList(model: Model): tf.Variable[] {
  return Object.values(model.vars);
}

/** Release the model's variables (and their global name registrations). */
export function disposeModel(model: Model): void {
  for (const v of Object.values(model.vars)) v.dispose();
}

export function saveWeights(model: Model): Record<string, { shape: number[]; values: number[] }> {
  const out: Record<string, { shape: number[]; values: number[] }> = {};
  for (const [name, v] of Object.entries(model.vars)) {
    out[name] = { shape: v.shape.slice(), values: Array.from(v.dataSync()) };
  }
  return out;
}

export function loadWeights(
  model: Model,
  data: Record<string, { shape: number[]; values: number[] }>
): void {
  for (const [name, v] of Object.entries(model.vars)) {
    const entry = data[name];
    if (!entry) throw new Error(`checkpoint missing variable ${name}`);
    v.assign(tf.tensor(entry.values, entry.shape as [number, number]));
  }
}
