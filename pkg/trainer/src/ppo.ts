/**
 * Clipped-surrogate policy optimization over rollout batches.
 *
 * Per step: roll out M tours per instance under the current weights, then
 * take one gradient step on policy + value + entropy loss. The probability
 * ratio compares the differentiable replay of each tour's log-probability
 * against the value recorded at sampling time, and the entropy term acts
 * on the row-normalized heuristic matrix.
 */

import * as tf from "@tensorflow/tfjs";

import { Instance } from "./instance.js";
import {
  GraphData,
  Model,
  buildGraph,
  forward,
  variableList,
} from "./model.js";
import { RolloutBatch, sampleRollouts } from "./rollout.js";
import { Stream } from "./rng.js";

export interface TrainConfig {
  stepsPerEpoch: number;
  batchSize: number; // instances per step
  learningRate: number;
  clipEps: number;
  entropyCoef: number;
  rollouts: number; // tours per instance (M)
  seed: number;
}

export const DEFAULT_TRAIN: TrainConfig = {
  stepsPerEpoch: 20,
  batchSize: 20,
  learningRate: 0.001,
  clipEps: 0.2,
  entropyCoef: 0.01,
  rollouts: 20,
  seed: 0,
};

const ENTROPY_EPS = 1e-12;

export interface StepMetrics {
  step: number;
  meanReward: number;
  policyLoss: number;
  valueLoss: number;
  entropy: number;
}

/**
 * Differentiable log-probability of each sampled tour under `H`: per
 * transition, log of the chosen entry over the sum across unvisited nodes.
 */
export function logProbTensor(
  H: tf.Tensor2D,
  n: number,
  tours: Int32Array[]
): tf.Tensor1D {
  const M = tours.length;
  const S = M * (n - 1);
  const rowIdx = new Int32Array(S);
  const chosenOneHot = new Float32Array(S * n);
  const mask = new Float32Array(S * n);
  for (let m = 0; m < M; m++) {
    const tour = tours[m];
    const visited = new Uint8Array(n);
    visited[tour[0]] = 1;
    for (let t = 0; t + 1 < n; t++) {
      const s = m * (n - 1) + t;
      rowIdx[s] = tour[t];
      chosenOneHot[s * n + tour[t + 1]] = 1;
      for (let j = 0; j < n; j++) {
        if (!visited[j] && j !== tour[t]) mask[s * n + j] = 1;
      }
      visited[tour[t + 1]] = 1;
    }
  }
  // one-hot contractions instead of gatherND (no gradient in tfjs)
  const rows = tf.gather(H, tf.tensor1d(rowIdx, "int32"));
  const chosen = tf.sum(tf.mul(rows, tf.tensor2d(chosenOneHot, [S, n])), 1);
  const denom = tf.sum(tf.mul(rows, tf.tensor2d(mask, [S, n])), 1);
  const terms = tf.sub(tf.log(chosen), tf.log(denom));
  return tf.sum(tf.reshape(terms, [M, n - 1]), 1) as tf.Tensor1D;
}

export interface LossTensors {
  policy: tf.Scalar;
  value: tf.Scalar;
  entropyLoss: tf.Scalar;
  entropy: tf.Scalar;
  total: tf.Scalar;
}

export function ppoLosses(
  batch: RolloutBatch,
  logpNew: tf.Tensor1D,
  V: tf.Scalar,
  H: tf.Tensor2D,
  clipEps: number,
  entropyCoef: number
): LossTensors {
  if (!(clipEps > 0 && clipEps < 1)) {
    throw new Error(`need 0 < clip epsilon < 1, got ${clipEps}`);
  }
  const logpOld = tf.tensor1d(Float32Array.from(batch.logpOld));
  const ratio = tf.exp(tf.sub(logpNew, logpOld));
  const adv = tf.tensor1d(Float32Array.from(batch.advantages));
  const unclipped = tf.mul(ratio, adv);
  const clipped = tf.mul(tf.clipByValue(ratio, 1 - clipEps, 1 + clipEps), adv);
  const policy = tf.neg(tf.mean(tf.minimum(unclipped, clipped))) as tf.Scalar;
  const centered = tf.tensor1d(Float32Array.from(batch.normalized));
  const value = tf.mean(tf.square(tf.sub(V, centered))) as tf.Scalar;
  const n = H.shape[0];
  const rowNorm = tf.div(H, tf.sum(H, 1, true)) as tf.Tensor2D;
  const entropy = tf.div(
    tf.neg(tf.sum(tf.mul(rowNorm, tf.log(tf.add(rowNorm, ENTROPY_EPS))))),
    n
  ) as tf.Scalar;
  const entropyLoss = tf.mul(entropy, -entropyCoef) as tf.Scalar;
  const total = tf.add(tf.add(policy, value), entropyLoss) as tf.Scalar;
  return { policy, value, entropyLoss, entropy, total };
}

export interface InstanceRollout {
  inst: Instance;
  graph: GraphData;
  batch: RolloutBatch;
}

/** Roll out under the current weights (treated as theta_old for the step). */
export function rolloutInstances(
  model: Model,
  instances: Instance[],
  cfg: TrainConfig,
  globalStep: number
): InstanceRollout[] {
  return instances.map((inst, idx) => {
    const graph = buildGraph(inst, model.cfg);
    const { H, V } = tf.tidy(() => {
      const out = forward(model, inst, graph);
      return { H: out.H.clone(), V: out.V.clone() };
    });
    const hVals = H.dataSync() as Float32Array;
    const vVal = V.dataSync()[0];
    H.dispose();
    V.dispose();
    const stream = Stream.fromSeed(cfg.seed, globalStep, idx);
    const batch = sampleRollouts(inst, hVals, vVal, cfg.rollouts, stream);
    return { inst, graph, batch };
  });
}

export function trainStep(
  model: Model,
  optimizer: tf.Optimizer,
  instances: Instance[],
  cfg: TrainConfig,
  globalStep: number
): StepMetrics {
  const rollouts = rolloutInstances(model, instances, cfg, globalStep);
  let policySum = 0;
  let valueSum = 0;
  let entropySum = 0;
  const lossFn = (): tf.Scalar => {
    const totals: tf.Scalar[] = [];
    policySum = valueSum = entropySum = 0;
    for (const { inst, graph, batch } of rollouts) {
      const { H, V } = forward(model, inst, graph);
      const logpNew = logProbTensor(H, inst.n, batch.tours);
      const losses = ppoLosses(batch, logpNew, V, H, cfg.clipEps, cfg.entropyCoef);
      policySum += losses.policy.dataSync()[0];
      valueSum += losses.value.dataSync()[0];
      entropySum += losses.entropy.dataSync()[0];
      totals.push(losses.total);
    }
    return tf.mean(tf.stack(totals)) as tf.Scalar;
  };
  const { value: totalLoss, grads } = tf.variableGrads(
    lossFn,
    variableList(model)
  );
  const totalVal = totalLoss.dataSync()[0];
  if (!Number.isFinite(totalVal)) {
    totalLoss.dispose();
    Object.values(grads).forEach((g) => g.dispose());
    throw new Error(
      `non-finite loss at step ${globalStep}: total=${totalVal}, ` +
        `policy=${policySum}, value=${valueSum}, entropy=${entropySum}`
    );
  }
  optimizer.applyGradients(grads);
  totalLoss.dispose();
  Object.values(grads).forEach((g) => g.dispose());
  let rewardSum = 0;
  let count = 0;
  for (const { batch } of rollouts) {
    for (let m = 0; m < batch.rewards.length; m++) {
      rewardSum += batch.rewards[m];
      count++;
    }
  }
  const k = rollouts.length;
  return {
    step: globalStep,
    meanReward: rewardSum / count,
    policyLoss: policySum / k,
    valueLoss: valueSum / k,
    entropy: entropySum / k,
  };
}

/**
 * One epoch: `stepsPerEpoch` gradient steps, each on a freshly sampled
 * instance batch from `provider`.
 */
export function trainEpoch(
  model: Model,
  optimizer: tf.Optimizer,
  cfg: TrainConfig,
  provider: (step: number) => Instance[],
  epoch = 0
): StepMetrics[] {
  const metrics: StepMetrics[] = [];
  for (let s = 0; s < cfg.stepsPerEpoch; s++) {
    const step = epoch * cfg.stepsPerEpoch + s;
    metrics.push(trainStep(model, optimizer, provider(step), cfg, step));
  }
  return metrics;
}

export function metricsCsv(rows: StepMetrics[]): string {
  const lines = ["step,mean_reward,policy_loss,value_loss,entropy"];
  for (const r of rows) {
    lines.push(
      `${r.step},${r.meanReward},${r.policyLoss},${r.valueLoss},${r.entropy}`
    );
  }
  return lines.join("\n") + "\n";
}
