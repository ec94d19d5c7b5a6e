/**
 * Training CLI: learn heuristic priors with PPO on random instances and
 * export the prior for one instance in the solver's HEUR v1 format.
 *
 *   node dist/train.js --n 20 --epochs 3 --metrics metrics.csv \
 *     --checkpoint model.json --export-instance-seed 0 --export prior.heur
 */

import * as fs from "node:fs";

import * as tf from "@tensorflow/tfjs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { dumpText, Instance, randomInstance } from "./instance.js";
import { createModel, DEFAULT_MODEL, loadWeights, saveWeights } from "./model.js";
import { DEFAULT_TRAIN, metricsCsv, StepMetrics, trainEpoch } from "./ppo.js";
import { exportHeuristic } from "./heurExport.js";
import { Stream } from "./rng.js";

async function main() {
  const argv = await yargs(hideBin(process.argv))
    .option("n", { type: "number", default: 20, describe: "training instance size" })
    .option("epochs", { type: "number", default: 1 })
    .option("steps", { type: "number", default: DEFAULT_TRAIN.stepsPerEpoch })
    .option("batch", { type: "number", default: DEFAULT_TRAIN.batchSize })
    .option("lr", { type: "number", default: DEFAULT_TRAIN.learningRate })
    .option("clip", { type: "number", default: DEFAULT_TRAIN.clipEps })
    .option("entropy", { type: "number", default: DEFAULT_TRAIN.entropyCoef })
    .option("rollouts", { type: "number", default: DEFAULT_TRAIN.rollouts })
    .option("seed", { type: "number", default: 0 })
    .option("overfit-seed", {
      type: "number",
      describe: "train every step on the single instance with this seed",
    })
    .option("metrics", { type: "string", describe: "write per-step CSV here" })
    .option("checkpoint", { type: "string", describe: "write weights JSON here" })
    .option("resume", { type: "string", describe: "load weights JSON before training" })
    .option("export", { type: "string", describe: "write a HEUR v1 prior here" })
    .option("export-instance-seed", { type: "number", default: 0 })
    .option("export-instance-out", {
      type: "string",
      describe: "also dump the exported instance for the solver",
    })
    .option("export-k", { type: "number", default: 20 })
    .strict()
    .parse();

  const cfg = {
    stepsPerEpoch: argv.steps,
    batchSize: argv.batch,
    learningRate: argv.lr,
    clipEps: argv.clip,
    entropyCoef: argv.entropy,
    rollouts: argv.rollouts,
    seed: argv.seed,
  };
  const model = createModel(argv.seed, DEFAULT_MODEL);
  if (argv.resume) {
    loadWeights(model, JSON.parse(fs.readFileSync(argv.resume, "utf-8")));
  }
  const optimizer = tf.train.adam(cfg.learningRate);

  const instanceSeeds = Stream.fromSeed(argv.seed, 0, 999);
  const provider = (step: number): Instance[] => {
    const out: Instance[] = [];
    for (let b = 0; b < cfg.batchSize; b++) {
      const seed =
        argv.overfitSeed !== undefined
          ? argv.overfitSeed
          : instanceSeeds.randint(2 ** 31);
      out.push(randomInstance(argv.n, seed));
    }
    return out;
  };

  const allMetrics: StepMetrics[] = [];
  for (let e = 0; e < argv.epochs; e++) {
    const rows = trainEpoch(model, optimizer, cfg, provider, e);
    allMetrics.push(...rows);
    const last = rows[rows.length - 1];
    console.log(
      `epoch ${e}: mean_reward=${last.meanReward.toFixed(4)} ` +
        `policy=${last.policyLoss.toFixed(4)} value=${last.valueLoss.toFixed(4)} ` +
        `entropy=${last.entropy.toFixed(4)}`
    );
  }

  if (argv.metrics) fs.writeFileSync(argv.metrics, metricsCsv(allMetrics));
  if (argv.checkpoint) {
    fs.writeFileSync(argv.checkpoint, JSON.stringify(saveWeights(model)));
  }
  if (argv.export) {
    const inst = randomInstance(argv.n, argv.exportInstanceSeed);
    fs.writeFileSync(argv.export, exportHeuristic(model, inst, argv.exportK));
    if (argv.exportInstanceOut) {
      fs.writeFileSync(argv.exportInstanceOut, dumpText(inst));
    }
    console.log(`exported prior for ${inst.name} (k=${Math.min(argv.exportK, inst.n - 1)})`);
  }
}

const entry = process.argv[1];
if (entry && import.meta.url === new URL(`file://${entry}`).href) {
  main().catch((err) => {
    console.error(err);
    process.exit(1);
  });
}
