import { execFileSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

import { describe, expect, it } from "vitest";

import { dumpText, randomInstance } from "../src/instance.js";
import { heurText } from "../src/heurExport.js";
import { Stream } from "../src/rng.js";

const PYTHON = process.env.PYTHON ?? "python3";

function randomH(n: number, seed: number): Float64Array {
  const s = Stream.fromSeed(seed);
  const H = new Float64Array(n * n);
  for (let i = 0; i < n * n; i++) H[i] = 0.1 + s.u01();
  return H;
}

describe("HEUR v1 export", () => {
  it("writes header and k pairs per row", () => {
    const inst = randomInstance(12, 1);
    const text = heurText(inst, randomH(12, 2), 5);
    const lines = text.trim().split("\n");
    expect(lines[0]).toBe("HEUR 1 12 5");
    expect(lines).toHaveLength(13);
    for (const line of lines.slice(1)) {
      expect(line.split(" ")).toHaveLength(5);
    }
  });

  it("n=10 with k=9 covers every off-diagonal neighbor", () => {
    const inst = randomInstance(10, 3);
    const text = heurText(inst, randomH(10, 4), 9);
    const lines = text.trim().split("\n").slice(1);
    lines.forEach((line, i) => {
      const neighbors = line.split(" ").map((p) => Number(p.split(":")[0]));
      expect(new Set(neighbors).size).toBe(9);
      expect(neighbors).not.toContain(i);
    });
  });

  it("k beyond n-1 truncates", () => {
    const inst = randomInstance(6, 5);
    const text = heurText(inst, randomH(6, 6), 20);
    expect(text.trim().split("\n")[0]).toBe("HEUR 1 6 5");
  });

  it("writes the raw H values for the listed neighbors", () => {
    const inst = randomInstance(8, 7);
    const H = randomH(8, 8);
    const text = heurText(inst, H, 3);
    const row0 = text.trim().split("\n")[1];
    for (const pair of row0.split(" ")) {
      const [j, v] = pair.split(":");
      expect(Number(v)).toBe(H[0 * 8 + Number(j)]);
    }
  });

  it("rejects k < 1", () => {
    const inst = randomInstance(5, 9);
    expect(() => heurText(inst, randomH(5, 10), 0)).toThrow();
  });

  it("round-trips through the solver's loader", () => {
    const dir = fs.mkdtempSync(path.join(os.tmpdir(), "heur-"));
    const inst = randomInstance(15, 11);
    fs.writeFileSync(path.join(dir, "inst.tsp"), dumpText(inst));
    fs.writeFileSync(path.join(dir, "prior.heur"), heurText(inst, randomH(15, 12), 8));
    const script = `
import focusedaco as fa
inst = fa.load_instance(${JSON.stringify(path.join(dir, "inst.tsp"))})
nm = fa.build_neighbors(inst, k=8, bkp=0)
h = fa.load_heuristic(${JSON.stringify(path.join(dir, "prior.heur"))}, nm)
assert h.values.shape == (15, 8) and h.values.min() > 0
print("LOADED")
`;
    const out = execFileSync(PYTHON, ["-c", script], { encoding: "utf-8" });
    expect(out).toContain("LOADED");
  });
});
