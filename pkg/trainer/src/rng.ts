/**
 * splitmix64 streams, matching the solver's documented recipe bit for bit:
 * state advances by the 64-bit golden-ratio constant, outputs pass through
 * the murmur-style finalizer, uniform doubles take the top 53 bits. Streams
 * are derived by chaining the finalizer over (seed, iteration, ant).
 */

const MASK64 = (1n << 64n) - 1n;
const GAMMA = 0x9e3779b97f4a7c15n;
const MIX1 = 0xbf58476d1ce4e5b9n;
const MIX2 = 0x94d049bb133111ebn;

export function mix64(z: bigint): bigint {
  z &= MASK64;
  z = ((z ^ (z >> 30n)) * MIX1) & MASK64;
  z = ((z ^ (z >> 27n)) * MIX2) & MASK64;
  return z ^ (z >> 31n);
}

export function deriveState(seed: number | bigint, iteration = 0, ant = 0): bigint {
  let s = mix64(BigInt(seed));
  s = mix64(s ^ ((BigInt(iteration + 1) * GAMMA) & MASK64));
  s = mix64(s ^ ((BigInt(ant + 1) * GAMMA) & MASK64));
  return s;
}

export class Stream {
  private state: bigint;

  constructor(state: bigint) {
    this.state = state & MASK64;
  }

  static fromSeed(seed: number | bigint, iteration = 0, ant = 0): Stream {
    return new Stream(deriveState(seed, iteration, ant));
  }

  /** Uniform double in [0, 1). */
  u01(): number {
    this.state = (this.state + GAMMA) & MASK64;
    const z = mix64_out(this.state);
    return Number(z >> 11n) * 2 ** -53;
  }

  /** Uniform integer in [0, m). */
  randint(m: number): number {
    const r = Math.floor(this.u01() * m);
    return r >= m ? m - 1 : r;
  }

  /** Index sampled proportionally to the given nonnegative weights. */
  roulette(weights: number[]): number {
    let total = 0;
    for (const w of weights) total += w;
    const r = this.u01() * total;
    let acc = 0;
    for (let i = 0; i < weights.length; i++) {
      acc += weights[i];
      if (r < acc) return i;
    }
    return weights.length - 1;
  }
}

function mix64_out(s: bigint): bigint {
  let z = s;
  z = ((z ^ (z >> 30n)) * MIX1) & MASK64;
  z = ((z ^ (z >> 27n)) * MIX2) & MASK64;
  return z ^ (z >> 31n);
}
