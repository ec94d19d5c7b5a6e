import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["test/**/*.test.ts"],
    testTimeout: 300_000,
    hookTimeout: 60_000,
    // tfjs variables are process-global state; keep test files sequential
    fileParallelism: false,
  },
});
