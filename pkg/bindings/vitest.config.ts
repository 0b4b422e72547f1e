import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["test/**/*.test.ts"],
    // every call shells out to the engine, so individual tests can take
    // a few seconds on a cold interpreter
    testTimeout: 120_000,
    hookTimeout: 120_000,
  },
});
