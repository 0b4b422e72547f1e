/**
 * Database sources accepted by every binding call.
 *
 * The CLI reads delimited text files of integer states (optionally with
 * an arity sidecar file) or generates uniform synthetic data from an
 * inline spec.  A third convenience form, `rows`, materializes in-memory
 * data to a temporary file for the duration of one call.
 */

import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

/** A delimited text file on disk, one record per line. */
export interface CsvSource {
  csv: string;
  /** Field delimiter; the CLI defaults to whitespace and sniffs commas. */
  delimiter?: string;
  /** Optional sidecar file declaring one arity per variable. */
  aritiesFile?: string;
}

/** Uniform random data generated inside the engine (deterministic per seed). */
export interface SyntheticSource {
  synthetic: {
    n: number;
    m: number;
    /** One arity for every variable, or an inclusive [low, high] range. */
    arity: number | [number, number];
    seed?: number;
  };
}

/** In-memory rows, written to a temporary file for the call. */
export interface RowsSource {
  rows: number[][];
  /** Declared arities; inferred from the data when omitted. */
  arities?: number[];
}

export type DatabaseSource = CsvSource | SyntheticSource | RowsSource;

export function isSynthetic(src: DatabaseSource): src is SyntheticSource {
  return "synthetic" in src;
}

export function isRows(src: DatabaseSource): src is RowsSource {
  return "rows" in src;
}

/** CLI arguments for a source plus a cleanup hook for temporaries. */
export interface MaterializedSource {
  args: string[];
  cleanup: () => void;
}

function syntheticSpec(src: SyntheticSource): string {
  const { n, m, arity, seed } = src.synthetic;
  const arityPart = Array.isArray(arity) ? `${arity[0]}-${arity[1]}` : `${arity}`;
  let spec = `n=${n},m=${m},arity=${arityPart}`;
  if (seed !== undefined) spec += `,seed=${seed}`;
  return spec;
}

/**
 * Turn a {@link DatabaseSource} into CLI arguments.  Callers must invoke
 * `cleanup()` once the subprocess has finished (it is a no-op unless the
 * source was in-memory rows).
 */
export function materializeSource(src: DatabaseSource): MaterializedSource {
  if (isSynthetic(src)) {
    return { args: ["--synthetic", syntheticSpec(src)], cleanup: () => {} };
  }
  if (isRows(src)) {
    if (src.rows.length === 0) {
      throw new Error("rows source must contain at least one record");
    }
    const dir = mkdtempSync(join(tmpdir(), "countstream-"));
    const dataPath = join(dir, "data.txt");
    writeFileSync(
      dataPath,
      src.rows.map((row) => row.join(" ")).join("\n") + "\n",
    );
    const args = ["--input", dataPath];
    if (src.arities) {
      const arityPath = join(dir, "arities.txt");
      writeFileSync(arityPath, src.arities.join(" ") + "\n");
      args.push("--arities", arityPath);
    }
    return {
      args,
      cleanup: () => rmSync(dir, { recursive: true, force: true }),
    };
  }
  const args = ["--input", src.csv];
  if (src.delimiter !== undefined) args.push("--delimiter", src.delimiter);
  if (src.aritiesFile !== undefined) args.push("--arities", src.aritiesFile);
  return { args, cleanup: () => {} };
}
