/**
 * High-level typed client for the countstream engine.
 *
 * Each method launches one CLI subprocess, parses its JSONL output and
 * regroups it into a result object.  All numeric results are exactly
 * what the engine printed: counts arrive as integers, scores as IEEE
 * doubles round-tripped through JSON.
 */

import { CountstreamCliError, linesOf, runCountstream } from "./cli.js";
import type { RunnerOptions } from "./cli.js";
import { materializeSource } from "./database.js";
import type { DatabaseSource } from "./database.js";
import type {
  LayerSummaryLine,
  RecordLine,
  StrategyName,
  StrategySummaryLine,
  TimingLine,
} from "./types.js";

/** Options shared by every subcommand. */
export interface CommonOptions {
  /** Seed for synthetic data and random query streams (default 0). */
  seed?: number;
  strategy?: StrategyName;
  /** ADtree leaf-list threshold. */
  adtreeLeaf?: number;
  /** Abort ADtree builds past this many nodes. */
  adtreeNodeCap?: number;
}

export interface QuerySpec extends CommonOptions {
  target: number;
  parents?: number[];
}

/** One non-zero contingency cell, as streamed by the engine. */
export interface CountRecord {
  /** Parent configuration: [variable, state] pairs sorted by variable. */
  config: Array<[number, number]>;
  /** Target state index. */
  k: number;
  /** Rows matching config with the target in state k. */
  nIjk: number;
  /** Rows matching config regardless of target state. */
  nIj: number;
}

export interface QueryResult {
  strategy: StrategyName;
  buildSeconds: number;
  records: CountRecord[];
}

export interface ParentSetChoice {
  target: number;
  parents: number[];
  score: number;
  candidatesScored: number;
  querySeconds: number;
  wallSeconds: number;
  queryFraction: number;
}

export interface AssociationRule {
  antecedent: number[];
  consequent: number;
  support: number;
  confidence: number;
}

export interface LearnOptions extends CommonOptions {
  maxParents?: number;
}

export interface MineOptions extends CommonOptions {
  minSupport?: number;
  minConfidence?: number;
  maxSize?: number;
}

export interface MineResult {
  rules: AssociationRule[];
  warnings: string[];
}

export interface BenchOptions extends CommonOptions {
  queries?: number;
  repetitions?: number;
  strategies?: StrategyName[] | "all";
  timeoutMs?: number;
  parallel?: number;
}

export interface BenchReport {
  buildSeconds: Partial<Record<StrategyName, number>>;
  buildFailures: Partial<Record<StrategyName, string>>;
  timings: TimingLine[];
  strategySummaries: StrategySummaryLine[];
  layerSummaries: LayerSummaryLine[];
}

function commonArgs(options: CommonOptions): string[] {
  const args: string[] = [];
  if (options.seed !== undefined) args.push("--seed", `${options.seed}`);
  if (options.adtreeLeaf !== undefined)
    args.push("--adtree-leaf", `${options.adtreeLeaf}`);
  if (options.adtreeNodeCap !== undefined)
    args.push("--adtree-node-cap", `${options.adtreeNodeCap}`);
  return args;
}

function recordFromLine(line: RecordLine): CountRecord {
  return {
    config: line.config.map(([v, s]) => [v, s]),
    k: line.k,
    nIjk: line.n_ijk,
    nIj: line.n_ij,
  };
}

export class Countstream {
  constructor(private readonly runner: RunnerOptions = {}) {}

  private async run(
    subcommand: string,
    db: DatabaseSource,
    extra: string[],
  ) {
    const source = materializeSource(db);
    try {
      return await runCountstream(
        [subcommand, ...source.args, ...extra],
        this.runner,
      );
    } finally {
      source.cleanup();
    }
  }

  private queryArgs(spec: QuerySpec, agg: string): string[] {
    const args = ["--target", `${spec.target}`, "--agg", agg];
    if (spec.parents && spec.parents.length > 0)
      args.push("--parents", spec.parents.join(","));
    if (spec.strategy) args.push("--strategy", spec.strategy);
    args.push(...commonArgs(spec));
    return args;
  }

  /** Stream every non-zero (N_ijk, N_ij) cell of one counting query. */
  async query(db: DatabaseSource, spec: QuerySpec): Promise<QueryResult> {
    const lines = await this.run("query", db, this.queryArgs(spec, "records"));
    const build = linesOf(lines, "build")[0];
    if (!build) {
      throw new CountstreamCliError("no build line in output", null, "");
    }
    return {
      strategy: build.strategy,
      buildSeconds: build.seconds,
      records: linesOf(lines, "record").map(recordFromLine),
    };
  }

  private async score(
    db: DatabaseSource,
    spec: QuerySpec,
    agg: "loglik" | "mdl",
  ): Promise<number> {
    const lines = await this.run("query", db, this.queryArgs(spec, agg));
    const score = linesOf(lines, "score")[0];
    if (!score || score.name !== agg) {
      throw new CountstreamCliError(`no ${agg} score in output`, null, "");
    }
    return score.value;
  }

  /** Maximized log-likelihood of the target given the parent set. */
  loglik(db: DatabaseSource, spec: QuerySpec): Promise<number> {
    return this.score(db, spec, "loglik");
  }

  /** MDL score (lower is better) of the target given the parent set. */
  mdl(db: DatabaseSource, spec: QuerySpec): Promise<number> {
    return this.score(db, spec, "mdl");
  }

  /** MDL-optimal parent set per target, exhaustive up to maxParents. */
  async learnParents(
    db: DatabaseSource,
    options: LearnOptions = {},
  ): Promise<ParentSetChoice[]> {
    const args = commonArgs(options);
    if (options.maxParents !== undefined)
      args.push("--max-parents", `${options.maxParents}`);
    if (options.strategy) args.push("--strategy", options.strategy);
    const lines = await this.run("learn-parents", db, args);
    return linesOf(lines, "parent_set").map((line) => ({
      target: line.target,
      parents: line.parents,
      score: line.score,
      candidatesScored: line.candidates,
      querySeconds: line.query_seconds,
      wallSeconds: line.wall_seconds,
      queryFraction: line.query_fraction,
    }));
  }

  /** Apriori association rules over a binary database. */
  async mineRules(
    db: DatabaseSource,
    options: MineOptions = {},
  ): Promise<MineResult> {
    const args = commonArgs(options);
    if (options.minSupport !== undefined)
      args.push("--min-support", `${options.minSupport}`);
    if (options.minConfidence !== undefined)
      args.push("--min-confidence", `${options.minConfidence}`);
    if (options.maxSize !== undefined)
      args.push("--max-size", `${options.maxSize}`);
    if (options.strategy) args.push("--strategy", options.strategy);
    const lines = await this.run("mine-rules", db, args);
    return {
      rules: linesOf(lines, "rule").map((line) => ({
        antecedent: line.antecedent,
        consequent: line.consequent,
        support: line.support,
        confidence: line.confidence,
      })),
      warnings: linesOf(lines, "warning").map((line) => line.message),
    };
  }

  /** Time every strategy on a seeded random query stream. */
  async benchRandom(
    db: DatabaseSource,
    options: BenchOptions = {},
  ): Promise<BenchReport> {
    const args = commonArgs(options);
    if (options.queries !== undefined)
      args.push("--queries", `${options.queries}`);
    if (options.repetitions !== undefined)
      args.push("--repetitions", `${options.repetitions}`);
    if (options.strategies !== undefined) {
      const value = Array.isArray(options.strategies)
        ? options.strategies.join(",")
        : options.strategies;
      args.push("--strategies", value);
    }
    if (options.timeoutMs !== undefined)
      args.push("--timeout-ms", `${options.timeoutMs}`);
    if (options.parallel !== undefined)
      args.push("--parallel", `${options.parallel}`);
    const lines = await this.run("bench-random", db, args);
    const buildSeconds: Partial<Record<StrategyName, number>> = {};
    for (const line of linesOf(lines, "build"))
      buildSeconds[line.strategy] = line.seconds;
    const buildFailures: Partial<Record<StrategyName, string>> = {};
    for (const line of linesOf(lines, "build_failure"))
      buildFailures[line.strategy] = line.error;
    return {
      buildSeconds,
      buildFailures,
      timings: linesOf(lines, "timing"),
      strategySummaries: linesOf(lines, "strategy_summary"),
      layerSummaries: linesOf(lines, "layer_summary"),
    };
  }
}
