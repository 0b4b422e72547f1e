/**
 * Wire types for the countstream CLI's JSONL output.
 *
 * Every line the CLI prints is a single JSON object tagged with `type`;
 * the interfaces here mirror those objects field-for-field.  Consumers
 * normally use the typed methods on {@link Countstream} instead, which
 * parse and regroup these lines into result objects.
 */

export type StrategyName = "bitmap" | "radix" | "hash" | "adtree";

export const STRATEGY_NAMES: readonly StrategyName[] = [
  "bitmap",
  "radix",
  "hash",
  "adtree",
];

/** One strategy finished building its index / tree / cached view. */
export interface BuildLine {
  type: "build";
  strategy: StrategyName;
  seconds: number;
}

/** A strategy could not be built (e.g. ADtree node cap exceeded). */
export interface BuildFailureLine {
  type: "build_failure";
  strategy: StrategyName;
  error: string;
}

/**
 * One non-zero cell of a counting query: within the parent
 * configuration `config` (pairs of [variable, state], sorted by
 * variable), target state `k` occurred `n_ijk` times out of the
 * configuration's `n_ij` rows.
 */
export interface RecordLine {
  type: "record";
  config: Array<[number, number]>;
  k: number;
  n_ijk: number;
  n_ij: number;
}

/** A single scalar score (log-likelihood or MDL) for one query. */
export interface ScoreLine {
  type: "score";
  name: "loglik" | "mdl";
  value: number;
}

/** Timing of one (query, strategy) pair in the random benchmark. */
export interface TimingLine {
  type: "timing";
  query_id: number;
  strategy: StrategyName;
  pa_size: number;
  mean_us: number;
  durations_us: number[];
  records: number;
  timed_out: boolean;
}

/** Per-strategy aggregate over the benchmark's query stream. */
export interface StrategySummaryLine {
  type: "strategy_summary";
  strategy: StrategyName;
  queries: number;
  mean_us: number;
  median_us: number;
  p95_us: number;
  timeouts: number;
}

/** Per parent-set-size aggregate for one strategy. */
export interface LayerSummaryLine {
  type: "layer_summary";
  strategy: StrategyName;
  pa_size: number;
  queries: number;
  mean_us: number;
}

/** The selected parent set for one target variable. */
export interface ParentSetLine {
  type: "parent_set";
  target: number;
  parents: number[];
  score: number;
  candidates: number;
  query_seconds: number;
  wall_seconds: number;
  query_fraction: number;
}

/** One mined association rule over a binary database. */
export interface RuleLine {
  type: "rule";
  antecedent: number[];
  consequent: number;
  support: number;
  confidence: number;
}

export interface WarningLine {
  type: "warning";
  message: string;
}

export interface ErrorLine {
  type: "error";
  message: string;
}

/** Trailing roll-up line; fields vary by subcommand. */
export interface SummaryLine {
  type: "summary";
  [key: string]: unknown;
}

export type JsonlLine =
  | BuildLine
  | BuildFailureLine
  | RecordLine
  | ScoreLine
  | TimingLine
  | StrategySummaryLine
  | LayerSummaryLine
  | ParentSetLine
  | RuleLine
  | WarningLine
  | ErrorLine
  | SummaryLine;
