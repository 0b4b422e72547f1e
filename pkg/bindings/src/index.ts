export { Countstream } from "./client.js";
export type {
  AssociationRule,
  BenchOptions,
  BenchReport,
  CommonOptions,
  CountRecord,
  LearnOptions,
  MineOptions,
  MineResult,
  ParentSetChoice,
  QueryResult,
  QuerySpec,
} from "./client.js";
export { CountstreamCliError, linesOf, runCountstream } from "./cli.js";
export type { RunnerOptions } from "./cli.js";
export { isRows, isSynthetic, materializeSource } from "./database.js";
export type {
  CsvSource,
  DatabaseSource,
  RowsSource,
  SyntheticSource,
} from "./database.js";
export { STRATEGY_NAMES } from "./types.js";
export type {
  BuildFailureLine,
  BuildLine,
  ErrorLine,
  JsonlLine,
  LayerSummaryLine,
  ParentSetLine,
  RecordLine,
  RuleLine,
  ScoreLine,
  StrategyName,
  StrategySummaryLine,
  SummaryLine,
  TimingLine,
  WarningLine,
} from "./types.js";
