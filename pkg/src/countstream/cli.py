"""Command-line front end.

Four subcommands: ``bench-random`` (timed random queries), ``learn-parents``
(MDL parent-set selection), ``mine-rules`` (association rules), and ``query``
(run one counting query and print its records or score).  Results are emitted
as JSON lines -- one self-describing object per line, with a ``type`` field --
or as CSV of the per-item rows via ``--format csv``.

Exit codes: 0 on success (including reported strategy build failures),
1 on data errors (unreadable or malformed input, non-binary mining input),
2 on usage errors (argparse).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time

import numpy as np

from .aggregators import LogLikelihood, MdlScore, RecordCollector
from .database import (
    Database,
    DatabaseLoadError,
    InvalidQueryError,
    QuerySpec,
    generate_synthetic,
    load_arities,
    load_csv,
)
from .harness import (
    STRATEGY_NAMES,
    bench_random,
    learn_parents,
    make_strategies,
    mine_rules,
)

__all__ = ["main"]


def _parse_synthetic(spec: str, default_seed: int):
    """Parse 'n=8,m=1024,arity=3[,seed=4]'; arity may be K or LO-HI."""
    fields = {}
    for part in spec.split(","):
        if "=" not in part:
            raise ValueError(f"bad --synthetic field {part!r}; expected key=value")
        k, v = part.split("=", 1)
        fields[k.strip()] = v.strip()
    try:
        n = int(fields.pop("n"))
        m = int(fields.pop("m"))
        arity = fields.pop("arity")
        seed = int(fields.pop("seed", default_seed))
    except KeyError as e:
        raise ValueError(f"--synthetic needs n=, m= and arity= (missing {e})") from None
    if fields:
        raise ValueError(f"unknown --synthetic fields: {sorted(fields)}")
    if "-" in arity:
        lo, hi = (int(x) for x in arity.split("-", 1))
        if lo < 1 or hi < lo:
            raise ValueError(f"bad arity range {arity!r}")
        rng = np.random.Generator(
            np.random.Philox(np.random.SeedSequence(seed, spawn_key=(2,)))
        )
        arities = rng.integers(lo, hi + 1, size=n).tolist()
    else:
        arities = int(arity)
    return generate_synthetic(n, m, arities, seed=seed)


def _load_db(args) -> Database:
    if args.synthetic and args.input:
        raise ValueError("--input and --synthetic are mutually exclusive")
    if args.synthetic:
        return _parse_synthetic(args.synthetic, args.seed)
    if args.input:
        arities = load_arities(args.arities) if args.arities else None
        return load_csv(args.input, delimiter=args.delimiter, arities=arities)
    raise ValueError("one of --input or --synthetic is required")


def _add_db_args(p: argparse.ArgumentParser):
    p.add_argument("--input", help="delimited text file of integer states, one record per line")
    p.add_argument("--delimiter", default=None, help="field delimiter (default: any whitespace)")
    p.add_argument("--arities", help="sidecar file declaring one arity per variable")
    p.add_argument("--synthetic", metavar="n=..,m=..,arity=..",
                   help="generate a uniform random database instead of reading --input")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for synthetic data and query streams (default 0)")
    p.add_argument("--adtree-leaf", type=int, default=None,
                   help="ADtree leaf-list threshold (default 16)")
    p.add_argument("--adtree-node-cap", type=int, default=None,
                   help="abort ADtree builds past this many nodes (default 2^26)")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")


def _parse_strategies(value: str) -> tuple[str, ...]:
    if value == "all":
        return STRATEGY_NAMES
    names = tuple(s.strip() for s in value.split(",") if s.strip())
    for s in names:
        if s not in STRATEGY_NAMES:
            raise ValueError(f"unknown strategy {s!r}; choose from {', '.join(STRATEGY_NAMES)} or 'all'")
    if not names:
        raise ValueError("no strategies given")
    return names


class _Emitter:
    """Writes result lines as JSONL, or as CSV of the designated row type."""

    def __init__(self, fh, fmt: str, csv_type: str):
        self.fh = fh
        self.fmt = fmt
        self.csv_type = csv_type
        self._writer = None

    def emit(self, obj: dict):
        if self.fmt == "jsonl":
            self.fh.write(json.dumps(obj) + "\n")
            return
        if obj.get("type") != self.csv_type:
            return
        row = {k: v for k, v in obj.items() if k != "type"}
        for k, v in row.items():
            if isinstance(v, (list, tuple)):
                row[k] = " ".join(str(x) for x in v)
        if self._writer is None:
            self._writer = csv.DictWriter(self.fh, fieldnames=list(row))
            self._writer.writeheader()
        self._writer.writerow(row)


def _emit_builds(emitter, built, failures):
    for name, s in built.items():
        emitter.emit({"type": "build", "strategy": name, "seconds": s.build_seconds})
    for name, err in failures.items():
        emitter.emit({"type": "build_failure", "strategy": name, "error": err})


def _cmd_bench_random(args, emitter):
    db = _load_db(args)
    result = bench_random(
        db,
        num_queries=args.queries,
        seed=args.seed,
        strategies=_parse_strategies(args.strategies),
        repetitions=args.repetitions,
        timeout_s=args.timeout_ms / 1000 if args.timeout_ms else None,
        parallel=args.parallel,
        adtree_leaf_threshold=args.adtree_leaf,
        adtree_node_cap=args.adtree_node_cap,
    )
    for name, secs in result.build_seconds.items():
        emitter.emit({"type": "build", "strategy": name, "seconds": secs})
    for name, err in result.build_failures.items():
        emitter.emit({"type": "build_failure", "strategy": name, "error": err})
    for t in result.timings:
        emitter.emit({
            "type": "timing", "query_id": t.query_id, "strategy": t.strategy,
            "pa_size": t.pa_size, "mean_us": t.mean_us,
            "durations_us": list(t.durations_us), "records": t.record_count,
            "timed_out": t.timed_out,
        })
    for name in result.build_seconds:
        rows = result.by_strategy(name)
        if not rows:
            continue
        means = np.array([t.mean_us for t in rows])
        emitter.emit({
            "type": "strategy_summary", "strategy": name, "queries": len(rows),
            "mean_us": float(means.mean()), "median_us": float(np.median(means)),
            "p95_us": float(np.percentile(means, 95)),
            "timeouts": sum(t.timed_out for t in rows),
        })
        for pa in sorted({t.pa_size for t in rows}):
            layer = [t.mean_us for t in rows if t.pa_size == pa]
            emitter.emit({
                "type": "layer_summary", "strategy": name, "pa_size": pa,
                "queries": len(layer), "mean_us": float(np.mean(layer)),
            })
    return 0


def _cmd_learn_parents(args, emitter):
    db = _load_db(args)
    built, failures = make_strategies(
        db, (args.strategy,), args.adtree_leaf, args.adtree_node_cap
    )
    _emit_builds(emitter, built, failures)
    if args.strategy not in built:
        return 1
    results = learn_parents(db, built[args.strategy], max_parents=args.max_parents)
    for r in results:
        emitter.emit({
            "type": "parent_set", "target": r.target, "parents": list(r.parents),
            "score": r.score, "candidates": r.candidates_scored,
            "query_seconds": r.query_seconds, "wall_seconds": r.wall_seconds,
            "query_fraction": r.query_fraction,
        })
    total_wall = sum(r.wall_seconds for r in results)
    total_query = sum(r.query_seconds for r in results)
    emitter.emit({
        "type": "summary", "targets": len(results),
        "candidates": sum(r.candidates_scored for r in results),
        "query_seconds": total_query, "wall_seconds": total_wall,
        "query_fraction": total_query / total_wall if total_wall else 0.0,
    })
    return 0


def _cmd_mine_rules(args, emitter):
    db = _load_db(args)
    if args.min_support > 1 or args.min_confidence > 1:
        emitter.emit({
            "type": "warning",
            "message": "threshold above 1: no itemset can qualify, rule set will be empty",
        })
    built, failures = make_strategies(
        db, (args.strategy,), args.adtree_leaf, args.adtree_node_cap
    )
    _emit_builds(emitter, built, failures)
    if args.strategy not in built:
        return 1
    t0 = time.perf_counter()
    rules = mine_rules(
        db, built[args.strategy],
        min_support=args.min_support,
        min_confidence=args.min_confidence,
        max_size=args.max_size,
    )
    elapsed = time.perf_counter() - t0
    for r in sorted(rules, key=lambda r: (len(r.antecedent), r.antecedent, r.consequent)):
        emitter.emit({
            "type": "rule", "antecedent": list(r.antecedent), "consequent": r.consequent,
            "support": r.support, "confidence": r.confidence,
        })
    emitter.emit({"type": "summary", "rules": len(rules), "seconds": elapsed})
    return 0


def _cmd_query(args, emitter):
    db = _load_db(args)
    parents = tuple(int(p) for p in args.parents.split(",") if p.strip()) if args.parents else ()
    q = QuerySpec(args.target, parents)
    q.validate(db)
    built, failures = make_strategies(
        db, (args.strategy,), args.adtree_leaf, args.adtree_node_cap
    )
    _emit_builds(emitter, built, failures)
    if args.strategy not in built:
        return 1
    strategy = built[args.strategy]
    if args.agg == "records":
        collector = RecordCollector()
        strategy.query(q, collector)
        records = sorted(collector.result())
        for rec in records:
            emitter.emit({
                "type": "record", "config": [list(pair) for pair in rec.config],
                "k": rec.k, "n_ijk": rec.n_ijk, "n_ij": rec.n_ij,
            })
        emitter.emit({"type": "summary", "records": len(records)})
    else:
        agg = LogLikelihood() if args.agg == "loglik" else MdlScore.for_query(db, q)
        strategy.query(q, agg)
        emitter.emit({"type": "score", "name": args.agg, "value": agg.result()})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="countstream",
        description="Counting queries over categorical data: benchmarks and applications.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bench-random", help="time strategies on a random query stream")
    _add_db_args(p)
    p.add_argument("--queries", type=int, default=100, help="number of random queries (default 100)")
    p.add_argument("--repetitions", type=int, default=5, help="timed repetitions per query (default 5)")
    p.add_argument("--strategies", default="all", help="comma-separated strategy names, or 'all'")
    p.add_argument("--timeout-ms", type=float, default=None,
                   help="mark a query timed out past this many milliseconds")
    p.add_argument("--parallel", type=int, default=1, help="worker threads (default 1: serial)")
    p.set_defaults(func=_cmd_bench_random, csv_type="timing")

    p = sub.add_parser("learn-parents", help="select MDL-optimal parent sets per variable")
    _add_db_args(p)
    p.add_argument("--max-parents", type=int, default=3)
    p.add_argument("--strategy", default="radix", choices=STRATEGY_NAMES)
    p.set_defaults(func=_cmd_learn_parents, csv_type="parent_set")

    p = sub.add_parser("mine-rules", help="mine association rules from a binary database")
    _add_db_args(p)
    p.add_argument("--min-support", type=float, default=0.2)
    p.add_argument("--min-confidence", type=float, default=0.3)
    p.add_argument("--max-size", type=int, default=6, help="largest itemset size (default 6)")
    p.add_argument("--strategy", default="bitmap", choices=STRATEGY_NAMES)
    p.set_defaults(func=_cmd_mine_rules, csv_type="rule")

    p = sub.add_parser("query", help="run one counting query")
    _add_db_args(p)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--parents", default="", help="comma-separated parent variable indexes")
    p.add_argument("--strategy", default="radix", choices=STRATEGY_NAMES)
    p.add_argument("--agg", default="records", choices=("records", "loglik", "mdl"),
                   help="what to emit: the record stream, or a single score")
    p.set_defaults(func=_cmd_query, csv_type="record")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    emitter = _Emitter(out, args.format, args.csv_type)
    try:
        return args.func(args, emitter)
    except (DatabaseLoadError, InvalidQueryError, ValueError, OSError) as e:
        sys.stderr.write(json.dumps({"type": "error", "message": str(e)}) + "\n")
        return 1
    finally:
        if args.out:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
