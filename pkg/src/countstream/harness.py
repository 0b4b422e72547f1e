"""Benchmark and application workloads run on top of the counting strategies.

Three workloads exercise the engine the way downstream code does:

* :func:`bench_random` -- timed random counting queries (the microbenchmark);
* :func:`learn_parents` -- exhaustive MDL parent-set selection per variable;
* :func:`mine_rules` -- level-wise association-rule mining on binary data.

All three accept a strategy by name so results can be compared across
engines; every strategy must produce identical streams, so workload output
never depends on which one runs (only the timings do).
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import baselines, bitmap, radix
from .aggregators import MdlScore, NullSink
from .database import Assignment, Database, QuerySpec

__all__ = [
    "STRATEGY_NAMES",
    "Strategy",
    "make_strategies",
    "RandomQueryStream",
    "TimingRecord",
    "BenchResult",
    "bench_random",
    "ParentSetResult",
    "learn_parents",
    "AssociationRule",
    "mine_rules",
]

STRATEGY_NAMES = ("bitmap", "radix", "hash", "adtree")


class Strategy:
    """Uniform face over one engine: ``query(q, agg)`` and ``count(a)``.

    Construction performs whatever per-database preparation the engine needs
    (bitmap index, row-major view, ADtree); benchmark timings cover queries
    only, with build cost reported separately as ``build_seconds``.
    """

    name: str
    build_seconds: float = 0.0

    def query(self, q: QuerySpec, agg) -> None:
        raise NotImplementedError

    def count(self, a: Assignment) -> int:
        raise NotImplementedError


class BitmapStrategy(Strategy):
    name = "bitmap"

    def __init__(self, db: Database):
        self.db = db
        self.index = bitmap.build_bitmap_index(db)

    def query(self, q, agg):
        q.validate(self.db)
        bitmap.bitmap_query(self.index, q, agg)

    def count(self, a):
        a.validate(self.db)
        return bitmap.bitmap_count(self.index, a)


class RadixStrategy(Strategy):
    name = "radix"

    def __init__(self, db: Database):
        self.db = db
        # warm the compiled partition kernel so first-query timings are honest
        radix.buckets(db, 0, np.arange(min(db.m, 4), dtype=np.int64))

    def query(self, q, agg):
        radix.radix_query(self.db, q, agg)

    def count(self, a):
        return radix.radix_count(self.db, a)


class HashStrategy(Strategy):
    name = "hash"

    def __init__(self, db: Database):
        self.db = db
        db.row_major()  # cache the per-record view the hash pass reads

    def query(self, q, agg):
        baselines.hash_query(self.db, q, agg)

    def count(self, a):
        return baselines.hash_count(self.db, a)


class AdtreeStrategy(Strategy):
    name = "adtree"

    def __init__(self, db: Database, leaf_threshold=None, node_cap=None):
        self.db = db
        self.tree = baselines.build_adtree(
            db,
            baselines.DEFAULT_LEAF_THRESHOLD if leaf_threshold is None else leaf_threshold,
            baselines.DEFAULT_NODE_CAP if node_cap is None else node_cap,
        )

    def query(self, q, agg):
        baselines.adtree_query(self.tree, self.db, q, agg)

    def count(self, a):
        return baselines.adtree_count(self.tree, self.db, a)


def make_strategies(
    db: Database,
    names=STRATEGY_NAMES,
    adtree_leaf_threshold: int | None = None,
    adtree_node_cap: int | None = None,
) -> tuple[dict[str, Strategy], dict[str, str]]:
    """Construct the named strategies over db, timing each build.

    A strategy whose preparation fails structurally (today: the ADtree node
    cap) is reported in the second mapping instead of aborting the rest.
    """
    if isinstance(names, str):
        names = (names,)
    built: dict[str, Strategy] = {}
    failures: dict[str, str] = {}
    for name in names:
        t0 = time.perf_counter()
        try:
            if name == "bitmap":
                s = BitmapStrategy(db)
            elif name == "radix":
                s = RadixStrategy(db)
            elif name == "hash":
                s = HashStrategy(db)
            elif name == "adtree":
                s = AdtreeStrategy(db, adtree_leaf_threshold, adtree_node_cap)
            else:
                raise ValueError(f"unknown strategy {name!r}; choose from {STRATEGY_NAMES}")
        except baselines.AdtreeBuildError as e:
            failures[name] = str(e)
            continue
        s.build_seconds = time.perf_counter() - t0
        built[name] = s
    return built, failures


# ---------------------------------------------------------------------------
# random-query benchmark


@dataclass(frozen=True)
class RandomQueryStream:
    """A reproducible stream of random counting queries.

    For each query the target is uniform over the variables, the parent-set
    size uniform on [1, n-1], and the parents drawn without replacement from
    the remaining variables.  Drawing uses a Philox generator keyed by
    ``SeedSequence(seed, spawn_key=(1,))`` so a stream never shares draws
    with a synthetic database generated from the same seed.
    """

    seed: int
    count: int
    queries: tuple[QuerySpec, ...]

    @classmethod
    def generate(cls, n: int, count: int, seed: int) -> "RandomQueryStream":
        if n < 2:
            raise ValueError(f"random queries need n >= 2 variables, got n={n}")
        rng = np.random.Generator(
            np.random.Philox(np.random.SeedSequence(seed, spawn_key=(1,)))
        )
        queries = []
        for _ in range(count):
            target = int(rng.integers(0, n))
            size = int(rng.integers(1, n))  # uniform on [1, n-1]
            others = [v for v in range(n) if v != target]
            parents = rng.choice(len(others), size=size, replace=False)
            queries.append(QuerySpec(target, tuple(others[i] for i in sorted(parents))))
        return cls(seed, count, tuple(queries))


@dataclass
class TimingRecord:
    query_id: int
    strategy: str
    pa_size: int
    durations_us: tuple[float, ...]
    record_count: int
    timed_out: bool = False

    @property
    def mean_us(self) -> float:
        return sum(self.durations_us) / len(self.durations_us)


@dataclass
class BenchResult:
    stream: RandomQueryStream
    timings: list[TimingRecord]
    build_seconds: dict[str, float]
    build_failures: dict[str, str]

    def by_strategy(self, name: str) -> list[TimingRecord]:
        return [t for t in self.timings if t.strategy == name]


def _time_query(strategy: Strategy, q: QuerySpec, repetitions: int, timeout_s: float | None):
    durations = []
    sink = NullSink()
    for _ in range(repetitions):
        sink = NullSink()
        t0 = time.perf_counter()
        strategy.query(q, sink)
        durations.append((time.perf_counter() - t0) * 1e6)
        if timeout_s is not None and durations[-1] > timeout_s * 1e6:
            return durations, sink.count, True
    return durations, sink.count, False


def bench_random(
    db: Database,
    num_queries: int = 100,
    seed: int = 0,
    strategies=STRATEGY_NAMES,
    repetitions: int = 5,
    timeout_s: float | None = None,
    parallel: int = 1,
    adtree_leaf_threshold: int | None = None,
    adtree_node_cap: int | None = None,
) -> BenchResult:
    """Time every strategy on one shared stream of random queries.

    Each (query, strategy) pair is run ``repetitions`` times into a fresh
    :class:`NullSink`; durations exclude strategy construction.  A query
    whose first repetition exceeds ``timeout_s`` is marked timed out and its
    remaining repetitions skipped.  Runs are serial unless ``parallel > 1``
    (opt-in, and only worth it for throughput runs: wall-clock per-query
    numbers get noisy under contention).
    """
    stream = RandomQueryStream.generate(db.n, num_queries, seed)
    built, failures = make_strategies(db, strategies, adtree_leaf_threshold, adtree_node_cap)

    jobs = [(qid, q, name) for qid, q in enumerate(stream.queries) for name in built]

    def run(job):
        qid, q, name = job
        durations, records, timed_out = _time_query(built[name], q, repetitions, timeout_s)
        return TimingRecord(qid, name, len(q.parents), tuple(durations), records, timed_out)

    if parallel > 1:
        with ThreadPoolExecutor(max_workers=parallel) as ex:
            timings = list(ex.map(run, jobs))
    else:
        timings = [run(job) for job in jobs]
    return BenchResult(
        stream,
        timings,
        {name: s.build_seconds for name, s in built.items()},
        failures,
    )


# ---------------------------------------------------------------------------
# MDL parent-set selection


@dataclass
class ParentSetResult:
    target: int
    parents: tuple[int, ...]
    score: float
    candidates_scored: int
    query_seconds: float
    wall_seconds: float

    @property
    def query_fraction(self) -> float:
        return self.query_seconds / self.wall_seconds if self.wall_seconds > 0 else 0.0


def learn_parents(
    db: Database,
    strategy: Strategy,
    max_parents: int = 3,
    tie_eps: float = 1e-9,
) -> list[ParentSetResult]:
    """Exhaustively score all parent sets up to ``max_parents`` per target.

    Candidates are enumerated level by level (size 0, 1, ...), each scored
    with the MDL criterion via one counting query.  The argmin is returned
    with a deterministic tie-break: among scores within ``tie_eps`` (scaled
    by the score magnitude) of the best, the lexicographically smallest
    parent tuple wins, so results are identical across strategies even when
    floating-point totals differ in the last bits.
    """
    if max_parents < 0 or max_parents > db.n - 1:
        raise ValueError(f"max_parents must be in [0, n-1], got {max_parents}")
    results = []
    for target in range(db.n):
        t_wall = time.perf_counter()
        others = [v for v in range(db.n) if v != target]
        best_score = None
        best_set = None
        scored = 0
        query_seconds = 0.0
        for size in range(max_parents + 1):
            for combo in itertools.combinations(others, size):
                q = QuerySpec(target, combo)
                agg = MdlScore.for_query(db, q)
                t0 = time.perf_counter()
                strategy.query(q, agg)
                query_seconds += time.perf_counter() - t0
                score = agg.result()
                scored += 1
                if best_score is None:
                    best_score, best_set = score, combo
                    continue
                eps = tie_eps * (1.0 + abs(best_score))
                if score < best_score - eps:
                    best_score, best_set = score, combo
                elif abs(score - best_score) <= eps and combo < best_set:
                    best_set = combo
        results.append(
            ParentSetResult(
                target,
                best_set,
                best_score,
                scored,
                query_seconds,
                time.perf_counter() - t_wall,
            )
        )
    return results


# ---------------------------------------------------------------------------
# association-rule mining


@dataclass(frozen=True, order=True)
class AssociationRule:
    """antecedent => {consequent}, with support and confidence over the db."""

    antecedent: tuple[int, ...]
    consequent: int
    support: float
    confidence: float


def mine_rules(
    db: Database,
    strategy: Strategy,
    min_support: float = 0.2,
    min_confidence: float = 0.3,
    max_size: int = 6,
) -> set[AssociationRule]:
    """Level-wise frequent-itemset mining over a binary database.

    An itemset is the set of variables simultaneously in state 1; support is
    counted through the strategy's point-count operation.  Frequent itemsets
    are grown level by level with subset pruning, then every (itemset minus
    one item => item) split meeting ``min_confidence`` becomes a rule.  Both
    thresholds are inclusive (>=).
    """
    if (db.arities != 2).any():
        raise ValueError(
            "association-rule mining needs a binary database; "
            f"arities are {db.arities.tolist()}"
        )
    if min_support <= 0 or min_confidence <= 0:
        raise ValueError("thresholds must be positive")
    if max_size < 2:
        raise ValueError(f"max_size must be >= 2, got {max_size}")

    def support_of(itemset: tuple[int, ...]) -> float:
        c = strategy.count(Assignment(itemset, (1,) * len(itemset)))
        return c / db.m

    support: dict[tuple[int, ...], float] = {}
    level = []
    for v in range(db.n):
        s = support_of((v,))
        if s >= min_support:
            support[(v,)] = s
            level.append((v,))

    size = 1
    while level and size < max_size:
        size += 1
        prev = set(level)
        candidates = set()
        for a, b in itertools.combinations(sorted(level), 2):
            if a[:-1] != b[:-1]:
                continue
            cand = a + (b[-1],)
            if all(cand[:i] + cand[i + 1 :] in prev for i in range(len(cand))):
                candidates.add(cand)
        level = []
        for cand in sorted(candidates):
            s = support_of(cand)
            if s >= min_support:
                support[cand] = s
                level.append(cand)

    rules = set()
    for itemset, s in support.items():
        if len(itemset) < 2:
            continue
        for i, consequent in enumerate(itemset):
            ant = itemset[:i] + itemset[i + 1 :]
            conf = s / support[ant]
            if conf >= min_confidence:
                rules.add(AssociationRule(ant, consequent, s, conf))
    return rules
