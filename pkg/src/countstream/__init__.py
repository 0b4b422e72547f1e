"""Counting queries over categorical databases.

The core operation: given a target variable X_i and a parent set Pa, stream
every non-zero cell (N_ijk, N_ij) of the induced contingency table into an
aggregator, without materializing the table.  Two streaming strategies
(bitmap intersection and level-wise radix partitioning) are provided next to
two baselines (hash-table counting and a sparse ADtree), all answering from
the same databases and feeding the same aggregators, so they are freely
interchangeable and cross-checkable.
"""

from .aggregators import (
    Aggregator,
    AggregatorContractError,
    LogLikelihood,
    MdlScore,
    NullSink,
    Record,
    RecordCollector,
    mdl_score,
)
from .baselines import (
    ADtree,
    AdtreeBuildError,
    adtree_count,
    adtree_query,
    build_adtree,
    hash_count,
    hash_query,
)
from .bitmap import BitmapIndex, bitmap_count, bitmap_query, build_bitmap_index
from .database import (
    Assignment,
    Database,
    DatabaseLoadError,
    InvalidQueryError,
    QuerySpec,
    generate_synthetic,
    load_csv,
)
from .harness import (
    STRATEGY_NAMES,
    AssociationRule,
    BenchResult,
    ParentSetResult,
    RandomQueryStream,
    Strategy,
    bench_random,
    learn_parents,
    make_strategies,
    mine_rules,
)
from .oracle import oracle_count, oracle_query
from .radix import buckets, radix_count, radix_query

__version__ = "0.1.0"

__all__ = [
    "Aggregator",
    "AggregatorContractError",
    "LogLikelihood",
    "MdlScore",
    "NullSink",
    "Record",
    "RecordCollector",
    "mdl_score",
    "ADtree",
    "AdtreeBuildError",
    "adtree_count",
    "adtree_query",
    "build_adtree",
    "hash_count",
    "hash_query",
    "BitmapIndex",
    "bitmap_count",
    "bitmap_query",
    "build_bitmap_index",
    "Assignment",
    "Database",
    "DatabaseLoadError",
    "InvalidQueryError",
    "QuerySpec",
    "generate_synthetic",
    "load_csv",
    "STRATEGY_NAMES",
    "AssociationRule",
    "BenchResult",
    "ParentSetResult",
    "RandomQueryStream",
    "Strategy",
    "bench_random",
    "learn_parents",
    "make_strategies",
    "mine_rules",
    "oracle_count",
    "oracle_query",
    "buckets",
    "radix_count",
    "radix_query",
]
