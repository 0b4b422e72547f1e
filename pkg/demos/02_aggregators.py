"""
Aggregators: consuming a count stream without storing it
========================================================

Queries never return tables; they push (N_ijk, N_ij) pairs into an
aggregator object.  The built-in aggregators cover the common cases --
discarding (timing), collecting, log-likelihood, and MDL scoring -- and
the base class makes it easy to write new ones.
"""

import numpy as np

import countstream as cs
from countstream.aggregators import (Aggregator, LogLikelihood, MdlScore,
                                     NullSink, RecordCollector)
from countstream.harness import BitmapStrategy

db = cs.generate_synthetic(n=6, m=5000, arities=3, seed=42)
strategy = BitmapStrategy(db)
query = cs.QuerySpec(target=0, parents=(2, 4))

# ---------------------------------------------------------------------
# NullSink: accepts everything, keeps nothing.  Useful for timing the
# counting machinery itself.
# ---------------------------------------------------------------------
strategy.query(query, NullSink())

# ---------------------------------------------------------------------
# LogLikelihood accumulates  sum N_ijk * ln(N_ijk / N_ij),  the maximized
# multinomial log-likelihood of the target given its parents.
# ---------------------------------------------------------------------
loglik = LogLikelihood()
strategy.query(query, loglik)
print(f"log-likelihood of X0 | X2, X4: {loglik.result():.4f}")

# ---------------------------------------------------------------------
# MdlScore adds the parameter-cost penalty ln(m)/2 * (r_i - 1) * q_i.
# Lower is better; comparing candidate parent sets is one-line-per-set.
# ---------------------------------------------------------------------
for parents in [(), (2,), (2, 4), (1, 2, 4)]:
    q = cs.QuerySpec(target=0, parents=parents)
    agg = MdlScore.for_query(db, q)
    strategy.query(q, agg)
    print(f"MDL of X0 | {parents or '{}'}: {agg.result():.2f}")

# ---------------------------------------------------------------------
# Custom aggregators: subclass and override accept().  Aggregators must
# be order-independent, because strategies stream cells in whatever
# order their data structure makes natural.
# ---------------------------------------------------------------------
class LargestCell(Aggregator):
    """Tracks the largest conditional probability seen in the stream."""

    def __init__(self):
        self.best = 0.0

    def accept(self, n_ijk, n_ij):
        self.best = max(self.best, n_ijk / n_ij)

    def result(self):
        return self.best


largest = LargestCell()
strategy.query(query, largest)
print(f"largest N_ijk/N_ij cell: {largest.result():.3f}")

# ---------------------------------------------------------------------
# Aggregators that need to know *which* cell a count belongs to set
# wants_records = True and receive the parent configuration explicitly.
# ---------------------------------------------------------------------
collector = RecordCollector()
strategy.query(query, collector)
records = collector.result()
widest = max(records, key=lambda r: r.n_ij)
config = ", ".join(f"X{v}={s}" for v, s in widest.config)
print(f"most populated parent configuration: ({config}) with N_ij={widest.n_ij}")
