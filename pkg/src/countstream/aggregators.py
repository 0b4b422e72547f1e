"""Aggregators: order-independent consumers of streamed (N_ijk, N_ij) pairs.

A counting query does not materialize its contingency table.  Instead the
strategy walks the non-zero cells and feeds each one to an aggregator.  The
contract every aggregator relies on:

* exactly one call per non-zero (j, k) cell, in no particular order;
* ``n_ijk >= 1`` and ``n_ijk <= n_ij`` for every call;
* the N_ij delivered with a cell is the full parent-configuration total,
  i.e. the sum of N_ijk over k for that j.

``accept`` receives one cell.  Strategies that produce whole blocks of cells
at once call ``accept_block`` with numpy arrays; the base implementation just
loops, and the built-in aggregators override it with vectorized versions so
streaming stays cheap.  Aggregators that need to know *which* configuration a
cell belongs to (e.g. :class:`RecordCollector`) set ``wants_records = True``
and receive ``accept_record`` calls instead; strategies only pay the cost of
tracking configuration identity when asked.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

__all__ = [
    "Aggregator",
    "AggregatorContractError",
    "NullSink",
    "RecordCollector",
    "LogLikelihood",
    "MdlScore",
    "Record",
    "mdl_score",
]


class AggregatorContractError(ValueError):
    """A strategy fed an aggregator something the streaming contract forbids."""


class Record(NamedTuple):
    """One non-zero contingency cell.

    ``config`` identifies the parent configuration j as ``((var, state), ...)``
    sorted by variable index, so records from different strategies compare
    equal regardless of internal parent ordering.
    """

    config: tuple[tuple[int, int], ...]
    k: int
    n_ijk: int
    n_ij: int


class Aggregator:
    """Base class; subclasses override ``accept`` and ``result``."""

    #: set True to receive accept_record (with configuration identity) instead
    wants_records = False

    def accept(self, n_ijk: int, n_ij: int) -> None:
        raise NotImplementedError

    def accept_block(self, n_ijk: np.ndarray, n_ij: np.ndarray) -> None:
        """Bulk form of ``accept``; arrays are parallel and same length."""
        for a, b in zip(n_ijk.tolist(), n_ij.tolist()):
            self.accept(a, b)

    def accept_record(self, config, k: int, n_ijk: int, n_ij: int) -> None:
        """Cell plus configuration identity; defaults to dropping the identity."""
        self.accept(n_ijk, n_ij)

    def result(self):
        raise NotImplementedError


class NullSink(Aggregator):
    """Counts streamed cells and otherwise discards them (benchmark sink)."""

    def __init__(self):
        self.count = 0

    def accept(self, n_ijk, n_ij):
        self.count += 1

    def accept_block(self, n_ijk, n_ij):
        self.count += len(n_ijk)

    def result(self) -> int:
        return self.count


class RecordCollector(Aggregator):
    """Collects every streamed cell keyed by (configuration, target state).

    Duplicate delivery of a cell is a strategy bug and raises
    :class:`AggregatorContractError` immediately.
    """

    wants_records = True

    def __init__(self):
        self._records: dict[tuple, Record] = {}

    def accept_record(self, config, k, n_ijk, n_ij):
        key = (config, k)
        if key in self._records:
            raise AggregatorContractError(
                f"cell {key} delivered twice (n_ijk={n_ijk}, previous={self._records[key]})"
            )
        self._records[key] = Record(config, k, int(n_ijk), int(n_ij))

    def accept(self, n_ijk, n_ij):
        raise AggregatorContractError(
            "RecordCollector needs configuration identity; "
            "strategies must use the accept_record path"
        )

    def result(self) -> set[Record]:
        return set(self._records.values())

    def __len__(self) -> int:
        return len(self._records)


class LogLikelihood(Aggregator):
    """Accumulates sum of N_ijk * ln(N_ijk / N_ij) over streamed cells.

    For cells drawn from one counting query this equals the family's maximized
    log-likelihood contribution, which is always <= 0.  Contract violations
    (non-positive counts, N_ijk > N_ij) raise rather than poison the total.
    """

    def __init__(self):
        self.total = 0.0

    def accept(self, n_ijk, n_ij):
        if n_ijk <= 0 or n_ij <= 0:
            raise AggregatorContractError(f"non-positive count: n_ijk={n_ijk}, n_ij={n_ij}")
        if n_ijk > n_ij:
            raise AggregatorContractError(f"n_ijk={n_ijk} exceeds n_ij={n_ij}")
        self.total += n_ijk * math.log(n_ijk / n_ij)

    def accept_block(self, n_ijk, n_ij):
        n_ijk = np.asarray(n_ijk)
        n_ij = np.asarray(n_ij)
        if len(n_ijk) == 0:
            return
        if n_ijk.min() <= 0 or n_ij.min() <= 0:
            raise AggregatorContractError("non-positive count in block")
        if (n_ijk > n_ij).any():
            raise AggregatorContractError("n_ijk exceeds n_ij in block")
        x = n_ijk.astype(np.float64)
        self.total += float(np.sum(x * np.log(x / n_ij)))

    def result(self) -> float:
        return self.total


class MdlScore(Aggregator):
    """MDL network score for one family: -loglik + ln(m)/2 * (r_i - 1) * q_i.

    The structure penalty depends on quantities no streamed cell carries --
    the record count m, the target arity r_i, and the number of possible
    parent configurations q_i -- so they are supplied at construction (use
    :meth:`for_query`).  Lower scores are better.
    """

    def __init__(self, m: int, r_i: int, q_i: int):
        self.m = int(m)
        self.r_i = int(r_i)
        self.q_i = int(q_i)
        self._loglik = LogLikelihood()

    @classmethod
    def for_query(cls, db, q) -> "MdlScore":
        q_i = 1
        for p in q.parents:
            q_i *= int(db.arities[p])
        return cls(db.m, int(db.arities[q.target]), q_i)

    def accept(self, n_ijk, n_ij):
        self._loglik.accept(n_ijk, n_ij)

    def accept_block(self, n_ijk, n_ij):
        self._loglik.accept_block(n_ijk, n_ij)

    def result(self) -> float:
        penalty = 0.5 * math.log(self.m) * (self.r_i - 1) * self.q_i
        return -self._loglik.result() + penalty


def mdl_score(db, q, strategy) -> float:
    """Run query q through a strategy and return the family's MDL score.

    ``strategy`` is either an object exposing ``query(q, agg)`` or a bare
    callable ``f(q, agg)``.
    """
    agg = MdlScore.for_query(db, q)
    runner = strategy.query if hasattr(strategy, "query") else strategy
    runner(q, agg)
    return agg.result()
