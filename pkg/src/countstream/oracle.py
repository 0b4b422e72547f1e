"""Naive reference implementations used to cross-check every strategy.

These walk the full cross-product of parent states with one boolean mask per
configuration -- unusably slow beyond toy sizes, but too simple to be wrong.
"""

from __future__ import annotations

import itertools

import numpy as np

from .aggregators import Record
from .database import Assignment, Database, QuerySpec

__all__ = ["oracle_query", "oracle_count"]


def oracle_query(db: Database, q: QuerySpec, exhaustive_limit: int = 4096) -> set[Record]:
    """Enumerate the non-zero cells of a counting query by brute force.

    Returns the full record set: one :class:`~countstream.aggregators.Record`
    per (parent configuration, target state) with N_ijk > 0, where N_ij is the
    number of records matching the configuration regardless of target state.

    Every count comes from a definitional boolean mask over the columns.
    When the parent cross-product exceeds ``exhaustive_limit`` the candidate
    configurations are narrowed to those actually observed (via
    ``np.unique``); this only skips configurations whose mask would be empty.
    """
    q.validate(db)
    target_col = db.column(q.target)
    r_t = int(db.arities[q.target])
    space = 1
    for p in q.parents:
        space *= int(db.arities[p])
    if space <= exhaustive_limit:
        candidates = itertools.product(*(range(int(db.arities[p])) for p in q.parents))
    else:
        observed = np.unique(db.row_major()[:, list(q.parents)], axis=0)
        candidates = (tuple(int(s) for s in row) for row in observed)
    out: set[Record] = set()
    for states in candidates:
        mask = np.ones(db.m, dtype=bool)
        for p, s in zip(q.parents, states):
            mask &= db.column(p) == s
        n_ij = int(mask.sum())
        if n_ij == 0:
            continue
        config = tuple(sorted(zip(q.parents, states)))
        hits = target_col[mask]
        for k in range(r_t):
            n_ijk = int(np.count_nonzero(hits == k))
            if n_ijk:
                out.add(Record(config, k, n_ijk, n_ij))
    return out


def oracle_count(db: Database, a: Assignment) -> int:
    """Count records matching a partial assignment with one full scan."""
    a.validate(db)
    mask = np.ones(db.m, dtype=bool)
    for v, s in a.items():
        mask &= db.column(v) == s
    return int(mask.sum())
