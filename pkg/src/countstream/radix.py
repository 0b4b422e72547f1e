"""Radix counting strategy.

Rather than indexing anything up front, a query is answered by partitioning
the record indexes level by level: first on the states of parent 1, then each
resulting bucket on parent 2, and so on (most-significant-digit radix, one
counting-sort pass per level).  After the last parent level the surviving
buckets are exactly the observed parent configurations; one more pass on the
target variable yields the N_ijk.  Empty buckets are dropped as soon as they
appear, so work tracks the number of *observed* configurations, never the
cross-product.

Each level is one compiled pass (numba) over the live record indexes using a
single arity-length counter per segment.  Buckets that have shrunk to one
row are skimmed off instead of re-partitioned (their single future cell is
fully determined), so deep queries touch fewer and fewer rows per level.
Auxiliary storage is two alternating index arrays of length m, a
harvested-row array, and two bucket-boundary arrays -- Theta(m) regardless
of parent count -- and parents are processed in the order the query gives
them.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .aggregators import Aggregator
from .database import Assignment, Database, QuerySpec

__all__ = ["radix_query", "radix_count", "buckets"]


@njit(cache=True)
def _partition_level(col, rows_in, starts_in, r, rows_out, starts_out, keys_out,
                     finished, harvest):
    """Counting-sort every segment of rows_in by col state, dropping empties.

    Segment s of rows_in is [starts_in[s], starts_in[s+1]).  Children are
    written contiguously into rows_out; for each non-empty child bucket,
    keys_out records parent * r + state and starts_out its end boundary.

    With ``harvest`` set, single-row segments are skimmed into ``finished``
    instead of being partitioned: a singleton bucket can never split again,
    so its one row is already known to contribute exactly one (N_ijk=1,
    N_ij=1) cell whose configuration can be read straight off the record.
    Returns (non-empty child buckets, rows harvested).
    """
    nseg = starts_in.shape[0] - 1
    local = np.empty(r, np.int64)
    nb = 0
    nf = 0
    out = 0
    starts_out[0] = 0
    for s in range(nseg):
        lo = starts_in[s]
        hi = starts_in[s + 1]
        if harvest and hi - lo == 1:
            finished[nf] = rows_in[lo]
            nf += 1
            continue
        for j in range(r):
            local[j] = 0
        for p in range(lo, hi):
            local[col[rows_in[p]]] += 1
        acc = out  # empty buckets have zero width, so output stays packed
        for j in range(r):
            c = local[j]
            if c > 0:
                keys_out[nb] = s * r + j
                starts_out[nb + 1] = acc + c
                nb += 1
            local[j] = acc
            acc += c
        for p in range(lo, hi):
            k = col[rows_in[p]]
            rows_out[local[k]] = rows_in[p]
            local[k] += 1
        out += hi - lo
    return nb, nf


class _LevelBuffers:
    """The fixed set of scratch arrays one query needs: 6m + 2 words."""

    def __init__(self, m: int):
        self.rows = np.arange(m, dtype=np.int64)
        self.spare = np.empty(m, dtype=np.int64)
        self.starts = np.empty(m + 1, dtype=np.int64)
        self.starts_spare = np.empty(m + 1, dtype=np.int64)
        self.keys = np.empty(m, dtype=np.int64)
        self.finished = np.empty(m, dtype=np.int64)
        self.nf = 0
        self.starts[0] = 0
        self.starts[1] = m
        self.nb = 1

    def step(self, col: np.ndarray, r: int, harvest: bool = True) -> int:
        nb, nf = _partition_level(
            col, self.rows, self.starts[: self.nb + 1], r,
            self.spare, self.starts_spare, self.keys,
            self.finished[self.nf :], harvest,
        )
        self.rows, self.spare = self.spare, self.rows
        self.starts, self.starts_spare = self.starts_spare, self.starts
        self.nb = nb
        self.nf += nf
        return nb

    def sizes(self) -> np.ndarray:
        return np.diff(self.starts[: self.nb + 1])


def radix_query(db: Database, q: QuerySpec, agg: Aggregator, stats: dict | None = None) -> None:
    """Stream the non-zero cells of query q into agg via level-wise partitioning."""
    q.validate(db)
    buf = _LevelBuffers(db.m)
    track = agg.wants_records
    configs: list[tuple] = [()]
    for var in q.parents:
        r = int(db.arities[var])
        nb = buf.step(db.column(var), r)
        if track:
            keys = buf.keys[:nb]
            configs = [
                configs[int(key) // r] + ((var, int(key) % r),) for key in keys
            ]
        if stats is not None:
            stats.setdefault("buckets_per_level", []).append(nb)

    parent_sizes = buf.sizes()  # N_ij per surviving multi-row configuration
    harvested_early = buf.nf  # singleton configurations skimmed before the target level
    r_t = int(db.arities[q.target])
    nb = buf.step(db.column(q.target), r_t)
    keys = buf.keys[:nb]
    n_ijk = buf.sizes()
    links = keys // r_t
    n_ij = parent_sizes[links]
    if stats is not None:
        stats["levels"] = len(q.parents) + 1
        stats["aux_words"] = 4 * db.m + 2 * (db.m + 1)
        stats["configurations"] = len(parent_sizes) + harvested_early
        stats["harvested"] = buf.nf
    if track:
        ks = keys % r_t
        for t in range(nb):
            config = tuple(sorted(configs[int(links[t])]))
            agg.accept_record(config, int(ks[t]), int(n_ijk[t]), int(n_ij[t]))
        tgt = db.column(q.target)
        for row in buf.finished[: buf.nf]:
            config = tuple(sorted((p, int(db.column(p)[row])) for p in q.parents))
            agg.accept_record(config, int(tgt[row]), 1, 1)
    else:
        agg.accept_block(n_ijk, n_ij)
        if buf.nf:
            ones = np.ones(buf.nf, dtype=np.int64)
            agg.accept_block(ones, ones)


def buckets(db: Database, var: int, rows: np.ndarray) -> list[np.ndarray]:
    """Partition a bucket of record indexes by the states of one variable.

    Returns one array per state of ``var`` (empty arrays included), each
    holding the subset of ``rows`` observed in that state, in a single pass.
    """
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    r = int(db.arities[var])
    starts_in = np.array([0, len(rows)], dtype=np.int64)
    rows_out = np.empty_like(rows)
    starts_out = np.empty(r + 1, dtype=np.int64)
    keys = np.empty(max(r, 1), dtype=np.int64)
    nb, _ = _partition_level(
        db.column(var), rows, starts_in, r, rows_out, starts_out, keys,
        rows_out[:0], False,
    )
    parts = [np.empty(0, dtype=np.int64)] * r
    for t in range(nb):
        parts[int(keys[t])] = rows_out[starts_out[t] : starts_out[t + 1]].copy()
    return parts


def radix_count(db: Database, a: Assignment) -> int:
    """Point count by filtering: follow only the bucket matching each state."""
    a.validate(db)
    rows: np.ndarray | None = None
    for v, s in a.items():
        col = db.column(v)
        if rows is None:
            rows = np.flatnonzero(col == s)
        else:
            rows = rows[col[rows] == s]
        if len(rows) == 0:
            return 0
    return db.m if rows is None else len(rows)
