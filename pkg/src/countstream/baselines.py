"""Baseline strategies: a hash-table counter and a sparse ADtree.

The hash baseline is the straightforward competitor: walk the records once,
keyed by parent configuration, incrementing a per-target-state counter array
held in a dict.  The ADtree is the precomputation-heavy competitor: an index
of cached counts over all assignments, kept tractable by eliding each node's
most common value (reconstructed by subtraction at query time) and by storing
plain record lists below a count threshold.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .aggregators import Aggregator
from .database import Assignment, Database, InvalidQueryError, QuerySpec

__all__ = [
    "hash_query",
    "hash_count",
    "ADtree",
    "AdtreeBuildError",
    "build_adtree",
    "adtree_query",
    "adtree_count",
    "DEFAULT_LEAF_THRESHOLD",
    "DEFAULT_NODE_CAP",
]


# ---------------------------------------------------------------------------
# hash-table baseline


def _config_keys(db: Database, parents: tuple[int, ...]):
    """Map each record to a hashable parent-configuration key.

    When the parent state space fits in 64 bits the key is a mixed-radix
    integer (state_0 + r_0 * state_1 + ...); otherwise the raw state bytes.
    Returns (keys, decode) where decode maps a key back to a state tuple.
    """
    rm = db.row_major()
    sub = rm[:, list(parents)]
    radices = [int(db.arities[p]) for p in parents]
    space = 1
    for r in radices:
        space *= r
    if space <= 2**63 - 1:
        strides = np.empty(len(parents), dtype=np.int64)
        acc = 1
        for t, r in enumerate(radices):
            strides[t] = acc
            acc *= r
        keys = sub @ strides if parents else np.zeros(db.m, dtype=np.int64)

        def decode(key: int) -> tuple[int, ...]:
            out = []
            for r in radices:
                key, s = divmod(key, r)
                out.append(s)
            return tuple(out)

        return keys.tolist(), decode

    packed = np.ascontiguousarray(sub)
    keys = packed.view(f"V{packed.itemsize * len(parents)}").ravel().tolist()  # -> bytes

    def decode(key: bytes) -> tuple[int, ...]:
        return tuple(int(x) for x in np.frombuffer(key, dtype=np.int32))

    return keys, decode


def hash_query(db: Database, q: QuerySpec, agg: Aggregator) -> None:
    """Stream query q's non-zero cells by one hashed pass over the records."""
    q.validate(db)
    keys, decode = _config_keys(db, q.parents)
    tgt = db.column(q.target).tolist()
    r_t = int(db.arities[q.target])
    table: dict = {}
    get = table.get
    for key, k in zip(keys, tgt):
        cell = get(key)
        if cell is None:
            cell = table[key] = [0] * r_t
        cell[k] += 1
    if agg.wants_records:
        for key, cell in table.items():
            n_ij = sum(cell)
            config = tuple(sorted(zip(q.parents, decode(key))))
            for k, c in enumerate(cell):
                if c:
                    agg.accept_record(config, k, c, n_ij)
    else:
        n_ijk = []
        n_ij = []
        for cell in table.values():
            tot = sum(cell)
            for c in cell:
                if c:
                    n_ijk.append(c)
                    n_ij.append(tot)
        agg.accept_block(np.asarray(n_ijk, dtype=np.int64), np.asarray(n_ij, dtype=np.int64))


def hash_count(db: Database, a: Assignment) -> int:
    """Point count for the hash baseline: a hash-free direct column scan."""
    a.validate(db)
    mask = np.ones(db.m, dtype=bool)
    for v, s in a.items():
        mask &= db.column(v) == s
    return int(mask.sum())


# ---------------------------------------------------------------------------
# sparse ADtree baseline

DEFAULT_LEAF_THRESHOLD = 16
DEFAULT_NODE_CAP = 2**26


class AdtreeBuildError(RuntimeError):
    """Raised when an ADtree build exceeds its node budget.

    Carries ``nodes`` (the count at abandonment) and ``cap`` so callers can
    report the failure and fall back to other strategies.
    """

    def __init__(self, nodes: int, cap: int):
        super().__init__(
            f"ADtree build abandoned: node count reached {nodes}, cap is {cap}"
        )
        self.nodes = nodes
        self.cap = cap


class _AdNode:
    __slots__ = ("count", "rows", "varies")

    def __init__(self, count: int):
        self.count = count
        self.rows: np.ndarray | None = None  # set on leaf-list nodes
        self.varies: dict[int, "_VaryNode"] | None = None


class _VaryNode:
    __slots__ = ("mcv", "children")

    def __init__(self, mcv: int, children: dict[int, _AdNode]):
        self.mcv = mcv
        self.children = children


@dataclass
class ADtree:
    """Sparse all-dimensions count index over a database.

    Per (node, remaining variable) the most common state's child is elided;
    its counts are reconstructed at query time by subtracting the stored
    siblings from the node total.  Nodes covering at most ``leaf_threshold``
    records store their record indexes instead of expanding (counted on
    demand by scanning the list).
    """

    root: _AdNode
    leaf_threshold: int
    node_count: int


def build_adtree(
    db: Database,
    leaf_threshold: int = DEFAULT_LEAF_THRESHOLD,
    node_cap: int = DEFAULT_NODE_CAP,
) -> ADtree:
    """Build the sparse ADtree, raising :class:`AdtreeBuildError` past node_cap.

    ``leaf_threshold=0`` disables leaf lists entirely; ``leaf_threshold>=m``
    degenerates to a single leaf over the whole database.  Both AD nodes and
    vary nodes count toward the cap.
    """
    if leaf_threshold < 0:
        raise ValueError(f"leaf_threshold must be >= 0, got {leaf_threshold}")
    n_nodes = 0

    def bump():
        nonlocal n_nodes
        n_nodes += 1
        if n_nodes > node_cap:
            raise AdtreeBuildError(n_nodes, node_cap)

    def make(rows: np.ndarray, first_var: int) -> _AdNode:
        bump()
        node = _AdNode(len(rows))
        if node.count <= leaf_threshold:
            node.rows = rows
            return node
        varies = {}
        for v in range(first_var, db.n):
            bump()
            states = db.column(v)[rows]
            cnts = np.bincount(states, minlength=int(db.arities[v]))
            mcv = int(cnts.argmax())  # argmax takes the smallest state on ties
            children = {
                int(s): make(rows[states == s], v + 1)
                for s in np.flatnonzero(cnts)
                if s != mcv
            }
            varies[v] = _VaryNode(mcv, children)
        node.varies = varies
        return node

    root = make(np.arange(db.m, dtype=np.int64), 0)
    return ADtree(root, leaf_threshold, n_nodes)


def _leaf_count(db: Database, rows: np.ndarray, items) -> int:
    for v, s in items:
        rows = rows[db.column(v)[rows] == s]
        if len(rows) == 0:
            return 0
    return len(rows)


def adtree_count(tree: ADtree, db: Database, a: Assignment) -> int:
    """Point count from the tree; MCV branches are answered by subtraction."""
    a.validate(db)
    items = sorted(a.items())

    def count(node: _AdNode, i: int) -> int:
        if i == len(items):
            return node.count
        if node.varies is None:
            return _leaf_count(db, node.rows, items[i:])
        v, s = items[i]
        vary = node.varies[v]
        if s != vary.mcv:
            child = vary.children.get(s)
            return count(child, i + 1) if child is not None else 0
        total = count(node, i + 1)  # v left unconstrained
        for child in vary.children.values():
            total -= count(child, i + 1)
        return total

    return count(tree.root, 0)


def _contingency(tree: ADtree, db: Database, variables: tuple[int, ...]) -> dict:
    """Non-zero joint counts over ``variables`` (must be strictly increasing).

    Returns {state_tuple: count}.  MCV slices are reconstructed by
    subtracting every stored sibling's table from the node's own table.
    """

    def walk(node: _AdNode, i: int) -> dict:
        if i == len(variables):
            return {(): node.count}
        if node.varies is None:
            cols = [db.column(v)[node.rows] for v in variables[i:]]
            return dict(Counter(zip(*(c.tolist() for c in cols)))) if len(node.rows) else {}
        v = variables[i]
        vary = node.varies[v]
        mcv_tab = dict(walk(node, i + 1))
        out = {}
        for s, child in sorted(vary.children.items()):
            for cfg, c in walk(child, i + 1).items():
                out[(s, *cfg)] = c
                mcv_tab[cfg] -= c
        for cfg, c in mcv_tab.items():
            if c > 0:
                out[(vary.mcv, *cfg)] = c
        return out

    return walk(tree.root, 0)


def adtree_query(tree: ADtree, db: Database, q: QuerySpec, agg: Aggregator) -> None:
    """Stream query q's non-zero cells out of the prebuilt tree."""
    q.validate(db)
    variables = tuple(sorted((*q.parents, q.target)))
    t_pos = variables.index(q.target)
    p_pos = [i for i in range(len(variables)) if i != t_pos]
    table = _contingency(tree, db, variables)

    groups: dict[tuple, list] = {}
    for cfg, c in table.items():
        j = tuple(cfg[i] for i in p_pos)
        groups.setdefault(j, []).append((cfg[t_pos], c))
    if agg.wants_records:
        for j, cells in groups.items():
            n_ij = sum(c for _, c in cells)
            config = tuple(zip((variables[i] for i in p_pos), j))
            for k, c in cells:
                agg.accept_record(config, k, c, n_ij)
    else:
        n_ijk = []
        n_ij = []
        for cells in groups.values():
            tot = sum(c for _, c in cells)
            for _, c in cells:
                n_ijk.append(c)
                n_ij.append(tot)
        agg.accept_block(np.asarray(n_ijk, dtype=np.int64), np.asarray(n_ij, dtype=np.int64))
