"""Shared fixtures and independent reference helpers.

The reference db ("fixture") is the 8-record, 3-variable table whose every
count below was derived by hand; tests freeze those values rather than
recompute them through the code under test.  Columns 0-based after load:

    X0: 0 0 1 1 2 2 2 1      (arity 3, counts 2/3/3)
    X1: 0 1 0 1 1 1 0 0      (arity 2, counts 4/4)
    X2: 0 0 1 0 0 0 1 0      (arity 2, counts 6/2)
"""

import itertools
import math
from pathlib import Path

import numpy as np
import pytest

from countstream import (
    Assignment,
    Database,
    QuerySpec,
    generate_synthetic,
    load_csv,
    oracle_count,
)
from countstream.harness import AssociationRule

DATA_DIR = Path(__file__).parent / "data"
FIXTURE_PATH = DATA_DIR / "fixture.csv"

# the fixture as 1-based tuples, exactly as stored in fixture.csv
FIXTURE_ROWS = [
    (1, 1, 1), (1, 2, 1), (2, 1, 2), (2, 2, 1),
    (3, 2, 1), (3, 2, 1), (3, 1, 2), (2, 1, 1),
]


@pytest.fixture(scope="session")
def fixture_db() -> Database:
    return load_csv(FIXTURE_PATH, delimiter=",")


def make_random_db(rng: np.random.Generator, n_max=10, m_max=512, arity_max=5) -> Database:
    """A synthetic db in the correctness-suite regime, sizes biased small."""
    n = int(rng.integers(2, n_max + 1))
    m = int(rng.integers(1, m_max + 1))
    arities = rng.integers(2, arity_max + 1, size=n).tolist()
    return generate_synthetic(n, m, arities, seed=int(rng.integers(0, 2**31)))


def random_query(rng: np.random.Generator, db: Database, allow_empty=True) -> QuerySpec:
    target = int(rng.integers(0, db.n))
    lo = 0 if allow_empty else 1
    size = int(rng.integers(lo, db.n))
    others = [v for v in range(db.n) if v != target]
    parents = rng.choice(others, size=min(size, len(others)), replace=False) if size else []
    return QuerySpec(target, tuple(int(p) for p in parents))


def random_assignment(rng: np.random.Generator, db: Database) -> Assignment:
    size = int(rng.integers(0, db.n + 1))
    vars_ = tuple(sorted(int(v) for v in rng.choice(db.n, size=size, replace=False)))
    states = tuple(int(rng.integers(0, db.arities[v])) for v in vars_)
    return Assignment(vars_, states)


def chain_db(n: int, m: int, arity: int, seed: int, stay: float = 0.9) -> Database:
    """Dependency-structured data: each variable copies its neighbour w.p. stay.

    Gives low-entropy columns and few observed configurations -- the regime
    where configuration-tree pruning pays off.
    """
    rng = np.random.default_rng(seed)
    data = np.empty((n, m), dtype=np.int32)
    p = 0.6 ** np.arange(arity)
    data[0] = rng.choice(arity, size=m, p=p / p.sum())
    for i in range(1, n):
        keep = rng.random(m) < stay
        data[i] = np.where(keep, data[i - 1], rng.integers(0, arity, m))
    return Database(data, arities=[arity] * n)


def planted_copy_db(n: int = 5, m: int = 400, arity: int = 3, seed: int = 101) -> Database:
    """Variable 1 is an exact copy of variable 0; the rest are iid uniform.

    A parent-set learner over this db must attribute variable 1 to {0}:
    conditioning on variable 0 drives the data term to exactly zero while
    costing the smallest possible penalty.
    """
    rng = np.random.default_rng(seed)
    data = rng.integers(0, arity, size=(n, m)).astype(np.int32)
    data[1] = data[0]
    return Database(data, arities=[arity] * n)


def loglik_direct(records) -> float:
    """Eq-style direct evaluation: sum of N_ijk * ln(N_ijk / N_ij)."""
    return sum(r.n_ijk * math.log(r.n_ijk / r.n_ij) for r in records)


def mdl_direct(db: Database, q: QuerySpec, records) -> float:
    q_i = 1
    for p in q.parents:
        q_i *= int(db.arities[p])
    penalty = 0.5 * math.log(db.m) * (int(db.arities[q.target]) - 1) * q_i
    return -loglik_direct(records) + penalty


def brute_force_rules(db: Database, min_support: float, min_confidence: float,
                      max_size: int = 6) -> set[AssociationRule]:
    """Mine rules by definition: every itemset, every split, no pruning."""
    supp = {}
    for size in range(1, max_size + 1):
        for items in itertools.combinations(range(db.n), size):
            c = oracle_count(db, Assignment(items, (1,) * size))
            supp[items] = c / db.m
    rules = set()
    for items, s in supp.items():
        if len(items) < 2 or s < min_support:
            continue
        for i, consequent in enumerate(items):
            ant = items[:i] + items[i + 1:]
            if supp[ant] < min_support:
                continue
            conf = s / supp[ant]
            if conf >= min_confidence:
                rules.add(AssociationRule(ant, consequent, s, conf))
    return rules
