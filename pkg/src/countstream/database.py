"""Categorical databases and query descriptors.

A database is an n x m matrix of small non-negative integers: n categorical
variables observed over m records.  Variables are indexed 0..n-1 and each
variable i takes states 0..r_i-1 where r_i is its arity.  Input files may be
1-based; states are remapped to 0-based on load (see :func:`load_csv`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Database",
    "QuerySpec",
    "Assignment",
    "DatabaseLoadError",
    "InvalidQueryError",
    "load_csv",
    "generate_synthetic",
]


class DatabaseLoadError(ValueError):
    """A database file or column set could not be validated."""


class InvalidQueryError(ValueError):
    """A query or assignment references variables or states outside the database."""


class Database:
    """Immutable column-major categorical database.

    Parameters
    ----------
    data:
        Integer array of shape (n, m); row i holds the m observed states of
        variable i.  Copied to int32 and frozen.
    arities:
        Declared arity per variable.  When omitted, arities are inferred as
        1 + max observed state.  A declared arity may exceed the observed one
        (sparse domains) but never undercut it.
    """

    __slots__ = ("data", "arities", "n", "m", "_row_major")

    def __init__(self, data: np.ndarray, arities: Sequence[int] | None = None):
        data = np.ascontiguousarray(data, dtype=np.int32)
        if data.ndim != 2:
            raise DatabaseLoadError(f"expected a 2-d (n, m) array, got shape {data.shape}")
        n, m = data.shape
        if n < 1 or m < 1:
            raise DatabaseLoadError(f"database must have at least one variable and one row, got shape {data.shape}")
        if data.min() < 0:
            raise DatabaseLoadError("negative state encountered; states must be non-negative integers")
        observed = data.max(axis=1).astype(np.int64) + 1
        if arities is None:
            arities = observed
        else:
            arities = np.asarray(arities, dtype=np.int64)
            if arities.shape != (n,):
                raise DatabaseLoadError(f"expected {n} arities, got {arities.shape}")
            bad = np.flatnonzero(arities < observed)
            if bad.size:
                i = int(bad[0])
                row = int(np.argmax(data[i] >= arities[i])) + 1
                raise DatabaseLoadError(
                    f"row {row}: variable {i} has state {int(data[i, row - 1])}, "
                    f"exceeding declared arity {int(arities[i])}"
                )
        if arities.min() < 1:
            raise DatabaseLoadError("every arity must be at least 1")
        data.setflags(write=False)
        self.data = data
        self.arities = arities
        self.arities.setflags(write=False)
        self.n = n
        self.m = m
        self._row_major: np.ndarray | None = None

    def column(self, i: int) -> np.ndarray:
        """Read-only view of variable i's states, length m."""
        return self.data[i]

    def row_major(self) -> np.ndarray:
        """C-contiguous (m, n) view of the records, built lazily and cached."""
        if self._row_major is None:
            rm = np.ascontiguousarray(self.data.T)
            rm.setflags(write=False)
            self._row_major = rm
        return self._row_major

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Database(n={self.n}, m={self.m}, arities={self.arities.tolist()})"


@dataclass(frozen=True)
class QuerySpec:
    """A counting query: target variable X_i plus a parent set Pa.

    The parent tuple's order is preserved; strategies are free to reorder
    internally but results never depend on it.
    """

    target: int
    parents: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(int(p) for p in self.parents))
        object.__setattr__(self, "target", int(self.target))
        if self.target < 0 or any(p < 0 for p in self.parents):
            raise InvalidQueryError("variable indexes must be non-negative")
        if len(set(self.parents)) != len(self.parents):
            raise InvalidQueryError(f"duplicate parent in {self.parents}")
        if self.target in self.parents:
            raise InvalidQueryError(f"target {self.target} may not appear in its own parent set")

    def validate(self, db: Database) -> None:
        for v in (self.target, *self.parents):
            if v >= db.n:
                raise InvalidQueryError(f"variable {v} out of range for a database with n={db.n}")


@dataclass(frozen=True)
class Assignment:
    """A partial assignment: distinct variables pinned to single states."""

    variables: tuple[int, ...]
    states: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(int(v) for v in self.variables))
        object.__setattr__(self, "states", tuple(int(s) for s in self.states))
        if len(self.variables) != len(self.states):
            raise InvalidQueryError(
                f"{len(self.variables)} variables but {len(self.states)} states"
            )
        if len(set(self.variables)) != len(self.variables):
            raise InvalidQueryError(f"duplicate variable in {self.variables}")
        if any(v < 0 for v in self.variables) or any(s < 0 for s in self.states):
            raise InvalidQueryError("variables and states must be non-negative")

    def items(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.variables, self.states))

    def validate(self, db: Database) -> None:
        for v, s in zip(self.variables, self.states):
            if v >= db.n:
                raise InvalidQueryError(f"variable {v} out of range for a database with n={db.n}")
            if s >= db.arities[v]:
                raise InvalidQueryError(
                    f"state {s} out of range for variable {v} with arity {int(db.arities[v])}"
                )


def _tokenize(text: str, delimiter: str | None) -> list[list[str]]:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if delimiter is None and lines and "," in lines[0]:
        delimiter = ","  # sniffed; explicit --delimiter overrides
    if delimiter is None:
        return [ln.split() for ln in lines]
    return [[tok.strip() for tok in ln.split(delimiter)] for ln in lines]


def load_csv(
    path: str | Path,
    delimiter: str | None = None,
    arities: Sequence[int] | None = None,
) -> Database:
    """Load a delimited text file of integer states, one record per line.

    ``delimiter=None`` sniffs: comma if the first line has one, otherwise any
    whitespace.  Files whose smallest token is 1 are taken to be 1-based and
    are shifted down by one; files containing a 0 anywhere are used as-is.
    Ragged rows and non-integer tokens raise :class:`DatabaseLoadError`
    naming the offending row (1-based).
    """
    text = Path(path).read_text()
    rows = _tokenize(text, delimiter)
    if not rows:
        raise DatabaseLoadError(f"{path}: no records found")
    width = len(rows[0])
    parsed = np.empty((len(rows), width), dtype=np.int64)
    for idx, toks in enumerate(rows):
        if len(toks) != width:
            raise DatabaseLoadError(
                f"{path}: row {idx + 1}: expected {width} values, found {len(toks)}"
            )
        for j, tok in enumerate(toks):
            try:
                parsed[idx, j] = int(tok)
            except ValueError:
                raise DatabaseLoadError(
                    f"{path}: row {idx + 1}: non-integer token {tok!r}"
                ) from None
    lo = parsed.min()
    if lo < 0:
        raise DatabaseLoadError(f"{path}: negative state {int(lo)}; states must be >= 0")
    if lo == 1:
        parsed -= 1  # 1-based file
    return Database(parsed.T, arities=arities)


def load_arities(path: str | Path) -> list[int]:
    """Read a whitespace-separated arity sidecar file, one integer per variable."""
    toks = Path(path).read_text().split()
    if not toks:
        raise DatabaseLoadError(f"{path}: empty arity file")
    try:
        return [int(t) for t in toks]
    except ValueError as e:
        raise DatabaseLoadError(f"{path}: {e}") from None


def generate_synthetic(
    n: int,
    m: int,
    arities: int | Sequence[int],
    seed: int = 0,
) -> Database:
    """Generate m iid uniform records over n variables.

    Reproducibility contract: for fixed (n, m, arities, seed) the returned
    database is identical across runs and platforms.  Randomness comes from a
    Philox counter-based generator keyed by ``SeedSequence(seed)``; states are
    drawn variable by variable with ``Generator.integers``.
    """
    if n < 1 or m < 1:
        raise ValueError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    if isinstance(arities, (int, np.integer)):
        arities = [int(arities)] * n
    arities = [int(r) for r in arities]
    if len(arities) != n:
        raise ValueError(f"expected {n} arities, got {len(arities)}")
    if min(arities) < 1:
        raise ValueError("every arity must be at least 1")
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    data = np.empty((n, m), dtype=np.int32)
    for i, r in enumerate(arities):
        data[i] = rng.integers(0, r, size=m, dtype=np.int32)
    return Database(data, arities=arities)
