"""Aggregator contracts: accumulation, violation detection, block delivery."""

import math

import numpy as np
import pytest

from countstream import (
    AggregatorContractError,
    LogLikelihood,
    MdlScore,
    NullSink,
    QuerySpec,
    RecordCollector,
    generate_synthetic,
    mdl_score,
    oracle_query,
)
from countstream.aggregators import Aggregator

from conftest import loglik_direct


class TestNullSink:
    def test_counts_calls(self):
        s = NullSink()
        s.accept(3, 10)
        s.accept(7, 10)
        assert s.result() == 2

    def test_counts_blocks(self):
        s = NullSink()
        s.accept_block(np.array([1, 2, 3]), np.array([6, 6, 6]))
        assert s.result() == 3


class TestRecordCollector:
    def test_duplicate_cell_is_an_error(self):
        c = RecordCollector()
        c.accept_record(((0, 1),), 0, 2, 5)
        with pytest.raises(AggregatorContractError, match="twice"):
            c.accept_record(((0, 1),), 0, 3, 5)

    def test_same_config_different_k_is_fine(self):
        c = RecordCollector()
        c.accept_record(((0, 1),), 0, 2, 5)
        c.accept_record(((0, 1),), 1, 3, 5)
        assert len(c) == 2

    def test_anonymous_accept_rejected(self):
        """The collector is meaningless without configuration identity."""
        with pytest.raises(AggregatorContractError):
            RecordCollector().accept(2, 5)

    def test_wants_records_flag(self):
        assert RecordCollector().wants_records
        assert not NullSink().wants_records


class TestLogLikelihood:
    def test_single_cell_value(self):
        agg = LogLikelihood()
        agg.accept(2, 8)
        assert agg.result() == pytest.approx(2 * math.log(0.25), rel=1e-12)

    def test_result_never_positive(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            agg = LogLikelihood()
            n_ij = int(rng.integers(1, 50))
            n_ijk = int(rng.integers(1, n_ij + 1))
            agg.accept(n_ijk, n_ij)
            assert agg.result() <= 0.0

    def test_block_matches_loop(self):
        n_ijk = np.array([1, 4, 2, 7], dtype=np.int64)
        n_ij = np.array([3, 8, 2, 14], dtype=np.int64)
        a, b = LogLikelihood(), LogLikelihood()
        a.accept_block(n_ijk, n_ij)
        for x, y in zip(n_ijk, n_ij):
            b.accept(int(x), int(y))
        assert a.result() == pytest.approx(b.result(), rel=1e-12)

    def test_zero_count_rejected(self):
        with pytest.raises(AggregatorContractError):
            LogLikelihood().accept(0, 5)

    def test_excess_count_rejected(self):
        with pytest.raises(AggregatorContractError):
            LogLikelihood().accept(6, 5)
        with pytest.raises(AggregatorContractError):
            LogLikelihood().accept_block(np.array([6]), np.array([5]))

    def test_empty_block_is_noop(self):
        agg = LogLikelihood()
        agg.accept_block(np.array([], dtype=np.int64), np.array([], dtype=np.int64))
        assert agg.result() == 0.0


class TestDefaultBlockPath:
    def test_base_accept_block_loops_over_accept(self):
        """An aggregator that only implements accept still gets blocks."""

        class Summer(Aggregator):
            def __init__(self):
                self.total = 0

            def accept(self, n_ijk, n_ij):
                self.total += n_ijk

            def result(self):
                return self.total

        s = Summer()
        s.accept_block(np.array([2, 3]), np.array([5, 5]))
        assert s.result() == 5

    def test_base_accept_record_drops_identity(self):
        class Summer(Aggregator):
            def __init__(self):
                self.total = 0

            def accept(self, n_ijk, n_ij):
                self.total += n_ijk

            def result(self):
                return self.total

        s = Summer()
        s.accept_record(((0, 0),), 1, 4, 9)
        assert s.result() == 4


class TestMdlScore:
    def test_formula_on_fixture_query(self, fixture_db):
        """MDL = -L + ln(m)/2 * (r_i - 1) * q_i with q_i = product of parent
        arities: for Query(X1 | {X0, X2}), q_i = 3*2 = 6, r_i = 2, m = 8."""
        q = QuerySpec(1, (0, 2))
        recs = oracle_query(fixture_db, q)
        agg = MdlScore.for_query(fixture_db, q)
        for r in recs:
            agg.accept(r.n_ijk, r.n_ij)
        expected = -loglik_direct(recs) + 0.5 * math.log(8) * (2 - 1) * 6
        assert agg.result() == pytest.approx(expected, rel=1e-12)

    def test_penalty_for_empty_parent_set(self, fixture_db):
        agg = MdlScore.for_query(fixture_db, QuerySpec(0, ()))
        assert agg.q_i == 1 and agg.r_i == 3

    def test_mdl_score_helper_accepts_callable(self, fixture_db):
        from countstream import radix_query

        q = QuerySpec(1, (0, 2))
        got = mdl_score(fixture_db, q, lambda qq, agg: radix_query(fixture_db, qq, agg))
        recs = oracle_query(fixture_db, q)
        expected = -loglik_direct(recs) + 0.5 * math.log(8) * 6
        assert got == pytest.approx(expected, rel=1e-12)

    def test_lower_is_better_for_planted_dependence(self):
        """On a db where X1 copies X0, conditioning must beat independence."""
        db = generate_synthetic(3, 300, 3, seed=4)
        import numpy as _np

        data = db.data.copy()
        data[1] = data[0]
        from countstream import Database, radix_query

        db2 = Database(data, arities=db.arities)
        with_parent = mdl_score(db2, QuerySpec(1, (0,)), lambda q, a: radix_query(db2, q, a))
        without = mdl_score(db2, QuerySpec(1, ()), lambda q, a: radix_query(db2, q, a))
        assert with_parent < without
