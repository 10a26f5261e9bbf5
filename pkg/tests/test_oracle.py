"""
oracle 테스트: brute-force 표와 전 범위 대조.
"""

from collections import Counter
from itertools import combinations

import pytest

from src.fibpart import oracle
from src.fibpart.bigfib import fib
from src.fibpart.common.constants import ORACLE_HARD_LIMIT
from src.fibpart.common.exceptions import DomainError, ResourceError
from src.fibpart.oracle import (
    build_oracle,
    oracle_rows,
    verify_formulas,
    verify_identities,
)


@pytest.mark.unit
class TestOracleTable:
    """0/1 부분합 DP"""

    def test_small_table(self):
        table = build_oracle(8)
        assert table.r_values == (1, 1, 1, 2, 1, 2, 2, 1, 3)
        assert table.a_values == (1, 2, 3, 5, 6, 8, 10, 11, 14)

    def test_negative_argument_is_empty_sum(self):
        table = build_oracle(5)
        assert table.a(-1) == 0
        assert table.a(-100) == 0

    def test_zero_limit(self):
        table = build_oracle(0)
        assert table.r_values == (1,)
        assert table.a_values == (1,)

    def test_rows(self):
        table = build_oracle(3)
        assert oracle_rows(table) == [(0, 1, 1), (1, 1, 2), (2, 1, 3), (3, 2, 5)]
        assert oracle_rows(table, limit=1) == [(0, 1, 1), (1, 1, 2)]
        assert table.rows() == oracle_rows(table)

    def test_subsets_below_fibonacci(self, oracle_table):
        """{F_2, ..., F_{m-2}} 의 부분집합 2^{m-3} 개는 모두 F_m - 2 이하로 합해진다"""
        for m in range(4, 25):
            assert sum(fib(i) for i in range(2, m - 1)) == fib(m) - 2
            assert oracle_table.a(fib(m) - 2) >= 2 ** (m - 3)

    @pytest.mark.parametrize("m", range(4, 15))
    def test_subset_sums_are_counted(self, oracle_table, m):
        values = [fib(i) for i in range(2, m - 1)]
        counts = Counter(
            sum(subset)
            for size in range(len(values) + 1)
            for subset in combinations(values, size)
        )
        assert sum(counts.values()) == 2 ** (m - 3)
        assert max(counts) == fib(m) - 2
        for n, count in counts.items():
            assert count <= oracle_table.r(n)

    def test_deterministic(self):
        assert build_oracle(2000) == build_oracle(2000)

    def test_session_table(self, oracle_table):
        assert oracle_table.limit == 100_000
        assert oracle_table.r(1234) == 22
        assert oracle_table.a(46368) == 2796215
        assert oracle_table.a(75025) == 5592418

    def test_rejects_negative_limit(self):
        with pytest.raises(DomainError):
            build_oracle(-1)

    def test_rejects_limit_above_cap(self):
        with pytest.raises(ResourceError) as exc_info:
            build_oracle(ORACLE_HARD_LIMIT + 1)
        assert exc_info.value.details["resource_type"] == "oracle_table"

    def test_rejects_when_memory_is_short(self, monkeypatch):
        class _Memory:
            available = 1024

        class _FakePsutil:
            @staticmethod
            def virtual_memory():
                return _Memory()

        monkeypatch.setattr(oracle, "HAS_PSUTIL", True)
        monkeypatch.setattr(oracle, "psutil", _FakePsutil)
        with pytest.raises(ResourceError) as exc_info:
            build_oracle(10_000)
        assert exc_info.value.details["resource_type"] == "memory"


@pytest.mark.unit
class TestVerification:
    """공식 경로 대조"""

    def test_zero_limit_passes(self):
        assert verify_formulas(0).mismatches == []

    def test_small_range_passes(self):
        report = verify_formulas(3000)
        assert report.passed
        assert report.checked == 3001
        assert report.mismatches == []

    def test_reuses_supplied_table(self, oracle_table):
        report = verify_formulas(2000, oracle_table)
        assert report.passed

    def test_detects_mismatch(self, monkeypatch):
        monkeypatch.setattr(oracle, "r_robbins", lambda H: 0)
        report = verify_formulas(50)
        assert not report.passed
        assert report.mismatches[0] == 0

    def test_mismatch_cap(self, monkeypatch):
        monkeypatch.setattr(oracle, "a_exact", lambda H: -1)
        report = verify_formulas(1000)
        assert len(report.mismatches) == 100

    def test_identities_are_seeded(self, oracle_table):
        first = verify_identities(100_000, 1000, 20240101, oracle_table)
        second = verify_identities(100_000, 1000, 20240101, oracle_table)
        assert first == second == []

    def test_identities_detect_broken_table(self, monkeypatch):
        table = build_oracle(500)
        broken = table.model_copy(update={"a_values": tuple(0 for _ in table.a_values)})
        failures = verify_identities(500, 50, 1, broken)
        assert failures

    def test_report_serializes_passed(self):
        report = verify_formulas(10)
        assert report.model_dump()["passed"] is True

    @pytest.mark.slow
    def test_full_range_has_no_mismatch(self, oracle_table):
        report = verify_formulas(100_000, oracle_table)
        assert report.passed, report.mismatches[:10]
