"""
partition_count 테스트: R(H) 의 세 경로와 계수표.
"""

import random
import time

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.fibpart.bigfib import fib, zeckendorf_encode
from src.fibpart.common.exceptions import DomainError
from src.fibpart.partition_count import (
    R_METHODS,
    RecursionTables,
    gap_coefficients,
    r_carlitz,
    r_exact,
    r_robbins,
    r_via_tables,
    recursion_tables,
)


@pytest.mark.unit
class TestRecursionTables:
    """t_i, ε_i, a_ℓ 계수표"""

    def test_worked_example(self):
        tables = recursion_tables(zeckendorf_encode(1234))
        assert tables.t == (2, 4, 3)
        assert tables.eps == (0, 1, 0)
        assert tables.a == (1, 2, 8, 22)
        assert tables.k == 3

    @pytest.mark.parametrize(
        "gap,expected", [(2, (2, 1)), (3, (2, 0)), (4, (3, 1)), (5, (3, 0))]
    )
    def test_gap_coefficients(self, gap, expected):
        assert gap_coefficients(gap) == expected

    def test_single_term_tables(self):
        tables = recursion_tables(zeckendorf_encode(fib(30)))
        assert tables.k == 0
        assert tables.a == (1,)

    def test_invariants_are_enforced(self):
        with pytest.raises(ValueError):
            RecursionTables(t=(1,), eps=(0,), a=(1, 1))
        with pytest.raises(ValueError):
            RecursionTables(t=(2,), eps=(2,), a=(1, 2))


@pytest.mark.unit
class TestPartitionCount:
    """R(H)"""

    def test_small_values(self):
        expected = [1, 1, 1, 2, 1, 2, 2, 1, 3]
        assert [r_exact(n) for n in range(9)] == expected
        assert [r_robbins(n) for n in range(9)] == expected

    def test_worked_example(self):
        assert r_exact(1234) == 22
        assert r_robbins(1234) == 22

    def test_carlitz(self):
        for m in range(2, 91):
            assert r_exact(fib(m)) == m // 2 == r_carlitz(m)

    def test_negative_input(self):
        with pytest.raises(DomainError):
            r_exact(-1)
        with pytest.raises(DomainError):
            r_carlitz(1)

    def test_matches_oracle_prefix(self, oracle_table):
        for n in range(5000):
            assert r_exact(n) == oracle_table.r(n)

    @pytest.mark.property
    @given(st.integers(min_value=0, max_value=100_000))
    def test_paths_agree_with_oracle(self, oracle_table, n):
        assert r_exact(n) == r_robbins(n) == oracle_table.r(n)

    @pytest.mark.property
    @given(st.integers(min_value=1, max_value=10**80))
    def test_paths_agree_on_large_inputs(self, n):
        assert r_exact(n) == r_robbins(n)

    def test_methods_registry(self):
        assert set(R_METHODS) == {"exact", "robbins"}

    @pytest.mark.performance
    def test_hundred_digit_input_is_fast(self):
        H = 10**100 - 1
        start = time.perf_counter()
        value = r_exact(H)
        elapsed = time.perf_counter() - start
        assert value == r_robbins(H)
        assert value > 0
        assert elapsed < 1.0


@pytest.mark.unit
class TestInductionIdentity:
    """a_ℓ R(x_ℓ) - ε_ℓ a_{ℓ-1} R(x_{ℓ+1}) = R(H)"""

    def test_every_level_on_seeded_samples(self, oracle_table):
        rng = random.Random(20240101)
        for _ in range(1000):
            H = rng.randint(1, 100_000)
            z = zeckendorf_encode(H)
            for ell in range(1, z.k + 1):
                assert r_via_tables(z, ell, oracle_table.r) == oracle_table.r(H)

    def test_level_out_of_range(self):
        z = zeckendorf_encode(1234)
        with pytest.raises(DomainError):
            r_via_tables(z, 4, r_exact)
        with pytest.raises(DomainError):
            r_via_tables(z, 0, r_exact)
