"""
공통 pytest 픽스처.

- oracle_table: brute-force R/A 표 (H <= 100000), 세션당 한 번 생성
- hypothesis 프로파일: derandomize 로 실행마다 같은 예제
"""

import pytest
from hypothesis import HealthCheck, settings

from src.fibpart.oracle import OracleTable, build_oracle
from src.fibpart.summatory import reset_recursive_memo

ORACLE_LIMIT = 100_000

settings.register_profile(
    "fibpart",
    derandomize=True,
    deadline=None,
    max_examples=200,
    suppress_health_check=[HealthCheck.function_scoped_fixture],
)
settings.load_profile("fibpart")


@pytest.fixture(scope="session")
def oracle_table() -> OracleTable:
    """H <= 100000 오라클 표"""
    return build_oracle(ORACLE_LIMIT)


@pytest.fixture
def fresh_memo():
    """공유 a_recursive 메모를 테스트 전후로 초기화"""
    reset_recursive_memo()
    yield
    reset_recursive_memo()
