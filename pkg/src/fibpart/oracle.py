"""
brute-force 오라클.

서로 다른 피보나치 값 {1, 2, 3, 5, 8, ...} 의 0/1 부분합 개수 DP 로 R 을,
누적합으로 A 를 만들고, 모든 공식 경로를 이 표와 대조합니다.
F_1 = F_2 = 1 은 같은 값이므로 항목 하나로 셉니다.
"""

import random

import structlog
from pydantic import BaseModel, ConfigDict, computed_field

from src.fibpart.bigfib import fibonacci_values_upto, zeckendorf_encode
from src.fibpart.common.constants import (
    MISMATCH_REPORT_CAP,
    ORACLE_BYTES_PER_ENTRY,
    ORACLE_HARD_LIMIT,
)
from src.fibpart.common.exceptions import ResourceError, trace_operation
from src.fibpart.common.memo import MemoTable
from src.fibpart.partition_count import r_exact, r_robbins, r_via_tables
from src.fibpart.summatory import a_exact, a_recursive, general_recursion_rhs
from src.fibpart.utils.validators import require_integer

# Optional dependency for memory monitoring
try:
    import psutil

    HAS_PSUTIL = True
except ImportError:
    psutil = None
    HAS_PSUTIL = False

logger = structlog.get_logger(__name__)


class OracleTable(BaseModel):
    """R, A 기준 표 (limit 까지). 생성 후 변경하지 않습니다."""

    model_config = ConfigDict(frozen=True)

    limit: int
    r_values: tuple[int, ...]
    a_values: tuple[int, ...]

    def r(self, n: int) -> int:
        return self.r_values[n]

    def a(self, H: int) -> int:
        """A(H), 음수 H 는 빈 합 0."""
        if H < 0:
            return 0
        return self.a_values[H]

    def rows(self) -> list[tuple[int, int, int]]:
        """(n, R, A) 행 목록."""
        return oracle_rows(self)


class VerificationReport(BaseModel):
    """오라클 대조 결과."""

    limit: int
    checked: int
    mismatches: list[int]
    samples: int = 0
    seed: int | None = None
    identity_mismatches: list[int] = []

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.mismatches and not self.identity_mismatches


def _check_resources(N: int) -> None:
    """N 이 설정 한도나 가용 메모리를 넘으면 ResourceError."""
    if N > ORACLE_HARD_LIMIT:
        raise ResourceError(
            f"oracle limit {N} exceeds the hard cap {ORACLE_HARD_LIMIT}; "
            "use the closed-form paths for larger H",
            resource_type="oracle_table",
            requested=N,
            available=ORACLE_HARD_LIMIT,
        )

    if not HAS_PSUTIL:
        return

    needed = (N + 1) * ORACLE_BYTES_PER_ENTRY
    available = psutil.virtual_memory().available
    if needed > available:
        raise ResourceError(
            f"oracle table for N={N} needs about {needed} bytes but only "
            f"{available} bytes are available",
            resource_type="memory",
            requested=needed,
            available=available,
        )


def build_oracle(N: int) -> OracleTable:
    """
    0 <= n <= N 에 대한 R, A 표.

    Raises:
        DomainError: N < 0
        ResourceError: 메모리/한도 초과
    """
    require_integer(N, "N", 0)
    _check_resources(N)

    with trace_operation("oracle_build", limit=N):
        counts = [0] * (N + 1)
        counts[0] = 1
        for value in fibonacci_values_upto(N):
            # 값마다 한 번만 쓰도록 큰 n 부터 갱신
            for n in range(N, value - 1, -1):
                counts[n] += counts[n - value]

        prefix = []
        running = 0
        for count in counts:
            running += count
            prefix.append(running)

    return OracleTable.model_construct(
        limit=N, r_values=tuple(counts), a_values=tuple(prefix)
    )


def verify_formulas(N: int, table: OracleTable | None = None) -> VerificationReport:
    """
    r_exact, r_robbins, a_exact, a_recursive 를 0 <= H <= N 전 범위에서 대조.

    일치하지 않는 H 를 최대 100 개까지 보고합니다.
    """
    require_integer(N, "N", 0)
    if table is None or table.limit < N:
        table = build_oracle(N)

    memo = MemoTable(name="verify")
    mismatches: list[int] = []
    with trace_operation("verify_formulas", limit=N):
        for H in range(N + 1):
            r_expected = table.r_values[H]
            a_expected = table.a_values[H]
            if (
                r_exact(H) != r_expected
                or r_robbins(H) != r_expected
                or a_exact(H) != a_expected
                or a_recursive(H, memo) != a_expected
            ):
                mismatches.append(H)
                if len(mismatches) >= MISMATCH_REPORT_CAP:
                    break

    if mismatches:
        logger.warning("oracle_mismatch", count=len(mismatches), first=mismatches[0])
    return VerificationReport(limit=N, checked=H + 1, mismatches=mismatches)


def verify_identities(
    N: int, samples: int, seed: int, table: OracleTable | None = None
) -> list[int]:
    """
    표본 H <= N 에서 R, A 의 ℓ 단계 점화식이 모든 1 <= ℓ <= k 에 대해 성립하는지 확인.

    Returns:
        항등식이 깨진 H 목록 (최대 100 개)
    """
    require_integer(N, "N", 0)
    require_integer(samples, "samples", 0)
    if table is None or table.limit < N:
        table = build_oracle(N)

    rng = random.Random(seed)
    failures: list[int] = []
    if N < 1:
        return failures

    for _ in range(samples):
        H = rng.randint(1, N)
        z = zeckendorf_encode(H)
        for ell in range(1, z.k + 1):
            r_ok = r_via_tables(z, ell, table.r) == table.r_values[H]
            a_ok = general_recursion_rhs(H, ell, table.a) == table.a_values[H]
            if not (r_ok and a_ok):
                failures.append(H)
                break
        if len(failures) >= MISMATCH_REPORT_CAP:
            break

    logger.info("identities_checked", samples=samples, seed=seed, failures=len(failures))
    return failures


def oracle_rows(table: OracleTable, limit: int | None = None) -> list[tuple[int, int, int]]:
    """oracle-dump 용 (n, R(n), A(n)) 행 (0 <= n <= limit)."""
    top = table.limit if limit is None else min(limit, table.limit)
    return [(n, table.r_values[n], table.a_values[n]) for n in range(top + 1)]
