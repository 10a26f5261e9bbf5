"""
임의 정밀도 피보나치 수와 Zeckendorf 인코더/디코더.

인덱스는 F_1 = F_2 = 1, F_3 = 2 규약을 따릅니다.
전개는 최상위 인덱스부터 (m_0 > m_1 > ... > m_k) 저장하며 인덱스 1은 쓰지 않습니다.
"""

import math
from collections.abc import Sequence

import structlog
from pydantic import BaseModel, ConfigDict, field_validator
from pydantic import ValidationError as PydanticValidationError

from src.fibpart.common.exceptions import DomainError, ValidationError
from src.fibpart.utils.validators import require_integer

logger = structlog.get_logger(__name__)

_LOG_PHI = math.log((1 + math.sqrt(5)) / 2)
_LOG_SQRT5 = 0.5 * math.log(5)


def _fib_pair(n: int) -> tuple[int, int]:
    """(F_n, F_{n+1}) for n >= 0, fast doubling."""
    a, b = 0, 1
    for bit in bin(n)[2:]:
        # (F_k, F_{k+1}) -> (F_2k, F_2k+1)
        c = a * (2 * b - a)
        d = a * a + b * b
        if bit == "1":
            a, b = d, c + d
        else:
            a, b = c, d
    return a, b


def fib(m: int) -> int:
    """
    m번째 피보나치 수 F_m.

    O(log m) 번의 큰 정수 곱셈(fast doubling)으로 계산합니다.

    Raises:
        DomainError: m < 1
    """
    require_integer(m, "m", 1)
    return _fib_pair(m)[0]


def fib_pair(m: int) -> tuple[int, int]:
    """연속한 두 값 (F_m, F_{m+1})."""
    require_integer(m, "m", 1)
    return _fib_pair(m)


def fib_table(top: int) -> list[int]:
    """[F_0, F_1, ..., F_top] 을 덧셈으로 생성."""
    table = [0, 1]
    for _ in range(2, top + 1):
        table.append(table[-1] + table[-2])
    return table[: top + 1]


def max_fib_index(n: int) -> int:
    """
    F_m <= n 을 만족하는 가장 큰 m >= 2.

    로그로 추정한 뒤 정확한 정수 비교로 보정합니다.

    Raises:
        DomainError: n < 1
    """
    require_integer(n, "n", 1)
    m = max(2, round((math.log(n) + _LOG_SQRT5) / _LOG_PHI))
    current, following = _fib_pair(m)
    while current > n:
        m -= 1
        current, following = following - current, current
    while following <= n:
        m += 1
        current, following = following, current + following
    return max(m, 2)


def fibonacci_values_upto(n: int) -> list[int]:
    """n 이하의 서로 다른 피보나치 값 [1, 2, 3, 5, 8, ...] (1은 한 번만)."""
    values = []
    a, b = 1, 2
    while a <= n:
        values.append(a)
        a, b = b, a + b
    return values


class ZeckendorfExpansion(BaseModel):
    """
    Zeckendorf 전개 H = F_{m_0} + F_{m_1} + ... + F_{m_k}.

    불변식: m_{i-1} - m_i >= 2, m_k >= 2, 항이 하나 이상.
    """

    model_config = ConfigDict(frozen=True)

    indices: tuple[int, ...]

    @field_validator("indices")
    @classmethod
    def _check_gaps(cls, indices: tuple[int, ...]) -> tuple[int, ...]:
        if not indices:
            raise ValueError("expansion must have at least one term")
        if indices[-1] < 2:
            raise ValueError(f"last index must be >= 2, got {indices[-1]}")
        for previous, current in zip(indices, indices[1:]):
            if previous - current < 2:
                raise ValueError(
                    f"indices must decrease by at least 2, got {previous} then {current}"
                )
        return indices

    @classmethod
    def from_indices(cls, indices: Sequence[int]) -> "ZeckendorfExpansion":
        """인덱스 목록에서 생성 (불변식 위반 시 ValidationError)."""
        try:
            return cls(indices=tuple(indices))
        except PydanticValidationError as e:
            raise ValidationError(
                e.errors()[0]["msg"],
                field_name="indices",
                field_value=list(indices),
                expected_format="strictly decreasing, gaps >= 2, last >= 2",
            ) from e

    @property
    def k(self) -> int:
        """항 개수 - 1."""
        return len(self.indices) - 1

    @property
    def value(self) -> int:
        return zeckendorf_decode(self)

    def suffix_values(self) -> list[int]:
        """부분합 x_0 = H, x_1, ..., x_k, x_{k+1} = 0."""
        table = fib_table(self.indices[0])
        suffixes = [0]
        for index in reversed(self.indices):
            suffixes.append(suffixes[-1] + table[index])
        return suffixes[::-1]

    def digits(self, top: int | None = None) -> tuple[int, ...]:
        """인덱스 top 부터 2 까지 내려가는 0/1 단어 (top 이 클수록 앞에 0 채움)."""
        top = self.indices[0] if top is None else top
        if top < self.indices[0]:
            raise DomainError(
                "padding index below leading index",
                parameter="top",
                value=top,
                expected=f">= {self.indices[0]}",
            )
        present = set(self.indices)
        return tuple(1 if i in present else 0 for i in range(top, 1, -1))

    def to_json(self) -> list[int]:
        """CLI 출력용 JSON 배열 (최상위 인덱스 먼저)."""
        return list(self.indices)


def zeckendorf_encode(n: int) -> ZeckendorfExpansion:
    """
    탐욕 알고리즘으로 Zeckendorf 전개.

    Raises:
        DomainError: n < 1 (R(0), A(0) 규약은 소비 모듈에서 처리)
    """
    require_integer(n, "n", 1)
    top = max_fib_index(n)
    table = fib_table(top)

    indices = []
    remainder = n
    i = top
    while remainder:
        if table[i] <= remainder:
            indices.append(i)
            remainder -= table[i]
            i -= 2
        else:
            i -= 1
    return ZeckendorfExpansion.model_construct(indices=tuple(indices))


def zeckendorf_decode(z: ZeckendorfExpansion | Sequence[int]) -> int:
    """
    전개를 정수로 복원 (encode 의 역함수).

    Raises:
        ValidationError: 불변식 위반
    """
    if not isinstance(z, ZeckendorfExpansion):
        z = ZeckendorfExpansion.from_indices(z)
    table = fib_table(z.indices[0])
    return sum(table[i] for i in z.indices)
