"""
피보나치 분할 함수 R(H).

- r_carlitz: R(F_m) = floor(m/2)
- r_robbins: 접미 부분합 x_1, x_2 에 대한 점화식 (독립 기준 경로)
- r_exact: Zeckendorf 전개의 계수표 t_i, ε_i, a_ℓ 로 닫힌 형태 계산 (운영 경로)

R(0) = 1 은 Zeckendorf 인코딩 전에 처리합니다 (코덱은 0 을 거부).
"""

from collections.abc import Callable

import structlog
from pydantic import BaseModel, ConfigDict, model_validator

from src.fibpart.bigfib import ZeckendorfExpansion, fib, max_fib_index, zeckendorf_encode
from src.fibpart.common.exceptions import DomainError
from src.fibpart.utils.validators import require_integer

logger = structlog.get_logger(__name__)


class RecursionTables(BaseModel):
    """
    전개의 간격에서 유도한 계수표.

    t_i = floor((m_{i-1} - m_i + 2)/2), ε_i = 2t_i - 1 - (m_{i-1} - m_i)  (1 <= i <= k)
    a_0 = 1, a_1 = t_1, a_{ℓ+1} = t_{ℓ+1} a_ℓ - ε_ℓ a_{ℓ-1}

    t[i-1], eps[i-1] 이 t_i, ε_i 이고 a[ℓ] 이 a_ℓ 입니다.
    """

    model_config = ConfigDict(frozen=True)

    t: tuple[int, ...]
    eps: tuple[int, ...]
    a: tuple[int, ...]

    @model_validator(mode="after")
    def _check_invariants(self) -> "RecursionTables":
        if len(self.t) != len(self.eps) or len(self.a) != len(self.t) + 1:
            raise ValueError("t, eps must have length k and a length k+1")
        if any(e not in (0, 1) for e in self.eps):
            raise ValueError(f"eps entries must be 0 or 1, got {self.eps}")
        if any(t < 2 for t in self.t):
            raise ValueError(f"t entries must be >= 2, got {self.t}")
        if self.a[0] != 1 or any(x >= y for x, y in zip(self.a, self.a[1:])):
            raise ValueError(f"a must start at 1 and strictly increase, got {self.a}")
        return self

    @property
    def k(self) -> int:
        return len(self.t)


def gap_coefficients(gap: int) -> tuple[int, int]:
    """간격 g = m_{i-1} - m_i 에 대한 (t, ε). ε = 1 이면 g 가 짝수."""
    t = (gap + 2) // 2
    return t, 2 * t - 1 - gap


def tables_from_indices(indices: tuple[int, ...]) -> RecursionTables:
    """인덱스열(감소, 간격 >= 2)에서 계수표 생성. 검증은 호출자가 보장."""
    t_values = []
    eps_values = []
    for previous, current in zip(indices, indices[1:]):
        t, eps = gap_coefficients(previous - current)
        t_values.append(t)
        eps_values.append(eps)

    a_values = [1]
    if t_values:
        a_values.append(t_values[0])
    for ell in range(1, len(t_values)):
        a_values.append(
            t_values[ell] * a_values[ell] - eps_values[ell - 1] * a_values[ell - 1]
        )

    return RecursionTables(t=tuple(t_values), eps=tuple(eps_values), a=tuple(a_values))


def recursion_tables(z: ZeckendorfExpansion) -> RecursionTables:
    """Zeckendorf 전개의 계수표 (t, eps 길이 k, a 길이 k+1)."""
    return tables_from_indices(z.indices)


def r_carlitz(m: int) -> int:
    """
    R(F_m) = floor(m/2).

    Raises:
        DomainError: m < 2
    """
    require_integer(m, "m", 2)
    return m // 2


def r_exact(H: int) -> int:
    """
    R(H) 닫힌 형태.

    k >= 1 이면 a_k floor(m_k/2) - ε_k a_{k-1}, k = 0 이면 floor(m_0/2).
    """
    require_integer(H, "H", 0)
    if H == 0:
        return 1

    z = zeckendorf_encode(H)
    if z.k == 0:
        return z.indices[0] // 2

    tables = recursion_tables(z)
    k = z.k
    return tables.a[k] * (z.indices[k] // 2) - tables.eps[k - 1] * tables.a[k - 1]


def r_robbins(H: int) -> int:
    """
    R(H) = t_1 R(x_1) - ε_1 R(x_2) 를 접미 부분합 사슬 위에서 반복 적용.

    재귀 대신 아래에서 위로 누적하므로 10^100 규모(수백 자리 전개)에서도
    호출 스택 제한에 걸리지 않습니다.
    """
    require_integer(H, "H", 0)
    if H == 0:
        return 1

    # 탐욕적으로 최상위 항을 떼어 내며 x_0 = H, x_1, ..., x_k 와 m_0, ..., m_k 수집
    leading = []
    remainder = H
    while remainder:
        m = max_fib_index(remainder)
        leading.append(m)
        remainder -= fib(m)

    k = len(leading) - 1
    r_next = 1  # R(x_{k+1}) = R(0)
    r_current = r_carlitz(leading[k])  # R(x_k) = R(F_{m_k})
    for ell in range(k - 1, -1, -1):
        t, eps = gap_coefficients(leading[ell] - leading[ell + 1])
        r_current, r_next = t * r_current - eps * r_next, r_current
    return r_current


def r_via_tables(z: ZeckendorfExpansion, ell: int, r_of: Callable[[int], int]) -> int:
    """
    귀납 항등식 우변 a_ℓ R(x_ℓ) - ε_ℓ a_{ℓ-1} R(x_{ℓ+1})  (1 <= ℓ <= k).

    r_of 로 주어진 R 을 사용하므로 오라클 값과 대조할 때 씁니다.
    """
    require_integer(ell, "ell", 1)
    if ell > z.k:
        raise DomainError(
            f"ell must be <= k = {z.k}", parameter="ell", value=ell, expected=f"1..{z.k}"
        )
    tables = recursion_tables(z)
    suffixes = z.suffix_values()
    leading = tables.a[ell] * r_of(suffixes[ell])
    correction = tables.eps[ell - 1] * tables.a[ell - 1] * r_of(suffixes[ell + 1])
    return leading - correction


R_METHODS: dict[str, Callable[[int], int]] = {
    "exact": r_exact,
    "robbins": r_robbins,
}
