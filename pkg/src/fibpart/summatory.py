"""
합 함수 A(H) = Σ_{n<=H} R(n), 평균 M(H), 로그 평균 B(H).

정확 경로(a_fib, a_exact, f_weight)는 정수 연산만 사용합니다.
λ, φ 는 비율/로그 평균 계산 안에서만 요청 자릿수로 평가합니다.
"""

from collections.abc import Callable, Sequence
from fractions import Fraction

import structlog

from src.fibpart.bigfib import fib, max_fib_index, zeckendorf_encode
from src.fibpart.common.constants import (
    fibonacci_constant,
    growth_exponent,
    make_context,
)
from src.fibpart.common.exceptions import DomainError
from src.fibpart.common.memo import MemoTable
from src.fibpart.partition_count import r_exact, recursion_tables
from src.fibpart.utils.validators import require_integer

logger = structlog.get_logger(__name__)

# A(0), A(1), A(2): 차분 점화식은 m >= 3 (H >= F_4 = 3) 에서만 쓴다
_SMALL_VALUES = {0: 1, 1: 2, 2: 3}

_shared_memo = MemoTable(name="a_recursive")
_shared_memo.seed(_SMALL_VALUES)


def f_weight(t: int) -> int:
    """
    f(t) = 1 + 2(4^{t-1} - 1)/3 (정확한 정수).

    Raises:
        DomainError: t < 1
    """
    require_integer(t, "t", 1)
    return 1 + 2 * (4 ** (t - 1) - 1) // 3


def a_fib(m: int) -> int:
    """
    A(F_m) = floor(2^m/6 + (m+1)/2).

    Raises:
        DomainError: m < 2
    """
    require_integer(m, "m", 2)
    return (2**m + 3 * (m + 1)) // 6


def _weight_term(previous_index: int, t: int) -> int:
    """f(t) 2^{m_{i-1} - 2t_i}. 지수는 m_i - 2 또는 m_i - 1 이므로 음수가 될 수 없다."""
    exponent = previous_index - 2 * t
    assert exponent >= 0, f"negative exponent {exponent} for m={previous_index}, t={t}"
    return f_weight(t) << exponent


def a_exact(H: int) -> int:
    """
    A(H) 닫힌 형태.

    k >= 1 이면
        a_k A(F_{m_k}) - ε_k a_{k-1} + Σ_{i<=k} a_{i-1} f(t_i) 2^{m_{i-1} - 2t_i}
    k = 0 이면 A(F_{m_0}).
    """
    require_integer(H, "H", 0)
    if H == 0:
        return 1

    z = zeckendorf_encode(H)
    if z.k == 0:
        return a_fib(z.indices[0])

    tables = recursion_tables(z)
    k = z.k
    value = tables.a[k] * a_fib(z.indices[k]) - tables.eps[k - 1] * tables.a[k - 1]
    for i in range(1, k + 1):
        value += tables.a[i - 1] * _weight_term(z.indices[i - 1], tables.t[i - 1])
    return value


def general_recursion_rhs(H: int, ell: int, a_of: Callable[[int], int]) -> int:
    """
    일반 점화식 우변
        a_ℓ A(x_ℓ) - ε_ℓ a_{ℓ-1} A(x_{ℓ+1}) + Σ_{i<=ℓ} a_{i-1} f(t_i) 2^{m_{i-1} - 2t_i}
    (1 <= ℓ <= k). a_of 는 대조할 A 구현 (보통 오라클).
    """
    require_integer(H, "H", 1)
    z = zeckendorf_encode(H)
    require_integer(ell, "ell", 1)
    if ell > z.k:
        raise DomainError(
            f"ell must be <= k = {z.k}", parameter="ell", value=ell, expected=f"1..{z.k}"
        )

    tables = recursion_tables(z)
    suffixes = z.suffix_values()
    value = tables.a[ell] * a_of(suffixes[ell])
    value -= tables.eps[ell - 1] * tables.a[ell - 1] * a_of(suffixes[ell + 1])
    for i in range(1, ell + 1):
        value += tables.a[i - 1] * _weight_term(z.indices[i - 1], tables.t[i - 1])
    return value


def a_recursive(H: int, memo: MemoTable | None = None) -> int:
    """
    A(H) = A(H - F_m) + A(H - F_{m-1}) - A(H - 2F_{m-1}) + 2^{m-3}  (F_m <= H < F_{m+1}).

    음수 인자는 빈 합이므로 0. 명시적 스택으로 평가하고 도달한 인자만 메모합니다.
    memo 를 생략하면 모듈 공유 테이블(스레드 세이프)을 씁니다.

    이번 호출에서 얻은 값은 지역 사전에도 보관하므로, 다른 스레드가 도중에
    메모를 초기화해도 결과는 바뀌지 않습니다.
    """
    require_integer(H, "H", 0)
    if memo is None:
        memo = _shared_memo

    resolved: dict[int, int] = {}

    def lookup(y: int) -> int | None:
        if y < 0:
            return 0
        if y in _SMALL_VALUES:
            return _SMALL_VALUES[y]
        if y not in resolved:
            value = memo.get(y)
            if value is None:
                return None
            resolved[y] = value
        return resolved[y]

    cached = lookup(H)
    if cached is not None:
        return cached

    stack = [H]
    while stack:
        x = stack[-1]
        if lookup(x) is not None:
            stack.pop()
            continue

        m = max_fib_index(x)
        f_m, f_m1 = fib(m), fib(m - 1)
        arguments = (x - f_m, x - f_m1, x - 2 * f_m1)
        values = [lookup(y) for y in arguments]
        missing = [y for y, value in zip(arguments, values) if value is None]
        if missing:
            stack.extend(missing)
            continue

        resolved[x] = values[0] + values[1] - values[2] + (1 << (m - 3))
        memo.put(x, resolved[x])
        stack.pop()

    return resolved[H]


def reset_recursive_memo() -> None:
    """공유 메모 테이블 초기화."""
    _shared_memo.reset(_SMALL_VALUES)


def recursive_memo_size() -> int:
    return len(_shared_memo)


def super_recursion_split(t: int, m: int, x: int) -> tuple[int, int]:
    """
    A(F_m + x) = tA(x) - εA(y) + f(t) 2^{m-2t} 의 (ε, y).

    F_{m-2t+2} <= x < F_{m-2t+3} 이면 (1, x - F_{m-2t+2}),
    F_{m-2t+1} <= x < F_{m-2t+2} 이면 (0, x - F_{m-2t+1}).

    Raises:
        DomainError: t < 2, m < 2t, 또는 x 가 [F_{m-2t+1}, F_{m-2t+3}) 밖
    """
    require_integer(t, "t", 2)
    require_integer(m, "m", 2 * t)
    low, middle, high = fib(m - 2 * t + 1), fib(m - 2 * t + 2), fib(m - 2 * t + 3)
    if not low <= x < high:
        raise DomainError(
            "x outside the recursion window",
            parameter="x",
            value=x,
            expected=f"[{low}, {high})",
        )
    if x >= middle:
        return 1, x - middle
    return 0, x - low


def super_recursion_rhs(t: int, m: int, x: int, a_of: Callable[[int], int]) -> int:
    """tA(x) - εA(y) + f(t) 2^{m-2t}  ((ε, y) 는 super_recursion_split)."""
    eps, y = super_recursion_split(t, m, x)
    return t * a_of(x) - eps * a_of(y) + (f_weight(t) << (m - 2 * t))


def mean(H: int) -> Fraction:
    """
    M(H) = A(H)/H (정확한 유리수).

    Raises:
        DomainError: H < 1
    """
    require_integer(H, "H", 1)
    return Fraction(a_exact(H), H)


def _partition_values(H: int, r_values: Sequence[int] | None) -> Sequence[int]:
    if r_values is not None and len(r_values) > H:
        return r_values
    return [r_exact(n) for n in range(H + 1)]


def b_log_average(H: int, digits: int, r_values: Sequence[int] | None = None):
    """
    B(H) = (log H)^{-1} Σ_{1<=n<=H} R(n)/n^λ.

    n = 0 항은 n^λ 가 정의되지 않으므로 제외합니다.
    r_values 로 오라클 R 표를 넘기면 재계산하지 않습니다.

    Raises:
        DomainError: H < 2
    """
    require_integer(H, "H", 2)
    ctx = make_context(digits)
    lam = growth_exponent(ctx)
    values = _partition_values(H, r_values)
    total = ctx.fsum(values[n] / ctx.power(n, lam) for n in range(1, H + 1))
    return total / ctx.log(H)


def b_log_series(H_max: int, digits: int, r_values: Sequence[int] | None = None):
    """H = 2..H_max 의 (H, B(H)) 목록 (누적합 한 번으로 계산)."""
    require_integer(H_max, "H_max", 2)
    ctx = make_context(digits)
    lam = growth_exponent(ctx)
    values = _partition_values(H_max, r_values)

    rows = []
    running = ctx.mpf(values[1])
    for n in range(2, H_max + 1):
        running += values[n] / ctx.power(n, lam)
        rows.append((n, running / ctx.log(n)))
    return rows


def b_range_sandwich(m: int, digits: int):
    """
    구간 I_m = (F_m, F_{m+1}] 에서의 (하한, 실제 합, 상한).

    하한 = (A(F_{m+1}) - A(F_m))/F_{m+1}^λ, 상한 = (A(F_{m+1}) - A(F_m))/F_m^λ.
    """
    require_integer(m, "m", 2)
    ctx = make_context(digits)
    lam = growth_exponent(ctx)
    low, high = fib(m), fib(m + 1)
    mass = a_fib(m + 1) - a_fib(m)
    value = ctx.fsum(r_exact(n) / ctx.power(n, lam) for n in range(low + 1, high + 1))
    return mass / ctx.power(high, lam), value, mass / ctx.power(low, lam)


def ratio_at(H: int, digits: int):
    """A(H)/H^λ (큰 H 는 a_exact 로)."""
    require_integer(H, "H", 1)
    ctx = make_context(digits)
    return a_exact(H) / ctx.power(H, growth_exponent(ctx))


def ratio_series(H_max: int, digits: int, start: int = 1):
    """
    (H, A(H)/H^λ) for H = start..H_max.

    A(start - 1) 만 닫힌 형태로 구하고 이후는 R 을 누적합니다.
    """
    require_integer(H_max, "H_max", 1)
    require_integer(start, "start", 1)
    ctx = make_context(digits)
    lam = growth_exponent(ctx)

    total = a_exact(start - 1)
    rows = []
    for H in range(start, H_max + 1):
        total += r_exact(H)
        rows.append((H, total / ctx.power(H, lam)))

    logger.debug("ratio_series_built", start=start, h_max=H_max, rows=len(rows))
    return rows


def magnitude_envelope(H: int, digits: int):
    """A(H) 크기 포락선 ((H√5)^λ/12, (H√5)^λ/3). 1 + o(1) 오차까지 성립."""
    require_integer(H, "H", 1)
    ctx = make_context(digits)
    scaled = ctx.power(H * ctx.sqrt(5), growth_exponent(ctx))
    return scaled / 12, scaled / 3


def limit_constant(digits: int):
    """c = √5^λ/6: A(F_m) ~ c F_m^λ."""
    return fibonacci_constant(make_context(digits))


A_METHODS: dict[str, Callable[[int], int]] = {
    "exact": a_exact,
    "recursive": a_recursive,
}
