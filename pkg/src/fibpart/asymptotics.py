"""
세분할 경계 엔진.

큰 m 에 대해 [F_m, F_{m+1}) 을 앞쪽 Zeckendorf 자리(오프셋 패턴)로 잘게 나누고,
각 끝점 p_j = F_m + Σ F_{m-a_i} 에서

    A(p_j) / 2^m  ->  v_j        (정확한 유리수)
    p_j √5 / φ^m  ->  w_j        (= 1 + Σ φ^{-a_i}, 고정밀 실수)

를 구한 뒤 L_j = v_j (√5/w_{j+1})^λ, U_j = v_{j+1} (√5/w_j)^λ 로 c_1, c_2 의
구간을 계산합니다. 마지막 울타리 F_{m+1} 은 (v, w) = (1/3, φ) 로 명시적으로 붙입니다.
"""

from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache
from typing import Any, NamedTuple

import structlog
from pydantic import BaseModel, ConfigDict, field_validator
from pydantic import ValidationError as PydanticValidationError

from src.fibpart.bigfib import zeckendorf_decode
from src.fibpart.common.constants import (
    TRANSCENDENTAL_OPS_PER_ENDPOINT,
    error_bound,
    golden_ratio,
    growth_exponent,
    make_context,
)
from src.fibpart.common.exceptions import (
    DomainError,
    PrecisionError,
    ValidationError,
    trace_operation,
)
from src.fibpart.models import AsymptoticsConfig
from src.fibpart.partition_count import tables_from_indices
from src.fibpart.summatory import f_weight
from src.fibpart.utils.validators import require_integer

logger = structlog.get_logger(__name__)

SUPER_ENDPOINT_V = Fraction(1, 3)


class OffsetPattern(BaseModel):
    """
    Zeckendorf 접두 (a_1, ..., a_ℓ): 끝점 F_m + Σ F_{m-a_i}.

    불변식: a_1 >= 2, a_i - a_{i-1} >= 2. 빈 패턴은 F_m 자신.
    """

    model_config = ConfigDict(frozen=True)

    offsets: tuple[int, ...] = ()

    @field_validator("offsets")
    @classmethod
    def _check_gaps(cls, offsets: tuple[int, ...]) -> tuple[int, ...]:
        previous = 0
        for offset in offsets:
            if offset - previous < 2:
                raise ValueError(
                    f"offsets need a_1 >= 2 and gaps >= 2, got {offsets}"
                )
            previous = offset
        return offsets

    @classmethod
    def of(cls, *offsets: int) -> "OffsetPattern":
        """OffsetPattern.of(7, 12, 19) (불변식 위반 시 ValidationError)."""
        try:
            return cls(offsets=tuple(offsets))
        except PydanticValidationError as e:
            raise ValidationError(
                e.errors()[0]["msg"],
                field_name="offsets",
                field_value=list(offsets),
                expected_format="a_1 >= 2, gaps >= 2",
            ) from e

    @property
    def last(self) -> int:
        return self.offsets[-1] if self.offsets else 0

    def __str__(self) -> str:
        return "(" + ", ".join(str(a) for a in self.offsets) + ")"


class EndpointEstimate(BaseModel):
    """
    끝점 하나의 극한값.

    pattern 이 None 이면 F_{m+1} 울타리 (v = 1/3, w = φ).
    lower/upper 는 이 끝점에서 시작하는 소구간의 L_j, U_j (마지막 울타리는 None).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    pattern: OffsetPattern | None
    v: Fraction
    w: Any
    ratio: Any
    lower: Any = None
    upper: Any = None


class BoundsReport(BaseModel):
    """c_1, c_2 의 구간과 극값을 만든 패턴."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    depth: int
    digits: int
    c1_lower: Any
    c1_upper: Any
    c2_lower: Any
    c2_upper: Any
    argmin_pattern: OffsetPattern
    argmax_pattern: OffsetPattern
    endpoint_count: int
    error_bound: Any

    def to_json_dict(self) -> dict[str, Any]:
        """{depth, digits, c1:[lo,hi], c2:[lo,hi], argmin_pattern, argmax_pattern, ...}"""
        return {
            "depth": self.depth,
            "digits": self.digits,
            "c1": [self.c1_lower, self.c1_upper],
            "c2": [self.c2_lower, self.c2_upper],
            "argmin_pattern": list(self.argmin_pattern.offsets),
            "argmax_pattern": list(self.argmax_pattern.offsets),
            "endpoint_count": self.endpoint_count,
            "error_bound": self.error_bound,
        }


@lru_cache(maxsize=4)
def _pattern_tuples(depth: int) -> tuple[tuple[int, ...], ...]:
    """
    끝점 값 오름차순의 오프셋 튜플.

    s 이상 오프셋만 쓰는 패턴은 "s 를 안 쓰는 것들" 다음에 "s 로 시작하는 것들" 순.
    """
    after_next: list[tuple[int, ...]] = [()]  # start = depth + 2
    following: list[tuple[int, ...]] = [()]  # start = depth + 1
    for start in range(depth, 1, -1):
        current = following + [(start, *rest) for rest in after_next]
        after_next, following = following, current
    return tuple(following)


def enumerate_patterns(depth: int) -> list[OffsetPattern]:
    """
    a_ℓ <= depth 인 모든 패턴 (빈 패턴 포함), 끝점 값 오름차순. 개수는 F_{depth+1}.

    Raises:
        DomainError: depth < 2
    """
    require_integer(depth, "depth", 2)
    return [OffsetPattern.model_construct(offsets=p) for p in _pattern_tuples(depth)]


def reference_value(pattern: OffsetPattern, depth: int) -> int:
    """기준 인덱스 m* = depth + 2 에서의 끝점 정수값 (정렬 검사용)."""
    return finite_endpoint(pattern, depth + 2)


def finite_endpoint(pattern: OffsetPattern, m: int) -> int:
    """
    p = F_m + Σ F_{m-a_i}.

    Raises:
        DomainError: m - a_ℓ < 2
    """
    require_integer(m, "m", pattern.last + 2)
    return zeckendorf_decode((m, *(m - a for a in pattern.offsets)))


def _v_from_offsets(offsets: Sequence[int]) -> Fraction:
    """
    v = c_ℓ / (6 · 2^{a_ℓ}) + Σ_{i<=ℓ} c_{i-1} f(t_i) 2^{-a_{i-1} - 2t_i}  (a_0 = 0)

    c 는 (0, a_1, ..., a_ℓ) 간격의 계수열. 분모 6 · 2^{a_ℓ + 2} 로 통분해 정수로 계산.
    """
    if not offsets:
        return Fraction(1, 6)

    tables = tables_from_indices((0, *(-a for a in offsets)))
    shift = offsets[-1] + 2
    numerator = tables.a[-1] << (shift - offsets[-1])
    previous = 0
    for i, offset in enumerate(offsets):
        numerator += 6 * tables.a[i] * f_weight(tables.t[i]) << (
            shift - previous - 2 * tables.t[i]
        )
        previous = offset
    return Fraction(numerator, 6 << shift)


def endpoint_v(p: OffsetPattern | None) -> Fraction:
    """A(p)/2^m 의 극한 (정확한 유리수). None 은 F_{m+1} 울타리 → 1/3."""
    if p is None:
        return SUPER_ENDPOINT_V
    return _v_from_offsets(p.offsets)


def _as_real(ctx, value: Fraction):
    return ctx.mpf(value.numerator) / value.denominator


def _inverse_powers(ctx, phi, top: int) -> list:
    """[φ^0, φ^{-1}, ..., φ^{-top}]"""
    return [ctx.power(phi, -a) for a in range(top + 1)]


def _w_value(ctx, inverse_powers: Sequence, offsets: Sequence[int]):
    return 1 + ctx.fsum(inverse_powers[a] for a in offsets)


def endpoint_w(p: OffsetPattern | None, digits: int):
    """p√5/φ^m 의 극한 1 + Σ φ^{-a_i}. None 은 F_{m+1} 울타리 → φ."""
    require_integer(digits, "digits", 1)
    ctx = make_context(digits)
    phi = golden_ratio(ctx)
    if p is None:
        return phi
    return _w_value(ctx, _inverse_powers(ctx, phi, p.last), p.offsets)


def ratio_limit(p: OffsetPattern | None, digits: int):
    """H = F_m + Σ F_{m-a_i} 를 따라간 A(H)/H^λ 의 극한 v (√5/w)^λ."""
    require_integer(digits, "digits", 1)
    ctx = make_context(digits)
    w = endpoint_w(p, digits)
    return _as_real(ctx, endpoint_v(p)) * ctx.power(
        ctx.sqrt(5) / w, growth_exponent(ctx)
    )


class _Extremum(NamedTuple):
    """결합 법칙을 만족하는 극값 축약 상태 (값, 인덱스, 차순위 값)."""

    value: Any
    index: int
    runner_up: Any


def _better(a, b, minimize: bool) -> bool:
    return a < b if minimize else a > b


def _merge(left: _Extremum | None, right: _Extremum | None, minimize: bool):
    """두 조각의 극값 병합. 동률이면 작은 인덱스를 남기고 차순위도 같은 값."""
    if left is None:
        return right
    if right is None:
        return left
    if _better(right.value, left.value, minimize) or (
        right.value == left.value and right.index < left.index
    ):
        left, right = right, left
    candidates = [c for c in (left.runner_up, right.value) if c is not None]
    runner_up = candidates[0]
    for candidate in candidates[1:]:
        if _better(candidate, runner_up, minimize):
            runner_up = candidate
    return _Extremum(left.value, left.index, runner_up)


def _endpoint_state(ctx, phi, sqrt5, lam, powers, patterns, j: int):
    """끝점 j 의 (v 를 실수로, g = (√5/w)^λ). j == len(patterns) 는 울타리."""
    if j == len(patterns):
        v, w = SUPER_ENDPOINT_V, phi
    else:
        offsets = patterns[j]
        v, w = _v_from_offsets(offsets), _w_value(ctx, powers, offsets)
    return _as_real(ctx, v), ctx.power(sqrt5 / w, lam)


def _scan_slice(depth: int, digits: int, lo: int, hi: int):
    """
    소구간 j in [lo, hi) 의 min L_j, max U_j 축약.

    프로세스 풀에서 호출되므로 mpmath 값은 원시 _mpf_ 튜플로 돌려줍니다.
    """
    ctx = make_context(digits)
    phi, sqrt5, lam = golden_ratio(ctx), ctx.sqrt(5), growth_exponent(ctx)
    patterns = _pattern_tuples(depth)
    powers = _inverse_powers(ctx, phi, depth)

    lowest: _Extremum | None = None
    highest: _Extremum | None = None
    v_j, g_j = _endpoint_state(ctx, phi, sqrt5, lam, powers, patterns, lo)
    for j in range(lo, hi):
        v_next, g_next = _endpoint_state(
            ctx, phi, sqrt5, lam, powers, patterns, j + 1
        )
        lower = v_j * g_next
        upper = v_next * g_j
        lowest = _merge(lowest, _Extremum(lower, j, None), minimize=True)
        highest = _merge(highest, _Extremum(upper, j, None), minimize=False)
        v_j, g_j = v_next, g_next

    return _to_raw(lowest), _to_raw(highest)


def _to_raw(extremum: _Extremum | None):
    if extremum is None:
        return None
    runner_up = None if extremum.runner_up is None else extremum.runner_up._mpf_
    return extremum.value._mpf_, extremum.index, runner_up


def _from_raw(ctx, raw) -> _Extremum | None:
    if raw is None:
        return None
    value, index, runner_up = raw
    return _Extremum(
        ctx.make_mpf(value),
        index,
        None if runner_up is None else ctx.make_mpf(runner_up),
    )


def _slices(count: int, workers: int) -> list[tuple[int, int]]:
    size = -(-count // workers)
    return [(lo, min(lo + size, count)) for lo in range(0, count, size)]


def _check_separation(ctx, extremum: _Extremum, pad, digits: int, label: str) -> None:
    if extremum.runner_up is None:
        return
    separation = abs(extremum.runner_up - extremum.value)
    if separation <= 2 * pad:
        raise PrecisionError(
            f"cannot separate the {label} candidates at {digits} digits; "
            "increase --digits",
            digits=digits,
            separation=ctx.nstr(separation, 5),
        )


def bounds(depth: int, digits: int, workers: int = 1) -> BoundsReport:
    """
    c_1, c_2 의 보증 구간.

    c1_lower = min L_j - δ, c2_upper = max U_j + δ,
    c1_upper / c2_lower 는 argmin / argmax 끝점 자신의 비율 v_j(√5/w_j)^λ ± δ.
    δ 는 초월 연산 누적 오차 한계. 결과는 workers 수와 무관하게 같습니다.

    Raises:
        DomainError: depth < 2 또는 digits < 15
        PrecisionError: 극값 후보를 요청 자릿수로 구분할 수 없음
    """
    try:
        config = AsymptoticsConfig(depth=depth, digits=digits, workers=workers)
    except PydanticValidationError as e:
        error = e.errors()[0]
        raise DomainError(
            error["msg"],
            parameter=str(error["loc"][0]),
            value=error.get("input"),
        ) from e

    patterns = _pattern_tuples(config.depth)
    count = len(patterns)
    ctx = make_context(config.digits)

    with trace_operation(
        "bounds_scan", depth=config.depth, digits=config.digits, endpoints=count + 1
    ):
        slices = _slices(count, config.workers)
        if config.workers == 1:
            results = [_scan_slice(config.depth, config.digits, lo, hi) for lo, hi in slices]
        else:
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                futures = [
                    pool.submit(_scan_slice, config.depth, config.digits, lo, hi)
                    for lo, hi in slices
                ]
                results = [future.result() for future in futures]

    lowest = highest = None
    for raw_low, raw_high in results:
        lowest = _merge(lowest, _from_raw(ctx, raw_low), minimize=True)
        highest = _merge(highest, _from_raw(ctx, raw_high), minimize=False)

    pad = error_bound(ctx, config.digits, TRANSCENDENTAL_OPS_PER_ENDPOINT)
    _check_separation(ctx, lowest, pad, config.digits, "minimum L")
    _check_separation(ctx, highest, pad, config.digits, "maximum U")

    argmin = OffsetPattern.model_construct(offsets=patterns[lowest.index])
    argmax = OffsetPattern.model_construct(offsets=patterns[highest.index])
    report = BoundsReport(
        depth=config.depth,
        digits=config.digits,
        c1_lower=lowest.value - pad,
        c1_upper=ratio_limit(argmin, config.digits) + pad,
        c2_lower=ratio_limit(argmax, config.digits) - pad,
        c2_upper=highest.value + pad,
        argmin_pattern=argmin,
        argmax_pattern=argmax,
        endpoint_count=count,
        error_bound=pad,
    )
    logger.info(
        "bounds_computed",
        depth=config.depth,
        argmin=str(argmin),
        argmax=str(argmax),
        argmin_index=lowest.index,
        argmax_index=highest.index,
    )
    return report


def iter_endpoint_estimates(depth: int, digits: int) -> Iterator[EndpointEstimate]:
    """끝점 추정값을 값 오름차순으로 하나씩 (마지막은 F_{m+1} 울타리)."""
    require_integer(depth, "depth", 2)
    require_integer(digits, "digits", 1)
    ctx = make_context(digits)
    phi, sqrt5, lam = golden_ratio(ctx), ctx.sqrt(5), growth_exponent(ctx)
    patterns = _pattern_tuples(depth)
    powers = _inverse_powers(ctx, phi, depth)

    def state(j: int):
        if j == len(patterns):
            return None, SUPER_ENDPOINT_V, phi
        offsets = patterns[j]
        return offsets, _v_from_offsets(offsets), _w_value(ctx, powers, offsets)

    offsets, v, w = state(0)
    for j in range(len(patterns) + 1):
        g = ctx.power(sqrt5 / w, lam)
        lower = upper = None
        if j < len(patterns):
            next_offsets, v_next, w_next = state(j + 1)
            lower = _as_real(ctx, v) * ctx.power(sqrt5 / w_next, lam)
            upper = _as_real(ctx, v_next) * g
        pattern = (
            None if offsets is None else OffsetPattern.model_construct(offsets=offsets)
        )
        yield EndpointEstimate(
            pattern=pattern,
            v=v,
            w=w,
            ratio=_as_real(ctx, v) * g,
            lower=lower,
            upper=upper,
        )
        if j < len(patterns):
            offsets, v, w = next_offsets, v_next, w_next


def endpoint_estimates(depth: int, digits: int) -> list[EndpointEstimate]:
    """iter_endpoint_estimates 의 목록형."""
    return list(iter_endpoint_estimates(depth, digits))
