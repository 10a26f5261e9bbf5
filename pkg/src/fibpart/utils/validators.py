"""fibpart 공통 검증 유틸리티."""

from typing import Any

import structlog
from pydantic import BaseModel

from src.fibpart.common.exceptions import DomainError

logger = structlog.get_logger(__name__)


class ValidationResult(BaseModel):
    """검증 결과."""

    is_valid: bool
    error_message: str | None = None
    validated_data: Any | None = None
    parameter: str | None = None
    value: Any | None = None
    expected: str | None = None


def validate_integer(value: Any, parameter: str, minimum: int) -> ValidationResult:
    """
    정수 하한 검증.

    bool 은 int 의 하위 타입이지만 인덱스/자연수로 받지 않습니다.

    Args:
        value: 검사할 값
        parameter: 파라미터 이름 (에러 메시지용)
        minimum: 허용 하한

    Returns:
        ValidationResult: 검증 결과

    """
    expected = f"integer >= {minimum}"
    if isinstance(value, bool) or not isinstance(value, int):
        return ValidationResult(
            is_valid=False,
            error_message=f"{parameter} must be an integer, got {type(value).__name__}",
            parameter=parameter,
            value=value,
            expected=expected,
        )

    if value < minimum:
        return ValidationResult(
            is_valid=False,
            error_message=f"{parameter} must be >= {minimum}, got {value}",
            parameter=parameter,
            value=value,
            expected=expected,
        )

    return ValidationResult(is_valid=True, validated_data=value, parameter=parameter)


def require(result: ValidationResult) -> Any:
    """검증 실패 시 DomainError, 성공 시 검증된 값 반환."""
    if not result.is_valid:
        raise DomainError(
            result.error_message or "precondition violated",
            parameter=result.parameter,
            value=result.value,
            expected=result.expected,
        )
    return result.validated_data


def require_integer(value: Any, parameter: str, minimum: int) -> int:
    """validate_integer + require 단축형."""
    return require(validate_integer(value, parameter, minimum))


def parse_natural(text: str, parameter: str = "n") -> int:
    """
    10진 자연수 문자열 파싱.

    100자리 이상의 입력도 정확히 받아야 하므로 float 를 거치지 않습니다.
    `1_000` 같은 밑줄 구분은 허용하지 않습니다.
    """
    stripped = text.strip()
    expected = "ASCII decimal digits"
    if not (stripped.isascii() and stripped.isdigit()):
        raise DomainError(
            f"{parameter} must be a non-negative decimal integer, got {text!r}",
            parameter=parameter,
            value=text[:40],
            expected=expected,
        )
    try:
        return int(stripped)
    except ValueError as e:
        # 정수 문자열 변환 자릿수 제한 (sys.set_int_max_str_digits)
        raise DomainError(
            f"{parameter} could not be parsed: {e}",
            parameter=parameter,
            value=f"{len(stripped)} digits",
            expected=expected,
        ) from e
