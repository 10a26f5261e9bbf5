"""
fibpart 공통 예외 처리 체계

모든 계산 모듈에서 사용할 수 있는 일관된 예외 클래스와
CLI 종료 코드 매핑 데코레이터를 제공합니다.

Usage:
    from src.fibpart.common.exceptions import DomainError, handle_cli_errors

    def fib(m: int) -> int:
        if m < 1:
            raise DomainError("index must be positive", parameter="m", value=m)
"""

import functools
import sys
import time
import traceback
from collections.abc import Callable
from enum import Enum
from typing import Any, TypeVar

import structlog

logger = structlog.get_logger(__name__)

F = TypeVar("F", bound=Callable[..., Any])

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def trace_operation(operation_name: str, **context: Any):
    """오퍼레이션 추적 컨텍스트 매니저 (시작/종료와 소요 시간 로깅)"""

    class TraceContextManager:
        def __init__(self, op_name: str):
            self.operation_name = op_name
            self.start_time = 0.0

        def __enter__(self):
            self.start_time = time.perf_counter()
            logger.debug(f"{self.operation_name}_started", **context)
            return self

        def __exit__(self, exc_type, exc_val, exc_tb):
            elapsed_ms = round((time.perf_counter() - self.start_time) * 1000, 2)
            if exc_type is None:
                logger.info(
                    f"{self.operation_name}_done", elapsed_ms=elapsed_ms, **context
                )
            else:
                logger.warning(
                    f"{self.operation_name}_failed",
                    elapsed_ms=elapsed_ms,
                    error=str(exc_val),
                    **context,
                )
            return False

    return TraceContextManager(operation_name)


class ErrorSeverity(Enum):
    """에러 심각도 레벨"""

    LOW = "low"  # 사용자 입력 오류 등 예상 가능한 에러
    MEDIUM = "medium"  # 리소스 부족 등 실행 환경 에러
    HIGH = "high"  # 결과를 신뢰할 수 없는 에러


class FibPartError(Exception):
    """
    fibpart 기본 예외 클래스

    Attributes:
        message: 에러 메시지
        error_code: 에러 코드 (기본값: 클래스명의 대문자)
        details: 추가 에러 상세 정보
        severity: 에러 심각도

    """

    def __init__(
        self,
        message: str,
        error_code: str | None = None,
        details: dict[str, Any] | None = None,
        severity: ErrorSeverity = ErrorSeverity.MEDIUM,
    ):
        super().__init__(message)
        self.message = message
        self.error_code = error_code or self.__class__.__name__.upper()
        self.details = details or {}
        self.severity = severity

    def to_response(self) -> dict[str, Any]:
        """표준 에러 응답 포맷 생성"""
        return {
            "success": False,
            "error": {
                "code": self.error_code,
                "message": self.message,
                "details": self.details,
                "severity": self.severity.value,
            },
        }

    def __str__(self) -> str:
        return f"[{self.error_code}] {self.message}"

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__}("
            f"message='{self.message}', "
            f"error_code='{self.error_code}', "
            f"severity={self.severity.value})"
        )


class DomainError(FibPartError):
    """
    연산의 사전 조건 위반 예외

    fib(0), zeckendorf_encode(0), B(H) with H < 2 처럼 정의역 밖의 입력에서 발생합니다.
    """

    def __init__(
        self,
        message: str,
        parameter: str | None = None,
        value: Any | None = None,
        expected: str | None = None,
        **kwargs,
    ):
        details = kwargs.pop("details", {})
        if parameter:
            details["parameter"] = parameter
        if value is not None:
            details["value"] = str(value)
        if expected:
            details["expected"] = expected

        super().__init__(
            message=message,
            details=details,
            severity=kwargs.pop("severity", ErrorSeverity.LOW),
            **kwargs,
        )


class ValidationError(FibPartError):
    """
    구조화된 값의 불변식 위반 예외

    Zeckendorf 전개의 인덱스 간격, 오프셋 패턴의 간격, 설정값 범위 등을 검사합니다.
    """

    def __init__(
        self,
        message: str,
        field_name: str | None = None,
        field_value: Any | None = None,
        expected_format: str | None = None,
        **kwargs,
    ):
        details = kwargs.pop("details", {})
        if field_name:
            details["field_name"] = field_name
        if field_value is not None:
            details["field_value"] = str(field_value)
        if expected_format:
            details["expected_format"] = expected_format

        super().__init__(
            message=message,
            details=details,
            severity=kwargs.pop("severity", ErrorSeverity.LOW),
            **kwargs,
        )


class ResourceError(FibPartError):
    """
    리소스 한계 초과 예외

    brute-force 오라클 테이블이 설정 한도나 가용 메모리를 넘어서는 경우 발생합니다.
    """

    def __init__(
        self,
        message: str,
        resource_type: str | None = None,
        requested: int | None = None,
        available: int | None = None,
        **kwargs,
    ):
        details = kwargs.pop("details", {})
        if resource_type:
            details["resource_type"] = resource_type
        if requested is not None:
            details["requested"] = requested
        if available is not None:
            details["available"] = available

        super().__init__(
            message=message,
            details=details,
            severity=kwargs.pop("severity", ErrorSeverity.MEDIUM),
            **kwargs,
        )


class PrecisionError(FibPartError):
    """
    작업 정밀도 부족 예외

    경계 계산에서 최소/최대 후보를 요청한 자릿수로 구분할 수 없을 때 발생합니다.
    잘못된 값을 조용히 반환하는 대신 항상 이 예외를 던집니다.
    """

    def __init__(
        self,
        message: str,
        digits: int | None = None,
        separation: str | None = None,
        **kwargs,
    ):
        details = kwargs.pop("details", {})
        if digits is not None:
            details["digits"] = digits
        if separation is not None:
            details["separation"] = separation

        super().__init__(
            message=message,
            details=details,
            severity=kwargs.pop("severity", ErrorSeverity.HIGH),
            **kwargs,
        )


class VerificationError(FibPartError):
    """오라클 대조 검증 실패 예외"""

    def __init__(self, message: str, mismatches: list[int] | None = None, **kwargs):
        details = kwargs.pop("details", {})
        if mismatches:
            details["first_mismatches"] = mismatches[:10]
            details["mismatch_count"] = len(mismatches)

        super().__init__(
            message=message,
            details=details,
            severity=kwargs.pop("severity", ErrorSeverity.HIGH),
            **kwargs,
        )


def handle_cli_errors(log_traceback: bool = True) -> Callable[[F], F]:
    """
    CLI 에러 처리 데코레이터

    FibPartError 계열은 종료 코드 1과 `error: [CODE] message` 출력으로,
    예상치 못한 예외는 트레이스백 로깅 후 종료 코드 1로 변환합니다.

    Example:
        @handle_cli_errors()
        def run(config, args) -> int:
            ...
            return EXIT_OK

    """

    def decorator(func: F) -> F:
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except FibPartError as e:
                logger.warning(
                    "command_failed",
                    function=func.__name__,
                    error_code=e.error_code,
                    details=e.details,
                )
                print(f"error: {e}", file=sys.stderr)
                return EXIT_FAILURE
            except Exception as e:
                logger.error(
                    "unexpected_error",
                    function=func.__name__,
                    error_type=type(e).__name__,
                    error=str(e),
                    traceback=traceback.format_exc() if log_traceback else None,
                )
                print(f"error: [INTERNAL_ERROR] {e}", file=sys.stderr)
                return EXIT_FAILURE

        return wrapper  # type: ignore

    return decorator
