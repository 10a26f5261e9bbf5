"""
환경변수 검증 유틸리티

CLI 기본값을 덮어쓰는 환경변수(FIBPART_DIGITS)를 읽고 검증합니다.
"""

import os

import structlog

from src.fibpart.common.constants import DEFAULT_DIGITS, DIGITS_ENV_VAR, MIN_DIGITS

logger = structlog.get_logger(__name__)


class EnvironmentVariableError(Exception):
    """환경변수 관련 에러."""

    pass


def read_int_env(var_name: str, default: int, minimum: int) -> int:
    """
    정수 환경변수를 읽어 검증합니다.

    Args:
        var_name: 환경변수 이름
        default: 설정되지 않았을 때의 값
        minimum: 허용 하한

    Returns:
        검증된 정수 값

    Raises:
        EnvironmentVariableError: 정수가 아니거나 하한보다 작은 경우
    """
    raw = os.getenv(var_name)
    if raw is None or raw.strip() == "":
        return default

    raw = raw.strip()
    if not (raw.isascii() and raw.isdigit()):
        raise EnvironmentVariableError(
            f"{var_name} must be a positive integer, got {raw!r}"
        )

    try:
        value = int(raw)
    except ValueError as e:
        raise EnvironmentVariableError(f"{var_name} could not be parsed: {e}") from e

    if value < minimum:
        raise EnvironmentVariableError(f"{var_name} must be >= {minimum}, got {value}")

    logger.debug("environment_override", var_name=var_name, value=value)
    return value


def default_digits() -> int:
    """FIBPART_DIGITS 가 있으면 그 값, 없으면 DEFAULT_DIGITS."""
    return read_int_env(DIGITS_ENV_VAR, DEFAULT_DIGITS, MIN_DIGITS)
