"""
fibpart 구조화 로깅 설정

계산 결과는 stdout 으로만 나가고, 로그는 항상 stderr 로 보냅니다.
같은 명령을 두 번 실행하면 stdout 이 바이트 단위로 같아야 하기 때문입니다.
"""

import logging
import sys
from enum import Enum

import structlog


class LogLevel(str, Enum):
    """로그 레벨 정의"""

    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"


def configure_logging(
    log_level: LogLevel | str = LogLevel.WARNING, json_logs: bool = False
) -> None:
    """
    structlog 설정

    Args:
        log_level: 최소 로그 레벨
        json_logs: True 면 JSON 한 줄 로그, False 면 콘솔 렌더러
    """
    level = LogLevel(log_level).value
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=getattr(logging, level),
        force=True,
    )

    renderer = (
        structlog.processors.JSONRenderer(ensure_ascii=False)
        if json_logs
        else structlog.dev.ConsoleRenderer(colors=False)
    )

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            renderer,
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )
