"""
Configuration models for the fibpart CLI and the bounds engine.
"""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from src.fibpart.common.constants import (
    DEFAULT_DEPTH,
    DEFAULT_DIGITS,
    DEFAULT_LIMIT,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    MIN_DIGITS,
)
from src.fibpart.common.logging import LogLevel


class Command(str, Enum):
    """CLI 서브커맨드."""

    FIB = "fib"
    ZECK = "zeck"
    R = "r"
    A = "a"
    MEAN = "mean"
    BAVG = "bavg"
    RATIO_SERIES = "ratio-series"
    BOUNDS = "bounds"
    VERIFY = "verify"
    ORACLE_DUMP = "oracle-dump"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


class AsymptoticsConfig(BaseModel):
    """
    Settings for the subdivision bounds scan.

    Depth 27 reproduces the published enclosure; it is not a hard limit.
    """

    model_config = ConfigDict(validate_assignment=True)

    depth: int = Field(default=DEFAULT_DEPTH, ge=2, description="Largest offset a_l")
    digits: int = Field(
        default=DEFAULT_DIGITS, ge=MIN_DIGITS, description="Significant decimals"
    )
    workers: int = Field(default=1, ge=1, description="Worker processes for the scan")


class CliConfig(BaseModel):
    """
    Parsed command-line configuration.

    Invariants: depth >= 2, digits >= 15, limit >= 0.
    """

    model_config = ConfigDict(validate_assignment=True)

    command: Command
    depth: int = Field(default=DEFAULT_DEPTH, ge=2)
    digits: int = Field(default=DEFAULT_DIGITS, ge=MIN_DIGITS)
    limit: int = Field(default=DEFAULT_LIMIT, ge=0)
    output_format: OutputFormat = OutputFormat.TEXT
    output_path: str | None = None

    seed: int = Field(default=DEFAULT_SEED, description="Seed for identity sampling")
    samples: int = Field(
        default=DEFAULT_SAMPLES, ge=0, description="Sampled identity checks in verify"
    )
    workers: int = Field(default=1, ge=1)
    method: str | None = Field(default=None, description="Evaluation path for r / a")

    log_level: LogLevel = LogLevel.WARNING
    log_json: bool = False

    def asymptotics(self) -> AsymptoticsConfig:
        return AsymptoticsConfig(
            depth=self.depth, digits=self.digits, workers=self.workers
        )

