"""
fibpart 명령행 인터페이스.

    python -m src.fibpart r 1234
    python -m src.fibpart bounds --depth 27 --digits 30 --format json
    python -m src.fibpart verify --limit 100000 --samples 1000 --seed 7

계산 결과는 stdout (또는 --output 파일), 로그는 stderr 로 나갑니다.
종료 코드: 0 성공, 1 도메인/검증 실패, 2 사용법 오류.
"""

import argparse
import sys
from collections.abc import Callable, Sequence
from typing import Any, TextIO

import structlog
from pydantic import ValidationError as PydanticValidationError

from src.fibpart.asymptotics import bounds, iter_endpoint_estimates
from src.fibpart.bigfib import fib, zeckendorf_encode
from src.fibpart.common.constants import (
    DEFAULT_DEPTH,
    DEFAULT_LIMIT,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
)
from src.fibpart.common.exceptions import (
    EXIT_OK,
    EXIT_USAGE,
    DomainError,
    VerificationError,
    handle_cli_errors,
)
from src.fibpart.common.logging import LogLevel, configure_logging
from src.fibpart.models import CliConfig, Command, OutputFormat
from src.fibpart.oracle import (
    VerificationReport,
    build_oracle,
    oracle_rows,
    verify_formulas,
    verify_identities,
)
from src.fibpart.partition_count import R_METHODS
from src.fibpart.summatory import (
    A_METHODS,
    b_log_average,
    b_log_series,
    mean,
    ratio_series,
)
from src.fibpart.utils.env import EnvironmentVariableError, default_digits
from src.fibpart.utils.formatters import (
    format_fraction,
    format_pattern,
    format_real,
    format_table,
    write_csv,
)
from src.fibpart.utils.serialization import dumps
from src.fibpart.utils.validators import parse_natural

logger = structlog.get_logger(__name__)

SUPER_ENDPOINT_LABEL = "super"

# 서브커맨드별 위치 인자 (이름, 도움말)
POSITIONALS: dict[Command, tuple[str, str] | None] = {
    Command.FIB: ("m", "Fibonacci index (>= 1)"),
    Command.ZECK: ("n", "positive integer to expand"),
    Command.R: ("H", "non-negative integer"),
    Command.A: ("H", "non-negative integer"),
    Command.MEAN: ("H", "positive integer"),
    Command.BAVG: ("H", "integer >= 2"),
    Command.RATIO_SERIES: None,
    Command.BOUNDS: None,
    Command.VERIFY: None,
    Command.ORACLE_DUMP: None,
}

METHOD_CHOICES: dict[Command, dict[str, Callable[[int], int]]] = {
    Command.R: R_METHODS,
    Command.A: A_METHODS,
}


def _common_options() -> argparse.ArgumentParser:
    """모든 서브커맨드가 공유하는 옵션."""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
        "--depth", type=int, default=DEFAULT_DEPTH, help="Largest offset for bounds"
    )
    parent.add_argument(
        "--digits",
        type=int,
        default=None,
        help="Significant decimal digits (default: $FIBPART_DIGITS or 50)",
    )
    parent.add_argument(
        "--limit", type=int, default=DEFAULT_LIMIT, help="Upper H for tables and verify"
    )
    parent.add_argument(
        "--format",
        dest="output_format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.TEXT.value,
        help="Output format",
    )
    parent.add_argument("--output", dest="output_path", help="Write output to a file")
    parent.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Sampling seed")
    parent.add_argument(
        "--samples", type=int, default=DEFAULT_SAMPLES, help="Sampled identity checks"
    )
    parent.add_argument("--workers", type=int, default=1, help="Bounds scan processes")
    parent.add_argument(
        "--log-level",
        choices=[level.value for level in LogLevel],
        default=LogLevel.WARNING.value,
        help="Log level (logs go to stderr)",
    )
    parent.add_argument("--log-json", action="store_true", help="JSON log lines")
    return parent


def build_parser() -> argparse.ArgumentParser:
    """서브커맨드 파서 생성"""
    parser = argparse.ArgumentParser(
        prog="fibpart",
        description="Fibonacci partitions: R(n), A(H) and bounds for A(H)/H^lambda",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_options()

    for command in Command:
        sub = subparsers.add_parser(command.value, parents=[common])
        positional = POSITIONALS[command]
        if positional is not None:
            name, help_text = positional
            sub.add_argument("value", metavar=name, help=help_text)
        if command in METHOD_CHOICES:
            sub.add_argument(
                "--method",
                choices=sorted(METHOD_CHOICES[command]),
                default="exact",
                help="Evaluation path",
            )
    return parser


def parse_config(
    parser: argparse.ArgumentParser, argv: Sequence[str] | None
) -> tuple[CliConfig, list[int]]:
    """
    argv 를 CliConfig 와 정수 위치 인자로 변환.

    잘못된 값은 parser.error 로 종료 코드 2 가 됩니다.
    """
    args = parser.parse_args(argv)

    digits = args.digits
    if digits is None:
        try:
            digits = default_digits()
        except EnvironmentVariableError as e:
            parser.error(str(e))

    try:
        config = CliConfig(
            command=Command(args.command),
            depth=args.depth,
            digits=digits,
            limit=args.limit,
            output_format=OutputFormat(args.output_format),
            output_path=args.output_path,
            seed=args.seed,
            samples=args.samples,
            workers=args.workers,
            method=getattr(args, "method", None),
            log_level=LogLevel(args.log_level),
            log_json=args.log_json,
        )
    except PydanticValidationError as e:
        error = e.errors()[0]
        parser.error(f"--{error['loc'][0]}: {error['msg']}")

    values: list[int] = []
    if getattr(args, "value", None) is not None:
        try:
            values.append(parse_natural(args.value, POSITIONALS[config.command][0]))
        except DomainError as e:
            parser.error(e.message)

    return config, values


def _emit_scalar(
    config: CliConfig, stream: TextIO, key: str, inputs: dict[str, int], value: Any
) -> None:
    """단일 값 출력 (text: 값만, json: 입력 + 값, csv: 헤더 한 줄)."""
    digits = config.digits
    if config.output_format == OutputFormat.JSON:
        stream.write(dumps({**inputs, key: value}, digits) + "\n")
    elif config.output_format == OutputFormat.CSV:
        columns = [*inputs, key]
        row = [*inputs.values(), _text(value, digits)]
        write_csv(stream, columns, [row])
    else:
        stream.write(_text(value, digits) + "\n")


def _text(value: Any, digits: int) -> str:
    if isinstance(value, list | tuple):
        return " ".join(str(v) for v in value)
    return format_real(value, digits)


def _run_zeck(config: CliConfig, n: int, stream: TextIO) -> None:
    z = zeckendorf_encode(n)
    if config.output_format == OutputFormat.TEXT:
        terms = " + ".join(f"F_{i}" for i in z.indices)
        stream.write(f"{n} = {terms}\n")
    else:
        _emit_scalar(config, stream, "indices", {"n": n}, z.to_json())


def _run_bavg(config: CliConfig, H: int, stream: TextIO) -> None:
    if config.output_format == OutputFormat.CSV:
        rows = b_log_series(H, config.digits)
        write_csv(
            stream,
            ["H", "value"],
            ((h, format_real(value, config.digits)) for h, value in rows),
        )
        return
    _emit_scalar(config, stream, "value", {"H": H}, b_log_average(H, config.digits))


def _run_ratio_series(config: CliConfig, stream: TextIO) -> None:
    rows = ratio_series(config.limit, config.digits)
    formatted = [(H, format_real(ratio, config.digits)) for H, ratio in rows]
    if config.output_format == OutputFormat.CSV:
        write_csv(stream, ["H", "ratio"], formatted)
    elif config.output_format == OutputFormat.JSON:
        stream.write(dumps([{"H": H, "ratio": r} for H, r in formatted]) + "\n")
    else:
        table = format_table(["H", "ratio"], [list(row) for row in formatted])
        stream.write(table + "\n")


def _endpoint_rows(config: CliConfig):
    digits = config.digits
    for estimate in iter_endpoint_estimates(config.depth, digits):
        if estimate.pattern is None:
            label = SUPER_ENDPOINT_LABEL
        else:
            label = format_pattern(estimate.pattern.offsets)
        yield (
            label,
            estimate.v.numerator,
            estimate.v.denominator,
            format_real(estimate.w, digits),
            "" if estimate.lower is None else format_real(estimate.lower, digits),
            "" if estimate.upper is None else format_real(estimate.upper, digits),
        )


def _run_bounds(config: CliConfig, stream: TextIO) -> None:
    if config.output_format == OutputFormat.CSV:
        count = write_csv(
            stream, ["pattern", "v_num", "v_den", "w", "L", "U"], _endpoint_rows(config)
        )
        logger.info("endpoint_table_written", rows=count, depth=config.depth)
        return

    settings = config.asymptotics()
    report = bounds(settings.depth, settings.digits, settings.workers)
    if config.output_format == OutputFormat.JSON:
        stream.write(dumps(report.to_json_dict(), config.digits) + "\n")
        return

    digits = config.digits
    lines = [
        f"depth: {report.depth}",
        f"digits: {report.digits}",
        f"endpoints: {report.endpoint_count}",
        f"c1: [{format_real(report.c1_lower, digits)}, "
        f"{format_real(report.c1_upper, digits)}]",
        f"c2: [{format_real(report.c2_lower, digits)}, "
        f"{format_real(report.c2_upper, digits)}]",
        f"argmin_pattern: {report.argmin_pattern}",
        f"argmax_pattern: {report.argmax_pattern}",
        f"error_bound: {format_real(report.error_bound, 5)}",
    ]
    stream.write("\n".join(lines) + "\n")


def _run_verify(config: CliConfig, stream: TextIO) -> None:
    table = build_oracle(config.limit)
    report = verify_formulas(config.limit, table)
    identity_failures = (
        verify_identities(config.limit, config.samples, config.seed, table)
        if config.samples
        else []
    )
    report = VerificationReport(
        limit=report.limit,
        checked=report.checked,
        mismatches=report.mismatches,
        samples=config.samples,
        seed=config.seed,
        identity_mismatches=identity_failures,
    )

    if config.output_format == OutputFormat.JSON:
        stream.write(dumps(report) + "\n")
    elif config.output_format == OutputFormat.CSV:
        write_csv(
            stream,
            ["limit", "checked", "mismatches", "identity_mismatches", "passed"],
            [
                (
                    report.limit,
                    report.checked,
                    len(report.mismatches),
                    len(report.identity_mismatches),
                    report.passed,
                )
            ],
        )
    else:
        status = "PASS" if report.passed else "FAIL"
        stream.write(
            f"{status}: checked H = 0..{report.limit} ({report.checked} values), "
            f"{len(report.mismatches)} mismatches; "
            f"{report.samples} sampled identity checks (seed {report.seed}), "
            f"{len(report.identity_mismatches)} failures\n"
        )

    if not report.passed:
        raise VerificationError(
            "formula paths disagree with the oracle",
            mismatches=report.mismatches + report.identity_mismatches,
        )


def _run_oracle_dump(config: CliConfig, stream: TextIO) -> None:
    rows = oracle_rows(build_oracle(config.limit))
    if config.output_format == OutputFormat.CSV:
        write_csv(stream, ["n", "R", "A"], rows)
    elif config.output_format == OutputFormat.JSON:
        stream.write(dumps([{"n": n, "R": r, "A": a} for n, r, a in rows]) + "\n")
    else:
        stream.write(format_table(["n", "R", "A"], [list(row) for row in rows]) + "\n")


@handle_cli_errors()
def run(config: CliConfig, values: Sequence[int], stream: TextIO) -> int:
    """
    설정된 명령 실행.

    Args:
        config: 검증된 CLI 설정
        values: 10진 정수로 파싱된 위치 인자
        stream: 출력 스트림

    Returns:
        종료 코드 (도메인/검증 오류는 handle_cli_errors 가 1 로 변환)
    """
    command = config.command
    logger.debug("command_started", command=command.value, digits=config.digits)

    if command == Command.FIB:
        _emit_scalar(config, stream, "F", {"m": values[0]}, fib(values[0]))
    elif command == Command.ZECK:
        _run_zeck(config, values[0], stream)
    elif command in (Command.R, Command.A):
        evaluate = METHOD_CHOICES[command][config.method or "exact"]
        key = command.value.upper()
        _emit_scalar(config, stream, key, {"H": values[0]}, evaluate(values[0]))
    elif command == Command.MEAN:
        value = mean(values[0])
        if config.output_format == OutputFormat.TEXT:
            stream.write(format_fraction(value) + "\n")
        else:
            _emit_scalar(config, stream, "mean", {"H": values[0]}, value)
    elif command == Command.BAVG:
        _run_bavg(config, values[0], stream)
    elif command == Command.RATIO_SERIES:
        _run_ratio_series(config, stream)
    elif command == Command.BOUNDS:
        _run_bounds(config, stream)
    elif command == Command.VERIFY:
        _run_verify(config, stream)
    elif command == Command.ORACLE_DUMP:
        _run_oracle_dump(config, stream)

    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    """메인 실행 함수"""
    # 수천 자리 입력/출력 (F_m, A(H)) 을 위해 정수 문자열 변환 제한 해제
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)

    parser = build_parser()
    try:
        config, values = parse_config(parser, argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    configure_logging(config.log_level, config.log_json)

    if config.output_path is None:
        return run(config, values, sys.stdout)

    with open(config.output_path, "w", encoding="utf-8", newline="") as stream:
        return run(config, values, stream)


if __name__ == "__main__":
    sys.exit(main())
