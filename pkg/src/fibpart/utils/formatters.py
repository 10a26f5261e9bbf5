"""fibpart 공통 포맷터 유틸리티."""

from collections.abc import Iterable, Sequence
from itertools import islice
from fractions import Fraction
from typing import Any, TextIO

import pandas as pd
from mpmath.libmp import to_str


def format_real(value: Any, digits: int) -> str:
    """
    고정밀 실수를 유효 숫자 digits 자리 문자열로 포맷팅.

    컨텍스트 정밀도와 무관하게 같은 값이면 같은 문자열이 나옵니다.

    Args:
        value: mpmath 실수 (또는 int/Fraction)
        digits: 유효 숫자 자리수

    Returns:
        포맷팅된 문자열

    """
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return format_fraction(value)
    return to_str(value._mpf_, digits)


def format_fraction(value: Fraction) -> str:
    """유리수를 `n/d` (정수면 `n`) 로 포맷팅."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_pattern(offsets: Sequence[int], separator: str = ";") -> str:
    """오프셋 패턴 포맷팅 (빈 패턴은 빈 문자열)."""
    return separator.join(str(a) for a in offsets)


def format_table(headers: list[str], rows: list[list[Any]]) -> str:
    """
    텍스트 테이블 포맷팅.

    Args:
        headers: 헤더 목록
        rows: 데이터 행 목록

    Returns:
        포맷팅된 테이블 문자열

    """
    col_widths = []
    for i, header in enumerate(headers):
        max_width = len(str(header))
        for row in rows:
            if i < len(row):
                max_width = max(max_width, len(str(row[i])))
        col_widths.append(max_width)

    separator = "+" + "+".join("-" * (w + 2) for w in col_widths) + "+"
    header_row = "|" + "".join(
        f" {str(h).ljust(col_widths[i])} |" for i, h in enumerate(headers)
    )

    lines = [separator, header_row, separator]
    for row in rows:
        lines.append(
            "|"
            + "".join(f" {str(v).rjust(col_widths[i])} |" for i, v in enumerate(row))
        )
    lines.append(separator)
    return "\n".join(lines)


def write_csv(
    stream: TextIO,
    columns: list[str],
    rows: Iterable[Sequence[Any]],
    chunk_size: int = 50_000,
) -> int:
    """
    CSV 출력 (헤더 + 행). 값은 미리 문자열/정수로 만들어 두어야 합니다.

    행을 chunk_size 단위로 DataFrame 에 담아 쓰므로 생성기도 그대로 넘길 수 있습니다.

    Returns:
        기록한 데이터 행 수

    """
    iterator = iter(rows)
    written = 0
    header = True
    while True:
        chunk = list(islice(iterator, chunk_size))
        if not chunk and not header:
            break
        frame = pd.DataFrame(chunk, columns=columns)
        frame.to_csv(stream, index=False, header=header, lineterminator="\n")
        written += len(frame)
        header = False
        if len(chunk) < chunk_size:
            break
    return written
