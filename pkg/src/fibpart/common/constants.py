"""
fibpart 상수 정의

기본 설정값과 고정밀 실수 상수(φ, λ, √5, c)를 제공합니다.
고정밀 계산은 호출마다 독립된 mpmath 컨텍스트에서 수행하므로
전역 mp.dps 를 건드리지 않고 여러 스레드에서 동시에 호출해도 안전합니다.
"""

from mpmath import MPContext

DEFAULT_DEPTH = 27
DEFAULT_DIGITS = 50
MIN_DIGITS = 15
DEFAULT_LIMIT = 100_000
DEFAULT_SAMPLES = 1000
DEFAULT_SEED = 20240101

# 초월 함수 한 번마다 허용하는 오차는 10^(-digits + GUARD_DIGITS)
GUARD_DIGITS = 10
# L_j, U_j 한 개를 만드는 데 드는 초월 연산 수 (sqrt, power, log, exp)
TRANSCENDENTAL_OPS_PER_ENDPOINT = 4

ORACLE_HARD_LIMIT = 10_000_000
# 오라클 테이블 항목 하나당 대략적인 메모리 (두 리스트의 포인터 + 작은 int)
ORACLE_BYTES_PER_ENTRY = 2 * (8 + 28)
MISMATCH_REPORT_CAP = 100

DIGITS_ENV_VAR = "FIBPART_DIGITS"


def make_context(digits: int) -> MPContext:
    """digits 유효 자릿수에 guard 자릿수를 더한 독립 mpmath 컨텍스트 생성"""
    ctx = MPContext()
    ctx.dps = digits + GUARD_DIGITS
    return ctx


def golden_ratio(ctx: MPContext):
    """φ = (1 + √5)/2"""
    return (1 + ctx.sqrt(5)) / 2


def growth_exponent(ctx: MPContext):
    """λ = log 2 / log φ ≈ 1.44"""
    return ctx.log(2) / ctx.log(golden_ratio(ctx))


def fibonacci_constant(ctx: MPContext):
    """c = √5^λ / 6, A(F_m) ~ c F_m^λ 의 상수"""
    return ctx.power(ctx.sqrt(5), growth_exponent(ctx)) / 6


def error_bound(ctx: MPContext, digits: int, operations: int):
    """초월 연산 operations 회에 대한 누적 오차 한계"""
    return operations * ctx.power(10, -digits + GUARD_DIGITS)
