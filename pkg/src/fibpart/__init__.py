"""
fibpart: 피보나치 분할 함수 R(n), 합 함수 A(H) 와 A(H)/H^λ 경계 계산.

모듈 구성:
- bigfib: 피보나치 수, Zeckendorf 전개
- partition_count: R(H)
- summatory: A(H), M(H), B(H)
- oracle: brute-force 기준 표와 대조 검증
- asymptotics: liminf/limsup 구간 계산
- cli: 명령행 인터페이스
"""

__version__ = "0.1.0"
