"""피보나치 분할 계산 패키지."""
