"""fibpart 공통 모듈 (예외, 로깅, 상수, 메모 테이블)."""
