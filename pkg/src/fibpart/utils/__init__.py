"""fibpart 유틸리티 (검증, 직렬화, 포맷팅, 환경변수)."""
