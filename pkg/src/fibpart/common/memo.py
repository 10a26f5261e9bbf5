"""
메모 테이블 모듈.

재귀 기준 구현(a_recursive)이 공유하는 스레드 세이프 메모 테이블을 제공합니다.
값은 입력만의 순수 함수이므로 잠금 밖에서 계산하고 저장만 잠금 안에서 합니다.
"""

from threading import Lock
from typing import Any

import structlog
from pydantic import BaseModel, ConfigDict, PrivateAttr

logger = structlog.get_logger(__name__)


class MemoStats(BaseModel):
    """메모 통계 정보."""

    hits: int = 0
    misses: int = 0
    size: int = 0

    @property
    def hit_rate(self) -> float:
        """적중률 계산."""
        total = self.hits + self.misses
        return self.hits / total if total > 0 else 0.0


class MemoTable(BaseModel):
    """
    정수 키 메모 테이블.

    특징:
    - 스레드 세이프 (조회/저장은 Lock 으로 보호)
    - 축출 없음: 재귀가 실제로 도달한 인자만 저장
    - 통계 수집
    """

    name: str = "memo"
    enable_stats: bool = True

    model_config = ConfigDict(arbitrary_types_allowed=True)

    _entries: dict[int, int] = PrivateAttr(default_factory=dict)
    _lock: Lock = PrivateAttr(default_factory=Lock)
    _stats: MemoStats = PrivateAttr(default_factory=MemoStats)

    def get(self, key: int) -> int | None:
        """저장된 값 조회 (없으면 None)."""
        with self._lock:
            value = self._entries.get(key)
            if self.enable_stats:
                if value is None:
                    self._stats.misses += 1
                else:
                    self._stats.hits += 1
            return value

    def put(self, key: int, value: int) -> None:
        """값 저장."""
        with self._lock:
            self._entries[key] = value
            self._stats.size = len(self._entries)

    def seed(self, values: dict[int, int]) -> None:
        """초기값 일괄 저장."""
        with self._lock:
            self._entries.update(values)
            self._stats.size = len(self._entries)

    def reset(self, values: dict[int, int] | None = None) -> None:
        """전체 삭제 후 초기값 저장 (한 번의 잠금 안에서)."""
        with self._lock:
            self._entries = dict(values or {})
            self._stats = MemoStats(size=len(self._entries))
        logger.debug("memo_reset", name=self.name, size=len(values or {}))

    def clear(self) -> None:
        """전체 삭제."""
        with self._lock:
            self._entries.clear()
            self._stats = MemoStats()
        logger.debug("memo_cleared", name=self.name)

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)

    def __contains__(self, key: Any) -> bool:
        with self._lock:
            return key in self._entries

    @property
    def stats(self) -> MemoStats:
        with self._lock:
            return self._stats.model_copy()
