"""
Serialization helpers for consistent JSON-safe outputs.

- Fraction → {"numerator": n, "denominator": d}
- mpmath real → decimal string (keeps every requested digit)
- pydantic model → dict (recursively converted)
- tuple/list/set → list
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from pydantic import BaseModel

from src.fibpart.utils.formatters import format_real


def to_serializable(obj: Any, digits: int = 30) -> Any:
    """
    Recursively convert common non-JSON types to JSON-safe values.

    Python ints stay ints: json handles arbitrarily large integers exactly.
    """
    if isinstance(obj, bool) or obj is None or isinstance(obj, int | str):
        return obj
    if isinstance(obj, Fraction):
        return {"numerator": obj.numerator, "denominator": obj.denominator}
    if hasattr(obj, "_mpf_"):
        return format_real(obj, digits)
    if isinstance(obj, BaseModel):
        return to_serializable(obj.model_dump(), digits)
    if isinstance(obj, dict):
        return {k: to_serializable(v, digits) for k, v in obj.items()}
    if isinstance(obj, list | tuple | set):
        return [to_serializable(v, digits) for v in obj]
    return obj


def dumps(obj: Any, digits: int = 30) -> str:
    """Deterministic JSON text (key order preserved, no timestamps)."""
    return json.dumps(to_serializable(obj, digits), ensure_ascii=False)
