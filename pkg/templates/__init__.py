"""
Report templates
Each template turns computation results into a flat report dictionary
and groups its fields into SECTIONS for text output
"""

import json
from fractions import Fraction
from typing import Any, Dict, Tuple

from sympy import S

# Integers beyond this are written as strings in JSON
MAX_SAFE_INTEGER = 2 ** 53


def to_json_value(value: Any) -> Any:
    """Canonical JSON-safe form: no floats, exact rationals as 'a/b'"""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > MAX_SAFE_INTEGER else value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return to_json_value(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {str(k): to_json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json_value(v) for v in value]
    if hasattr(value, "to_json"):
        return to_json_value(value.to_json())
    if value is S.NegativeInfinity or value == float("-inf"):
        return "-oo"
    if value == float("inf"):
        return "oo"
    if getattr(value, "is_Integer", False):
        return to_json_value(int(value))
    raise TypeError(f"Cannot serialize {type(value).__name__}")


def render_json(report: Dict) -> str:
    """Canonical JSON: sorted keys, two-space indent"""
    return json.dumps(to_json_value(report), sort_keys=True, indent=2, ensure_ascii=False)


def _format(value: Any) -> str:
    if isinstance(value, list):
        if value and isinstance(value[0], dict):
            return "\n" + "\n".join("    " + ", ".join(f"{k}={_format(v)}" for k, v in row.items()) for row in value)
        return "[" + ", ".join(_format(v) for v in value) + "]"
    if isinstance(value, dict):
        return ", ".join(f"{k}={_format(v)}" for k, v in value.items())
    if value is None:
        return "-"
    return str(value)


def render_text(report: Dict, sections: Dict[str, Tuple[str, Tuple[str, ...]]]) -> str:
    """Human-readable report, one block per section"""
    data = to_json_value(report)
    blocks = []
    for title, keys in sections.values():
        lines = [title, "-" * len(title)]
        for key in keys:
            if key in data:
                lines.append(f"  {key}: {_format(data[key])}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks)
