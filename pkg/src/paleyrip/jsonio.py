"""Deterministic JSON serialization for reports.

Floats are rendered with %.17g so every double round-trips losslessly and
two runs with the same inputs produce byte-identical output.  Key order is
preserved as given (report dicts are built in a fixed order).
"""

from __future__ import annotations

import json
import math


def _render(obj, indent: int, level: int, out: list[str]) -> None:
    pad = " " * (indent * (level + 1))
    closing_pad = " " * (indent * level)
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            raise ValueError(f"cannot serialize non-finite float {obj}")
        out.append("%.17g" % obj)
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for n, item in enumerate(obj):
            out.append(pad)
            _render(item, indent, level + 1, out)
            out.append(",\n" if n + 1 < len(obj) else "\n")
        out.append(closing_pad + "]")
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        items = list(obj.items())
        for n, (key, value) in enumerate(items):
            if not isinstance(key, str):
                raise ValueError(f"JSON object keys must be strings, got {type(key).__name__}")
            out.append(pad + json.dumps(key) + ": ")
            _render(value, indent, level + 1, out)
            out.append(",\n" if n + 1 < len(items) else "\n")
        out.append(closing_pad + "}")
    else:
        raise ValueError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    out: list[str] = []
    _render(obj, indent, 0, out)
    return "".join(out)
