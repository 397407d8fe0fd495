"""Number formatting shared by the CSV and JSON writers."""

from __future__ import annotations

import csv
import io

SIG_DIGITS = 12


def fmt(x: float) -> str:
    """12 significant digits; ``-0`` is printed as ``0``."""
    s = f"{float(x):.{SIG_DIGITS}g}"
    return "0" if s == "-0" else s


def round_sig(x: float) -> float:
    v = float(fmt(x))
    return 0.0 if v == 0 else v


def rounded(obj):
    """Recursively round every float in a JSON-ready structure."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return round_sig(obj)
    if isinstance(obj, dict):
        return {k: rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [rounded(v) for v in obj]
    try:
        return round_sig(float(obj))
    except (TypeError, ValueError):
        raise TypeError(f"cannot serialize {type(obj).__name__}") from None


def csv_text(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()
