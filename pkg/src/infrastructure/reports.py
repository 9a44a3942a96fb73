"""
Rendering and writing command output.

Output is built as a string first so that the same bytes go to stdout or to
--out PATH. Every renderer is deterministic: keys keep insertion order and weights
are listed in ascending order.
"""

import csv
import io
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Tuple

from src.codes.types import WeightDistribution

logger = logging.getLogger('cyclic_weights.reports')


def render_json(data: Any) -> str:
    return json.dumps(data, indent=2) + "\n"


def parse_json(text: str) -> Any:
    return json.loads(text)


def render_distribution(wd: WeightDistribution, fmt: str) -> str:
    """A single distribution as json, csv or table."""
    if fmt == "json":
        return render_json(wd.to_dict())
    if fmt == "csv":
        return wd.to_csv()
    if fmt == "table":
        return wd.to_table()
    raise ValueError(f"unknown format {fmt!r}")


def comparison_dict(
    theory: WeightDistribution,
    empirical: WeightDistribution,
    diff: List[Tuple[int, int, int]]
) -> Dict[str, Any]:
    return {
        "theory": theory.to_dict(),
        "empirical": empirical.to_dict(),
        "diff": [{"w": w, "theory": t, "empirical": e} for w, t, e in diff],
        "equal": not diff,
    }


def render_comparison(
    theory: WeightDistribution,
    empirical: WeightDistribution,
    diff: List[Tuple[int, int, int]],
    fmt: str
) -> str:
    """Both distributions side by side, plus the differing weights."""
    if fmt == "json":
        return render_json(comparison_dict(theory, empirical, diff))

    weights = sorted(set(theory.counts) | set(empirical.counts))
    rows = [(w, theory.counts.get(w, 0), empirical.counts.get(w, 0)) for w in weights]
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["w", "theory", "empirical"])
        writer.writerows(rows)
        return buffer.getvalue()
    if fmt == "table":
        header = ("weight", "theory", "empirical")
        widths = [
            max([len(header[i])] + [len(str(row[i])) for row in rows]) for i in range(3)
        ]
        lines = ["  ".join(f"{h:>{widths[i]}}" for i, h in enumerate(header))]
        for row in rows:
            marker = "" if row[1] == row[2] else "  *"
            lines.append("  ".join(f"{v:>{widths[i]}}" for i, v in enumerate(row)) + marker)
        lines.append(f"equal: {'yes' if not diff else 'no'}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def write_output(text: str, out: Optional[str] = None) -> None:
    """
    Write command output to stdout, or to a file when out is given.

    Args:
        text: Rendered output
        out: Destination path; None for stdout
    """
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(out, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    logger.info(f"Results saved to {out}")
