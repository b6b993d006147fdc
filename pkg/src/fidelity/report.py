"""Fidelity reports: JSON round-tripping and a plain-text score table."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .metrics import FidelityScore, SampleSummary

TABLE_COLUMNS = ("Model", "f", "f_a", "f_v", "Percent Error", "Mean", "Standard Deviation")


def fmt(x: float | None, precision: int | None = 6) -> str:
    if x is None:
        return "-"
    if precision is None:
        return repr(float(x))
    return f"{x:.{precision}g}"


def round_sig(x, precision: int | None):
    """Round floats (recursively inside lists/dicts) to ``precision`` significant digits."""
    if precision is None:
        return x
    if isinstance(x, float):
        return float(f"{x:.{precision}g}") if math.isfinite(x) else x
    if isinstance(x, dict):
        return {k: round_sig(v, precision) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [round_sig(v, precision) for v in x]
    return x


@dataclass(frozen=True)
class ReportRow:
    name: str
    f: float
    f_a: float
    f_v: float
    percent_error: float | None
    mean: float
    std: float
    n: int | None = None

    @classmethod
    def from_score(cls, name: str, score: FidelityScore, summary: SampleSummary, n: int | None) -> ReportRow:
        return cls(name, score.f, score.f_a, score.f_v, score.percent_error, summary.mean, summary.std, n)


@dataclass(frozen=True)
class FidelityReport:
    referent: str
    rows: tuple[ReportRow, ...]
    version: str
    seeds: tuple[int, ...] = field(default=())

    def __post_init__(self):
        ordered = tuple(sorted(self.rows, key=lambda r: (-r.f, r.name)))
        object.__setattr__(self, "rows", ordered)

    def to_dict(self, precision: int | None = None) -> dict:
        d = {
            "referent": self.referent,
            "version": self.version,
            "seeds": list(self.seeds),
            "rows": [asdict(r) for r in self.rows],
        }
        return round_sig(d, precision)

    def to_json(self, precision: int | None = None) -> str:
        return json.dumps(self.to_dict(precision), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> FidelityReport:
        rows = tuple(ReportRow(**r) for r in d["rows"])
        return cls(d["referent"], rows, d["version"], tuple(d.get("seeds", ())))

    @classmethod
    def from_json(cls, text: str) -> FidelityReport:
        return cls.from_dict(json.loads(text))

    def to_table(self, precision: int = 6) -> str:
        body = [
            (r.name, fmt(r.f, precision), fmt(r.f_a, precision), fmt(r.f_v, precision),
             fmt(r.percent_error, precision), fmt(r.mean, precision), fmt(r.std, precision))
            for r in self.rows
        ]
        return format_table(TABLE_COLUMNS, body)


def format_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(str(c)) for c in col) for col in zip(header, *rows)]
    lines = [
        "  ".join(str(c).ljust(w) if i == 0 else str(c).rjust(w) for i, (c, w) in enumerate(zip(row, widths)))
        for row in (header, *rows)
    ]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)
