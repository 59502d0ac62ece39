"""Structured results emitted by the command line tool.

The JSON layout is described in ``docs/report_schema.md``;
``Report.from_json(r.to_json()) == r`` holds for every report.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

__all__ = ["Query", "MoveCheck", "Report", "BatchEntry", "BatchReport", "SCHEMA_VERSION"]

SCHEMA_VERSION = 1


@dataclass
class Query:
    sign: str  # "plus" | "minus"
    refine: str  # "theta" | "delta1"
    verdict: str  # "Null" | "NonNull" | "Inconclusive"
    stats: dict[str, Any] = field(default_factory=dict)
    seed_size: int = 1
    oracle: str | None = None  # oracle verdict when requested
    cross_check: str | None = None  # staged-mode verdict under --paranoid
    note: str | None = None

    @classmethod
    def from_dict(cls, d: dict) -> "Query":
        return cls(**d)


@dataclass
class MoveCheck:
    script_length: int
    result_X: list[int]
    result_O: list[int]
    verdict_before: str | None = None
    verdict_after: str | None = None

    @property
    def unchanged(self) -> bool | None:
        if self.verdict_before is None:
            return None
        return self.verdict_before == self.verdict_after

    @classmethod
    def from_dict(cls, d: dict) -> "MoveCheck":
        d = dict(d)
        d.pop("unchanged", None)
        return cls(**d)


@dataclass
class Report:
    name: str
    n: int
    tb: int
    r: int
    sl_plus: int
    sl_minus: int
    version: str
    mode: str | None = None
    gradings: dict[str, list[int]] = field(default_factory=dict)  # sign -> [M, A]
    queries: list[Query] = field(default_factory=list)
    moves: MoveCheck | None = None
    schema: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.moves is not None:
            d["moves"]["unchanged"] = self.moves.unchanged
        return d

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        d = dict(d)
        d["queries"] = [Query.from_dict(q) for q in d.get("queries", [])]
        if d.get("moves") is not None:
            d["moves"] = MoveCheck.from_dict(d["moves"])
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))


@dataclass
class BatchEntry:
    file: str
    status: str  # "ok" or an error class
    exit_code: int
    report: Report | None = None
    error: str | None = None

    @classmethod
    def from_dict(cls, d: dict) -> "BatchEntry":
        d = dict(d)
        if d.get("report") is not None:
            d["report"] = Report.from_dict(d["report"])
        return cls(**d)


@dataclass
class BatchReport:
    directory: str
    version: str
    entries: list[BatchEntry] = field(default_factory=list)
    schema: int = SCHEMA_VERSION

    @property
    def exit_code(self) -> int:
        return max((e.exit_code for e in self.entries), default=0)

    def to_dict(self) -> dict:
        d = asdict(self)
        for e, raw in zip(self.entries, d["entries"]):
            if e.report is not None:
                raw["report"] = e.report.to_dict()
        d["exit_code"] = self.exit_code
        return d

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "BatchReport":
        d = dict(d)
        d.pop("exit_code", None)
        d["entries"] = [BatchEntry.from_dict(e) for e in d.get("entries", [])]
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "BatchReport":
        return cls.from_dict(json.loads(text))
