"""Analysis report container with JSON and text renderings.

Structured reports are JSON objects with these top-level keys:

``tool``, ``version``
    tool name and version string
``config``
    echo of the run configuration
``tolerances``
    every named tolerance used for verdicts
``results``
    one object per analysis that ran (``synth``, ``verify``, ``jitter``,
    ``symmetry``, ``commutant``)
``verdicts``
    check name -> ``"PASS"`` or ``"FAIL"``
``passed``
    true iff every verdict is PASS
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

TOOL_NAME = "gate-forge"

__all__ = ["Report", "TOOL_NAME", "emit_structured", "parse_structured", "plain", "render_text"]


def plain(obj):
    """Convert numpy scalars/arrays and tuples into JSON-native values."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


@dataclass
class Report:
    version: str
    config: dict
    tolerances: dict
    results: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v == "PASS" for v in self.verdicts.values())

    def add_verdict(self, name: str, ok: bool) -> None:
        self.verdicts[name] = "PASS" if ok else "FAIL"

    def to_dict(self) -> dict:
        return {
            "tool": TOOL_NAME,
            "version": self.version,
            "config": plain(self.config),
            "tolerances": plain(self.tolerances),
            "results": plain(self.results),
            "verdicts": dict(self.verdicts),
            "passed": self.passed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        if data.get("tool") != TOOL_NAME:
            raise ValueError(f"not a {TOOL_NAME} report")
        return cls(
            version=data["version"],
            config=data["config"],
            tolerances=data["tolerances"],
            results=data["results"],
            verdicts=data["verdicts"],
        )

    def __eq__(self, other):
        if not isinstance(other, Report):
            return NotImplemented
        return self.to_dict() == other.to_dict()


def emit_structured(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"


def parse_structured(text: str) -> Report:
    return Report.from_dict(json.loads(text))


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, list) and value and all(isinstance(v, float) for v in value):
        return "[" + ", ".join(f"{v:.6g}" for v in value) + "]"
    return str(value)


def _render_section(lines: list[str], data: dict, indent: int) -> None:
    pad = "  " * indent
    for key, value in data.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            _render_section(lines, value, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for row in value:
                lines.append(pad + "  - " + ", ".join(f"{k}={_fmt(v)}" for k, v in row.items()))
        elif isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{pad}{key}: <{len(value)}x{len(value[0])} matrix>")
        else:
            lines.append(f"{pad}{key}: {_fmt(value)}")


def render_text(report: Report) -> str:
    d = report.to_dict()
    lines = [f"{TOOL_NAME} {report.version}", ""]
    lines.append("config:")
    _render_section(lines, d["config"], 1)
    for name, section in d["results"].items():
        lines.append("")
        lines.append(f"[{name}]")
        _render_section(lines, section, 1)
    lines.append("")
    lines.append("verdicts:")
    for name, verdict in d["verdicts"].items():
        lines.append(f"  {verdict}  {name}")
    lines.append("")
    lines.append("OVERALL: " + ("PASS" if report.passed else "FAIL"))
    return "\n".join(lines) + "\n"
