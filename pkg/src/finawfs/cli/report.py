"""Reports: per-check results plus an overall verdict, rendered as text or JSON."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

FORMAT = "finawfs-report/1"


@dataclass
class CheckResult:
    id: str
    status: str  # "pass" or "fail"
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    seconds: float | None = None

    def emit(self) -> dict:
        out: dict[str, Any] = {"id": self.id, "status": self.status, "witnesses": self.witnesses, "details": self.details}
        if self.seconds is not None:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class Report:
    command: str
    scenarios: list[dict]
    checks: list[CheckResult]

    @property
    def verdict(self) -> str:
        return "PASS" if all(c.status == "pass" for c in self.checks) else "FAIL"

    @property
    def exit_code(self) -> int:
        return 0 if self.verdict == "PASS" else 1

    def emit(self) -> dict:
        return {
            "format": FORMAT,
            "command": self.command,
            "scenarios": self.scenarios,
            "checks": [c.emit() for c in self.checks],
            "verdict": self.verdict,
        }


def render_machine(report: Report) -> str:
    return json.dumps(report.emit(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _short(x: Any, limit: int = 160) -> str:
    s = json.dumps(x, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
    return s if len(s) <= limit else s[: limit - 3] + "..."


def render_text(report: Report) -> str:
    lines = [f"finawfs {report.command}"]
    for sc in report.scenarios:
        u = sc["universe"]
        where = f"objects={len(u['objects'])}" if u["objects"] is not None else f"max_size={u['max_size']}"
        lines.append(f"  scenario {sc['check']} on {_short(sc['category'], 80)} ({where})")
    for c in report.checks:
        t = f" [{c.seconds:.2f}s]" if c.seconds is not None else ""
        lines.append(f"{c.status.upper():4} {c.id}{t}")
        for k in sorted(c.details):
            lines.append(f"       {k}: {_short(c.details[k])}")
        for w in c.witnesses:
            lines.append(f"       witness: {_short(w)}")
    lines.append(f"verdict: {report.verdict}")
    return "\n".join(lines) + "\n"


def render(report: Report, fmt: str) -> str:
    return render_machine(report) if fmt == "machine" else render_text(report)
