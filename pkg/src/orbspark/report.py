"""Check records and report assembly shared by the verifier, service and CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "PASS"
FAIL = "FAIL"
UNKNOWN = "UNKNOWN"


@dataclass
class CheckRecord:
    """Outcome of one verified law.

    name:   stable identifier of the check instance (unique within a report)
    law:    the identity or property being checked, written out
    status: PASS, FAIL or UNKNOWN
    detail: human-readable context (counterexample, counts, ...)
    """

    name: str
    law: str
    status: str
    detail: str = ""
    data: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"name": self.name, "law": self.law, "status": self.status, "detail": self.detail}
        if self.data:
            out["data"] = self.data
        return out


def summarize(checks) -> dict:
    counts = {PASS: 0, FAIL: 0, UNKNOWN: 0}
    for c in checks:
        counts[c.status] = counts.get(c.status, 0) + 1
    return {"pass": counts[PASS], "fail": counts[FAIL], "unknown": counts[UNKNOWN]}


def build_report(command: str, params: dict, checks, result: dict | None = None) -> dict:
    """Assemble the canonical report payload.

    The payload is deliberately free of timestamps and timing data so that
    identical inputs produce byte-identical serializations.
    """
    report = {
        "tool": "orbspark",
        "command": command,
        "params": params,
        "checks": [c.as_dict() for c in checks],
        "summary": summarize(checks),
    }
    if result is not None:
        report["result"] = result
    return report


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def report_to_text(report: dict) -> str:
    lines = [f"orbspark {report['command']}"]
    for key, val in sorted(report.get("params", {}).items()):
        lines.append(f"  {key} = {val}")
    lines.append("")
    for c in report["checks"]:
        line = f"[{c['status']}] {c['name']}: {c['law']}"
        if c.get("detail"):
            line += f" ({c['detail']})"
        lines.append(line)
    s = report["summary"]
    lines.append("")
    lines.append(f"pass {s['pass']}  fail {s['fail']}  unknown {s['unknown']}")
    if "result" in report:
        lines.append("result: " + json.dumps(report["result"], sort_keys=False))
    return "\n".join(lines) + "\n"


def exit_code(report: dict, strict_unknown: bool = False) -> int:
    s = report["summary"]
    if s["fail"]:
        return 1
    if strict_unknown and s["unknown"]:
        return 2
    return 0
