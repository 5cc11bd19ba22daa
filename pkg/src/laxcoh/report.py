"""Check results and machine-readable reports.

Every verification suite produces a Report: an ordered list of CheckResult
entries, each with a stable id, the law being checked (a human-readable
statement of the identity), a pass/fail status and an optional witness or
counterexample payload.  Reports are deterministic given (config, seed):
entries are sorted by id before serialization.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Dict, List, Optional

__all__ = ["CheckResult", "Report", "TOOL_VERSION"]

TOOL_VERSION = "0.1.0"


class CheckResult:
    __slots__ = ("check_id", "law", "status", "detail")

    def __init__(self, check_id: str, law: str, passed: bool,
                 detail: Optional[str] = None):
        self.check_id = check_id
        self.law = law
        self.status = "pass" if passed else "fail"
        self.detail = detail

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> Dict:
        out = {"id": self.check_id, "law": self.law, "status": self.status}
        if self.detail is not None:
            out["detail"] = self.detail
        return out

    def __repr__(self):
        return f"CheckResult({self.check_id}: {self.status})"


class Report:
    def __init__(self, suite: str, config_echo: Dict):
        self.suite = suite
        self.config_echo = config_echo
        self.checks: List[CheckResult] = []

    def add(self, check_id: str, law: str, passed: bool,
            detail: Optional[str] = None) -> CheckResult:
        res = CheckResult(check_id, law, passed, detail)
        self.checks.append(res)
        return res

    def extend(self, results: List[CheckResult]):
        self.checks.extend(results)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> Dict:
        return {
            "tool_version": TOOL_VERSION,
            "suite": self.suite,
            "config": self.config_echo,
            "passed": self.all_passed,
            "checks": [c.as_dict() for c in
                       sorted(self.checks, key=lambda c: c.check_id)],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["id", "status", "law", "detail"])
        for c in sorted(self.checks, key=lambda c: c.check_id):
            w.writerow([c.check_id, c.status, c.law, c.detail or ""])
        return buf.getvalue()

    def summary_lines(self) -> List[str]:
        lines = []
        for c in sorted(self.checks, key=lambda c: c.check_id):
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"[{mark}] {c.check_id}: {c.law}")
        return lines
