"""Structured pass/fail reports with canonical JSON and text rendering."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from ._version import __version__
from .errors import SizeGuard

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""
    elapsed_ms: int = 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "detail": self.detail,
            "elapsed_ms": self.elapsed_ms,
        }


@dataclass
class VerificationReport:
    suite: str
    params: dict
    checks: list = field(default_factory=list)
    seed: int = 0
    version: str = __version__

    @property
    def overall(self) -> str:
        return FAIL if any(c.status == FAIL for c in self.checks) else PASS

    def passed(self) -> bool:
        return self.overall == PASS

    def zero_elapsed(self) -> None:
        """Make the report time-independent (the threads=1 determinism contract)."""
        for c in self.checks:
            c.elapsed_ms = 0

    def promote_skips(self) -> None:
        for c in self.checks:
            if c.status == SKIPPED:
                c.status = FAIL

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": dict(self.params),
            "checks": [c.to_dict() for c in self.checks],
            "overall": self.overall,
            "seed": self.seed,
            "version": self.version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> VerificationReport:
        data = json.loads(text)
        report = cls(
            suite=data["suite"],
            params=data["params"],
            checks=[
                Check(c["name"], c["status"], c.get("detail", ""), c.get("elapsed_ms", 0))
                for c in data["checks"]
            ],
            seed=data["seed"],
            version=data["version"],
        )
        return report

    def to_text(self, color: bool = False) -> str:
        def paint(s: str, code: str) -> str:
            return f"\x1b[{code}m{s}\x1b[0m" if color else s

        status_style = {PASS: "32", FAIL: "31", SKIPPED: "33"}
        lines = [f"suite: {self.suite}"]
        if self.params:
            params = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
            lines.append(f"params: {params}")
        lines.append(f"seed: {self.seed}")
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.checks:
            status = paint(c.status.upper().ljust(7), status_style[c.status])
            line = f"  {c.name.ljust(width)}  {status} {c.elapsed_ms:>6} ms"
            if c.detail:
                line += f"  {c.detail}"
            lines.append(line)
        lines.append(f"overall: {paint(self.overall.upper(), status_style[self.overall])}")
        return "\n".join(lines) + "\n"


def timed_check(name: str, fn) -> Check:
    """Run fn and wrap the outcome.

    fn returns True/False or (ok, detail); raising SizeGuard yields a skipped
    check.  Other exceptions propagate: they indicate bugs, not failures.
    """
    start = time.perf_counter()
    try:
        result = fn()
    except SizeGuard as guard:
        elapsed = int((time.perf_counter() - start) * 1000)
        return Check(name, SKIPPED, str(guard), elapsed)
    elapsed = int((time.perf_counter() - start) * 1000)
    if isinstance(result, tuple):
        ok, detail = result
    else:
        ok, detail = result, ""
    return Check(name, PASS if ok else FAIL, detail, elapsed)
