from __future__ import annotations

import sys
from fractions import Fraction

from wallx.core.wire import parse_rational


MAX_FAILURES = 20


class SuiteReport:
    """Pass/fail tally for one suite; only the first MAX_FAILURES failures are kept."""

    def __init__(self, suite: str, **header):
        self.suite = suite
        self.header = dict(header)
        self.passed = 0
        self.failed = 0
        self.failures: list[dict] = []
        self.extra: dict = {}

    def check(self, ok: bool, **detail) -> bool:
        if ok:
            self.passed += 1
        else:
            self.fail(**detail)
        return ok

    def fail(self, **detail) -> None:
        self.failed += 1
        if len(self.failures) < MAX_FAILURES:
            self.failures.append(detail)

    def progress(self, message: str) -> None:
        print(f"  [{self.suite}] {message}", file=sys.stderr)

    def to_dict(self) -> dict:
        out = {"suite": self.suite, **self.header, **self.extra}
        out["passed"] = self.passed
        out["failed"] = self.failed
        out["failures"] = self.failures
        return out


def mu_param(params: dict) -> Fraction:
    return parse_rational(params["mu"])
