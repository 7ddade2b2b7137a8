"""Check records and certification reports with a stable JSON encoding."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

PASS = "pass"
FAIL = "fail"
UNDECIDED = "undecided"
VACUOUS = "vacuous-pass"
VERDICTS = (PASS, FAIL, UNDECIDED, VACUOUS)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2, 3


def jsonable(obj):
    """Convert nested results into plain JSON types (Fractions become strings)."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return int(obj)
    if hasattr(obj, "to_dict"):
        return jsonable(obj.to_dict())
    if hasattr(obj, "item"):  # numpy scalar
        return obj.item()
    raise TypeError(f"not JSON-serializable: {type(obj).__name__}")


@dataclass
class CheckRecord:
    name: str
    inputs: dict
    outputs: dict
    verdict: str

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def ok(self) -> bool:
        return self.verdict in (PASS, VACUOUS)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "inputs": jsonable(self.inputs),
            "outputs": jsonable(self.outputs),
            "verdict": self.verdict,
        }


def combine(verdicts) -> str:
    verdicts = list(verdicts)
    if FAIL in verdicts:
        return FAIL
    if UNDECIDED in verdicts:
        return UNDECIDED
    return PASS


@dataclass
class CertReport:
    config: dict
    curve: dict
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return combine(c.verdict for c in self.checks)

    @property
    def exit_code(self) -> int:
        return {PASS: EXIT_PASS, FAIL: EXIT_FAIL, UNDECIDED: EXIT_UNDECIDED}[self.verdict]

    def to_dict(self) -> dict:
        return {
            "config": jsonable(self.config),
            "curve": jsonable(self.curve),
            "checks": [c.to_dict() for c in self.checks],
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"
