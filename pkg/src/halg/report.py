"""Itemized verification reports."""

from __future__ import annotations

import time
from dataclasses import dataclass, field


@dataclass
class CheckItem:
    axiom: str
    statement: str
    passed: bool
    witness: str | None = None
    note: str | None = None

    def to_dict(self) -> dict:
        d = {"axiom": self.axiom, "statement": self.statement, "passed": self.passed}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.note is not None:
            d["note"] = self.note
        return d


@dataclass
class CheckReport:
    suite: str
    items: list[CheckItem] = field(default_factory=list)
    elapsed: float = 0.0
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        self._t0 = time.perf_counter()

    def check(self, axiom: str, statement: str, passed: bool, witness: str | None = None,
              note: str | None = None) -> bool:
        self.items.append(CheckItem(axiom, statement, bool(passed),
                                    None if passed else witness, note))
        return bool(passed)

    def extend(self, other: CheckReport, prefix: str | None = None):
        for it in other.items:
            ax = f"{prefix}/{it.axiom}" if prefix else it.axiom
            self.items.append(CheckItem(ax, it.statement, it.passed, it.witness, it.note))
        for k, v in other.info.items():
            self.info[f"{prefix}/{k}" if prefix else k] = v

    def done(self) -> CheckReport:
        self.elapsed = time.perf_counter() - self._t0
        return self

    @property
    def ok(self) -> bool:
        return all(it.passed for it in self.items)

    def failures(self) -> list[CheckItem]:
        return [it for it in self.items if not it.passed]

    def failed_ids(self) -> list[str]:
        return [it.axiom for it in self.items if not it.passed]

    def item(self, axiom: str) -> CheckItem:
        for it in self.items:
            if it.axiom == axiom:
                return it
        raise KeyError(axiom)

    def to_dict(self, timing: bool = False) -> dict:
        d = {"suite": self.suite, "passed": self.ok,
             "items": [it.to_dict() for it in self.items]}
        if self.info:
            d["info"] = {k: self.info[k] for k in sorted(self.info)}
        if timing:
            d["elapsed_s"] = round(self.elapsed, 3)
        return d

    def to_text(self) -> str:
        width = max((len(it.axiom) for it in self.items), default=10)
        lines = [f"[{'PASS' if self.ok else 'FAIL'}] {self.suite}"]
        for it in self.items:
            mark = "ok  " if it.passed else "FAIL"
            lines.append(f"  {mark} {it.axiom.ljust(width)}  {it.statement}")
            if it.witness:
                lines.append(f"       witness: {it.witness}")
            if it.note:
                lines.append(f"       note: {it.note}")
        for k in sorted(self.info):
            lines.append(f"  info {k}: {self.info[k]}")
        return "\n".join(lines)

    def __str__(self):
        return self.to_text()
