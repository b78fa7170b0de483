"""Named check lists with pass/fail flags and counterexample witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class CheckEntry:
    name: str
    passed: bool
    witness: Any = None
    tag: str = ""
    detail: str = ""

    def to_dict(self):
        out = {"name": self.name, "passed": self.passed, "tag": self.tag}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class CheckReport:
    title: str
    entries: list[CheckEntry] = field(default_factory=list)

    def add(self, name, passed, witness=None, tag="", detail=""):
        self.entries.append(CheckEntry(name, bool(passed), None if passed else witness, tag, detail))
        return passed

    def extend(self, other: CheckReport, prefix: str = ""):
        for e in other.entries:
            self.entries.append(CheckEntry(prefix + e.name, e.passed, e.witness, e.tag, e.detail))

    def equal(self, name, left, right, tag=""):
        """Record an exact relation equality between two diagram legs."""
        from relhopf.relcat import difference_witness, relations_equal

        ok = relations_equal(left, right)
        witness = None if ok else difference_witness(left, right)
        return self.add(name, ok, witness, tag, detail="composition total: yes")

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if not e.passed]

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def __getitem__(self, name: str) -> CheckEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def to_dict(self):
        return {
            "title": self.title,
            "passed": self.ok,
            "failures": len(self.failures()),
            "entries": [e.to_dict() for e in self.entries],
        }

    def text(self) -> str:
        width = max([len(e.name) for e in self.entries] + [10])
        lines = [self.title, "-" * len(self.title)]
        for e in self.entries:
            mark = "PASS" if e.passed else "FAIL"
            line = f"{e.name.ljust(width)}  {mark}"
            if e.tag:
                line += f"  [{e.tag}]"
            if not e.passed and e.witness is not None:
                line += f"  witness={_jsonable(e.witness)!r}"
            lines.append(line)
        lines.append(f"{len(self.entries) - len(self.failures())}/{len(self.entries)} checks passed")
        return "\n".join(lines)


def _jsonable(x):
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((_jsonable(v) for v in x), key=repr)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if x is None or isinstance(x, (str, int, float, bool)):
        return x
    return repr(x)
