"""Verification reports: per-diagram instance counts and failure witnesses.

Reports are plain data.  Failures are kept in canonical enumeration order so
that two runs over the same input render byte-identical output regardless of
how the enumeration was partitioned.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable


def label(value: Any) -> str:
    """Stable short text for an object or morphism identifier."""
    lab = getattr(value, "label", None)
    if callable(lab):
        return lab()
    if isinstance(value, tuple):
        return "(" + ",".join(label(v) for v in value) + ")"
    return str(value)


@dataclass
class Failure:
    binding: tuple
    lhs: Any = None
    rhs: Any = None
    kind: str = "mismatch"  # mismatch | ill-typed | endpoint | violation
    detail: str = ""
    order: tuple = ()

    def as_dict(self, variables: tuple[str, ...]) -> dict:
        if variables and len(variables) == len(self.binding):
            binding = {v: label(x) for v, x in zip(variables, self.binding)}
        else:
            binding = [label(x) for x in self.binding]
        out = {"binding": binding, "lhs": label(self.lhs), "rhs": label(self.rhs), "kind": self.kind}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class DiagramReport:
    diagram: str
    cite: str
    variables: tuple[str, ...]
    instances: int = 0
    failures: list[Failure] = field(default_factory=list)
    bounded: bool = False

    @property
    def passed(self) -> bool:
        return not self.failures

    def sort(self) -> "DiagramReport":
        self.failures.sort(key=lambda f: f.order)
        return self

    def witness(self) -> Failure | None:
        return self.failures[0] if self.failures else None


@dataclass
class Report:
    title: str
    diagrams: list[DiagramReport] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(d.passed for d in self.diagrams)

    @property
    def instances(self) -> int:
        return sum(d.instances for d in self.diagrams)

    @property
    def failure_count(self) -> int:
        return sum(len(d.failures) for d in self.diagrams)

    def __getitem__(self, key: str) -> DiagramReport:
        for d in self.diagrams:
            if d.diagram == key:
                return d
        raise KeyError(key)

    def __contains__(self, key: str) -> bool:
        return any(d.diagram == key for d in self.diagrams)

    def failed(self) -> list[DiagramReport]:
        return [d for d in self.diagrams if not d.passed]

    def extend(self, other: "Report") -> "Report":
        self.diagrams.extend(other.diagrams)
        self.notes.extend(other.notes)
        self.data.update(other.data)
        return self

    def add(self, diagram: DiagramReport) -> DiagramReport:
        self.diagrams.append(diagram)
        return diagram


@dataclass
class AxiomReport:
    """Sub-reports keyed by axiom ("Ann-1/L^A", "2.10", ...)."""

    sections: dict[str, Report] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.sections.values())

    verdict = passed

    def __getitem__(self, key: str) -> Report:
        return self.sections[key]

    def __contains__(self, key: str) -> bool:
        return key in self.sections

    def failed_sections(self) -> list[str]:
        return [k for k, r in self.sections.items() if not r.passed]

    def as_report(self, title: str = "axioms") -> Report:
        out = Report(title)
        for r in self.sections.values():
            out.extend(r)
        return out


def _reports(obj) -> Iterable[tuple[str, Report]]:
    if isinstance(obj, AxiomReport):
        yield from obj.sections.items()
    elif isinstance(obj, Report):
        yield obj.title, obj
    else:
        for item in obj:
            yield from _reports(item)


def machine_lines(obj) -> list[str]:
    """Line-delimited JSON: one summary record per diagram, one per failure."""
    lines = []
    for section, rep in _reports(obj):
        for d in rep.diagrams:
            head = {
                "section": section,
                "diagram": d.diagram,
                "cite": d.cite,
                "instances": d.instances,
                "failures": len(d.failures),
                "bounded": d.bounded,
                "verdict": "pass" if d.passed else "fail",
            }
            lines.append(json.dumps(head, sort_keys=True, ensure_ascii=False))
            for f in d.failures:
                rec = {"section": section, "diagram": d.diagram, "verdict": "fail"}
                rec.update(f.as_dict(d.variables))
                lines.append(json.dumps(rec, sort_keys=True, ensure_ascii=False))
        for note in rep.notes:
            lines.append(json.dumps({"section": section, "note": note}, sort_keys=True, ensure_ascii=False))
    return lines


def text_lines(obj, max_witnesses: int = 3) -> list[str]:
    lines = []
    for section, rep in _reports(obj):
        status = "PASS" if rep.passed else "FAIL"
        lines.append(f"{section}: {status} ({rep.instances} instances)")
        for d in rep.diagrams:
            mark = "ok  " if d.passed else "FAIL"
            bounded = " [bounded]" if d.bounded else ""
            lines.append(f"  {mark} {d.diagram:<14} {d.cite:<10} {d.instances:>7} instances{bounded}")
            for f in d.failures[:max_witnesses]:
                rec = f.as_dict(d.variables)
                lines.append(f"       witness {rec['binding']}: lhs={rec['lhs']} rhs={rec['rhs']} ({f.kind})"
                             + (f" {f.detail}" if f.detail else ""))
            if len(d.failures) > max_witnesses:
                lines.append(f"       ... {len(d.failures) - max_witnesses} more")
        for note in rep.notes:
            lines.append(f"  note: {note}")
    return lines
