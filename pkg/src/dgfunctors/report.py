from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import Matrix


@dataclass(frozen=True)
class Failure:
    diagram: str
    where: tuple = ()
    residual: Matrix | None = None
    detail: str = ""

    def __str__(self):
        loc = ", ".join(map(str, self.where))
        out = f"FAIL {self.diagram}" + (f" at ({loc})" if loc else "")
        if self.detail:
            out += f": {self.detail}"
        if self.residual is not None:
            rows = "; ".join(" ".join(map(str, r)) for r in self.residual.rows)
            out += f" residual=[{rows}]"
        return out


@dataclass
class Report:
    """Outcome of a finite family of exact checks; empty ``failures`` means success."""

    title: str
    notes: list[str] = field(default_factory=list)
    failures: list[Failure] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        # truthy when something failed, mirroring "non-empty report"
        return bool(self.failures)

    def __len__(self):
        return len(self.failures)

    def add(self, failure: Failure):
        self.failures.append(failure)

    def extend(self, other: "Report"):
        self.failures.extend(other.failures)
        self.checked += other.checked

    def render(self) -> str:
        lines = [f"# {self.title}"]
        lines += [f"# note: {n}" for n in self.notes]
        lines.append(f"checked {self.checked}")
        lines += [str(f) for f in self.failures]
        lines.append("status " + ("ok" if self.ok else f"failed ({len(self.failures)})"))
        return "\n".join(lines) + "\n"
