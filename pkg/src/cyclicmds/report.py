from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class PropertyReport:
    """Verdict of one check plus the evidence behind a negative answer.

    ``witness`` holds JSON-ready data (index sets, hex entries, affine
    pairs).  ``elapsed_ms`` is filled in only when timing was requested,
    so that repeated runs serialise byte-identically.
    """

    property: str
    verdict: bool
    witness: dict | None = None
    elapsed_ms: int | None = field(default=None, compare=False)

    def __bool__(self):
        return self.verdict

    def to_json(self) -> dict:
        out = {"property": self.property, "verdict": self.verdict, "witness": self.witness}
        if self.elapsed_ms is not None:
            out["elapsed_ms"] = self.elapsed_ms
        return out
