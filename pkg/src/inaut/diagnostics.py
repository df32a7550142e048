"""Validation diagnostics: stable JSON shape consumed by the service and
the web client."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Diagnostic:
    code: str
    span: tuple[int, int]
    message: str
    hints: tuple[str, ...] = ()
    severity: str = "error"

    def to_dict(self) -> dict:
        return {
            "severity": self.severity,
            "code": self.code,
            "span": [self.span[0], self.span[1]],
            "message": self.message,
            "hints": list(self.hints),
        }

    def shifted(self, offset: int) -> "Diagnostic":
        return Diagnostic(self.code, (self.span[0] + offset, self.span[1] + offset),
                          self.message, self.hints, self.severity)
