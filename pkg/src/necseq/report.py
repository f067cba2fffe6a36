"""Minimal pass/fail report structure shared by the verification helpers."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CheckItem:
    label: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class Report:
    header: str
    items: tuple[CheckItem, ...]

    @property
    def ok(self) -> bool:
        return all(item.ok for item in self.items)

    def failures(self) -> list[CheckItem]:
        return [item for item in self.items if not item.ok]

    def render(self) -> str:
        lines = [self.header]
        for item in self.items:
            status = "pass" if item.ok else "FAIL"
            tail = f"  ({item.detail})" if item.detail else ""
            lines.append(f"  [{status}] {item.label}{tail}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "header": self.header,
            "ok": self.ok,
            "items": [
                {"label": i.label, "ok": i.ok, "detail": i.detail} for i in self.items
            ],
        }
