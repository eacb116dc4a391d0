"""Shared accumulator for acceptance-criterion verdicts (printed by the
conftest terminal-summary hook)."""

RESULTS: list[tuple[int, str, bool, str]] = []


def record(num: int, desc: str, ok: bool, detail: str = "") -> None:
    RESULTS.append((num, desc, bool(ok), detail))
