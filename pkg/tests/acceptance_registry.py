"""Shared store for the one-line acceptance verdicts printed at session end."""

from __future__ import annotations

RESULTS: dict[int, str] = {}


def record(number: int, title: str, ok: bool, detail: str, seconds: float) -> str:
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail} [{seconds:.2f}s]"
    RESULTS[number] = line
    print(line)
    return line
