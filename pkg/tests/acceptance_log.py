"""Collects one pass/fail line per acceptance criterion."""

RESULTS: dict[int, tuple[bool, str]] = {}


def record(number: int, ok: bool, detail: str) -> None:
    RESULTS[number] = (ok, detail)
    print(f"CRITERION {number}: {'PASS' if ok else 'FAIL'} - {detail}")
