# criterion number -> "criterion N: PASS|FAIL  detail", filled in by test_acceptance
LINES: dict[int, str] = {}


def record(n: int, ok: bool, detail: str) -> str:
    LINES[n] = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    return LINES[n]
