import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

settings.register_profile("exact", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("exact")

sys.path.insert(0, str(Path(__file__).parent))

ROOT = Path(__file__).resolve().parents[1]


def pytest_terminal_summary(terminalreporter):
    from acceptance_lines import LINES
    if not LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(LINES):
        terminalreporter.write_line(LINES[k])
