import sys
from pathlib import Path

# test modules share instance builders by plain import
sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance")
    for name in sorted(results, key=lambda n: int(n[1:])):
        terminalreporter.write_line(results[name])
