"""Run the acceptance criteria standalone and print one PASS/FAIL line each."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from test_acceptance import CRITERIA, _run  # noqa: E402


def cli():
    failures = 0
    for number, name, fn in CRITERIA:
        ok, line, _ = _run(number, name, fn)
        print(line, flush=True)
        failures += not ok
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(cli())
