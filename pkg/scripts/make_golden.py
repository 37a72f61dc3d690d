"""Regenerate tests/golden/*.out from the *.cmd invocations.

Each .cmd file holds one command line; an argument "@name" names a data file
in the golden directory. The .out file records the exit code, stdout and
stderr. Review the diff before committing regenerated files.
"""

import argparse
import io
import shlex
from pathlib import Path

from avkernel.cli import main

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def run(cmd_file: Path) -> str:
    argv = [str(GOLDEN / a[1:]) if a.startswith("@") else a for a in shlex.split(cmd_file.read_text())]
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return f"exit={code}\n{out.getvalue()}{err.getvalue()}"


def cli():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--check", action="store_true", help="only report files that would change")
    args = p.parse_args()
    changed = 0
    for cmd_file in sorted(GOLDEN.glob("*.cmd")):
        text = run(cmd_file)
        out_file = cmd_file.with_suffix(".out")
        if not out_file.exists() or out_file.read_text() != text:
            changed += 1
            print(f"{'would update' if args.check else 'updated'} {out_file.name}")
            if not args.check:
                out_file.write_text(text)
    print(f"{changed} file(s) {'differ' if args.check else 'written'}")


if __name__ == "__main__":
    cli()
