"""Golden-file cases for the CLI, shared by the tests and the regeneration script.

Run ``python3 tests/golden_cases.py`` to rewrite every ``.out`` file after an
intentional output change; review the diff before committing.
"""

import shlex
from pathlib import Path

GOLDEN = Path(__file__).parent / "golden"


def load_cases():
    cases = []
    for line in (GOLDEN / "cases.txt").read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        name, workspace, code, command = (part.strip() for part in line.split("|"))
        cases.append((name, workspace, int(code), shlex.split(command)))
    return cases


def run_case(workspace, argv):
    from catprob.cli.main import run_file

    return run_file((GOLDEN / workspace).read_text(encoding="utf-8"), argv)


if __name__ == "__main__":
    for name, workspace, code, argv in load_cases():
        out, got = run_case(workspace, argv)
        (GOLDEN / f"{name}.out").write_text(out, encoding="utf-8")
        flag = "" if got == code else f"  (exit {got}, expected {code})"
        print(f"{name}: exit {got}{flag}")
