"""Rewrite tests/golden from the documented CLI invocations (run after an intended output change)."""
import os
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

from cli_cases import CASES  # noqa: E402
from test_acceptance import GOLDEN, run_case  # noqa: E402

if __name__ == "__main__":
    os.chdir(HERE.parent / "docs" / "examples")
    GOLDEN.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        (GOLDEN / f"{name}.txt").write_text(run_case(argv))
        print(name)
