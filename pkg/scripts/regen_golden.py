"""Rewrite tests/golden/*.out from the current CLI behaviour.

Review the diff before committing: the golden files are the CLI contract.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from cli_cases import golden_path, load_cases, render  # noqa: E402


def main() -> None:
    for case in load_cases():
        golden_path(case["name"]).write_text(render(case["args"]), encoding="utf-8")
        print(case["name"])


if __name__ == "__main__":
    main()
