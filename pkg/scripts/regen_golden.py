"""Regenerate the CLI golden files listed in tests/golden/cases.json.

Run this only after an intended output change, then review the diff.
"""

import contextlib
import io
import json
import tempfile
from pathlib import Path

from mixedenv.cli import main

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def render(argv: list[str], tmp: Path) -> str:
    out = tmp / "out.svg"
    writes_file = "{out}" in argv
    argv = [a.replace("{out}", str(out)) for a in argv]
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        main(argv)
    return out.read_text() if writes_file else buf.getvalue()


def main_regen() -> None:
    cases = json.loads((GOLDEN / "cases.json").read_text())
    with tempfile.TemporaryDirectory() as d:
        for name, argv in cases.items():
            text = render(argv, Path(d))
            (GOLDEN / name).write_text(text)
            print(f"wrote {name} ({len(text)} bytes)")


if __name__ == "__main__":
    main_regen()
