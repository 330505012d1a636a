"""Regenerate docs/formats/<command>.md: one complete worked example per command.

Inputs come from the fixture corpus in tests/fixtures/cli; outputs are the
reports the CLI produces for them.  Run from the repository root:

    python3 docs/build_formats.py
"""
import json
from pathlib import Path

from fusionnet import cli

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "tests" / "fixtures" / "cli"
OUT = ROOT / "docs" / "formats"

EXAMPLES = [
    ("check-net", ["trivial_net_n8.json"]),
    ("check-defect", ["junction_m2.json"]),
    ("check-sector", ["junction_m2_sector.json"]),
    ("compose-defects", ["junction_m2.json", "junction_m3.json", "--expect", "junction_m6.json"]),
    ("fuse-sectors", ["vacuum_sector.json", "vacuum_sector.json", "--direction", "h"]),
    ("fiber-product", ["fiber_product_m2.json"]),
    ("mu-index", ["tensor_net_d2_n8.json"]),
    ("rep-category", ["tensor_net_d2_n8.json"]),
    ("dualize", ["net.json", "--tolerance", "1e-6"]),
    ("check-2algebra", ["commutative_2algebra.json"]),
    ("pentagon-rescale", ["scaled_2algebra.json"]),
    ("verify-l2-fusion", ["junction_m2.json", "junction_m3.json"]),
    ("verify-interchange", ["vacuum_sector.json"] * 4),
    ("separability", ["diagonal_4.json"]),
]


def main():
    for command, args in EXAMPLES:
        files = [a for a in args if a.endswith(".json")]
        argv = [command] + [str(FIXTURES / a) if a.endswith(".json") else a for a in args]
        status, text, _, _ = cli.run(argv)
        _, _, help_text = cli.COMMANDS[command]
        parts = [f"# `{command}`", "", help_text, "", "```console", f"$ fusionnet {command} {' '.join(args)}", "```", ""]
        for name in dict.fromkeys(files):
            doc = (FIXTURES / name).read_text(encoding="utf-8")
            parts += [f"`{name}`", "", "```json", doc.rstrip("\n"), "```", ""]
        parts += [f"Exit status {status}. Report on stdout:", "", "```json", text.rstrip("\n"), "```", ""]
        (OUT / f"{command}.md").write_text("\n".join(parts), encoding="utf-8")


if __name__ == "__main__":
    main()
