"""Regenerate catalog/*.report.json from the catalog/*.gm spec files.

Run after an intentional change to the classification output, then review the diff.
"""
import json
import pathlib
import sys

from gomon.classify import classification_report
from gomon.specfile import parse_spec

CATALOG = pathlib.Path(__file__).resolve().parent.parent / "catalog"


def main() -> int:
    for spec in sorted(CATALOG.glob("*.gm")):
        g = parse_spec(spec.read_text())
        report = classification_report(g)
        out = spec.with_suffix(".report.json")
        out.write_text(json.dumps(report, ensure_ascii=False, indent=2) + "\n")
        print(f"{spec.name}: {report['case']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
