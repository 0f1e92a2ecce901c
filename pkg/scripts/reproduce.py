#!/usr/bin/env python3
"""Run every acceptance check and write a JSON report.

usage: python3 scripts/reproduce.py [--out DIR]
"""
import argparse
import json
import sys
from pathlib import Path

from clusterscat.verify import CHECKS


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="out", help="directory for report.json")
    args = ap.parse_args()
    results = []
    for name, check in CHECKS.items():
        r = check()
        print(r.line(), flush=True)
        results.append({"check": name, **r.to_json()})
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(json.dumps(results, indent=2) + "\n")
    print(f"report written to {out / 'report.json'}")
    return 0 if all(r["passed"] for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
