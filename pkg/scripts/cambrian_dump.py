#!/usr/bin/env python3
"""Dump sortable elements, C_c roots and cone generators for each named finite type.

usage: python3 scripts/cambrian_dump.py [--out DIR] [TYPE ...]
"""
import argparse
import json
from pathlib import Path

from clusterscat.cambrian import NAMED_TYPES, Cambrian, fan_to_json, named_type


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("types", nargs="*", default=sorted(NAMED_TYPES))
    ap.add_argument("--out", default="out/cambrian")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in args.types:
        obj = fan_to_json(Cambrian(named_type(name)))
        (out / f"{name}.json").write_text(json.dumps(obj, indent=2) + "\n")
        print(f"{name}: {len(obj['sortable'])} sortable elements")


if __name__ == "__main__":
    main()
