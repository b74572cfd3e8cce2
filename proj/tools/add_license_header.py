#!/usr/bin/env python3
"""Prepend the license header to C++ sources that do not have it yet."""

import argparse
from pathlib import Path

DIRS = ["include", "src", "apps", "python/src", "tests"]
SUFFIXES = {".hpp", ".cpp"}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("header", type=Path, help="file holding the header comment")
    parser.add_argument("--root", type=Path, default=Path(__file__).resolve().parents[1])
    parser.add_argument("--check", action="store_true", help="only list files missing the header")
    args = parser.parse_args()

    header = args.header.read_text().rstrip("\n") + "\n\n"
    marker = header.splitlines()[1]
    missing = []
    for d in DIRS:
        for path in sorted((args.root / d).rglob("*")):
            if path.suffix not in SUFFIXES or not path.is_file():
                continue
            text = path.read_text()
            if marker in text[: len(header) + 200]:
                continue
            missing.append(path)
            if not args.check:
                path.write_text(header + text)
    for path in missing:
        print(path.relative_to(args.root))
    if args.check and missing:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
