"""Command-line front end: extract PATH -o FILE [--manifest FILE]."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .walker import Extractor, extract_package, write_manifest


def main(argv=None) -> int:
    logging.basicConfig(format="%(name)s: %(message)s")
    ap = argparse.ArgumentParser(
        prog="extract",
        description="Emit AST facts for a source file or a whole source tree.",
    )
    ap.add_argument("path", help="a .py file or a directory to walk")
    ap.add_argument("-o", "--out", required=True, help="fact file to write")
    ap.add_argument("--manifest", help="also write a key-value manifest")
    ap.add_argument(
        "--exclude",
        action="append",
        default=[],
        metavar="NAME",
        help="prune directories with this name (repeatable)",
    )
    args = ap.parse_args(argv)

    target = Path(args.path)
    try:
        if target.is_dir():
            manifest = extract_package(
                target, args.out, args.manifest, exclude_dirs=args.exclude
            )
        elif target.is_file():
            ex = Extractor()
            ex.add_file(target)
            Path(args.out).write_text(ex.text(), encoding="utf-8")
            manifest = ex.manifest()
            if args.manifest:
                write_manifest(manifest, args.manifest)
        else:
            print(f"error: no such file or directory: {target}", file=sys.stderr)
            return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(
        f"{manifest['files']} files, {manifest['facts_total']} facts"
        + (f", {manifest['skipped']} skipped" if manifest["skipped"] else "")
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
