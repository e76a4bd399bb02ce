"""Turn Python parse trees into relational facts.

Every AST node becomes one fact named after its node class, with a fresh
integer id followed by one argument per AST field in field order:

    ClassDef(6, 'B', 7, 8, 9, 10).

A list-valued field contributes a fresh id of its own plus one
Member(list_id, elem_id, index) triple per element, indices zero-based and
contiguous. Child nodes appear as their ids; plain values are emitted as
constants. After each file a File(module_id, 'relative/path.py') fact ties
the module node to its origin.

Ids are assigned in one monotonic sequence per Extractor, so they never
collide across the files of a run, and the traversal order is fixed, so
equal inputs give byte-identical output.
"""

from __future__ import annotations

import ast
import logging
from collections import Counter
from pathlib import Path

log = logging.getLogger("astfacts")

# the predicates the class-hierarchy analysis actually reads
USED_PREDS = ("ClassDef", "Member", "Name")

# characters that line-oriented fact readers may mangle (str.splitlines
# breaks on all of these); they get spelled out as backslash escapes
_RISKY = frozenset(
    {chr(i) for i in range(32)} - {"\n", "\t"} | {"\x7f", "\x85", " ", " "}
)


def quote(text: str) -> str:
    """Single-quoted constant with backslash escaping."""
    if any(c in _RISKY for c in text):
        text = "".join(
            c.encode("unicode_escape").decode("ascii") if c in _RISKY else c
            for c in text
        )
    body = (
        text.replace("\\", "\\\\")
        .replace("'", "\\'")
        .replace("\n", "\\n")
        .replace("\t", "\\t")
    )
    return f"'{body}'"


def _token(value) -> str:
    # bool first: True is an int to isinstance
    if isinstance(value, bool):
        return quote(repr(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return quote(value)
    # None, floats, complex, bytes, Ellipsis: their repr, as a string
    return quote(repr(value))


class Extractor:
    """One extraction run: a single id sequence over any number of files."""

    def __init__(self):
        self._ids = iter(range(10**12))
        self.facts: list[str] = []
        self.counts: Counter = Counter()
        self.files = 0
        self.skipped = 0

    def _fact(self, pred: str, tokens) -> None:
        self.counts[pred] += 1
        self.facts.append(f"{pred}({', '.join(tokens)}).")

    def _value(self, value) -> str:
        if isinstance(value, ast.AST):
            return str(self._node(value))
        if isinstance(value, list):
            list_id = next(self._ids)
            elems = [self._value(v) for v in value]
            for index, tok in enumerate(elems):
                self._fact("Member", (str(list_id), tok, str(index)))
            return str(list_id)
        return _token(value)

    def _node(self, node: ast.AST) -> int:
        nid = next(self._ids)
        args = [self._value(getattr(node, f, None)) for f in node._fields]
        self._fact(type(node).__name__, (str(nid), *args))
        return nid

    def add_file(self, path, label: str | None = None) -> bool:
        """Parse and emit one file; unparsable files are skipped, not fatal."""
        path = Path(path)
        try:
            tree = ast.parse(path.read_bytes(), filename=str(path))
        except (SyntaxError, ValueError) as exc:
            log.warning("skipping %s: %s", path, exc)
            self.skipped += 1
            return False
        module_id = self._node(tree)
        self._fact("File", (str(module_id), quote(label or path.name)))
        self.files += 1
        return True

    def text(self) -> str:
        return "".join(line + "\n" for line in self.facts)

    def manifest(self) -> dict:
        total = sum(self.counts.values())
        used = sum(self.counts[p] for p in USED_PREDS)
        return {
            "files": self.files,
            "skipped": self.skipped,
            "facts_total": total,
            "facts_used": used,
            "used_of_total": f"{100 * used / total:.1f}%" if total else "0.0%",
            "predicates": dict(sorted(self.counts.items())),
        }


def extract_file(path) -> str:
    """Facts for a single source file; empty text if it does not parse."""
    ex = Extractor()
    ex.add_file(path)
    return ex.text()


def write_manifest(manifest: dict, path) -> None:
    lines = [
        f"files {manifest['files']}",
        f"skipped {manifest['skipped']}",
        f"facts_total {manifest['facts_total']}",
        f"facts_used {manifest['facts_used']}",
        f"used_of_total {manifest['used_of_total']}",
    ]
    lines += [f"pred {name} {n}" for name, n in manifest["predicates"].items()]
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def extract_package(root, out_path, manifest_path=None, exclude_dirs=()) -> dict:
    """Extract every *.py under `root` (sorted paths) into one fact file.

    `exclude_dirs` names directories to prune wholesale, e.g. ("tests",).
    """
    root = Path(root)
    if not root.is_dir():
        raise NotADirectoryError(f"{root} is not a directory")
    skip = frozenset(exclude_dirs)
    ex = Extractor()
    for path in sorted(root.rglob("*.py")):
        if path.is_file() and skip.isdisjoint(path.parent.relative_to(root).parts):
            ex.add_file(path, path.relative_to(root).as_posix())
    Path(out_path).write_text(ex.text(), encoding="utf-8")
    manifest = ex.manifest()
    if manifest_path is not None:
        write_manifest(manifest, manifest_path)
    return manifest
