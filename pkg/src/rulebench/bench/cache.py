"""Binary fact cache.

Parsing a large fact file dominates cold-start time, so the harness can
snapshot a parsed database next to the raw file and reload it without
re-parsing. The format is a one-line text magic (with a version) followed
by a pickle of {relation name: (arity, sorted tuple list)}; sorting makes
the file byte-stable for identical inputs.
"""

from __future__ import annotations

import pickle
from pathlib import Path

from ..datalog import Database, parse_facts

MAGIC = b"rulebench-cache 1\n"

CACHE_SUFFIX = ".cache"


class CorruptCache(Exception):
    """The cache file is not something write_cache produced."""


def cache_path_for(raw_path) -> Path:
    raw_path = Path(raw_path)
    return raw_path.with_suffix(raw_path.suffix + CACHE_SUFFIX)


def write_cache(db: Database, path) -> None:
    payload = {
        name: (db.get(name).arity, db.get(name).sorted()) for name in db.names()
    }
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        pickle.dump(payload, fh, protocol=pickle.HIGHEST_PROTOCOL)


def load_cache(path) -> Database:
    with open(path, "rb") as fh:
        head = fh.read(len(MAGIC))
        if head != MAGIC:
            raise CorruptCache(f"{path}: bad magic; not a cache file or wrong version")
        try:
            payload = pickle.load(fh)
        except Exception as exc:
            raise CorruptCache(f"{path}: unreadable payload ({exc})") from exc
    if not isinstance(payload, dict):
        raise CorruptCache(f"{path}: unexpected payload type")
    db = Database()
    for name, entry in payload.items():
        try:
            arity, tuples = entry
        except (TypeError, ValueError):
            raise CorruptCache(f"{path}: malformed entry for {name!r}") from None
        db.ensure(name, arity)
        if tuples:
            db.add_facts(name, tuples)
    return db


def cache_facts(raw_path, cache_path=None) -> Path:
    """Parse a raw fact file and write its cache; returns the cache path."""
    raw_path = Path(raw_path)
    target = Path(cache_path) if cache_path is not None else cache_path_for(raw_path)
    db = parse_facts(raw_path.read_text(encoding="utf-8"))
    write_cache(db, target)
    return target


__all__ = [
    "CACHE_SUFFIX",
    "CorruptCache",
    "cache_facts",
    "cache_path_for",
    "load_cache",
    "write_cache",
]
