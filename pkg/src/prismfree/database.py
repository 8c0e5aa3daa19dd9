"""Durable, diff-friendly storage for enumerated matroid strata.

A database holds canonical keys stratified by (rank, size).  The file
format is line oriented: ``#key value`` header lines, then for each
stratum a ``#stratum rank=R size=K`` line, one ``r=R;p1,p2,...`` record
per key in increasing order, and a trailing ``#count N`` checksum.
Recording a stratum, even an empty one, asserts that it is complete,
which is what membership tests during enumeration rely on.
"""

from __future__ import annotations

import os
from bisect import bisect_left
from dataclasses import dataclass, field

from .canon import CanonicalKey

__all__ = ["DatabaseError", "MatroidDatabase", "read_db", "write_db"]

FORMAT = "bmdb1"


class DatabaseError(Exception):
    pass


@dataclass
class MatroidDatabase:
    """Canonical keys of enumerated matroids, stratified by (rank, size).

    ``levels`` maps (rank, size) to a sorted tuple of keys; the presence
    of a stratum means it was enumerated to completion.  ``excluded``
    names the forbidden minors (catalog names), ``settings`` records
    generator options for provenance.
    """

    width_bound: int
    excluded: tuple[str, ...] = ()
    settings: dict = field(default_factory=dict)
    levels: dict = field(default_factory=dict)
    # rank -> size S: every level of this rank with size >= S is known empty
    closed: dict = field(default_factory=dict)

    def close_rank(self, rank: int, from_size: int) -> None:
        self.closed[rank] = min(from_size, self.closed.get(rank, from_size))

    def add_level(self, rank: int, size: int, keys) -> None:
        keys = tuple(sorted(keys))
        for a, b in zip(keys, keys[1:]):
            if not a < b:
                raise DatabaseError(f"duplicate key in stratum ({rank}, {size}): {b}")
        for k in keys:
            if k.width != rank or k.size != size:
                raise DatabaseError(
                    f"key {k.serialize()} does not belong in stratum ({rank}, {size})"
                )
        self.levels[(rank, size)] = keys

    def has_level(self, rank: int, size: int) -> bool:
        return (rank, size) in self.levels

    def contains(self, key: CanonicalKey) -> bool:
        stratum = self.levels.get((key.width, key.size))
        if stratum is None:
            closed_from = self.closed.get(key.width)
            if closed_from is not None and key.size >= closed_from:
                return False
            raise DatabaseError(
                f"stratum (rank={key.width}, size={key.size}) not in database"
            )
        i = bisect_left(stratum, key)
        return i < len(stratum) and stratum[i] == key

    def keys(self):
        for rankisize in sorted(self.levels):
            yield from self.levels[rankisize]

    def counts(self) -> dict:
        return {rs: len(keys) for rs, keys in sorted(self.levels.items())}

    def total(self) -> int:
        return sum(len(v) for v in self.levels.values())

    def merge(self, other: "MatroidDatabase") -> "MatroidDatabase":
        if (self.width_bound, self.excluded, self.settings) != (
            other.width_bound,
            other.excluded,
            other.settings,
        ):
            raise DatabaseError("incompatible database headers")
        out = MatroidDatabase(self.width_bound, self.excluded, dict(self.settings))
        for rs in set(self.levels) | set(other.levels):
            merged = sorted(
                set(self.levels.get(rs, ())) | set(other.levels.get(rs, ()))
            )
            out.add_level(rs[0], rs[1], merged)
        for rank in set(self.closed) | set(other.closed):
            sizes = [d.closed[rank] for d in (self, other) if rank in d.closed]
            out.closed[rank] = min(sizes)
        return out


def _serialize(db: MatroidDatabase) -> str:
    lines = [f"#format {FORMAT}", f"#width-bound {db.width_bound}"]
    if db.excluded:
        lines.append("#excluded " + ",".join(db.excluded))
    for key in sorted(db.settings):
        lines.append(f"#setting {key}={db.settings[key]}")
    for rank in sorted(db.closed):
        lines.append(f"#closed rank={rank} from={db.closed[rank]}")
    for rank, size in sorted(db.levels):
        lines.append(f"#stratum rank={rank} size={size}")
        keys = db.levels[(rank, size)]
        for k in keys:
            lines.append(k.serialize())
        lines.append(f"#count {len(keys)}")
    return "\n".join(lines) + "\n"


def write_db(db: MatroidDatabase, destination) -> None:
    """Write atomically: serialize to a sibling temp file, then rename."""
    data = _serialize(db)
    destination = os.fspath(destination)
    tmp = destination + ".tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        fh.write(data)
    os.replace(tmp, destination)


def read_db(source) -> MatroidDatabase:
    with open(os.fspath(source), encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != f"#format {FORMAT}":
        raise DatabaseError(f"line 1: expected '#format {FORMAT}' header")
    if len(lines) < 2 or not lines[1].startswith("#width-bound "):
        raise DatabaseError("line 2: expected '#width-bound' header")
    width_bound = int(lines[1].split()[1])
    excluded: tuple[str, ...] = ()
    settings: dict = {}
    closed: dict = {}
    i = 2
    while i < len(lines) and not lines[i].startswith("#stratum"):
        line = lines[i]
        if line.startswith("#excluded "):
            excluded = tuple(line.split(" ", 1)[1].split(","))
        elif line.startswith("#setting "):
            key, _, value = line.split(" ", 1)[1].partition("=")
            settings[key] = value
        elif line.startswith("#closed "):
            try:
                rank = int(line.split("rank=")[1].split()[0])
                from_size = int(line.split("from=")[1].split()[0])
            except (IndexError, ValueError):
                raise DatabaseError(f"line {i + 1}: malformed closed marker") from None
            closed[rank] = from_size
        else:
            raise DatabaseError(f"line {i + 1}: unexpected header line {line!r}")
        i += 1
    db = MatroidDatabase(width_bound, excluded, settings, closed=closed)
    last_complete = None
    while i < len(lines):
        line = lines[i]
        if not line.startswith("#stratum rank="):
            raise DatabaseError(f"line {i + 1}: expected stratum header, got {line!r}")
        try:
            rank = int(line.split("rank=")[1].split()[0])
            size = int(line.split("size=")[1].split()[0])
        except (IndexError, ValueError):
            raise DatabaseError(f"line {i + 1}: malformed stratum header") from None
        i += 1
        keys = []
        while i < len(lines) and not lines[i].startswith("#count"):
            try:
                keys.append(CanonicalKey.parse(lines[i]))
            except ValueError as exc:
                raise DatabaseError(f"line {i + 1}: {exc}") from None
            i += 1
        if i >= len(lines):
            raise DatabaseError(
                f"truncated file: stratum (rank={rank}, size={size}) has no count; "
                f"last complete stratum was {last_complete}"
            )
        declared = int(lines[i].split()[1])
        if declared != len(keys):
            raise DatabaseError(
                f"line {i + 1}: stratum (rank={rank}, size={size}) count {declared} "
                f"!= {len(keys)} records"
            )
        db.add_level(rank, size, keys)
        last_complete = (rank, size)
        i += 1
    return db
