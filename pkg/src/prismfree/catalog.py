"""The bundled matroid catalog.

Entries M1-M36 are the internally 4-connected prism-free binary
matroids with at least six elements: M1 and M2 are M(K4) and F7, rows
M3-M13 select columns of the PG(3,2) matrix below, and rows M14-M36
select columns of the 17-column line-completion matrix of AG(3,2) with
a single extra element.  S1-S5 are the sporadic 3-connected matroids
given by integer sequences.  The tiny uniform matroids, both
geometries, the full line-completion product and the triangular prism
round out the catalog.

Expected sizes and ranks are asserted when the catalog is first built;
the heavier expected flags (connectivity, prism-freeness) are checked
by the verification suites.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import canon
from .constructions import (
    affine_geometry_32,
    cat,
    complete,
    cycle_matroid,
    decode_sequence,
    prism_graph,
    projective_geometry,
)
from .matroid import BinaryMatroid

__all__ = ["CatalogEntry", "catalog", "catalog_map", "entry", "entry_key"]

# Column values of the PG(3,2) matrix, in display order (top row is the
# most significant bit).
PG32_COLUMNS = (8, 4, 2, 1, 12, 10, 9, 6, 5, 3, 14, 13, 11, 7, 15)

# Column values of the rank-5 selection matrix: the extra element, the
# eight AG(3,2) columns, then the eight line-completion columns.
CAT_COLUMNS = (1, 16, 8, 4, 2, 14, 22, 26, 28, 17, 9, 5, 3, 15, 23, 27, 29)

# 1-based column selections for the rank-4 entries.
_RANK4_ROWS = {
    "M3": (5, 6, 7, 11, 12, 13, 15),
    "M4": (6, 7, 8, 9, 11, 12, 13, 14, 15),
    "M5": (5, 6, 7, 8, 9, 10, 11, 12, 13, 14),
    "M6": (5, 6, 7, 8, 9, 11, 12, 13, 14, 15),
    "M7": (2, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15),
    "M8": (5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15),
    "M9": (1, 2, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15),
    "M10": (1, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15),
    "M11": (1, 2, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15),
    "M12": (1, 2, 3, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15),
    "M13": tuple(range(1, 16)),
}

# 1-based column selections for the rank-5 entries.
_RANK5_ROWS = {
    "M14": (2, 3, 4, 5, 6, 7, 10, 11, 12),
    "M15": (1, 2, 3, 4, 5, 6, 7, 10, 11, 16),
    "M16": (2, 3, 4, 5, 6, 7, 10, 11, 12, 16),
    "M17": (1, 2, 3, 4, 5, 6, 7, 8, 10, 11, 13),
    "M18": (1, 2, 3, 4, 5, 6, 7, 10, 11, 12, 16),
    "M19": (2, 3, 4, 5, 6, 7, 8, 10, 11, 12, 13),
    "M20": (1, 2, 3, 4, 5, 6, 7, 8, 10, 11, 13, 16),
    "M21": (1, 2, 3, 4, 5, 6, 7, 8, 10, 11, 13, 17),
    "M22": (1, 2, 3, 4, 5, 6, 7, 8, 10, 11, 12, 13),
    "M23": (2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13),
    "M24": (1, 2, 3, 4, 5, 6, 7, 8, 10, 11, 13, 16, 17),
    "M25": tuple(range(1, 14)),
    "M26": (1, 2, 3, 4, 5, 6, 7, 8, 10, 11, 12, 13, 14),
    "M27": tuple(range(2, 15)),
    "M28": tuple(range(1, 15)),
    "M29": (1, 2, 3, 4, 5, 6, 7, 8, 10, 11, 12, 13, 14, 15),
    "M30": tuple(range(2, 16)),
    "M31": tuple(range(1, 16)),
    "M32": (1, 2, 3, 4, 5, 6, 7, 8, 10, 11, 12, 13, 14, 15, 16),
    "M33": tuple(range(2, 17)),
    "M34": tuple(range(1, 17)),
    "M35": tuple(range(2, 18)),
    "M36": tuple(range(1, 18)),
}

# Sporadic matroids: (rank, element sequence).
_SPORADIC = {
    "S1": (5, (1, 4, 5, 8, 9, 14, 15, 16, 22, 27, 29)),
    "S2": (5, (1, 3, 4, 8, 9, 14, 15, 16, 22, 27, 29)),
    "S3": (5, (1, 3, 4, 5, 8, 9, 14, 15, 16, 22, 27, 29)),
    "S4": (6, (1, 2, 4, 8, 15, 16, 32, 42, 44, 49, 56, 63)),
    "S5": (5, (1, 2, 3, 4, 5, 8, 9, 14, 15, 16, 22, 27, 29)),
}


@dataclass(frozen=True)
class CatalogEntry:
    """A named matroid with its expected properties.

    ``internally_4connected``, ``three_connected`` and ``prism_free``
    record what the catalog claims; the verification suites prove them.
    """

    name: str
    matroid: BinaryMatroid
    size: int
    rank: int
    simple: bool
    three_connected: bool
    internally_4connected: bool
    prism_free: bool

    def identity_key(self):
        """Isomorphism invariant that also separates the non-simple
        uniform entries: simplification key plus size and loop count."""
        return (canon.matroid_key(self.matroid), self.size, len(self.matroid.loops()))


def _select(columns, row) -> BinaryMatroid:
    vals = tuple(columns[i - 1] for i in row)
    width = max(vals).bit_length()
    return BinaryMatroid(width, vals, vals)


def _entry(name, m, rank, *, simple=True, tc=True, i4c=True, pf=True) -> CatalogEntry:
    e = CatalogEntry(name, m, m.size, rank, simple, tc, i4c, pf)
    if m.rank() != rank:
        raise AssertionError(f"catalog entry {name}: rank {m.rank()} != expected {rank}")
    if m.is_simple() != simple:
        raise AssertionError(f"catalog entry {name}: simplicity mismatch")
    return e


@lru_cache(maxsize=1)
def catalog() -> tuple[CatalogEntry, ...]:
    """All catalog entries, integrity-checked on first use."""
    entries: list[CatalogEntry] = []

    entries.append(_entry("U00", BinaryMatroid(0, (), ()), 0))
    entries.append(
        _entry("U01", BinaryMatroid(0, (1,), (0,)), 0, simple=False)
    )
    entries.append(_entry("U11", BinaryMatroid(1, (1,), (1,)), 1))
    entries.append(
        _entry("U12", BinaryMatroid(1, (1, 2), (1, 1)), 1, simple=False)
    )
    entries.append(
        _entry("U13", BinaryMatroid(1, (1, 2, 3), (1, 1, 1)), 1, simple=False)
    )
    entries.append(_entry("U23", BinaryMatroid(2, (1, 2, 3), (1, 2, 3)), 2))

    entries.append(_entry("M1", cycle_matroid(complete(4)), 3))
    entries.append(_entry("M2", projective_geometry(3), 3))
    for name, row in _RANK4_ROWS.items():
        entries.append(_entry(name, _select(PG32_COLUMNS, row), 4))
    for name, row in _RANK5_ROWS.items():
        entries.append(_entry(name, _select(CAT_COLUMNS, row), 5))
    for name, (rank, seq) in _SPORADIC.items():
        entries.append(_entry(name, decode_sequence(seq, rank), rank, i4c=False))

    entries.append(_entry("PG32", projective_geometry(4), 4))
    entries.append(_entry("AG32", affine_geometry_32(), 4, i4c=False))
    entries.append(_entry("CAT", cat(affine_geometry_32(), _unit()), 5))
    entries.append(
        _entry("PRISM", cycle_matroid(prism_graph()), 5, i4c=False, pf=False)
    )

    expected_sizes = {"S1": 11, "S2": 11, "S3": 12, "S4": 12, "S5": 13, "CAT": 17}
    for e in entries:
        if e.name in expected_sizes and e.size != expected_sizes[e.name]:
            raise AssertionError(f"catalog entry {e.name}: size {e.size}")
    return tuple(entries)


def _unit() -> BinaryMatroid:
    return BinaryMatroid(1, ("u",), (1,))


@lru_cache(maxsize=1)
def catalog_map() -> dict[str, CatalogEntry]:
    return {e.name.upper(): e for e in catalog()}


def entry(name: str) -> CatalogEntry:
    """Look up a catalog entry by case-insensitive name."""
    try:
        return catalog_map()[name.upper()]
    except KeyError:
        raise KeyError(f"unknown catalog name {name!r}") from None


@lru_cache(maxsize=128)
def entry_key(name: str) -> canon.CanonicalKey:
    """Cached canonical key of an entry's simplification."""
    return canon.matroid_key(entry(name).matroid)
