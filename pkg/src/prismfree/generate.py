"""Isomorph-free generation of simple binary matroids.

Two search engines live here.  ``enumerate_minor_free`` builds, rank
stratum by rank stratum and size level by size level, one canonical
representative of every simple binary matroid of rank up to a bound
that avoids a list of forbidden minors.  Levels grow by an orderly
step: each representative is extended by one new point per stabilizer
orbit, and an extension is kept exactly when the added point lies in
the canonical least orbit of the extended set, which guarantees one
representative per isomorphism class without pairwise tests.  A
two-step filter then discards extensions whose single-element minors
are not all in the database built so far.

``splitter_search`` grows 3-connected single-element extensions and
coextensions from a seed, pruning anything that is not 3-connected or
that contains a forbidden minor, and returns the distinct matroids
found within a step bound.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import canon, database, minors
from .canon import CanonicalKey
from .catalog import catalog, entry, entry_key
from .database import MatroidDatabase
from .matroid import BinaryMatroid

__all__ = [
    "ClassifyReport",
    "classify",
    "enumerate_minor_free",
    "orderly_step",
    "splitter_search",
]


# ---------------------------------------------------------------------------
# orderly extension of one representative


def _extension_candidates(points: tuple[int, ...], width: int):
    """Accepted one-point extensions of a canonical representative.

    For a spanning representative, extend by one point per stabilizer
    orbit outside the set.  For a representative of rank width-1
    (lifted from the previous stratum), all points outside the span
    form a single stabilizer orbit, so a lone candidate suffices;
    extensions inside the span stay at lower rank and are produced by
    the smaller stratum.  An extension is accepted exactly when the new
    point lies in the canonical least orbit of the extended set.
    """
    accepted = []
    if not points:
        if width == 1:
            return [(1,)]
        return accepted
    rank = len(points) and _rank(points)
    full = (1 << width) - 1
    if rank == width:
        if len(points) == full:
            return accepted
        res = canon.canonicalize(points, width, want_maps=True)
        outside = [p for p in range(1, 1 << width) if p not in set(points)]
        group = canon.StabilizerGroup(width, res.maps, res.order)
        reps = [orbit[0] for orbit in canon.orbits_on_points(group, outside)]
    elif rank == width - 1:
        span = _span_set(points)
        reps = [min(p for p in range(1, 1 << width) if p not in span)]
    else:
        return accepted
    for x in reps:
        extended = tuple(sorted(points + (x,)))
        if _rank(extended) < width:
            continue
        res = canon.canonicalize(extended, width, want_orbit=True)
        if x in res.least_orbit:
            accepted.append(res.key.points)
    return accepted


def _rank(points) -> int:
    basis: list[int] = []
    for v in points:
        for b in basis:
            if v & (b & -b):
                v ^= b
        if v:
            piv = v & -v
            basis = [b ^ v if b & piv else b for b in basis] + [v]
    return len(basis)


def _span_set(points) -> set[int]:
    span = {0}
    for p in points:
        if p not in span:
            span |= {s ^ p for s in span}
    return span


def orderly_step(level, width: int, db: MatroidDatabase | None = None):
    """All isomorphism classes of (k+1)-point sets from the k-point level.

    ``level`` holds one canonical key per class of k-subsets of the
    point space of GF(2)^width, of any rank; the result is the same for
    k+1.  With ``db`` given, extensions whose single-element minors are
    not all present in it are discarded (the excluded-minor two-step).
    """
    by_rank: dict[int, list[CanonicalKey]] = {}
    for key in level:
        by_rank.setdefault(key.width, []).append(key)
    out: list[CanonicalKey] = []
    for rank in sorted(by_rank):
        for key in by_rank[rank]:
            for target_width in (rank, rank + 1):
                if target_width > width:
                    continue
                for pts in _extension_candidates(key.points, target_width):
                    cand = CanonicalKey(target_width, pts)
                    if db is not None and not minors.minor_free_by_database(
                        (cand.points, cand.width), db
                    ):
                        continue
                    out.append(cand)
    out.sort()
    for a, b in zip(out, out[1:]):
        if a == b:
            raise AssertionError(f"orderly step produced duplicate class {a.serialize()}")
    return out


# ---------------------------------------------------------------------------
# stratified enumeration with checkpointing


def _level_task(args):
    points, width = args
    return _extension_candidates(points, width)


def enumerate_minor_free(
    r_max: int,
    excluded=(),
    *,
    max_size: int | None = None,
    jobs: int = 1,
    checkpoint: str | None = None,
    resume: MatroidDatabase | None = None,
    progress=None,
) -> MatroidDatabase:
    """Database of all simple matroids of rank <= r_max avoiding the
    excluded catalog minors.

    Strata are built in rank order and, inside a stratum, in size
    order; each completed level is recorded (and checkpointed when a
    path is given), so interrupted runs restart from the last complete
    level.  Each excluded minor is removed at its own (rank, size)
    level; larger candidates are vetted hereditarily against the
    database, which is exactly what makes the removal propagate.
    """
    excluded = tuple(str(name).upper() for name in excluded)
    excluded_keys = {}
    for name in excluded:
        key = entry_key(name)
        if not entry(name).matroid.is_simple():
            raise ValueError(f"excluded minor {name} must be simple")
        excluded_keys.setdefault((key.width, key.size), set()).add(key)

    settings = {"max-rank": str(r_max)}
    if max_size is not None:
        settings["max-size"] = str(max_size)
    if resume is not None:
        db = resume
        if (db.width_bound, db.excluded, db.settings) != (r_max, excluded, settings):
            raise database.DatabaseError("resume database has incompatible header")
    else:
        db = MatroidDatabase(r_max, excluded, settings)
    if not db.has_level(0, 0):
        db.add_level(0, 0, [CanonicalKey(0, ())])
    filtering = bool(excluded)

    def emit(rank, size, keys, elapsed):
        db.add_level(rank, size, keys)
        if checkpoint:
            database.write_db(db, checkpoint)
        if progress:
            progress(f"r={rank} k={size} classes={len(keys)} elapsed={elapsed:.1f}")

    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        for rank in range(1, r_max + 1):
            size = rank
            while max_size is None or size <= max_size:
                if rank in db.closed and size >= db.closed[rank]:
                    break
                if db.has_level(rank, size):
                    size += 1
                    continue
                t0 = time.monotonic()
                parents: list[tuple[tuple[int, ...], int]] = []
                for key in db.levels.get((rank, size - 1), ()):
                    parents.append((key.points, rank))
                for key in db.levels.get((rank - 1, size - 1), ()):
                    parents.append((key.points, rank))
                if parents:
                    if pool is not None:
                        chunks = pool.map(_level_task, parents, chunksize=8)
                    else:
                        chunks = map(_level_task, parents)
                    candidates = [
                        CanonicalKey(rank, pts) for chunk in chunks for pts in chunk
                    ]
                    candidates.sort()
                    for a, b in zip(candidates, candidates[1:]):
                        if a == b:
                            raise AssertionError(
                                f"duplicate class emitted at ({rank}, {size}): "
                                f"{a.serialize()}"
                            )
                    if filtering:
                        candidates = [
                            k
                            for k in candidates
                            if minors.minor_free_by_database((k.points, k.width), db)
                        ]
                    drop = excluded_keys.get((rank, size), ())
                    if drop:
                        candidates = [k for k in candidates if k not in drop]
                else:
                    candidates = []
                # This and every later level is provably empty once there are
                # no candidates and the smaller rank contributes no parents.
                prev_done = rank - 1 in db.closed and size >= db.closed[rank - 1]
                prev_done = prev_done or not db.levels.get((rank - 1, size), ())
                if not candidates and prev_done:
                    db.close_rank(rank, size)
                    if checkpoint:
                        database.write_db(db, checkpoint)
                    break
                emit(rank, size, candidates, time.monotonic() - t0)
                size += 1
    finally:
        if pool is not None:
            pool.shutdown()
    return db


# ---------------------------------------------------------------------------
# splitter-style extension search


def _extensions(m: BinaryMatroid):
    """Simple one-column extensions, as matroids on point-value labels."""
    used = set(m.columns)
    out = []
    for v in range(1, 1 << m.width):
        if v not in used:
            cols = tuple(sorted(m.columns + (v,)))
            out.append(BinaryMatroid(m.width, cols, cols))
    return out


def _as_point_matroid(m: BinaryMatroid) -> BinaryMatroid:
    """Relabel a simple matroid by its compacted column values."""
    cm = m.compact()
    cols = tuple(sorted(cm.columns))
    return BinaryMatroid(cm.width, cols, cols)


def splitter_search(seed, max_steps: int = 3, forbidden=()) -> list[BinaryMatroid]:
    """3-connected extensions and coextensions of a seed, breadth first.

    Grows by one element per step, keeping only 3-connected matroids
    with none of the forbidden minors; those constraints are hereditary
    along the search, so pruned nodes are never expanded.  Coextensions
    go through the dual: extend the dual, dualise back.  Returns the
    distinct matroids found (the seed itself is not reported), each as
    a matroid on point-value labels.
    """
    seed_m = seed.matroid if hasattr(seed, "matroid") else seed
    if seed_m.size < 6:
        raise ValueError("seed must have at least 6 elements")
    if not seed_m.is_3connected():
        raise ValueError("seed must be 3-connected")
    forbidden = [f.matroid if hasattr(f, "matroid") else f for f in forbidden]
    start = _as_point_matroid(seed_m)
    visited = {canon.matroid_key(start)}
    frontier = [start]
    found: dict[CanonicalKey, BinaryMatroid] = {}
    for _ in range(max_steps):
        next_frontier = []
        for node in frontier:
            branches = list(_extensions(node))
            for dext in _extensions(node.dual().compact()):
                branches.append(dext.dual())
            for cand in branches:
                # Non-simple candidates cannot be 3-connected at these sizes.
                if not cand.is_simple():
                    continue
                cand = _as_point_matroid(cand)
                key = canon.matroid_key(cand)
                if key in visited:
                    continue
                visited.add(key)
                if not cand.is_3connected():
                    continue
                if any(minors.has_minor(cand, f) for f in forbidden):
                    continue
                found[key] = cand
                next_frontier.append(cand)
        frontier = next_frontier
    return [found[k] for k in sorted(found)]


# ---------------------------------------------------------------------------
# classification of a database


@dataclass
class ClassifyReport:
    counts: dict
    internally_4connected: list  # (key, catalog name or None)
    three_connected_not_i4c: list  # keys
    sporadic_like: list  # keys with a qualifying i4c minor
    nonsimple_i4c_names: tuple[str, ...] = ()

    def format(self) -> str:
        lines = ["classes by (rank, size):"]
        for (rank, size), cnt in sorted(self.counts.items()):
            lines.append(f"  rank {rank} size {size:2d}: {cnt}")
        lines.append(f"total classes: {sum(self.counts.values())}")
        lines.append(
            f"internally 4-connected: {len(self.internally_4connected)} simple"
            + (
                f" + non-simple {', '.join(self.nonsimple_i4c_names)}"
                if self.nonsimple_i4c_names
                else ""
            )
        )
        for key, name in self.internally_4connected:
            label = name or "(not in catalog)"
            lines.append(f"  {key.serialize()}  {label}")
        lines.append(
            f"3-connected but not internally 4-connected: {len(self.three_connected_not_i4c)}"
        )
        lines.append(
            "with an internally 4-connected minor of >= 6 elements other than "
            f"M1, M2, M3, M14: {len(self.sporadic_like)}"
        )
        for key in self.sporadic_like:
            name = _catalog_name(key)
            lines.append(f"  {key.serialize()}  {name or '(not in catalog)'}")
        return "\n".join(lines)


def _catalog_name(key: CanonicalKey):
    for e in catalog():
        if e.simple and entry_key(e.name) == key:
            return e.name
    return None


def classify(db: MatroidDatabase, *, sporadic_check: bool = True) -> ClassifyReport:
    """Connectivity census of a database.

    Reports per-stratum counts, the internally 4-connected classes, the
    3-connected classes that are not, and (optionally) which of the
    latter contain an internally 4-connected minor with at least six
    elements other than M(K4), F7, its dual, or M(K3,3).  The three
    non-simple internally 4-connected binary matroids (a loop, a
    parallel pair, a parallel triple) cannot appear in a database of
    simple matroids and are reported by name: any larger matroid with a
    loop has a 1-separation and any larger one with a parallel pair has
    a 2-separation.
    """
    i4c = []
    tc_not = []
    for key in db.keys():
        cols = key.points
        m = BinaryMatroid(key.width, cols, cols)
        if m.size <= 1:
            i4c.append((key, _catalog_name(key)))
            continue
        three, internally = (m.is_3connected(), m.is_internally_4connected())
        if internally:
            i4c.append((key, _catalog_name(key)))
        elif three:
            tc_not.append(key)
    sporadic_like = []
    if sporadic_check:
        targets = [
            entry(e.name).matroid
            for e in catalog()
            if e.name.startswith("M")
            and e.internally_4connected
            and e.size >= 6
            and e.name not in ("M1", "M2", "M3", "M14")
        ]
        for key in tc_not:
            cols = key.points
            m = BinaryMatroid(key.width, cols, cols)
            if any(
                t.rank() <= m.rank() and t.size < m.size and minors.has_minor(m, t)
                for t in targets
            ):
                sporadic_like.append(key)
    names = ("U01", "U12", "U13") if db.has_level(0, 0) else ()
    return ClassifyReport(
        counts=db.counts(),
        internally_4connected=i4c,
        three_connected_not_i4c=tc_not,
        sporadic_like=sporadic_like,
        nonsimple_i4c_names=names,
    )
