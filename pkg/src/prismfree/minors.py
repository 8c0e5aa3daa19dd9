"""Minor containment for binary matroids.

Two routes are provided.  ``has_minor`` is a direct recursive search
over simplified minors, memoised on canonical keys, and is the
reference semantics.  ``minor_free_by_database`` certifies freeness of
a candidate by checking that every single-element deletion and
contraction simplifies into a database that already holds all smaller
minor-free matroids; this is the fast path used while enumerating.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import canon, gf2
from .matroid import BinaryMatroid

__all__ = [
    "MinorQuery",
    "has_minor",
    "has_minor_list",
    "minor_free_by_database",
    "rank_one_uniform_minor",
]


def _as_points(m: BinaryMatroid) -> tuple[tuple[int, ...], int]:
    """Simplified, width-compacted point set of a matroid."""
    sm = m.simplify()
    rank, coords = gf2.span_coordinates(sm.columns, sm.width)
    return tuple(sorted(coords)), rank


def delete_point(points: tuple[int, ...], width: int, p: int):
    """Remove one point; re-compact when the rank drops."""
    rest = tuple(q for q in points if q != p)
    if gf2.column_rank(rest) == width:
        return rest, width
    return canon.compact_points(rest, width)


def contract_point(points: tuple[int, ...], width: int, p: int):
    """Contract one point: quotient by its span and drop the pivot bit.

    The input set must be simple (distinct nonzero points); the result
    is simplified again because distinct points can merge.
    """
    piv = p & -p
    keep_bits = {}
    new_bit = 0
    for bit in range(width):
        if (1 << bit) != piv:
            keep_bits[bit] = new_bit
            new_bit += 1
    out = set()
    for q in points:
        if q == p:
            continue
        if q & piv:
            q ^= p
        packed = 0
        while q:
            low = q & -q
            q ^= low
            packed |= 1 << keep_bits[low.bit_length() - 1]
        if packed:
            out.add(packed)
    return tuple(sorted(out)), width - 1


# Module-wide cache of canonical forms of point sets seen during minor
# searches; states recur heavily across hosts and targets.
_CANON_CACHE: dict[tuple[int, tuple[int, ...]], tuple[int, ...]] = {}


def _canonical_points(points: tuple[int, ...], width: int) -> tuple[int, ...]:
    if not points:
        return ()
    hit = _CANON_CACHE.get((width, points))
    if hit is None:
        hit = canon.canonicalize(points, width).key.points
        _CANON_CACHE[(width, points)] = hit
    return hit


@dataclass
class MinorQuery:
    """A host/target pair with a shared memo of verdicts by canonical key.

    The memo maps ``(width, canonical points)`` of a simplified minor of
    the host to whether it contains the target.  Queries against the
    same target may share a memo; verdicts are canonical, so sharing is
    sound.
    """

    host: BinaryMatroid
    target: BinaryMatroid
    memo: dict | None = field(default_factory=dict)

    def run(self) -> bool:
        t_points, t_width = _as_points(self.target)
        if self.target.size != len(t_points):
            raise ValueError("target must be simple")
        t_key = _canonical_points(t_points, t_width)
        t_size = len(t_points)
        t_corank = t_size - t_width
        memo = self.memo if self.memo is not None else None

        def solve(points: tuple[int, ...], width: int) -> bool:
            n = len(points)
            if width < t_width or n - width < t_corank or n < t_size:
                return False
            cpts = _canonical_points(points, width)
            if n == t_size:
                return width == t_width and cpts == t_key
            state = (width, cpts)
            if memo is not None:
                cached = memo.get(state)
                if cached is not None:
                    return cached
            verdict = False
            contract_first = width > t_width
            for p in cpts:
                if contract_first:
                    kids = (contract_point(cpts, width, p), delete_point(cpts, width, p))
                else:
                    kids = (delete_point(cpts, width, p), contract_point(cpts, width, p))
                for kid_pts, kid_width in kids:
                    if solve(kid_pts, kid_width):
                        verdict = True
                        break
                if verdict:
                    break
            if memo is not None:
                memo[state] = verdict
            return verdict

        h_points, h_width = _as_points(self.host)
        return solve(h_points, h_width)


_SHARED_MEMOS: dict[tuple[int, tuple[int, ...]], dict] = {}
_SHARED = object()


def has_minor(host: BinaryMatroid, target: BinaryMatroid, memo=_SHARED) -> bool:
    """Whether deletions and contractions of host reach a copy of target.

    The target must be simple.  By default verdicts are memoised in a
    per-target module cache shared across calls; pass ``memo=None`` to
    disable memoisation or a dict to control sharing explicitly.
    """
    if memo is _SHARED:
        t_points, t_width = _as_points(target)
        tkey = (t_width, _canonical_points(t_points, t_width))
        memo = _SHARED_MEMOS.setdefault(tkey, {})
    return MinorQuery(host, target, memo).run()


def has_minor_list(host: BinaryMatroid, targets) -> bool:
    """Whether host has at least one of the listed minors."""
    return any(has_minor(host, t) for t in targets)


def minor_free_by_database(candidate, db) -> bool:
    """Certify minor-freeness against a database of all smaller
    minor-free matroids.

    The candidate must be simple, and the database must contain every
    simple minor-free matroid with fewer elements, stratified by
    (rank, size).  The candidate is free exactly when the
    simplification of each of its single-element deletions and
    contractions appears in the database.
    """
    if isinstance(candidate, BinaryMatroid):
        if not candidate.is_simple():
            raise ValueError("candidate must be simple")
        points, width = _as_points(candidate)
    else:
        points, width = candidate
    for p in points:
        for kid_pts, kid_width in (
            delete_point(points, width, p),
            contract_point(points, width, p),
        ):
            key = canon.CanonicalKey(kid_width, _canonical_points(kid_pts, kid_width))
            if not db.contains(key):
                return False
    return True


def rank_one_uniform_minor(m: BinaryMatroid, size: int) -> bool:
    """Whether m has a U_{1,size} minor (three or more mutually parallel
    elements after some contraction, for size 3; a circuit for size 1).

    Used for the tiny non-simple uniform targets that the general
    search does not cover.  For ``size == 1`` this asks for a loop
    minor, i.e. any circuit at all.
    """
    nonloops = [c for c in m.columns if c]
    if size == 1:
        return m.rank() < m.size
    # Search independent contraction sets; a U_{1,size} minor needs some
    # coset of the contracted span to hold `size` elements.
    cols = tuple(nonloops)
    n = len(cols)
    rank = m.rank()

    def classes_ok(basis: list[int]) -> bool:
        groups: dict[int, int] = {}
        for c in cols:
            v = c
            for b in basis:
                if v & (b & -b):
                    v ^= b
            if v:
                groups[v] = groups.get(v, 0) + 1
                if groups[v] >= size:
                    return True
        return False

    def search(start: int, basis: list[int]) -> bool:
        if classes_ok(basis):
            return True
        if len(basis) >= rank - 1:
            return False
        for i in range(start, n):
            v = cols[i]
            for b in basis:
                if v & (b & -b):
                    v ^= b
            if v:
                piv = v & -v
                nb = [b ^ v if b & piv else b for b in basis] + [v]
                if search(i + 1, nb):
                    return True
        return False

    return search(0, [])
