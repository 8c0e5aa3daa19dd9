"""Canonical forms, stabilizers and orbits for point sets of PG(r-1,2).

A point of PG(r-1,2) is a nonzero vector of GF(2)^r packed into an
integer in [1, 2^r - 1].  Invertible linear maps act on points, and two
spanning point sets are equivalent under that action exactly when the
simple binary matroids they represent are isomorphic.  The canonical
key of a set is the lexicographically least sorted image over the whole
group; equal keys mean isomorphic matroids.

The search builds the least image value by value, upward from 1.
Fixing value v as the image of a source point x determines the map on
the whole span of the values fixed so far, so membership of every
spanned value is forced and the sorted image grows strictly left to
right.  Prefix pruning against the best image found so far is then
exact.  Every map attaining the minimum is enumerated; the set of such
maps is a coset of the setwise stabilizer, which yields the stabilizer
order, its elements as point permutations, and the orbit of the element
sent to the least image value.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf2

__all__ = [
    "CanonicalKey",
    "CanonResult",
    "StabilizerGroup",
    "canonical_key",
    "canonical_least_orbit",
    "canonicalize",
    "compact_points",
    "matroid_key",
    "orbits_on_points",
    "pgl_order",
    "stabilizer",
    "whole_group_generators",
]


@dataclass(frozen=True, slots=True, order=True)
class CanonicalKey:
    """Least projective image of a point set: width plus sorted points."""

    width: int
    points: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.points)

    def serialize(self) -> str:
        return f"r={self.width};" + ",".join(str(p) for p in self.points)

    @classmethod
    def parse(cls, text: str) -> "CanonicalKey":
        body = text.strip()
        if not body.startswith("r=") or ";" not in body:
            raise ValueError(f"malformed key record: {text!r}")
        head, _, tail = body.partition(";")
        width = int(head[2:])
        points = tuple(int(tok) for tok in tail.split(",") if tok)
        key = cls(width, points)
        _validate_points(points, width)
        if list(points) != sorted(set(points)):
            raise ValueError(f"key points not strictly increasing: {text!r}")
        return key


@dataclass(frozen=True, slots=True)
class StabilizerGroup:
    """Setwise stabilizer of a point set inside PGL(r,2).

    ``generators`` are point permutations of [0, 2^width), each induced
    by an invertible matrix and fixing the defining set setwise.
    """

    width: int
    generators: tuple[tuple[int, ...], ...]
    order: int


@dataclass(frozen=True, slots=True)
class CanonResult:
    key: CanonicalKey
    least_orbit: frozenset[int] | None
    order: int
    maps: tuple[tuple[int, ...], ...] | None  # stabilizer point permutations


def pgl_order(width: int) -> int:
    """Order of PGL(width, 2) = GL(width, 2)."""
    out = 1
    for i in range(width):
        out *= (1 << width) - (1 << i)
    return out


def _validate_points(points, width: int) -> None:
    bound = 1 << width
    seen = set()
    for p in points:
        if not 0 < p < bound:
            raise ValueError(f"point {p} out of range for width {width}")
        if p in seen:
            raise ValueError(f"duplicate point {p}")
        seen.add(p)


def compact_points(points, width: int, *, reverse: bool = False):
    """Map a point set onto GF(2)^rank, choosing a greedy basis.

    Returns ``(points, rank)`` with the set re-coordinatised so that it
    spans its new ambient space.  The canonical key is independent of
    the basis choice; ``reverse`` picks a different completion, which
    the tests use to assert exactly that.
    """
    _validate_points(points, width)
    ordered = sorted(points, reverse=reverse)
    rank, coords = gf2.span_coordinates(ordered, width)
    return tuple(sorted(coords)), rank


def canonicalize(
    points,
    width: int,
    *,
    want_orbit: bool = False,
    want_maps: bool = False,
) -> CanonResult:
    """Full canonical search for a spanning point set.

    The input must span GF(2)^width (compact first if not).  With
    ``want_orbit`` the result carries the orbit, under the stabilizer,
    of the element mapped to the least canonical point; with
    ``want_maps`` it carries the whole stabilizer as point permutations.
    Runtime scales with the stabilizer order, since every minimising map
    is visited.
    """
    pts = tuple(sorted(points))
    _validate_points(pts, width)
    n = len(pts)
    if n == 0:
        if width != 0:
            raise ValueError("empty set does not span a positive width; compact first")
        return CanonResult(CanonicalKey(0, ()), frozenset(), 1, ((0,),) if want_maps else None)
    if gf2.column_rank(pts) < width:
        raise ValueError("point set does not span its width; compact first")

    P = 1 << width
    if n == P - 1:
        # The whole point set of the geometry is fixed by the full group.
        return CanonResult(
            CanonicalKey(width, pts),
            frozenset(pts) if want_orbit else None,
            pgl_order(width),
            None,
        )

    xmask = 0
    for p in pts:
        xmask |= 1 << p

    pre = [-1] * P
    pre[0] = 0
    span = [0]
    img: list[int] = []
    best: list[int] = []
    have_best = False
    version = 0
    count = 0
    lo: set[int] = set()
    raw_maps: list[tuple[int, ...]] = []

    # The `lt` flag means the current image prefix is strictly below the
    # best key.  Any best update happens beneath the current path, after
    # which the prefix equals the new best's prefix, so the flag is only
    # trusted while `version` is unchanged.  Forced and skipped values
    # advance inside one frame; only fresh basis assignments recurse.

    def rec(v: int, j: int, srcmask: int, lt: bool, ver: int) -> None:
        nonlocal have_best, count, version
        pre_l = pre
        span_l = span
        img_l = img
        best_l = best
        xm = xmask
        pushed = 0
        while True:
            if j == n:
                if not have_best or img_l < best_l:
                    best_l[:] = img_l
                    have_best = True
                    version += 1
                    count = 1
                    if want_orbit:
                        lo.clear()
                        lo.add(pre_l[img_l[0]])
                    if want_maps:
                        raw_maps.clear()
                        raw_maps.append(tuple(pre_l))
                elif img_l == best_l:
                    count += 1
                    if want_orbit:
                        lo.add(pre_l[img_l[0]])
                    if want_maps:
                        raw_maps.append(tuple(pre_l))
                break
            if P - v < n - j:
                break
            u = pre_l[v]
            if u >= 0:
                if (xm >> u) & 1:
                    if have_best and not (lt and ver == version):
                        bv = best_l[j]
                        if v > bv:
                            break
                        lt = v < bv
                        ver = version
                    img_l.append(v)
                    pushed += 1
                    j += 1
                v += 1
                continue
            tight = have_best and not (lt and ver == version)
            if tight and v > best_l[j]:
                break
            # Branch: v becomes the image of a fresh basis point x.
            span_len = len(span_l)
            cand = xm & ~srcmask
            while cand:
                xbit = cand & -cand
                cand ^= xbit
                x = xbit.bit_length() - 1
                ok = True
                nsrc = srcmask
                for idx in range(span_len):
                    s = span_l[idx]
                    t = s ^ v
                    u2 = pre_l[s] ^ x
                    pre_l[t] = u2
                    span_l.append(t)
                    nsrc |= 1 << u2
                    if t < v and (xm >> u2) & 1:
                        # A value already passed over turns out to be in
                        # the image under this assignment: contradiction.
                        ok = False
                        break
                if ok:
                    tight = have_best and not (lt and ver == version)
                    if not (tight and v > best_l[j]):
                        if not have_best:
                            nlt, nver = False, version
                        elif not tight:
                            nlt, nver = True, ver
                        else:
                            nlt, nver = v < best_l[j], version
                        img_l.append(v)
                        rec(v + 1, j + 1, nsrc, nlt, nver)
                        img_l.pop()
                for idx in range(span_len, len(span_l)):
                    pre_l[span_l[idx]] = -1
                del span_l[span_len:]
            # Skip branch: v is not in the image; keep scanning here.
            if have_best and not (lt and ver == version) and best_l[j] <= v:
                break
            v += 1
        if pushed:
            del img_l[len(img_l) - pushed :]

    rec(1, 0, 1, False, 0)

    key = CanonicalKey(width, tuple(best))
    maps = None
    if want_maps:
        maps = _stabilizer_perms(raw_maps)
    return CanonResult(key, frozenset(lo) if want_orbit else None, count, maps)


def _stabilizer_perms(raw_maps) -> tuple[tuple[int, ...], ...]:
    """Turn the minimising preimage tables into stabilizer permutations.

    If U_0 and U_i are two minimising maps (image value -> source
    point), then p -> U_0(U_i^{-1}(p)) fixes the input set setwise, and
    all stabilizer elements arise this way.
    """
    base = raw_maps[0]
    P = len(base)
    perms = []
    for table in raw_maps:
        fwd = [0] * P
        for t, src in enumerate(table):
            fwd[src] = t
        perms.append(tuple(base[fwd[p]] for p in range(P)))
    return tuple(perms)


def canonical_key(points, width: int) -> CanonicalKey:
    """Least sorted image of a spanning point set over PGL(width, 2)."""
    return canonicalize(points, width).key


def canonical_least_orbit(points, width: int) -> frozenset[int]:
    """Orbit (within the input set) of the element sent to the least
    canonical point by some minimising map; well-defined because all
    minimising maps differ by stabilizer elements."""
    return canonicalize(points, width, want_orbit=True).least_orbit


def stabilizer(points, width: int) -> StabilizerGroup:
    """Setwise stabilizer of a point set in PGL(width, 2).

    The empty set and the full point set are fixed by the whole group,
    which is returned via its standard generators rather than by
    enumeration.  A set that does not span its width is handled by
    stabilising it inside its own span and extending with the maps that
    fix the span setwise: GL of a complement plus the mixing
    transvections, so the order is
    ``|stab in span| * |GL(width - s, 2)| * 2^(s * (width - s))``.
    """
    pts = tuple(sorted(points))
    _validate_points(pts, width)
    n = len(pts)
    if n in (0, (1 << width) - 1):
        return StabilizerGroup(width, whole_group_generators(width), pgl_order(width))
    span_rank = gf2.column_rank(pts)
    if span_rank == width:
        res = canonicalize(pts, width, want_maps=True)
        gens = tuple(
            perm for perm in res.maps if any(perm[p] != p for p in range(len(perm)))
        )
        return StabilizerGroup(width, gens, res.order)
    return _nonspanning_stabilizer(pts, width, span_rank)


def _nonspanning_stabilizer(pts, width: int, s: int) -> StabilizerGroup:
    # Basis of the span chosen from the set, then any completion.
    inner_basis: list[int] = []
    reduced: list[int] = []
    for p in pts:
        v = p
        for b in reduced:
            if v & (b & -b):
                v ^= b
        if v:
            piv = v & -v
            reduced = [b ^ v if b & piv else b for b in reduced] + [v]
            inner_basis.append(p)
    outer_basis: list[int] = []
    for p in range(1, 1 << width):
        v = p
        for b in reduced:
            if v & (b & -b):
                v ^= b
        if v:
            piv = v & -v
            reduced = [b ^ v if b & piv else b for b in reduced] + [v]
            outer_basis.append(p)
        if len(outer_basis) == width - s:
            break
    full = inner_basis + outer_basis
    # Stabilizer of the compacted set inside GL(s, 2), lifted through the
    # coordinate change e_i -> full[i].
    _, coords = gf2.span_coordinates(inner_basis + list(pts), width)
    compacted = tuple(sorted(coords[len(inner_basis):]))
    if len(compacted) == (1 << s) - 1:
        inner_gens = whole_group_generators(s)
        inner_order = pgl_order(s)
    else:
        inner = canonicalize(compacted, s, want_maps=True)
        inner_gens = inner.maps
        inner_order = inner.order
    phi = map_table(full, width)  # coordinate point -> original point
    phi_inv = [0] * (1 << width)
    for p, q in enumerate(phi):
        phi_inv[q] = p
    gens: list[tuple[int, ...]] = []

    def lift(images_in_coords: list[int]) -> tuple[int, ...]:
        # The generator maps full[i] to phi[images_in_coords[i]].
        psi = map_table([phi[img] for img in images_in_coords], width)
        return tuple(psi[phi_inv[p]] for p in range(1 << width))

    for perm in inner_gens:
        imgs = [perm[1 << i] for i in range(s)] + [1 << (s + j) for j in range(width - s)]
        gens.append(lift(imgs))
    for perm in whole_group_generators(width - s):
        imgs = [1 << i for i in range(s)] + [
            (perm[1 << j] << s) for j in range(width - s)
        ]
        gens.append(lift(imgs))
    for i in range(s):
        imgs = [1 << k for k in range(width)]
        imgs[s] = (1 << s) | (1 << i)
        gens.append(lift(imgs))
    order = inner_order * pgl_order(width - s) * (1 << (s * (width - s)))
    identity = tuple(range(1 << width))
    gens = [g for g in gens if g != identity]
    return StabilizerGroup(width, tuple(dict.fromkeys(gens)), order)


def map_table(basis_images, width: int) -> tuple[int, ...]:
    """Point table of the linear map sending e_i to basis_images[i]."""
    P = 1 << width
    table = [0] * P
    for v in range(1, P):
        low = v & -v
        table[v] = table[v ^ low] ^ basis_images[low.bit_length() - 1]
    return tuple(table)


def whole_group_generators(width: int) -> tuple[tuple[int, ...], ...]:
    """Standard generating pair of GL(width, 2) as point permutations.

    A basis cycle plus one transvection generate the whole group (the
    tests verify the closure order for small widths).
    """
    if width <= 1:
        return ()
    cycle = [1 << ((i + 1) % width) for i in range(width)]
    transvection = [1 << i for i in range(width)]
    transvection[0] = (1 << 0) | (1 << 1)
    return (map_table(cycle, width), map_table(transvection, width))


def orbits_on_points(group: StabilizerGroup, domain) -> list[tuple[int, ...]]:
    """Partition a point domain into orbits under the group generators."""
    todo = set(domain)
    out = []
    while todo:
        seed = min(todo)
        orbit = {seed}
        frontier = [seed]
        while frontier:
            p = frontier.pop()
            for perm in group.generators:
                q = perm[p]
                if q not in orbit:
                    orbit.add(q)
                    frontier.append(q)
        if not orbit <= todo:
            raise ValueError("generators do not permute the domain")
        todo -= orbit
        out.append(tuple(sorted(orbit)))
    return out


def matroid_key(m) -> CanonicalKey:
    """Canonical key of a matroid's simplification.

    Equal keys mean the simplifications are isomorphic; callers that
    care about loops or parallel multiplicities must track those
    separately.
    """
    sm = m.simplify()
    pts, rank = compact_points(sm.columns, sm.width)
    return canonicalize(pts, rank).key
