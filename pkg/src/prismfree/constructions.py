"""Named matroids and the operations that build them.

Integer-sequence decoding, binary projective and affine geometries, the
line-completion product (placing a new element on the line between
every pair drawn from two matroids), 3-sums along a shared triangle,
and cycle matroids of the graph families used by the verification
suites: wheels, quartic ladders, the cube, the octahedron, the
terrahawk, complete and complete bipartite graphs, and the triangular
prism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import gf2
from .matroid import BinaryMatroid

__all__ = [
    "SimpleGraph",
    "affine_geometry_32",
    "cat",
    "complete",
    "complete_bipartite",
    "cube",
    "cycle_matroid",
    "decode_sequence",
    "mobius_quartic_ladder",
    "octahedron",
    "parallel_extension",
    "planar_quartic_ladder",
    "prism_graph",
    "projective_geometry",
    "terrahawk",
    "three_sum",
    "wheel",
]


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True, slots=True)
class SimpleGraph:
    """An undirected simple graph on vertices 0..n-1."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        norm = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) off the vertex range")
            norm.append((u, v) if u < v else (v, u))
        if len(set(norm)) != len(norm):
            raise ValueError("duplicate edges")
        object.__setattr__(self, "edges", tuple(norm))


def _graph(n: int, edge_iter) -> SimpleGraph:
    seen = set()
    edges = []
    for u, v in edge_iter:
        e = (u, v) if u < v else (v, u)
        if e not in seen:
            seen.add(e)
            edges.append(e)
    return SimpleGraph(n, tuple(edges))


def complete(n: int) -> SimpleGraph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return _graph(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> SimpleGraph:
    if a < 1 or b < 1:
        raise ValueError("complete bipartite graph needs both sides nonempty")
    return _graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def wheel(n: int) -> SimpleGraph:
    """Cycle on n rim vertices plus a hub joined to all of them."""
    if n < 3:
        raise ValueError("wheel needs n >= 3")
    rim = [(i, (i + 1) % n) for i in range(n)]
    spokes = [(i, n) for i in range(n)]
    return _graph(n + 1, rim + spokes)


def planar_quartic_ladder(n: int) -> SimpleGraph:
    """Two disjoint n-cycles joined by two perfect matchings (2n vertices)."""
    if n < 3:
        raise ValueError("planar quartic ladder needs n >= 3")
    u = list(range(n))
    v = list(range(n, 2 * n))
    edges = [(u[i], u[(i + 1) % n]) for i in range(n)]
    edges += [(v[i], v[(i + 1) % n]) for i in range(n)]
    edges += [(u[i], v[i]) for i in range(n)]
    edges += [(u[i], v[(i - 1) % n]) for i in range(n)]
    return _graph(2 * n, edges)


def mobius_quartic_ladder(n: int) -> SimpleGraph:
    """Hamilton cycle on 2n-1 vertices plus the two chord families
    v_i v_{i+n-1}, v_i v_{i+n} for 0 <= i <= n-1 (indices mod 2n-1)."""
    if n < 3:
        raise ValueError("Mobius quartic ladder needs n >= 3")
    m = 2 * n - 1
    edges = [(i, (i + 1) % m) for i in range(m)]
    edges += [(i, (i + n - 1) % m) for i in range(n)]
    edges += [(i, (i + n) % m) for i in range(n)]
    return _graph(m, edges)


def cube() -> SimpleGraph:
    # Vertices are the corners of {0,1}^3, adjacent when one bit apart.
    edges = [
        (u, u ^ (1 << b)) for u in range(8) for b in range(3) if not (u >> b) & 1
    ]
    return _graph(8, edges)


def octahedron() -> SimpleGraph:
    return planar_quartic_ladder(3)


def terrahawk() -> SimpleGraph:
    """The cube with a new vertex joined to the four corners of one face."""
    base = cube()
    face = [u for u in range(8) if not u & 1]  # the bit-0 = 0 face
    edges = list(base.edges) + [(u, 8) for u in face]
    return _graph(9, edges)


def prism_graph() -> SimpleGraph:
    """Two disjoint triangles joined by a perfect matching."""
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    return _graph(6, edges)


def cycle_matroid(g: SimpleGraph) -> BinaryMatroid:
    """Cycle matroid: edge {u,v} becomes e_u + e_v, compacted to the
    rank |V| - (number of components)."""
    cols = [(1 << u) | (1 << v) for u, v in g.edges]
    m = BinaryMatroid(g.n, tuple(g.edges), tuple(cols))
    return m.compact()


# ---------------------------------------------------------------------------
# arithmetic constructions


def decode_sequence(values, rank: int) -> BinaryMatroid:
    """Matroid whose columns are the binary encodings of ``values``.

    The least significant bit sits in the bottom row.  The integers
    double as the element labels.
    """
    vals = tuple(values)
    bound = 1 << rank
    for v in vals:
        if not 1 <= v <= bound - 1:
            raise ValueError(f"value {v} out of range [1, {bound - 1}]")
    return BinaryMatroid(rank, vals, vals)


def projective_geometry(r: int) -> BinaryMatroid:
    """PG(r-1, 2): all nonzero points of GF(2)^r."""
    if r < 1:
        raise ValueError("projective geometry needs r >= 1")
    vals = tuple(range(1, 1 << r))
    return BinaryMatroid(r, vals, vals)


_AG32_COLUMNS = (8, 4, 2, 1, 7, 11, 13, 14)  # [I_4 | A], A = ones minus identity


def affine_geometry_32() -> BinaryMatroid:
    """AG(3, 2): the eight odd-weight points of GF(2)^4."""
    return BinaryMatroid(4, _AG32_COLUMNS, _AG32_COLUMNS)


def cat(m1: BinaryMatroid, m2: BinaryMatroid) -> BinaryMatroid:
    """Direct sum plus one new element on each line between the parts.

    The new element for the pair (a, b) gets label ``(a, b)`` and the
    column ``col(a) + col(b)`` in the direct-sum representation, making
    {a, b, (a, b)} a circuit.  Requires loop-free operands with
    disjoint labels.
    """
    if m1.loops() or m2.loops():
        raise ValueError("operands must be loop-free")
    if set(m1.labels) & set(m2.labels):
        raise ValueError("label collision between operands")
    shift = m2.width
    width = m1.width + m2.width
    labels = list(m1.labels) + list(m2.labels)
    cols = [c << shift for c in m1.columns] + list(m2.columns)
    for (a, ca), (b, cb) in itertools.product(
        zip(m1.labels, m1.columns), zip(m2.labels, m2.columns)
    ):
        labels.append((a, b))
        cols.append((ca << shift) ^ cb)
    return BinaryMatroid(width, tuple(labels), tuple(cols))


def parallel_extension(m: BinaryMatroid, of_label, new_label) -> BinaryMatroid:
    """Duplicate one column under a fresh label."""
    col = m.column_of(of_label)
    if new_label in m.labels:
        raise ValueError(f"label {new_label!r} already present")
    return BinaryMatroid(
        m.width, m.labels + (new_label,), m.columns + (col,)
    )


def three_sum(m1: BinaryMatroid, m2: BinaryMatroid, t) -> BinaryMatroid:
    """3-sum across a shared triangle t.

    Requires: both operands have at least seven elements; the ground
    sets meet exactly in t, which is a triangle of both; and t contains
    a cocircuit of neither.  The result lives on the symmetric
    difference of the ground sets, and its cycles are the projections
    of pairs of cycles that agree on t.
    """
    tset = frozenset(t)
    if len(tset) != 3:
        raise ValueError("t must have exactly three elements")
    if m1.size < 7 or m2.size < 7:
        raise ValueError("size condition violated: both operands need >= 7 elements")
    shared = set(m1.labels) & set(m2.labels)
    if shared != tset:
        raise ValueError("ground sets must intersect exactly in t")
    for name, m in (("first", m1), ("second", m2)):
        cols = [m.column_of(lab) for lab in sorted(tset, key=repr)]
        if 0 in cols or len(set(cols)) != 3 or cols[0] ^ cols[1] ^ cols[2] != 0:
            raise ValueError(f"t is not a triangle of the {name} operand")
        rest = [lab for lab in m.labels if lab not in tset]
        if m.rank_of(rest) != m.rank():
            raise ValueError(f"t contains a cocircuit of the {name} operand")

    cyc1 = gf2.null_space_basis(m1.matrix())
    cyc2 = gf2.null_space_basis(m2.matrix())
    tpos1 = [m1.labels.index(lab) for lab in sorted(tset, key=repr)]
    tpos2 = [m2.labels.index(lab) for lab in sorted(tset, key=repr)]

    # Coefficient vectors (over cyc1 ++ cyc2) whose two cycles agree on t.
    eq_cols = []
    for z in cyc1:
        eq_cols.append(sum(((z >> p) & 1) << i for i, p in enumerate(tpos1)))
    for z in cyc2:
        eq_cols.append(sum(((z >> p) & 1) << i for i, p in enumerate(tpos2)))
    solutions = gf2.null_space_basis(gf2.GF2Matrix(3, tuple(eq_cols)))

    keep1 = [i for i, lab in enumerate(m1.labels) if lab not in tset]
    keep2 = [i for i, lab in enumerate(m2.labels) if lab not in tset]
    labels = tuple(m1.labels[i] for i in keep1) + tuple(m2.labels[i] for i in keep2)
    d1 = len(cyc1)
    cycles = []
    for combo in solutions:
        z1 = 0
        z2 = 0
        for i in range(d1):
            if (combo >> i) & 1:
                z1 ^= cyc1[i]
        for j in range(len(cyc2)):
            if (combo >> (d1 + j)) & 1:
                z2 ^= cyc2[j]
        vec = 0
        for out_i, i in enumerate(keep1):
            vec |= ((z1 >> i) & 1) << out_i
        off = len(keep1)
        for out_j, j in enumerate(keep2):
            vec |= ((z2 >> j) & 1) << (off + out_j)
        cycles.append(vec)

    # A representation is any matrix whose null space is the cycle space.
    n = len(labels)
    packed_cols = []
    for e in range(n):
        val = 0
        for i, vec in enumerate(cycles):
            if (vec >> e) & 1:
                val |= 1 << i
        packed_cols.append(val)
    rep = gf2.orthogonal_complement(gf2.GF2Matrix(len(cycles), tuple(packed_cols)))
    return BinaryMatroid(rep.width, labels, rep.columns)
