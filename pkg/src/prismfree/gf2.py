"""Bit-packed GF(2) linear algebra kernel.

Vectors are plain Python ints: bit i is the coordinate in row i, with
bit 0 the bottom row of a written matrix.  A matrix is an ordered tuple
of column vectors plus an explicit row count.  Column order matters
because columns double as matroid ground-set elements.

Gaussian elimination always pivots on the lowest set bit, so every
routine here is deterministic given its input.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "GF2Matrix",
    "column_rank",
    "rank",
    "null_space_basis",
    "orthogonal_complement",
    "span_coordinates",
]


@dataclass(frozen=True, slots=True)
class GF2Matrix:
    """A matrix over GF(2) stored column-wise as integer bitmasks.

    ``width`` is the number of rows.  Empty matrices (no rows and/or no
    columns) are legal and have rank zero.
    """

    width: int
    columns: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.width < 0:
            raise ValueError(f"negative width: {self.width}")
        object.__setattr__(self, "columns", tuple(self.columns))
        bound = 1 << self.width
        for i, col in enumerate(self.columns):
            if not 0 <= col < bound:
                raise ValueError(
                    f"column {i} has value {col}, out of range for width {self.width}"
                )

    @property
    def n_columns(self) -> int:
        return len(self.columns)


def column_rank(columns) -> int:
    """Rank over GF(2) of a collection of integer-packed columns."""
    basis: list[int] = []
    for v in columns:
        for b in basis:
            if v & (b & -b):
                v ^= b
        if v:
            # Keep the basis fully reduced: no vector retains another's pivot.
            piv = v & -v
            for i, b in enumerate(basis):
                if b & piv:
                    basis[i] = b ^ v
            basis.append(v)
    return len(basis)


def rank(m: GF2Matrix) -> int:
    """Dimension of the column span of ``m`` over GF(2)."""
    return column_rank(m.columns)


def null_space_basis(m: GF2Matrix) -> list[int]:
    """Basis of ``{x : m @ x = 0}`` as column-index bitmasks.

    Each returned integer selects a set of columns that XORs to zero;
    the basis has exactly ``n_columns - rank(m)`` vectors.  Output is
    deterministic: columns are folded in left to right, pivoting on the
    lowest set bit.
    """
    basis: list[tuple[int, int]] = []  # (reduced column, combination mask)
    out: list[int] = []
    for j, v in enumerate(m.columns):
        combo = 1 << j
        for vec, c in basis:
            if v & (vec & -vec):
                v ^= vec
                combo ^= c
        if v:
            piv = v & -v
            for i, (vec, c) in enumerate(basis):
                if vec & piv:
                    basis[i] = (vec ^ v, c ^ combo)
            basis.append((v, combo))
        else:
            out.append(combo)
    return out


def orthogonal_complement(m: GF2Matrix) -> GF2Matrix:
    """Matrix whose row space is the orthogonal complement of ``m``'s.

    Column i of the result corresponds to column i of the input, so the
    complement can serve directly as a dual representation.  The result
    has ``n_columns - rank(m)`` rows.
    """
    null_vectors = null_space_basis(m)
    n = m.n_columns
    cols = []
    for j in range(n):
        value = 0
        for i, vec in enumerate(null_vectors):
            if (vec >> j) & 1:
                value |= 1 << i
        cols.append(value)
    return GF2Matrix(len(null_vectors), tuple(cols))


def span_coordinates(vectors, width: int) -> tuple[int, list[int]]:
    """Re-express vectors over a greedy basis of their own span.

    Picks a basis from ``vectors`` in input order and returns
    ``(rank, coords)`` where ``coords[i]`` encodes ``vectors[i]`` in the
    new coordinates (basis vector j becomes ``1 << j``).  Zero vectors
    map to zero and duplicates map to equal coordinates, so this is the
    width-compaction step used before canonical form computations.
    """
    rows: list[tuple[int, int]] = []  # (residue, basis combination)
    coords: list[int] = []
    nbasis = 0
    for v in vectors:
        combo = 0
        for res, c in rows:
            if v & (res & -res):
                v ^= res
                combo ^= c
        if v:
            combo |= 1 << nbasis
            piv = v & -v
            for i, (res, c) in enumerate(rows):
                if res & piv:
                    rows[i] = (res ^ v, c ^ combo)
            rows.append((v, combo))
            coords.append(1 << nbasis)
            nbasis += 1
        else:
            coords.append(combo)
    return nbasis, coords
