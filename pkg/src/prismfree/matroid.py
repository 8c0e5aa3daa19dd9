"""Binary matroids represented by GF(2) column families.

A :class:`BinaryMatroid` is an ordered list of labelled columns over
GF(2)^width.  Loops are zero columns, parallel elements share a column
value, and every matroid query (rank, minors, duality, connectivity)
reduces to bit-packed linear algebra from :mod:`prismfree.gf2`.

Connectivity uses the standard function
``lambda(X) = r(X) + r(E - X) - r(M)``: a k-separation is a split with
``lambda(X) <= k - 1`` and both sides of size at least k.  A matroid is
3-connected when it has no 1- or 2-separation, and internally
4-connected when additionally every 3-separation has a side of exactly
three elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import gf2

__all__ = ["BinaryMatroid", "Separation"]


def _reduce(v: int, basis: list[int]) -> int:
    for b in basis:
        if v & (b & -b):
            v ^= b
    return v


def _insert(v: int, basis: list[int]) -> list[int]:
    """Insert a reduced nonzero vector, keeping the basis fully reduced."""
    piv = v & -v
    out = [b ^ v if b & piv else b for b in basis]
    out.append(v)
    return out


@dataclass(frozen=True, slots=True)
class Separation:
    """One side of a candidate separation, with its order k.

    ``order`` is the least k for which this is a k-separation, i.e.
    ``lambda(side) + 1``.
    """

    side: frozenset
    order: int


@dataclass(frozen=True)
class BinaryMatroid:
    """A labelled GF(2) column family of a fixed width.

    Labels are opaque, pairwise-distinct identifiers; the ambient width
    may exceed the rank (``compact`` renormalises).  Instances are
    immutable, hashable, and safe to share.
    """

    width: int
    labels: tuple
    columns: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "columns", tuple(self.columns))
        if len(self.labels) != len(self.columns):
            raise ValueError("labels and columns must have equal length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be pairwise distinct")
        bound = 1 << self.width
        for lab, col in zip(self.labels, self.columns):
            if not 0 <= col < bound:
                raise ValueError(f"column {col} of element {lab!r} exceeds width {self.width}")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_columns(cls, columns, width: int, labels=None) -> "BinaryMatroid":
        cols = tuple(columns)
        if labels is None:
            labels = tuple(range(1, len(cols) + 1))
        return cls(width, tuple(labels), cols)

    # -- basic accessors ------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.columns)

    def matrix(self) -> gf2.GF2Matrix:
        return gf2.GF2Matrix(self.width, self.columns)

    def column_of(self, label) -> int:
        try:
            return self.columns[self.labels.index(label)]
        except ValueError:
            raise KeyError(f"unknown element {label!r}") from None

    def _indices(self, labels) -> list[int]:
        pos = {lab: i for i, lab in enumerate(self.labels)}
        out = []
        for lab in labels:
            if lab not in pos:
                raise KeyError(f"unknown element {lab!r}")
            out.append(pos[lab])
        return out

    def rank(self) -> int:
        return gf2.column_rank(self.columns)

    def corank(self) -> int:
        return self.size - self.rank()

    def rank_of(self, subset) -> int:
        """GF(2) rank of the columns selected by a label subset."""
        idx = self._indices(subset)
        return gf2.column_rank(self.columns[i] for i in idx)

    def loops(self) -> tuple:
        return tuple(lab for lab, col in zip(self.labels, self.columns) if col == 0)

    def parallel_classes(self) -> list[tuple]:
        """Maximal groups of elements sharing a nonzero column."""
        groups: dict[int, list] = {}
        for lab, col in zip(self.labels, self.columns):
            if col:
                groups.setdefault(col, []).append(lab)
        return [tuple(g) for g in groups.values() if len(g) >= 2]

    def is_simple(self) -> bool:
        nonzero = [c for c in self.columns if c]
        return len(nonzero) == self.size and len(set(nonzero)) == self.size

    # -- minors and friends ---------------------------------------------------

    def delete(self, labels) -> "BinaryMatroid":
        drop = set(self._indices(labels))
        keep = [i for i in range(self.size) if i not in drop]
        return BinaryMatroid(
            self.width,
            tuple(self.labels[i] for i in keep),
            tuple(self.columns[i] for i in keep),
        )

    def contract(self, labels) -> "BinaryMatroid":
        """Contract a label set, dropping the pivot rows of its span.

        The remaining columns are row-reduced against a basis of the
        contracted set and the basis pivot rows are removed, so the
        width shrinks by the rank of the contracted set.  Contracting a
        loop is the same as deleting it.
        """
        drop = set(self._indices(labels))
        basis: list[int] = []
        for i in drop:
            v = _reduce(self.columns[i], basis)
            if v:
                basis = _insert(v, basis)
        pivot_mask = 0
        for b in basis:
            pivot_mask |= b & -b
        # Map surviving bit positions to packed positions.
        shift = {}
        new_bit = 0
        for bit in range(self.width):
            if not (pivot_mask >> bit) & 1:
                shift[bit] = new_bit
                new_bit += 1
        keep = [i for i in range(self.size) if i not in drop]
        new_cols = []
        for i in keep:
            v = _reduce(self.columns[i], basis)
            packed = 0
            while v:
                low = v & -v
                v ^= low
                packed |= 1 << shift[low.bit_length() - 1]
            new_cols.append(packed)
        return BinaryMatroid(
            self.width - len(basis),
            tuple(self.labels[i] for i in keep),
            tuple(new_cols),
        )

    def simplify(self) -> "BinaryMatroid":
        """Drop loops and keep one least-labelled element per parallel class."""
        chosen: dict[int, object] = {}
        for col in set(c for c in self.columns if c):
            labs = [lab for lab, c in zip(self.labels, self.columns) if c == col]
            chosen[col] = _least_label(labs)
        keep = [
            i
            for i in range(self.size)
            if self.columns[i] and chosen[self.columns[i]] == self.labels[i]
        ]
        return BinaryMatroid(
            self.width,
            tuple(self.labels[i] for i in keep),
            tuple(self.columns[i] for i in keep),
        )

    def compact(self) -> "BinaryMatroid":
        """Re-coordinatise so that width equals rank."""
        r, coords = gf2.span_coordinates(self.columns, self.width)
        return BinaryMatroid(r, self.labels, tuple(coords))

    def dual(self) -> "BinaryMatroid":
        """Dual matroid on the same labels via the orthogonal complement."""
        comp = gf2.orthogonal_complement(self.matrix())
        return BinaryMatroid(comp.width, self.labels, comp.columns)

    def relabel(self, mapping) -> "BinaryMatroid":
        return BinaryMatroid(
            self.width, tuple(mapping[lab] for lab in self.labels), self.columns
        )

    # -- connectivity ----------------------------------------------------------

    def lambda_(self, subset) -> int:
        """Connectivity function r(X) + r(E - X) - r(M)."""
        idx = set(self._indices(subset))
        inside = [self.columns[i] for i in idx]
        outside = [self.columns[i] for i in range(self.size) if i not in idx]
        return (
            gf2.column_rank(inside)
            + gf2.column_rank(outside)
            - gf2.column_rank(self.columns)
        )

    def is_3connected(self) -> bool:
        return _connectivity_flags(self.columns)[0]

    def is_internally_4connected(self) -> bool:
        return _connectivity_flags(self.columns)[1]

    def separations(self, max_order: int) -> list[Separation]:
        """All k-separations with k <= max_order, one per complement pair."""
        n = self.size
        if n < 2:
            return []
        ranks = _subset_ranks(self.columns)
        full = (1 << n) - 1
        total = ranks[full]
        out = []
        for mask in range(1, 1 << (n - 1)):
            lam = ranks[mask] + ranks[full ^ mask] - total
            p = mask.bit_count()
            small = min(p, n - p)
            if lam + 1 <= max_order and small >= lam + 1:
                side = frozenset(
                    self.labels[i] for i in range(n) if (mask >> i) & 1
                )
                out.append(Separation(side, lam + 1))
        return out

    # -- circuits --------------------------------------------------------------

    def triangles(self) -> list[frozenset]:
        """All 3-element circuits, as label sets."""
        by_value: dict[int, list] = {}
        for lab, col in zip(self.labels, self.columns):
            if col:
                by_value.setdefault(col, []).append(lab)
        values = sorted(by_value)
        out = []
        for i, va in enumerate(values):
            for vb in values[i + 1 :]:
                vc = va ^ vb
                if vc > vb and vc in by_value:
                    for a in by_value[va]:
                        for b in by_value[vb]:
                            for c in by_value[vc]:
                                out.append(frozenset((a, b, c)))
        return out

    def triads(self) -> list[frozenset]:
        """All 3-element cocircuits (triangles of the dual)."""
        return self.dual().triangles()

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"BinaryMatroid(width={self.width}, size={self.size})"


def _least_label(labels):
    try:
        return min(labels)
    except TypeError:
        # Mixed label types (ints vs pair tuples from line completions);
        # fall back to a deterministic total order.
        return min(labels, key=lambda lab: (type(lab).__name__, repr(lab)))


def _subset_ranks(columns: tuple[int, ...]) -> bytearray:
    """Rank of every column subset, indexed by bitmask."""
    n = len(columns)
    ranks = bytearray(1 << n)
    # Depth-first over the subset tree, carrying a fully reduced basis.
    stack: list[tuple[int, int, tuple[int, ...]]] = [(0, 0, ())]
    while stack:
        mask, start, basis = stack.pop()
        for i in range(start, n):
            v = columns[i]
            for b in basis:
                if v & (b & -b):
                    v ^= b
            if v:
                piv = v & -v
                nb = tuple(b ^ v if b & piv else b for b in basis) + (v,)
            else:
                nb = basis
            child = mask | (1 << i)
            ranks[child] = len(nb)
            stack.append((child, i + 1, nb))
    return ranks


@lru_cache(maxsize=4096)
def _connectivity_flags(columns: tuple[int, ...]) -> tuple[bool, bool]:
    """(is 3-connected, is internally 4-connected) for a column family."""
    n = len(columns)
    if n <= 1:
        return True, True
    ranks = _subset_ranks(columns)
    full = (1 << n) - 1
    total = ranks[full]
    three = True
    i4c = True
    for mask in range(1, 1 << (n - 1)):
        lam = ranks[mask] + ranks[full ^ mask] - total
        if lam > 2:
            continue
        p = mask.bit_count()
        small = p if p < n - p else n - p
        if lam == 0 or (lam == 1 and small >= 2):
            three = False
            break
        if small >= 4:
            i4c = False
    return three, three and i4c
