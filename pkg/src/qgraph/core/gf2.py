"""GF(2) bitset and matrix kernel.

Subsets of the n vertices are Python ints used as bitmasks: bit i stands for the
internal vertex i (external label i + 1). Matrix rows use the same encoding, so
column j of a GF2Matrix is bit j of every row.
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Literal, Sequence, Tuple

from qgraph.exceptions import ValidationError
from qgraph.utils import bits_to_labels, labels_to_bits

MAX_VERTICES = 64


def popcount(bits: int) -> int:
    return bits.bit_count()


def parity(bits: int) -> int:
    return bits.bit_count() & 1


def bit_indices(bits: int) -> List[int]:
    """0-indexed positions of the set bits, ascending."""
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def from_indices(indices: Iterable[int]) -> int:
    bits = 0
    for index in indices:
        bits |= 1 << index
    return bits


def submasks(mask: int) -> Iterator[int]:
    """Every submask of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def check_width(n: int) -> None:
    if not 0 <= n <= MAX_VERTICES:
        raise ValidationError(f"Vertex count {n} outside 0..{MAX_VERTICES}", "size", n)


@dataclass(frozen=True)
class VertexSet:
    """A subset of ``n`` vertices. Only the low ``n`` bits may be set."""

    bits: int
    n: int

    def __post_init__(self) -> None:
        check_width(self.n)
        if self.bits < 0 or self.bits >> self.n:
            raise ValidationError(
                f"Bitmask {self.bits:#x} has bits beyond n={self.n}", "range", self.bits
            )

    @classmethod
    def from_labels(cls, labels: Iterable[int], n: int) -> "VertexSet":
        return cls(labels_to_bits(labels, n), n)

    @classmethod
    def empty(cls, n: int) -> "VertexSet":
        return cls(0, n)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls((1 << n) - 1, n)

    def labels(self) -> List[int]:
        return bits_to_labels(self.bits)

    def __len__(self) -> int:
        return popcount(self.bits)

    def __contains__(self, vertex: int) -> bool:
        return bool(self.bits >> vertex & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(bit_indices(self.bits))

    def __xor__(self, other: "VertexSet") -> "VertexSet":
        return sym_diff(self, other)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        _same_width(self, other)
        return VertexSet(self.bits & other.bits, self.n)

    def __or__(self, other: "VertexSet") -> "VertexSet":
        _same_width(self, other)
        return VertexSet(self.bits | other.bits, self.n)

    def __str__(self) -> str:
        return "{" + ",".join(str(label) for label in self.labels()) + "}"


def _same_width(a: VertexSet, b: VertexSet) -> None:
    if a.n != b.n:
        raise ValidationError(f"Vertex sets over n={a.n} and n={b.n}", "dimension", (a.n, b.n))


def sym_diff(a: VertexSet, b: VertexSet) -> VertexSet:
    """A xor B, i.e. (A | B) - (A & B)."""
    _same_width(a, b)
    return VertexSet(a.bits ^ b.bits, a.n)


def parity_intersect(a: VertexSet, b: VertexSet) -> int:
    """|A & B| mod 2."""
    _same_width(a, b)
    return parity(a.bits & b.bits)


@dataclass(frozen=True)
class GF2Matrix:
    """Dense matrix over GF(2); ``rows[i]`` bit ``j`` is entry (i, j)."""

    rows: Tuple[int, ...]
    cols: int

    def __post_init__(self) -> None:
        limit = 1 << self.cols
        for row in self.rows:
            if row < 0 or row >= limit:
                raise ValidationError(
                    f"Row {row:#x} does not fit in {self.cols} columns", "dimension", row
                )

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], cols: int = -1) -> "GF2Matrix":
        width = cols if cols >= 0 else (len(entries[0]) if entries else 0)
        rows = []
        for entry in entries:
            if len(entry) != width:
                raise ValidationError("Ragged matrix rows", "dimension", len(entry))
            rows.append(from_indices(j for j, value in enumerate(entry) if value % 2))
        return cls(tuple(rows), width)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "GF2Matrix":
        return cls((0,) * rows, cols)

    @classmethod
    def identity(cls, size: int) -> "GF2Matrix":
        return cls(tuple(1 << i for i in range(size)), size)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), self.cols

    def entry(self, i: int, j: int) -> int:
        return self.rows[i] >> j & 1

    def to_lists(self) -> List[List[int]]:
        return [[row >> j & 1 for j in range(self.cols)] for row in self.rows]

    def transpose(self) -> "GF2Matrix":
        out = [0] * self.cols
        for i, row in enumerate(self.rows):
            for j in bit_indices(row):
                out[j] |= 1 << i
        return GF2Matrix(tuple(out), len(self.rows))

    def __add__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.shape != other.shape:
            raise ValidationError(f"Shapes {self.shape} and {other.shape} differ", "dimension")
        return GF2Matrix(tuple(a ^ b for a, b in zip(self.rows, other.rows)), self.cols)

    def __matmul__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.cols != len(other.rows):
            raise ValidationError(f"Cannot multiply {self.shape} by {other.shape}", "dimension")
        out = []
        for row in self.rows:
            acc = 0
            for k in bit_indices(row):
                acc ^= other.rows[k]
            out.append(acc)
        return GF2Matrix(tuple(out), other.cols)

    def is_symmetric(self) -> bool:
        return len(self.rows) == self.cols and self == self.transpose()

    def rank(self) -> int:
        return rref(self).rank


@dataclass(frozen=True)
class RowOp:
    """``swap`` exchanges rows target and source; ``add`` sets row target += row source."""

    kind: Literal["swap", "add"]
    target: int
    source: int


@dataclass(frozen=True)
class RrefResult:
    matrix: GF2Matrix
    rank: int
    pivots: Tuple[int, ...]
    record: Tuple[RowOp, ...]


def apply_row_ops(rows: List, record: Iterable[RowOp], combine=lambda a, b: a ^ b) -> List:
    """Replay a row-operation log in place; ``combine`` defines row addition."""
    for op in record:
        if op.kind == "swap":
            rows[op.target], rows[op.source] = rows[op.source], rows[op.target]
        else:
            rows[op.target] = combine(rows[op.target], rows[op.source])
    return rows


def rref(m: GF2Matrix) -> RrefResult:
    """Reduced row echelon form, pivots scanned left to right.

    The returned record replays the elimination: ``apply_row_ops(list(m.rows), record)``
    reproduces ``matrix.rows``.
    """
    rows = list(m.rows)
    record: List[RowOp] = []
    pivots: List[int] = []
    r = 0
    for col in range(m.cols):
        if r == len(rows):
            break
        mask = 1 << col
        pivot = next((i for i in range(r, len(rows)) if rows[i] & mask), None)
        if pivot is None:
            continue
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
            record.append(RowOp("swap", r, pivot))
        for i in range(len(rows)):
            if i != r and rows[i] & mask:
                rows[i] ^= rows[r]
                record.append(RowOp("add", i, r))
        pivots.append(col)
        r += 1
    return RrefResult(GF2Matrix(tuple(rows), m.cols), r, tuple(pivots), tuple(record))


def kernel_basis(constraints: Sequence[int], n: int) -> List[int]:
    """Basis of {S : |S & c| even for every constraint c}, as bitmasks.

    Dimension is n - rank(constraints). Vectors come out in increasing order of
    their free column.
    """
    reduced = rref(GF2Matrix(tuple(constraints), n))
    pivot_rows = dict(zip(reduced.pivots, reduced.matrix.rows))
    basis = []
    for free in range(n):
        if free in pivot_rows:
            continue
        vector = 1 << free
        for col, row in pivot_rows.items():
            if row >> free & 1:
                vector |= 1 << col
        basis.append(vector)
    return basis


def solve_even_overlap(constraints: Sequence[VertexSet], n: int) -> List[VertexSet]:
    """Basis of the subsets with even overlap with every constraint set."""
    check_width(n)
    for c in constraints:
        if c.n != n:
            raise ValidationError(f"Constraint over n={c.n}, expected {n}", "dimension", c.n)
    return [VertexSet(v, n) for v in kernel_basis([c.bits for c in constraints], n)]


def span(generators: Sequence[int]) -> List[int]:
    """All elements of the GF(2) span, in generation order starting from 0."""
    elements = [0]
    for g in generators:
        elements += [e ^ g for e in elements]
    return elements


def echelon_basis(vectors: Iterable[int]) -> List[int]:
    """Fully reduced basis keyed by highest set bit, sorted ascending.

    This basis is unique for a given subspace.
    """
    basis: dict = {}
    for v in vectors:
        for top in sorted(basis, reverse=True):
            if v >> top & 1:
                v ^= basis[top]
        if v:
            top = v.bit_length() - 1
            for key in basis:
                if basis[key] >> top & 1:
                    basis[key] ^= v
            basis[top] = v
    return sorted(basis.values())
