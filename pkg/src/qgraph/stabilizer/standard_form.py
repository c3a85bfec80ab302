"""Standard form [I_r, A | D + A E^T, E] of a stabilizer check matrix.

Elimination works on the Pauli rows themselves, so row additions are Pauli products
and the generator phases stay exact. When no remaining row has an X on a free qubit, a
Hadamard on a free qubit that carries a Z turns it into an X; this always succeeds for
independent commuting rows.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from qgraph.core.gf2 import GF2Matrix, RowOp, apply_row_ops, bit_indices
from qgraph.core.pauli import PauliOperator
from qgraph.exceptions import ComputationError, ValidationError
from qgraph.stabilizer.check_matrix import CheckMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StandardForm:
    """Result of :func:`standard_form`.

    ``rows`` are the transformed generators: Hadamards on ``hadamards`` (input qubit
    indices), then ``row_ops``, then the qubit ``permutation`` (``permutation[old] = new``).
    """

    n: int
    r: int
    A: GF2Matrix
    D: GF2Matrix
    E: GF2Matrix
    rows: Tuple[PauliOperator, ...]
    hadamards: Tuple[int, ...]
    row_ops: Tuple[RowOp, ...]
    permutation: Tuple[int, ...]

    @property
    def k(self) -> int:
        return self.n - self.r

    def x_block(self) -> GF2Matrix:
        """[I_r | A]."""
        return GF2Matrix(tuple(1 << i | a << self.r for i, a in enumerate(self.A.rows)), self.n)

    def z_block(self) -> GF2Matrix:
        """[D + A E^T | E]."""
        left = self.D + self.A @ self.E.transpose()
        return GF2Matrix(tuple(b | e << self.r for b, e in zip(left.rows, self.E.rows)), self.n)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "k": self.k,
            "A": self.A.to_lists(),
            "D": self.D.to_lists(),
            "E": self.E.to_lists(),
            "generators": [row.to_string() for row in self.rows],
            "hadamards": [q + 1 for q in self.hadamards],
            "row_ops": [[op.kind, op.target + 1, op.source + 1] for op in self.row_ops],
            "permutation": [q + 1 for q in self.permutation],
        }


def _first_x(rows: Sequence[PauliOperator], start: int, free: int) -> Tuple[int, int]:
    """Smallest free qubit with an X in rows[start:], and the first such row."""
    for q in bit_indices(free):
        for j in range(start, len(rows)):
            if rows[j].x >> q & 1:
                return q, j
    return -1, -1


def standard_form(cm: CheckMatrix) -> StandardForm:
    """Bring ``cm`` to standard form, recording every transform.

    Raises:
        ValidationError: If the rows are dependent or do not commute
    """
    n, r = cm.n, cm.r
    rows: List[PauliOperator] = list(cm.rows)
    hadamards: List[int] = []
    record: List[RowOp] = []
    pivots: List[int] = []

    i = 0
    while i < r:
        free = ((1 << n) - 1) & ~sum(1 << q for q in pivots)
        q, j = _first_x(rows, i, free)
        if q < 0:
            z_rest = 0
            for row in rows[i:]:
                z_rest |= row.z
            candidates = z_rest & free
            if not candidates:
                raise ValidationError("Generators are not independent", "rank", i)
            h = (candidates & -candidates).bit_length() - 1
            rows = [row.hadamard(h) for row in rows]
            hadamards.append(h)
            continue
        if j != i:
            rows[i], rows[j] = rows[j], rows[i]
            record.append(RowOp("swap", i, j))
        for t in range(r):
            if t != i and rows[t].x >> q & 1:
                rows[t] = rows[t] * rows[i]
                record.append(RowOp("add", t, i))
        pivots.append(q)
        i += 1

    rest = [q for q in range(n) if q not in pivots]
    permutation = [0] * n
    for new, old in enumerate(pivots + rest):
        permutation[old] = new
    rows = [row.permute(permutation) for row in rows]

    k = n - r
    low, high = (1 << r) - 1, ((1 << k) - 1) << r
    for idx, row in enumerate(rows):
        if row.x & low != 1 << idx:
            raise ComputationError(f"Row {idx + 1} lost its pivot during elimination", "standard_form")
    A = GF2Matrix(tuple((row.x & high) >> r for row in rows), k)
    B = GF2Matrix(tuple(row.z & low for row in rows), r)
    E = GF2Matrix(tuple((row.z & high) >> r for row in rows), k)
    D = B + A @ E.transpose()
    if not D.is_symmetric():
        raise ValidationError("Generators do not commute", "commutation", D.to_lists())

    logger.debug("Standard form: r=%d, %d Hadamard(s), %d row op(s)", r, len(hadamards), len(record))
    return StandardForm(n, r, A, D, E, tuple(rows), tuple(hadamards), tuple(record), tuple(permutation))


def replay(cm: CheckMatrix, sf: StandardForm) -> List[PauliOperator]:
    """Apply the recorded transforms of ``sf`` to ``cm`` from scratch."""
    if cm.n != sf.n or cm.r != sf.r:
        raise ValidationError("Check matrix and standard form have different shapes", "dimension")
    rows = list(cm.rows)
    for h in sf.hadamards:
        rows = [row.hadamard(h) for row in rows]
    apply_row_ops(rows, sf.row_ops, combine=lambda a, b: a * b)
    return [row.permute(sf.permutation) for row in rows]
