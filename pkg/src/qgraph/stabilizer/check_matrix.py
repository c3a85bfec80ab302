"""Stabilizer check matrices: validation, parsing and stabilizer-group enumeration."""

import itertools
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterator, List, Sequence, Tuple, Union

import numpy as np

from qgraph.core.gf2 import GF2Matrix, bit_indices, check_width, popcount
from qgraph.core.graphstate import pauli_matrix
from qgraph.core.pauli import PauliOperator
from qgraph.exceptions import ValidationError
from qgraph.utils import load_json_file

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckMatrix:
    """Independent, pairwise commuting Hermitian generators ``rows`` on ``n`` qubits."""

    n: int
    rows: Tuple[PauliOperator, ...]

    def __post_init__(self) -> None:
        check_width(self.n)
        for row in self.rows:
            if row.n != self.n:
                raise ValidationError(f"Generator {row} has {row.n} qubits, expected {self.n}", "dimension", row.n)
            if not row.is_hermitian():
                raise ValidationError(f"Generator {row} is not Hermitian", "commutation", str(row))
        for a, b in itertools.combinations(self.rows, 2):
            if not a.commutes(b):
                raise ValidationError(f"Generators {a} and {b} anticommute", "commutation", (str(a), str(b)))
        if self.symplectic().rank() != len(self.rows):
            raise ValidationError("Generators are not independent", "rank", len(self.rows))

    @property
    def r(self) -> int:
        return len(self.rows)

    @property
    def k(self) -> int:
        return self.n - len(self.rows)

    def symplectic(self) -> GF2Matrix:
        """Rows ``x | z << n``: the GF(2) matrix [G_x | G_z]."""
        return GF2Matrix(tuple(row.x | row.z << self.n for row in self.rows), 2 * self.n)

    def x_block(self) -> GF2Matrix:
        return GF2Matrix(tuple(row.x for row in self.rows), self.n)

    def z_block(self) -> GF2Matrix:
        return GF2Matrix(tuple(row.z for row in self.rows), self.n)

    def elements(self) -> Iterator[PauliOperator]:
        """All 2^r stabilizer elements; the element for subset s multiplies the
        selected rows in order."""
        for s in range(1 << self.r):
            out = PauliOperator.identity(self.n)
            for i in bit_indices(s):
                out = out * self.rows[i]
            yield out

    def to_strings(self) -> List[str]:
        return [row.to_string() for row in self.rows]

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.n, "k": self.k, "generators": [row.to_json() for row in self.rows]}

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "CheckMatrix":
        rows = [PauliOperator.from_string(line) for line in lines]
        if not rows:
            raise ValidationError("No stabilizer generators given", "input", lines)
        widths = {row.n for row in rows}
        if len(widths) != 1:
            raise ValidationError(f"Generators have different lengths {sorted(widths)}", "dimension", sorted(widths))
        return cls(rows[0].n, tuple(rows))

    @classmethod
    def from_text(cls, text: str) -> "CheckMatrix":
        """One generator per line; blank lines and ``#`` comments are skipped."""
        lines = [line.split("#", 1)[0].strip() for line in text.splitlines()]
        return cls.from_strings([line for line in lines if line])

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "CheckMatrix":
        try:
            n = int(data["n"])
            rows = tuple(PauliOperator.from_json(item, n) for item in data["generators"])
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"Stabilizer JSON needs 'n' and 'generators': {e}", "input", data)
        return cls(n, rows)


def parse_check_matrix(source: Union[str, Path]) -> CheckMatrix:
    """Read a stabilizer from a ``.json`` file or a text file of Pauli strings."""
    path = Path(source)
    if not path.is_file():
        raise ValidationError(f"Stabilizer file not found: {source}", "input", str(source))
    if path.suffix.lower() == ".json":
        return CheckMatrix.from_json(load_json_file(path))
    try:
        return CheckMatrix.from_text(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ValidationError(f"Cannot read {source}: {e}", "input", str(source))


def stabilizer_weight_distribution(cm: CheckMatrix) -> Tuple[int, ...]:
    """Number of stabilizer elements of each weight 0..n."""
    counts = [0] * (cm.n + 1)
    for element in cm.elements():
        counts[popcount(element.support)] += 1
    return tuple(counts)


def stabilizer_projector(cm: CheckMatrix) -> np.ndarray:
    """prod_i (I + S_i), which is 2^r times the code projector."""
    out = np.eye(1 << cm.n, dtype=np.complex128)
    identity = np.eye(1 << cm.n, dtype=np.complex128)
    for row in cm.rows:
        out = out @ (identity + pauli_matrix(row))
    return out
