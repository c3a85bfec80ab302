"""Pauli operators in symplectic form with exact phase tracking.

An operator is ``i^phase * X^x Z^z`` where ``x`` and ``z`` are vertex bitmasks and
the X factors stand to the left of the Z factors. A Y on qubit j is therefore
``x_j = z_j = 1`` together with one factor of ``i``.
"""

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple

from qgraph.core.gf2 import bit_indices, check_width, parity, popcount, submasks
from qgraph.exceptions import ValidationError
from qgraph.utils import labels_to_bits

PHASE_VALUES = (1, 1j, -1, -1j)
_SIGN_PREFIXES = {"": 0, "+": 0, "+i": 1, "i": 1, "-": 2, "-i": 3}
_SIGN_TEXT = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_PAULI_TEXT = re.compile(r"^\s*([+-]?i?)\s*([IXYZ]+)\s*$")


def phase_value(phase: int) -> complex:
    """i^phase as an exact complex number."""
    return PHASE_VALUES[phase % 4]


@dataclass(frozen=True)
class PauliOperator:
    """``i^phase * X^x Z^z`` on ``n`` qubits."""

    x: int
    z: int
    phase: int = 0
    n: int = 0

    def __post_init__(self) -> None:
        check_width(self.n)
        if (self.x | self.z) >> self.n:
            raise ValidationError(f"Pauli support exceeds n={self.n}", "range", self.x | self.z)
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(0, 0, 0, n)

    @classmethod
    def hermitian(cls, x: int, z: int, n: int) -> "PauliOperator":
        """The Hermitian representative with a plus sign: phase i^{|x & z|}."""
        return cls(x, z, popcount(x & z), n)

    @property
    def support(self) -> int:
        return self.x | self.z

    @property
    def weight(self) -> int:
        return popcount(self.x | self.z)

    def is_hermitian(self) -> bool:
        return self.phase % 2 == parity(self.x & self.z)

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        if self.n != other.n:
            raise ValidationError(f"Pauli operators on {self.n} and {other.n} qubits", "dimension")
        phase = self.phase + other.phase + 2 * popcount(self.z & other.x)
        return PauliOperator(self.x ^ other.x, self.z ^ other.z, phase, self.n)

    def __neg__(self) -> "PauliOperator":
        return PauliOperator(self.x, self.z, self.phase + 2, self.n)

    def commutes(self, other: "PauliOperator") -> bool:
        return parity(self.x & other.z) == parity(self.z & other.x)

    def sign(self) -> int:
        """+1 or -1 relative to the Hermitian representative; 0 if not Hermitian."""
        if not self.is_hermitian():
            return 0
        return 1 if (self.phase - popcount(self.x & self.z)) % 4 == 0 else -1

    def same_up_to_sign(self, other: "PauliOperator") -> bool:
        return self.x == other.x and self.z == other.z

    # Single-qubit Cliffords, applied by conjugation
    def hadamard(self, qubit: int) -> "PauliOperator":
        """H X H = Z, H Z H = X, H Y H = -Y."""
        xb = self.x >> qubit & 1
        zb = self.z >> qubit & 1
        mask = 1 << qubit
        x = (self.x & ~mask) | (zb << qubit)
        z = (self.z & ~mask) | (xb << qubit)
        return PauliOperator(x, z, self.phase + (2 if xb and zb else 0), self.n)

    def s_dagger(self, qubit: int) -> "PauliOperator":
        """Y -> X -> -Y, Z -> Z."""
        if not self.x >> qubit & 1:
            return self
        return PauliOperator(self.x, self.z ^ (1 << qubit), self.phase + 3, self.n)

    def permute(self, perm: Sequence[int]) -> "PauliOperator":
        """Move qubit q to position ``perm[q]``."""
        x = sum(1 << perm[q] for q in bit_indices(self.x))
        z = sum(1 << perm[q] for q in bit_indices(self.z))
        return PauliOperator(x, z, self.phase, self.n)

    # Text form: optional sign then one letter per qubit, qubit 1 first
    def letters(self) -> str:
        out = []
        for q in range(self.n):
            xb, zb = self.x >> q & 1, self.z >> q & 1
            out.append("IZXY"[xb * 2 + zb])
        return "".join(out)

    def to_string(self) -> str:
        sign_phase = (self.phase - popcount(self.x & self.z)) % 4
        return _SIGN_TEXT[sign_phase] + self.letters()

    def __str__(self) -> str:
        return self.to_string()

    @classmethod
    def from_string(cls, text: str) -> "PauliOperator":
        match = _PAULI_TEXT.match(text)
        if not match:
            raise ValidationError(f"Cannot parse Pauli string {text!r}", "input", text)
        prefix, body = match.groups()
        x = z = 0
        ys = 0
        for q, letter in enumerate(body):
            if letter in "XY":
                x |= 1 << q
            if letter in "ZY":
                z |= 1 << q
            if letter == "Y":
                ys += 1
        return cls(x, z, _SIGN_PREFIXES[prefix] + ys, len(body))

    def to_json(self) -> dict:
        return {
            "x": [q + 1 for q in bit_indices(self.x)],
            "z": [q + 1 for q in bit_indices(self.z)],
            "phase": self.phase,
            "text": self.to_string(),
        }

    @classmethod
    def from_json(cls, data: dict, n: int) -> "PauliOperator":
        try:
            x = labels_to_bits(data.get("x", []), n)
            z = labels_to_bits(data.get("z", []), n)
            phase = int(data.get("phase", popcount(x & z)))
        except (AttributeError, TypeError, ValueError) as e:
            raise ValidationError(f"Bad Pauli JSON {data!r}: {e}", "input", data)
        return cls(x, z, phase, n)


def product(operators: Sequence[PauliOperator], n: int) -> PauliOperator:
    """Ordered product, left to right."""
    out = PauliOperator.identity(n)
    for op in operators:
        out = out * op
    return out


def iter_support_paulis(support: Sequence[int], n: int) -> Iterator[PauliOperator]:
    """The 3^|support| Hermitian Paulis whose support is exactly ``support``."""
    for letters in itertools.product((1, 2, 3), repeat=len(support)):
        x = z = 0
        for q, letter in zip(support, letters):
            if letter & 1:
                x |= 1 << q
            if letter & 2:
                z |= 1 << q
        yield PauliOperator.hermitian(x, z, n)


def iter_paulis(n: int, max_weight: int) -> Iterator[PauliOperator]:
    """Hermitian Paulis of weight 0..max_weight, ordered by weight then support."""
    for w in range(min(max_weight, n) + 1):
        for support in itertools.combinations(range(n), w):
            yield from iter_support_paulis(support, n)


def xz_assignments(support: int) -> Iterator[Tuple[int, int]]:
    """All (omega, delta) pairs with omega | delta == support."""
    for omega in submasks(support):
        rest = support & ~omega
        for extra in submasks(omega):
            yield omega, rest | extra

