"""Graph states, the phase-tracked overlap engine and the Knill-Laflamme verifier.

Two evaluation paths live here:

* the combinatorial engine (``pauli_pushthrough``, ``overlap``, ``kl_verify``), which
  works for any n by pushing X factors through products of vertex stabilizers;
* the state-vector oracle (``graph_state``, ``basis_state``, ``apply_pauli``,
  ``oracle_*``) for n <= 12, used to cross-check the engine.

Oracle amplitudes are Gaussian integers; the physical state is
``amplitudes / sqrt(2**scale_exp)``. Inner products of such vectors are exact.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from qgraph.core.gf2 import bit_indices, from_indices, parity, popcount
from qgraph.core.graph import Graph
from qgraph.core.pauli import PauliOperator, iter_paulis, phase_value, xz_assignments
from qgraph.exceptions import ValidationError

logger = logging.getLogger(__name__)

MAX_STATE_QUBITS = 12


# Vertex stabilizers and the push-through rule
def vertex_stabilizer(g: Graph, a: int) -> PauliOperator:
    """G_a = X_a Z_{N_a}."""
    return PauliOperator(1 << a, g.neighborhood(a), 0, g.n)


def stabilizer_product(g: Graph, s: int) -> PauliOperator:
    """G_S: ordered product of G_a over a in S, ascending."""
    out = PauliOperator.identity(g.n)
    for a in bit_indices(s):
        out = out * vertex_stabilizer(g, a)
    return out


@dataclass(frozen=True)
class Pushthrough:
    """X_omega Z_delta |G> = i^sigma Z_Omega |G>."""

    omega_image: int
    sigma: int

    @property
    def sigma_value(self) -> complex:
        return phase_value(self.sigma)


def pauli_pushthrough(g: Graph, e: PauliOperator) -> Pushthrough:
    """Replace the X part of ``e`` by phase flips on the graph state.

    The phase of ``e`` itself is not included in ``sigma``.
    """
    if e.n != g.n:
        raise ValidationError(f"Pauli on {e.n} qubits for a graph on {g.n}", "dimension", e.n)
    g_omega = stabilizer_product(g, e.x)
    omega_image = e.z ^ g_omega.z
    sigma = -g_omega.phase + 2 * parity(e.x & omega_image)
    return Pushthrough(omega_image, sigma % 4)


def overlap_phase(g: Graph, a: int, e: PauliOperator, b: int) -> Optional[int]:
    """Exponent p with <G_a|E|G_b> = i^p, or None when the overlap vanishes."""
    g_omega = stabilizer_product(g, e.x)
    if a ^ b != e.z ^ g_omega.z:
        return None
    return (e.phase - g_omega.phase + 2 * parity(e.x & a)) % 4


def overlap(g: Graph, a: int, e: PauliOperator, b: int) -> complex:
    """<G_a|E|G_b> computed combinatorially."""
    phase = overlap_phase(g, a, e, b)
    return 0j if phase is None else phase_value(phase)


# Knill-Laflamme verification
@dataclass(frozen=True)
class KLVerdict:
    """Outcome of a Knill-Laflamme check; on failure names a violating (E, i, j)."""

    accepted: bool
    error: Optional[PauliOperator] = None
    i: int = -1
    j: int = -1
    reason: str = ""

    def to_json(self) -> Dict[str, Any]:
        if self.accepted:
            return {"accepted": True}
        assert self.error is not None
        return {
            "accepted": False,
            "reason": self.reason,
            "error": self.error.to_string(),
            "i": self.i,
            "j": self.j,
        }


def _check_basis(basis: Sequence[int]) -> List[int]:
    members = list(basis)
    if not members:
        raise ValidationError("Basis is empty", "input", members)
    if len(set(members)) != len(members):
        raise ValidationError("Basis contains duplicate members", "duplicate", members)
    return members


def kl_verify(g: Graph, basis: Sequence[int], d: int) -> KLVerdict:
    """Check <G_Ci|E|G_Cj> = f(E) delta_ij for every Pauli E of weight < d.

    Off-diagonal entries vanish unless C_i xor C_j equals the push-through image of E;
    diagonal entries exist only when that image is empty and then differ only by
    (-1)^{|omega & C_i|}.
    """
    if d < 1:
        raise ValidationError(f"Distance must be at least 1, got {d}", "range", d)
    members = _check_basis(basis)
    first_pair: Dict[int, Tuple[int, int]] = {}
    for i, j in itertools.combinations(range(len(members)), 2):
        first_pair.setdefault(members[i] ^ members[j], (i, j))

    for weight in range(1, min(d - 1, g.n) + 1):
        for support in itertools.combinations(range(g.n), weight):
            for omega, delta in xz_assignments(from_indices(support)):
                image = delta ^ g.neighborhood_set(omega)
                if image:
                    if image in first_pair:
                        i, j = first_pair[image]
                        return KLVerdict(False, PauliOperator.hermitian(omega, delta, g.n), i, j, "off_diagonal")
                    continue
                reference = parity(omega & members[0])
                for j, c in enumerate(members):
                    if parity(omega & c) != reference:
                        return KLVerdict(False, PauliOperator.hermitian(omega, delta, g.n), 0, j, "diagonal_mismatch")
    return KLVerdict(True)


def is_pure(g: Graph, basis: Sequence[int], d: int) -> bool:
    """True iff no Pauli of weight 1..d-1 acts as a nonzero multiple of identity.

    Such a Pauli has a vanishing push-through image, i.e. it is +-G_S for some
    nonempty S with |S | N_S| < d, so purity does not depend on the basis.
    """
    _check_basis(basis)
    for size in range(1, min(d - 1, g.n) + 1):
        for s in itertools.combinations(range(g.n), size):
            mask = from_indices(s)
            if popcount(mask | g.neighborhood_set(mask)) < d:
                return False
    return True


def code_distance(g: Graph, basis: Sequence[int], max_d: Optional[int] = None) -> int:
    """Largest d <= max_d (default n) accepted by :func:`kl_verify`."""
    limit = g.n if max_d is None else max_d
    d = 1
    while d < limit and kl_verify(g, basis, d + 1).accepted:
        d += 1
    return d


# State-vector oracle
@dataclass(frozen=True, eq=False)
class StateVector:
    """Unnormalised amplitudes; the state is ``amplitudes / sqrt(2**scale_exp)``."""

    n: int
    amplitudes: np.ndarray
    scale_exp: int

    def normalized(self) -> np.ndarray:
        return self.amplitudes / np.sqrt(2.0 ** self.scale_exp)


def _check_oracle_size(n: int) -> None:
    if n > MAX_STATE_QUBITS:
        raise ValidationError(
            f"State vectors support at most {MAX_STATE_QUBITS} qubits, got {n}", "size", n
        )


def _indices(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def _parity_of(values: np.ndarray) -> np.ndarray:
    v = values.copy()
    shift = 32
    while shift:
        v ^= v >> shift
        shift //= 2
    return v & 1


def graph_state(g: Graph) -> StateVector:
    """|G> with amplitude (-1)^{edges inside mu} on basis string mu."""
    _check_oracle_size(g.n)
    idx = _indices(g.n)
    signs = np.zeros(1 << g.n, dtype=np.int64)
    for a, b in g.edges():
        signs ^= (idx >> a) & (idx >> b) & 1
    return StateVector(g.n, (1 - 2 * signs).astype(np.complex128), g.n)


def basis_state(g: Graph, c: int) -> StateVector:
    """|G_C> = Z_C |G>."""
    return apply_pauli(graph_state(g), PauliOperator(0, c, 0, g.n))


def apply_pauli(state: StateVector, e: PauliOperator) -> StateVector:
    if e.n != state.n:
        raise ValidationError(f"Pauli on {e.n} qubits for a {state.n}-qubit state", "dimension", e.n)
    idx = _indices(state.n)
    flipped = state.amplitudes * (1 - 2 * _parity_of(idx & e.z))
    moved = flipped[idx ^ e.x]
    return StateVector(state.n, moved * phase_value(e.phase), state.scale_exp)


def inner(a: StateVector, b: StateVector) -> complex:
    """<a|b>."""
    value = complex(np.vdot(a.amplitudes, b.amplitudes))
    return value / 2.0 ** ((a.scale_exp + b.scale_exp) / 2)


def oracle_overlap(g: Graph, a: int, e: PauliOperator, b: int) -> complex:
    return inner(basis_state(g, a), apply_pauli(basis_state(g, b), e))


def oracle_kl_verify(g: Graph, basis: Sequence[int], d: int) -> KLVerdict:
    """Knill-Laflamme check by explicit matrix elements."""
    members = _check_basis(basis)
    states = np.array([basis_state(g, c).amplitudes for c in members])
    norm = float(1 << g.n)
    for e in iter_paulis(g.n, d - 1):
        if e.weight == 0:
            continue
        images = np.array([apply_pauli(StateVector(g.n, row, g.n), e).amplitudes for row in states])
        matrix = states.conj() @ images.T / norm
        for i, j in itertools.product(range(len(members)), repeat=2):
            if i != j and matrix[i, j] != 0:
                return KLVerdict(False, e, min(i, j), max(i, j), "off_diagonal")
        diagonal = np.diag(matrix)
        for j in range(len(members)):
            if diagonal[j] != diagonal[0]:
                return KLVerdict(False, e, 0, j, "diagonal_mismatch")
    return KLVerdict(True)


def pauli_matrix(e: PauliOperator) -> np.ndarray:
    """Dense 2^n x 2^n matrix of ``e``; column mu is E|mu>."""
    _check_oracle_size(e.n)
    idx = _indices(e.n)
    out = np.zeros((1 << e.n, 1 << e.n), dtype=np.complex128)
    out[idx ^ e.x, idx] = (1 - 2 * _parity_of(idx & e.z)) * phase_value(e.phase)
    return out


def code_projector(g: Graph, basis: Sequence[int]) -> np.ndarray:
    """Sum of |G_C><G_C| over the basis, scaled by 2^n (exact integer entries)."""
    vectors = np.array([basis_state(g, c).amplitudes for c in basis])
    return vectors.T @ vectors.conj()


def apply_lc_unitary(state: StateVector, g: Graph, v: int) -> StateVector:
    """Apply (I - iX_v) prod_{u in N_v} (I + iZ_u).

    This is sqrt(2)^{1 + |N_v|} times the local Clifford that maps |G> to the
    graph state of ``g.local_complement(v)``.
    """
    amplitudes = state.amplitudes
    for u in bit_indices(g.neighborhood(v)):
        z_u = apply_pauli(StateVector(state.n, amplitudes, 0), PauliOperator(0, 1 << u, 0, state.n))
        amplitudes = amplitudes + 1j * z_u.amplitudes
    x_v = apply_pauli(StateVector(state.n, amplitudes, 0), PauliOperator(1 << v, 0, 0, state.n))
    amplitudes = amplitudes - 1j * x_v.amplitudes
    return StateVector(state.n, amplitudes, state.scale_exp + 1 + popcount(g.neighborhood(v)))
