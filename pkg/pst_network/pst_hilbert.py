# pst_hilbert.py - Kontrola krzyżowa: hamiltonian XX+YY na pełnej przestrzeni 2^n

"""
Porządek kubitów: wierzchołek u odpowiada bitowi u (najmniej znaczący
pierwszy) indeksu stanu bazowego, czyli czynnikowi n-1-u iloczynu
tensorowego licząc od lewej. Bit 1 oznacza kubit wzbudzony, więc rosnąca
baza jednego wzbudzenia 1 << u pokrywa się z kolejnością wierzchołków.
"""

import logging
from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from typing import Sequence, Tuple

import numpy as np
from scipy.linalg import expm

from .pst_errors import DimensionMismatch, EmptyGraph, InvalidVertex, TooManyQubits
from .pst_graph import Graph
from .pst_spectral import evolution_operator

logger = logging.getLogger(__name__)

MAX_QUBITS = 12
FULL_EXPONENTIAL_LIMIT = 8

_IDENTITY = np.eye(2, dtype=np.int16)
_SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.int16)
# σ_y = i·_SIGMA_Y_REAL, więc σ_y ⊗ σ_y = -(_SIGMA_Y_REAL ⊗ _SIGMA_Y_REAL)
_SIGMA_Y_REAL = np.array([[0, -1], [1, 0]], dtype=np.int16)


@dataclass(frozen=True)
class ExcitationBasis:
    n: int
    weight: int
    states: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.states)


def excitation_basis(n: int, weight: int) -> ExcitationBasis:
    """Stany bazowe o wadze Hamminga `weight`, rosnąco jako liczby"""
    if not 0 <= weight <= n:
        raise DimensionMismatch(f"Waga {weight} poza zakresem 0..{n}")
    states = sorted(sum(1 << q for q in qubits) for qubits in combinations(range(n), weight))
    return ExcitationBasis(n, weight, tuple(states))


def _two_site(n: int, u: int, v: int, single: np.ndarray) -> np.ndarray:
    # kubit u = bit u indeksu bazy = czynnik n-1-u iloczynu kron
    factors = [_IDENTITY] * n
    factors[n - 1 - u] = single
    factors[n - 1 - v] = single
    return reduce(np.kron, factors)


def build_xy_hamiltonian(g: Graph) -> np.ndarray:
    """
    H_XY = 1/2 Σ_{(u,v) ∈ E} (σx^u σx^v + σy^u σy^v) jako macierz całkowita 2^n × 2^n

    Raises:
        TooManyQubits: n > 12
    """
    n = g.vertex_count
    if n > MAX_QUBITS:
        raise TooManyQubits(f"Konstrukcja gęsta do {MAX_QUBITS} kubitów, graf ma {n}")
    doubled = np.zeros((1 << n, 1 << n), dtype=np.int16)
    for u, v in g.edges:
        doubled += _two_site(n, u, v, _SIGMA_X)
        doubled -= _two_site(n, u, v, _SIGMA_Y_REAL)
    logger.debug(f"H_XY: {n} kubitów, {g.edge_count} sprzężeń")
    return doubled // 2


def _qubits_of(h: np.ndarray) -> int:
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimensionMismatch(f"Macierz musi być kwadratowa: {h.shape}")
    size = h.shape[0]
    n = size.bit_length() - 1
    if size < 1 or (1 << n) != size:
        raise DimensionMismatch(f"Rozmiar {size} nie jest potęgą 2")
    return n


def restrict_to_weight(h: np.ndarray, basis: ExcitationBasis) -> np.ndarray:
    """Podmacierz H na stanach bazy o zadanej wadze"""
    if _qubits_of(h) != basis.n:
        raise DimensionMismatch(f"Baza dla {basis.n} kubitów, macierz {h.shape}")
    states = list(basis.states)
    return h[np.ix_(states, states)]


def _weights(n: int) -> np.ndarray:
    indices = np.arange(1 << n)
    return np.array([bin(i).count("1") for i in indices])


def check_excitation_conservation(h: np.ndarray) -> bool:
    """Czy H nie łączy stanów o różnej liczbie wzbudzeń"""
    n = _qubits_of(h)
    if n > MAX_QUBITS:
        raise TooManyQubits(f"Do {MAX_QUBITS} kubitów")
    weights = _weights(n)
    rows, cols = np.nonzero(h)
    return bool(np.all(weights[rows] == weights[cols]))


def weight_block_spectrum(g: Graph, weight: int) -> np.ndarray:
    """Widmo bloku H_XY o `weight` wzbudzeniach"""
    block = restrict_to_weight(build_xy_hamiltonian(g), excitation_basis(g.vertex_count, weight))
    return np.linalg.eigvalsh(block.astype(float))


def multi_excitation_amplitude(g: Graph, sources: Sequence[int], targets: Sequence[int], t: float) -> complex:
    """
    Amplituda <targets| exp(-i H_XY t) |sources> dla kilku wzbudzeń naraz

    Args:
        g: Graf
        sources: Wzbudzone wierzchołki na starcie
        targets: Wzbudzone wierzchołki na końcu (tyle samo)
        t: Czas

    Returns:
        Amplituda zespolona
    """
    for v in list(sources) + list(targets):
        g.check_vertex(v)
    if len(set(sources)) != len(sources) or len(set(targets)) != len(targets):
        raise InvalidVertex("Wierzchołki wzbudzeń muszą być różne")
    if len(sources) != len(targets):
        raise DimensionMismatch("Liczba wzbudzeń musi być zachowana")

    basis = excitation_basis(g.vertex_count, len(sources))
    block = restrict_to_weight(build_xy_hamiltonian(g), basis).astype(float)
    eigenvalues, eigenvectors = np.linalg.eigh(block)
    index = {state: i for i, state in enumerate(basis.states)}
    a = index[sum(1 << v for v in sources)]
    b = index[sum(1 << v for v in targets)]
    return complex(np.sum(np.exp(-1j * eigenvalues * t) * eigenvectors[b] * eigenvectors[a]))


def xcheck_report(g: Graph, samples: int = 10, seed: int = 0) -> dict:
    """Raport zgodności bloku jednego wzbudzenia z A(G)"""
    n = g.vertex_count
    if n == 0:
        raise EmptyGraph("Kontrola krzyżowa wymaga co najmniej jednego wierzchołka")
    h = build_xy_hamiltonian(g)
    basis = excitation_basis(n, 1)
    block = restrict_to_weight(h, basis)
    equals = bool(np.array_equal(block, g.adjacency_matrix()))
    conservation = check_excitation_conservation(h)

    states = list(basis.states)
    times = np.random.default_rng(seed).uniform(0.0, 10.0, samples)
    residual = 0.0
    for t in times:
        if n <= FULL_EXPONENTIAL_LIMIT:
            full = expm(-1j * t * h.astype(float))
            evolved = full[np.ix_(states, states)]
        else:
            evolved = expm(-1j * t * block.astype(float))
        residual = max(residual, float(np.max(np.abs(evolved - evolution_operator(g, float(t))))))

    logger.info(f"✓ xcheck {g.name or 'graf'}: blok = A(G): {equals}, zachowanie wzbudzeń: {conservation}")
    return {
        "n": n,
        "weight1_equals_adjacency": equals,
        "conservation": conservation,
        "max_block_residual": residual,
    }
