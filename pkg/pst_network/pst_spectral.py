# pst_spectral.py - Ewolucja w podprzestrzeni jednego wzbudzenia exp(-iA(G)t)

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy.optimize import minimize_scalar

from .pst_errors import ConvergenceFailure, EmptyGraph, InvalidTime
from .pst_graph import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    cube_graph,
    cycle_graph,
    friendship_graph,
    path_graph,
    petersen_graph,
    star_graph,
    wheel_graph,
)

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9
DEFAULT_TIME_TOLERANCE = 1e-6
RESIDUAL_LIMIT = 1e-10
COARSE_THRESHOLD = 1e-3
MIN_GRID_STEP = 1e-3

HALF_PI = math.pi / 2
PI_OVER_SQRT2 = math.pi / math.sqrt(2)
CATALOG_TIMES = (HALF_PI, PI_OVER_SQRT2)


@dataclass(frozen=True)
class Spectrum:
    """Wartości własne (rosnąco) i ortonormalne wektory własne (kolumny)"""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def spectral_radius(self) -> float:
        if self.eigenvalues.size == 0:
            return 0.0
        return float(np.max(np.abs(self.eigenvalues)))

    def evolution(self, t: float) -> np.ndarray:
        """U(t) = V diag(e^{-iλt}) V^T"""
        v = self.eigenvectors
        return (v * np.exp(-1j * self.eigenvalues * t)) @ v.T


@dataclass(frozen=True)
class AmplitudeReport:
    source: int
    target: int
    time: float
    amplitude: complex
    magnitude: float
    phase: float


class PstVerdict(str, Enum):
    PST = "PST"
    NOT_PST = "NOT_PST"


@dataclass(frozen=True)
class PstCertificate:
    pair: Tuple[int, int]
    time: float
    magnitude: float
    phase: float
    verdict: PstVerdict
    amplitude: complex = 0j

    @property
    def is_pst(self) -> bool:
        return self.verdict is PstVerdict.PST


def _phase(amplitude: complex) -> float:
    """Faza w przedziale (-π, π]"""
    phase = math.atan2(amplitude.imag, amplitude.real)
    if phase <= -math.pi:
        phase += 2 * math.pi
    return phase


def make_report(source: int, target: int, t: float, amplitude: complex) -> AmplitudeReport:
    amplitude = complex(amplitude)
    return AmplitudeReport(
        source=source,
        target=target,
        time=float(t),
        amplitude=amplitude,
        magnitude=min(1.0, abs(amplitude)),
        phase=_phase(amplitude),
    )


@lru_cache(maxsize=512)
def eigendecompose(g: Graph) -> Spectrum:
    """
    Rozkład własny macierzy sąsiedztwa (symetryczny solver LAPACK).

    Znak każdego wektora własnego ustalony tak, by jego składowa o największym
    module była dodatnia.
    """
    if g.vertex_count < 1:
        raise EmptyGraph("Graf bez wierzchołków nie ma widma")
    a = g.adjacency_matrix(dtype=float)
    n = g.vertex_count
    eigenvalues = np.empty(n)
    eigenvectors = np.zeros((n, n))
    column = 0
    try:
        # osobno dla każdej składowej: wektory własne zerują się poza swoją składową
        for vertex_set in sorted(nx.connected_components(g.to_networkx()), key=min):
            block = sorted(vertex_set)
            lam, vec = np.linalg.eigh(a[np.ix_(block, block)])
            columns = np.arange(column, column + len(block))
            eigenvalues[columns] = lam
            eigenvectors[np.ix_(block, columns)] = vec
            column += len(block)
    except np.linalg.LinAlgError as e:
        raise ConvergenceFailure(f"Rozkład własny nie zbiegł: {e}") from e
    order = np.argsort(eigenvalues, kind="stable")
    eigenvalues, eigenvectors = eigenvalues[order], eigenvectors[:, order]

    pivots = np.argmax(np.abs(eigenvectors), axis=0)
    signs = np.sign(eigenvectors[pivots, np.arange(eigenvectors.shape[1])])
    signs[signs == 0] = 1.0
    eigenvectors = eigenvectors * signs

    residual = np.max(np.abs(a @ eigenvectors - eigenvectors * eigenvalues)) if a.size else 0.0
    if residual > RESIDUAL_LIMIT:
        raise ConvergenceFailure(f"Residuum rekonstrukcji {residual:.3e} > {RESIDUAL_LIMIT}")

    eigenvalues.setflags(write=False)
    eigenvectors.setflags(write=False)
    return Spectrum(eigenvalues, eigenvectors)


def evolution_operator(g: Graph, t: float) -> np.ndarray:
    if t < 0:
        raise InvalidTime(f"Czas ewolucji musi być nieujemny: {t}")
    return eigendecompose(g).evolution(t)


def _weights(spectrum: Spectrum, u: int, v: int) -> np.ndarray:
    # iloczyn elementowy jest przemienny, więc amplitude(u, v) == amplitude(v, u) dokładnie
    return spectrum.eigenvectors[u] * spectrum.eigenvectors[v]


def amplitude(g: Graph, u: int, v: int, t: float) -> AmplitudeReport:
    """Amplituda <v| exp(-iA(G)t) |u>"""
    g.check_vertex(u)
    g.check_vertex(v)
    if t < 0:
        raise InvalidTime(f"Czas ewolucji musi być nieujemny: {t}")
    spectrum = eigendecompose(g)
    value = np.sum(np.exp(-1j * spectrum.eigenvalues * t) * _weights(spectrum, u, v))
    return make_report(u, v, t, value)


def certificate_from_report(report: AmplitudeReport, tol: float = DEFAULT_TOLERANCE) -> PstCertificate:
    verdict = PstVerdict.PST if report.magnitude >= 1 - tol else PstVerdict.NOT_PST
    return PstCertificate(
        pair=(report.source, report.target),
        time=report.time,
        magnitude=report.magnitude,
        phase=report.phase,
        verdict=verdict,
        amplitude=report.amplitude,
    )


def check_pst(g: Graph, u: int, v: int, t: float, tol: float = DEFAULT_TOLERANCE) -> PstCertificate:
    """PST gdy |amplituda| >= 1 - tol; faza globalna jest raportowana, nie oceniana"""
    return certificate_from_report(amplitude(g, u, v, t), tol)


def find_pst_time(g: Graph, u: int, v: int, t_max: float,
                  tol: float = DEFAULT_TOLERANCE,
                  time_tol: float = DEFAULT_TIME_TOLERANCE) -> Optional[Tuple[float, PstCertificate]]:
    """
    Najwcześniejszy czas τ ∈ (0, t_max] z |<v|U(τ)|u>| >= 1 - tol

    Args:
        g: Graf
        u, v: Wierzchołki
        t_max: Górna granica przeszukiwania
        tol: Tolerancja werdyktu PST
        time_tol: Dokładność doprecyzowania czasu

    Returns:
        (τ, certyfikat) albo None
    """
    g.check_vertex(u)
    g.check_vertex(v)
    if t_max <= 0:
        raise InvalidTime(f"t_max musi być dodatnie: {t_max}")

    spectrum = eigendecompose(g)
    weights = _weights(spectrum, u, v)
    lam = spectrum.eigenvalues

    def magnitude(t: float) -> float:
        return float(abs(np.sum(np.exp(-1j * lam * t) * weights)))

    radius = spectrum.spectral_radius
    step = max(math.pi / (64 * radius), MIN_GRID_STEP) if radius > 0 else MIN_GRID_STEP
    count = max(1, int(math.floor(t_max / step)))
    times = np.minimum(np.arange(1, count + 1) * step, t_max)
    if times[-1] < t_max:
        times = np.append(times, t_max)
    grid = np.abs(np.exp(-1j * np.outer(times, lam)) @ weights)

    for i in np.flatnonzero(grid >= 1 - COARSE_THRESHOLD):
        left = grid[i - 1] if i > 0 else -1.0
        right = grid[i + 1] if i + 1 < len(grid) else -1.0
        if grid[i] < left or grid[i] < right:
            continue
        lo = times[i - 1] if i > 0 else 0.0
        hi = times[i + 1] if i + 1 < len(times) else times[i]
        if hi > lo:
            result = minimize_scalar(lambda t: -magnitude(t), bounds=(lo, hi), method="bounded",
                                     options={"xatol": min(time_tol, 1e-9) * 1e-2})
            tau = float(result.x) if -result.fun >= grid[i] else float(times[i])
        else:
            tau = float(times[i])
        certificate = check_pst(g, u, v, tau, tol)
        if certificate.is_pst:
            logger.debug(f"PST {u}->{v} w czasie {tau:.9f}")
            return tau, certificate
    return None


def find_pst_pairs(g: Graph, t: float, tol: float = DEFAULT_TOLERANCE) -> List[Tuple[int, int, AmplitudeReport]]:
    """Wszystkie nieuporządkowane pary u < v z PST w chwili t"""
    if t <= 0:
        raise InvalidTime(f"Czas musi być dodatni: {t}")
    if g.vertex_count == 0:
        return []
    u_matrix = evolution_operator(g, t)
    pairs = []
    for u in range(g.vertex_count):
        for v in range(u + 1, g.vertex_count):
            if abs(u_matrix[v, u]) >= 1 - tol:
                pairs.append((u, v, make_report(u, v, t, u_matrix[v, u])))
    return pairs


# ============================================================================
# Audyt katalogu
# ============================================================================

class AuditVerdict(str, Enum):
    CONFIRMED = "CONFIRMED"
    TIME_MISMATCH = "TIME_MISMATCH"
    NO_PST = "NO_PST"


@dataclass(frozen=True)
class CatalogClaim:
    name: str
    graph: Graph
    source: int
    target: int
    time: float


@dataclass(frozen=True)
class AuditEntry:
    claim: CatalogClaim
    verdict: AuditVerdict
    magnitude: float
    phase: float
    corrected_time: Optional[float]

    def to_dict(self) -> dict:
        g = self.claim.graph
        return {
            "graph": self.claim.name,
            "pair": [g.name_of(self.claim.source), g.name_of(self.claim.target)],
            "claimed_time": self.claim.time,
            "verdict": self.verdict.value,
            "magnitude": self.magnitude,
            "phase": self.phase,
            "corrected_time": self.corrected_time,
        }


def audit_catalog(claims: Sequence[CatalogClaim], t_max: float = 20.0,
                  tol: float = DEFAULT_TOLERANCE) -> List[AuditEntry]:
    """Sprawdź deklarowane czasy PST i podaj czasy wyznaczone numerycznie"""
    entries = []
    for claim in claims:
        certificate = check_pst(claim.graph, claim.source, claim.target, claim.time, tol)
        found = find_pst_time(claim.graph, claim.source, claim.target, max(t_max, claim.time), tol)
        if certificate.is_pst:
            verdict, corrected = AuditVerdict.CONFIRMED, None
        elif found is not None:
            verdict, corrected = AuditVerdict.TIME_MISMATCH, found[0]
        else:
            verdict, corrected = AuditVerdict.NO_PST, None
        entries.append(AuditEntry(claim, verdict, certificate.magnitude, certificate.phase, corrected))
        if verdict is not AuditVerdict.CONFIRMED:
            logger.warning(f"Audyt {claim.name} ({claim.source}, {claim.target}): {verdict.value}")
    return entries


def catalog_claims() -> List[CatalogClaim]:
    """Wbudowany katalog deklaracji PST (pary i deklarowane czasy)"""
    p2, p3, c4, q3 = path_graph(2), path_graph(3), cycle_graph(4), cube_graph()
    claims = [
        CatalogClaim("P2", p2, 0, 1, HALF_PI),
        CatalogClaim("P3", p3, 0, 2, PI_OVER_SQRT2),
        CatalogClaim("C4", c4, 1, 3, PI_OVER_SQRT2),
        CatalogClaim("C4", c4, 0, 2, PI_OVER_SQRT2),
    ]
    for u, v in ((0, 7), (1, 4), (2, 5), (3, 7)):
        claims.append(CatalogClaim("Q3", q3, u, v, PI_OVER_SQRT2))
    return claims


def family_claims() -> List[Graph]:
    """Rodziny grafów deklarowane jako 1-PST"""
    return [
        complete_graph(3),
        complete_graph(4),
        complete_bipartite_graph(2, 3),
        star_graph(4),
        wheel_graph(5),
        friendship_graph(2),
        petersen_graph(),
    ]


@dataclass(frozen=True)
class FamilyAudit:
    graph: Graph
    pst_pairs: Tuple[Tuple[int, int, float], ...]
    missing_pairs: Tuple[Tuple[int, int], ...]

    @property
    def is_one_pst(self) -> bool:
        return not self.missing_pairs

    def to_dict(self) -> dict:
        g = self.graph
        return {
            "graph": g.name,
            "one_pst": self.is_one_pst,
            "pst_pairs": [[g.name_of(u), g.name_of(v), t] for u, v, t in self.pst_pairs],
            "missing_pairs": [[g.name_of(u), g.name_of(v)] for u, v in self.missing_pairs],
        }


def audit_family(g: Graph, t_max: float = 20.0, tol: float = DEFAULT_TOLERANCE) -> FamilyAudit:
    """Dla każdej pary wierzchołków szukaj PST w (0, t_max]"""
    found, missing = [], []
    for u in range(g.vertex_count):
        for v in range(u + 1, g.vertex_count):
            result = find_pst_time(g, u, v, t_max, tol)
            if result is None:
                missing.append((u, v))
            else:
                found.append((u, v, result[0]))
    return FamilyAudit(g, tuple(found), tuple(missing))
