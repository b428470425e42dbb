# pst_builder.py - Konstrukcje sieci skalowalnych i certyfikacja p-PST

import logging
import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .pst_errors import Disconnected, InstanceTooLarge, InvalidVertex, SearchExhausted
from .pst_engineering import (
    DEFAULT_LIBRARY,
    Gadget,
    GadgetKind,
    Schedule,
    TokenState,
    enumerate_placements,
    make_gadget,
    parse_kind,
    schedule_to_dict,
    simulate_schedule,
)
from .pst_graph import Graph, glue, metrics
from .pst_spectral import DEFAULT_TOLERANCE
from .pst_violations import ViolationsCollector

logger = logging.getLogger(__name__)

SEARCH_CAP = 32


class BoundSource(str, Enum):
    DIAMETER_LEMMA = "DIAMETER_LEMMA"
    SEARCH = "SEARCH"


@dataclass(frozen=True)
class PstNumberCertificate:
    """Świadectwo, że para (lub wszystkie pary, pair=None) komunikuje się w p transferach"""
    pair: Optional[Tuple[int, int]]
    p: int
    source: BoundSource
    schedule: Schedule
    total_time: float

    def to_dict(self, g: Graph) -> dict:
        return {
            "pair": [g.name_of(v) for v in self.pair] if self.pair else "ALL_PAIRS",
            "p": self.p,
            "source": self.source.value,
            "total_time": self.total_time,
            "schedule": schedule_to_dict(self.schedule),
        }


def _witness(g: Graph, u: int, v: int, schedule: Schedule, tol: float):
    trace = simulate_schedule(g, schedule, [TokenState("token", u)], tol)
    if trace.final[0].position != v:
        raise SearchExhausted(f"Harmonogram kończy w {g.name_of(trace.final[0].position)}, nie w {g.name_of(v)}")


def ppst_upper_bound(g: Graph, u: int, v: int, tol: float = DEFAULT_TOLERANCE) -> PstNumberCertificate:
    """
    Ograniczenie z lematu o średnicy: najkrótsza ścieżka długości ℓ rozbita
    na ⌊ℓ/2⌋ gadżetów P3 i jeden K2 dla nieparzystego ℓ

    Returns:
        PstNumberCertificate z p = ⌈ℓ/2⌉ i zweryfikowanym harmonogramem
    """
    g.check_vertex(u)
    g.check_vertex(v)
    if math.isinf(metrics(g).distance(u, v)):
        raise Disconnected(f"Wierzchołki {g.name_of(u)} i {g.name_of(v)} leżą w różnych składowych")

    path = _shortest_path(g, u, v)
    rounds: List[List[Gadget]] = []
    for i in range(0, len(path) - 2, 2):
        rounds.append([make_gadget(g, GadgetKind.P3, path[i:i + 3])])
    if (len(path) - 1) % 2:
        rounds.append([make_gadget(g, GadgetKind.K2, path[-2:])])

    schedule = Schedule.from_gadgets(g, rounds)
    _witness(g, u, v, schedule, tol)
    return PstNumberCertificate((u, v), len(schedule), BoundSource.DIAMETER_LEMMA, schedule, schedule.total_time)


def _shortest_path(g: Graph, u: int, v: int) -> List[int]:
    """Najkrótsza ścieżka BFS z sąsiadami w rosnącej kolejności"""
    parent = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in g.neighbors[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    path = [v]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


@lru_cache(maxsize=1024)
def _token_search(g: Graph, library: Tuple[GadgetKind, ...], u: int) -> Dict[int, Tuple[int, Gadget]]:
    """BFS jednego tokenu; ruch = transfer gadżetu, pierwszy znaleziony rodzic zostaje"""
    moves: Dict[int, List[Tuple[Gadget, int]]] = {}
    for gadget in enumerate_placements(g, library):
        for s, d in gadget.transfers:
            moves.setdefault(s, []).append((gadget, d))

    parent: Dict[int, Tuple[int, Gadget]] = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for gadget, y in moves.get(x, ()):
            if y not in parent:
                parent[y] = (x, gadget)
                queue.append(y)
    return parent


def _library(kinds: Iterable) -> Tuple[GadgetKind, ...]:
    return tuple(sorted({parse_kind(k) for k in kinds}, key=lambda k: k.order))


def ppst_exact(g: Graph, u: int, v: int, gadget_library: Iterable = DEFAULT_LIBRARY,
               p_max: Optional[int] = None, tol: float = DEFAULT_TOLERANCE) -> PstNumberCertificate:
    """
    Minimalna liczba rund dla jednego tokenu z u do v

    Args:
        g: Graf (co najwyżej 32 wierzchołki)
        u, v: Nadawca i odbiorca
        gadget_library: Dozwolone rodzaje gadżetów
        p_max: Limit rund (domyślnie bez limitu)
        tol: Tolerancja weryfikacji świadectwa

    Returns:
        PstNumberCertificate (źródło SEARCH)
    """
    if g.vertex_count > SEARCH_CAP:
        raise InstanceTooLarge(f"Wyszukiwanie dokładne do {SEARCH_CAP} wierzchołków, graf ma {g.vertex_count}")
    g.check_vertex(u)
    g.check_vertex(v)
    if math.isinf(metrics(g).distance(u, v)):
        raise Disconnected(f"Wierzchołki {g.name_of(u)} i {g.name_of(v)} leżą w różnych składowych")

    parent = _token_search(g, _library(gadget_library), u)
    if v not in parent:
        raise SearchExhausted(f"Biblioteka gadżetów nie łączy {g.name_of(u)} z {g.name_of(v)}")

    rounds: List[List[Gadget]] = []
    x = v
    while parent[x] is not None:
        x, gadget = parent[x]
        rounds.append([gadget])
    rounds.reverse()
    if p_max is not None and len(rounds) > p_max:
        raise SearchExhausted(f"Para ({g.name_of(u)}, {g.name_of(v)}) wymaga {len(rounds)} > {p_max} rund")

    schedule = Schedule.from_gadgets(g, rounds)
    _witness(g, u, v, schedule, tol)
    return PstNumberCertificate((u, v), len(schedule), BoundSource.SEARCH, schedule, schedule.total_time)


# ============================================================================
# Procedury budowy
# ============================================================================

def _on_boundary(g: Graph, v: int) -> bool:
    return g.boundary is None or v in g.boundary


def procedure1(g0: Graph, hub: int, attachments: Sequence[Tuple[Graph, int]],
               violations: Optional[ViolationsCollector] = None) -> Graph:
    """
    Iterowane sklejanie: G_i' = G_{i-1}' ⋏ G_i w wierzchołku hub

    Niecentralny hub lub wierzchołek doklejenia (albo leżący poza brzegiem)
    daje ostrzeżenie, nie błąd.
    """
    violations = violations if violations is not None else ViolationsCollector()
    g0.check_vertex(hub)
    if hub not in metrics(g0).component_of(hub).center:
        violations.report("central-hub", f"Wierzchołek {g0.name_of(hub)} nie należy do centrum G0", "warning")

    current = g0
    for k, (gi, vi) in enumerate(attachments, start=1):
        gi.check_vertex(vi)
        if vi not in metrics(gi).component_of(vi).center:
            violations.report("central-attachment",
                              f"Doklejenie {k}: wierzchołek {gi.name_of(vi)} nie jest centralny", "warning")
        if not _on_boundary(gi, vi):
            violations.report("boundary-attachment",
                              f"Doklejenie {k}: wierzchołek {gi.name_of(vi)} poza brzegiem", "warning")
        current = glue(current, hub, gi, vi)

    logger.info(f"✓ Procedura 1: {len(attachments)} doklejeń, {current.vertex_count} wierzchołków")
    return current


def _fresh_labels(g: Graph, m: int) -> List:
    numeric = [int(str(label)) for label in g.labels if str(label).lstrip("-").isdigit()]
    start = max(numeric, default=-1) + 1
    as_text = any(isinstance(label, str) for label in g.labels)
    labels = []
    candidate = start
    taken = {str(label) for label in g.labels}
    while len(labels) < m:
        if str(candidate) not in taken:
            labels.append(str(candidate) if as_text else candidate)
        candidate += 1
    return labels


def procedure2(g0: Graph, u: int, v: int, m: int,
               violations: Optional[ViolationsCollector] = None) -> Graph:
    """
    Dołóż m nowych wierzchołków, każdy sąsiadujący dokładnie z u i v

    Nowe etykiety to kolejne wolne liczby całkowite; brzeg bez zmian.
    """
    violations = violations if violations is not None else ViolationsCollector()
    g0.check_vertex(u)
    g0.check_vertex(v)
    if u == v:
        raise InvalidVertex("Procedura 2 wymaga dwóch różnych wierzchołków")
    if m < 0:
        raise InvalidVertex(f"Liczba nowych wierzchołków musi być nieujemna: {m}")
    for w in (u, v):
        if not _on_boundary(g0, w):
            violations.report("boundary-join", f"Wierzchołek {g0.name_of(w)} poza zadeklarowanym brzegiem", "warning")

    n = g0.vertex_count
    labels = tuple(g0.labels) + tuple(_fresh_labels(g0, m))
    edges = list(g0.edges)
    for i in range(m):
        edges.extend([(u, n + i), (v, n + i)])
    result = Graph(labels, tuple(edges), g0.boundary, g0.name)
    logger.info(f"✓ Procedura 2: +{m} wierzchołków, {result.edge_count} krawędzi")
    return result


# ============================================================================
# Certyfikacja
# ============================================================================

@dataclass(frozen=True)
class PairCertificate:
    u: int
    v: int
    p: Optional[int]
    source: Optional[BoundSource]
    total_time: Optional[float]


@dataclass(frozen=True)
class NetworkCertification:
    graph: Graph
    p_target: int
    pairs: Tuple[PairCertificate, ...]

    @property
    def passed(self) -> bool:
        return all(pc.p is not None and pc.p <= self.p_target for pc in self.pairs)

    @property
    def max_p(self) -> Optional[int]:
        values = [pc.p for pc in self.pairs if pc.p is not None]
        return max(values, default=0)

    @property
    def max_total_time(self) -> float:
        return max((pc.total_time for pc in self.pairs if pc.total_time is not None), default=0.0)

    def rows(self) -> List[Dict]:
        g = self.graph
        return [
            {
                "u": g.name_of(pc.u),
                "v": g.name_of(pc.v),
                "p": pc.p,
                "source": pc.source.value if pc.source else None,
                "total_time": pc.total_time,
            }
            for pc in self.pairs
        ]

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.name,
            "p_target": self.p_target,
            "verdict": "PASS" if self.passed else "FAIL",
            "max_p": self.max_p,
            "max_total_time": self.max_total_time,
            "pairs": self.rows(),
        }


def certify_network(g: Graph, p_target: int, gadget_library: Iterable = DEFAULT_LIBRARY,
                    tol: float = DEFAULT_TOLERANCE) -> NetworkCertification:
    """Czy każda para wierzchołków komunikuje się w co najwyżej p_target transferach"""
    library = _library(gadget_library)
    exact = g.vertex_count <= SEARCH_CAP
    if not exact:
        logger.warning(f"Graf ma {g.vertex_count} > {SEARCH_CAP} wierzchołków: tylko ograniczenie z średnicy")

    pairs = []
    for u in range(g.vertex_count):
        for v in range(u + 1, g.vertex_count):
            try:
                if exact:
                    certificate = ppst_exact(g, u, v, library, tol=tol)
                else:
                    certificate = ppst_upper_bound(g, u, v, tol)
            except (Disconnected, SearchExhausted):
                pairs.append(PairCertificate(u, v, None, None, None))
                continue
            pairs.append(PairCertificate(u, v, certificate.p, certificate.source, certificate.total_time))

    result = NetworkCertification(g, p_target, tuple(pairs))
    if result.passed:
        logger.info(f"✓ {g.name or 'Graf'} jest {p_target}-PST (maks. czas {result.max_total_time:.6f})")
    else:
        logger.warning(f"{g.name or 'Graf'} nie jest {p_target}-PST (maks. p = {result.max_p})")
    return result
