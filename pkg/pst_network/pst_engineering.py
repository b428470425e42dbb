# pst_engineering.py - Inżynieria hamiltonianu: gadżety, rundy, harmonogramy i transport tokenów

"""
Runda to zbiór rozłącznych wierzchołkowo gadżetów (K2, P3, Q2, Q3 lub własnych),
których krawędzie są włączone; wszystkie pozostałe wierzchołki są izolowane.
Każdy gadżet ewoluuje przez własny czas τ od początku rundy, po czym jego
krawędzie są wyłączane, a jego wierzchołki zamrożone aż do końca rundy.
Czas rundy to największe τ wśród jej gadżetów.
"""

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from networkx.algorithms.isomorphism import GraphMatcher

from .pst_errors import (
    AmplitudeLoss,
    EdgeNotInHost,
    InvalidRound,
    InvalidTime,
    InvalidVertex,
    MalformedDocument,
    TokenCollision,
)
from .pst_graph import CUBE_ANTIPODES, CUBE_EDGES, Edge, Graph, Label, disjoint_union
from .pst_spectral import (
    DEFAULT_TOLERANCE,
    HALF_PI,
    PI_OVER_SQRT2,
    AmplitudeReport,
    check_pst,
    eigendecompose,
    find_pst_time,
    make_report,
)

logger = logging.getLogger(__name__)


class GadgetKind(str, Enum):
    K2 = "K2"
    P3 = "P3"
    Q2 = "Q2"
    Q3 = "Q3"
    CUSTOM = "CUSTOM"

    @property
    def order(self) -> int:
        return _KIND_ORDER[self]


_KIND_ORDER = {
    GadgetKind.K2: 0,
    GadgetKind.P3: 1,
    GadgetKind.Q2: 2,
    GadgetKind.Q3: 3,
    GadgetKind.CUSTOM: 4,
}

# Czasy PST wyznaczone numerycznie
CATALOG_DURATIONS = {
    GadgetKind.K2: HALF_PI,
    GadgetKind.P3: PI_OVER_SQRT2,
    GadgetKind.Q2: HALF_PI,
    GadgetKind.Q3: HALF_PI,
}

DEFAULT_LIBRARY = (GadgetKind.K2, GadgetKind.P3, GadgetKind.Q2, GadgetKind.Q3)

# rodzaj -> (liczba wierzchołków, krawędzie wzorca, pary PST wzorca)
_PATTERNS = {
    GadgetKind.K2: (2, ((0, 1),), ((0, 1),)),
    GadgetKind.P3: (3, ((0, 1), (1, 2)), ((0, 2),)),
    GadgetKind.Q2: (4, ((0, 1), (1, 2), (2, 3), (3, 0)), ((0, 2), (1, 3))),
    GadgetKind.Q3: (8, CUBE_EDGES, CUBE_ANTIPODES),
}


def parse_kind(value: Union[str, GadgetKind]) -> GadgetKind:
    try:
        return GadgetKind(str(value.value if isinstance(value, GadgetKind) else value).upper())
    except ValueError:
        raise MalformedDocument(f"Nieznany rodzaj gadżetu: {value!r}") from None


def pattern_graph(kind: GadgetKind) -> Graph:
    """Graf wzorcowy gadżetu katalogowego"""
    size, edges, _ = _PATTERNS[GadgetKind(kind)]
    return Graph(tuple(range(size)), edges, None, GadgetKind(kind).value)


def _normalize(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _wrap_phase(phase: float) -> float:
    wrapped = math.remainder(phase, 2 * math.pi)
    return math.pi if wrapped <= -math.pi else wrapped


# ============================================================================
# Typy
# ============================================================================

@dataclass(frozen=True)
class Gadget:
    """Podgraf włączany na czas τ; transfery to skierowane pary (źródło, cel)"""
    kind: GadgetKind
    vertices: Tuple[int, ...]
    edges: Tuple[Edge, ...]
    duration: float
    transfers: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        vertices = tuple(int(v) for v in self.vertices)
        if not vertices or len(set(vertices)) != len(vertices):
            raise InvalidRound(f"Gadżet {self.kind} ma puste lub powtórzone wierzchołki: {vertices}")
        members = set(vertices)
        edges = tuple(sorted({_normalize(int(u), int(v)) for u, v in self.edges}))
        for u, v in edges:
            if u == v or u not in members or v not in members:
                raise InvalidRound(f"Krawędź ({u}, {v}) gadżetu {self.kind} poza jego wierzchołkami")
        transfers = tuple((int(s), int(d)) for s, d in self.transfers)
        for s, d in transfers:
            if s not in members or d not in members:
                raise InvalidRound(f"Transfer ({s}, {d}) poza wierzchołkami gadżetu {self.kind}")
        duration = float(self.duration)
        if not math.isfinite(duration) or duration <= 0:
            raise InvalidTime(f"Czas gadżetu musi być dodatni: {self.duration}")

        object.__setattr__(self, "kind", GadgetKind(self.kind))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "transfers", transfers)
        object.__setattr__(self, "duration", duration)

    @property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def transfer_from(self, source: int) -> Optional[Tuple[int, int]]:
        for transfer in self.transfers:
            if transfer[0] == source:
                return transfer
        return None

    def with_duration(self, duration: float) -> "Gadget":
        return replace(self, duration=duration)


@dataclass(frozen=True)
class Round:
    gadgets: Tuple[Gadget, ...] = ()
    index: int = 0

    def __post_init__(self):
        object.__setattr__(self, "gadgets", tuple(self.gadgets))

    @property
    def duration(self) -> float:
        return max((g.duration for g in self.gadgets), default=0.0)

    @property
    def active_vertices(self) -> frozenset:
        return frozenset(v for g in self.gadgets for v in g.vertices)

    def gadget_of(self, v: int) -> Optional[Gadget]:
        for gadget in self.gadgets:
            if v in gadget.vertex_set:
                return gadget
        return None

    def transfer_from(self, source: int) -> Optional[Tuple[int, int]]:
        gadget = self.gadget_of(source)
        return gadget.transfer_from(source) if gadget else None

    def has_transfer(self, source: int, target: int) -> bool:
        gadget = self.gadget_of(source)
        return gadget is not None and (source, target) in gadget.transfers


def check_gadget(host: Graph, gadget: Gadget):
    for v in gadget.vertices:
        host.check_vertex(v)
    foreign = [e for e in gadget.edges if e not in host.edge_set]
    if foreign:
        raise EdgeNotInHost(f"Krawędzie gadżetu {gadget.kind.value} spoza grafu: {foreign}")


def validate_round(host: Graph, rnd: Round):
    """Gadżety rundy muszą leżeć w grafie i mieć rozłączne zbiory wierzchołków"""
    seen: Dict[int, Gadget] = {}
    for gadget in rnd.gadgets:
        check_gadget(host, gadget)
        for v in gadget.vertices:
            if v in seen:
                raise InvalidRound(
                    f"Runda {rnd.index}: wierzchołek {host.name_of(v)} należy do dwóch gadżetów"
                )
            seen[v] = gadget


@dataclass(frozen=True)
class Schedule:
    host: Graph
    rounds: Tuple[Round, ...] = ()

    def __post_init__(self):
        rounds = tuple(self.rounds)
        for expected, rnd in enumerate(rounds):
            if rnd.index != expected:
                raise InvalidRound(f"Indeksy rund muszą być kolejne od 0; runda {rnd.index} na pozycji {expected}")
            validate_round(self.host, rnd)
        object.__setattr__(self, "rounds", rounds)

    @classmethod
    def from_gadgets(cls, host: Graph, rounds: Iterable[Iterable[Gadget]]) -> "Schedule":
        return cls(host, tuple(Round(tuple(gs), j) for j, gs in enumerate(rounds)))

    def __len__(self) -> int:
        return len(self.rounds)

    @property
    def total_time(self) -> float:
        return sum(r.duration for r in self.rounds)

    def without_round(self, index: int) -> "Schedule":
        kept = [r.gadgets for j, r in enumerate(self.rounds) if j != index]
        return Schedule.from_gadgets(self.host, kept)


@dataclass(frozen=True)
class TokenState:
    token: Label
    position: int
    accumulated_phase: float = 0.0
    magnitude: float = 1.0

    def to_dict(self, host: Graph) -> dict:
        return {
            "token": self.token,
            "position": host.name_of(self.position),
            "phase": self.accumulated_phase,
            "magnitude": self.magnitude,
        }


@dataclass(frozen=True)
class TraceStep:
    round_index: int
    states: Tuple[TokenState, ...]


@dataclass(frozen=True)
class TransportTrace:
    initial: Tuple[TokenState, ...]
    steps: Tuple[TraceStep, ...] = ()
    total_time: float = 0.0

    @property
    def final(self) -> Tuple[TokenState, ...]:
        return self.steps[-1].states if self.steps else self.initial

    @property
    def round_count(self) -> int:
        return len(self.steps)

    def final_positions(self) -> Dict[Label, int]:
        return {s.token: s.position for s in self.final}

    def to_dict(self, host: Graph) -> dict:
        return {
            "rounds": self.round_count,
            "total_time": self.total_time,
            "initial": [s.to_dict(host) for s in self.initial],
            "steps": [
                {"round": step.round_index, "tokens": [s.to_dict(host) for s in step.states]}
                for step in self.steps
            ],
        }


# ============================================================================
# Gadżety
# ============================================================================

def make_gadget(host: Graph, kind: Union[str, GadgetKind], vertices: Sequence[int],
                edges: Optional[Iterable[Tuple[int, int]]] = None,
                duration: Optional[float] = None,
                transfers: Optional[Iterable[Tuple[int, int]]] = None,
                tol: float = DEFAULT_TOLERANCE) -> Gadget:
    """
    Utwórz gadżet w grafie-gospodarzu

    Args:
        host: Graf-gospodarz
        kind: Rodzaj gadżetu; dla katalogowych wierzchołki podaje się w kolejności wzorca
        vertices: Wierzchołki gadżetu
        edges: Krawędzie (domyślnie krawędzie wzorca)
        duration: Czas τ (domyślnie wyznaczony czas PST rodzaju)
        transfers: Skierowane transfery (domyślnie obie strony każdej pary PST)
        tol: Tolerancja certyfikacji gadżetu własnego

    Returns:
        Gadget
    """
    kind = parse_kind(kind)
    vertices = tuple(host.check_vertex(v) for v in vertices)

    if kind is GadgetKind.CUSTOM:
        if edges is None or duration is None or transfers is None:
            raise InvalidRound("Gadżet CUSTOM wymaga krawędzi, czasu i transferów")
    else:
        size, pattern_edges, pairs = _PATTERNS[kind]
        if len(vertices) != size:
            raise InvalidRound(f"Gadżet {kind.value} wymaga {size} wierzchołków, podano {len(vertices)}")
        if edges is None:
            edges = [(vertices[a], vertices[b]) for a, b in pattern_edges]
        if transfers is None:
            transfers = []
            for a, b in pairs:
                transfers.extend([(vertices[a], vertices[b]), (vertices[b], vertices[a])])
        if duration is None:
            duration = CATALOG_DURATIONS[kind]

    gadget = Gadget(kind, vertices, tuple(edges), duration, tuple(transfers))
    check_gadget(host, gadget)

    if kind is GadgetKind.CUSTOM:
        for s, d in gadget.transfers:
            magnitude = gadget_amplitude(gadget, s, d).magnitude
            if magnitude < 1 - tol:
                raise InvalidRound(
                    f"Gadżet CUSTOM nie realizuje PST {host.name_of(s)}->{host.name_of(d)} "
                    f"w czasie {gadget.duration}: |a| = {magnitude:.6f}"
                )
    return gadget


@lru_cache(maxsize=4096)
def _gadget_evolution(gadget: Gadget) -> Tuple[Dict[int, int], np.ndarray]:
    order = tuple(sorted(gadget.vertices))
    index = {v: i for i, v in enumerate(order)}
    local = Graph(tuple(range(len(order))), tuple((index[u], index[v]) for u, v in gadget.edges))
    evolution = eigendecompose(local).evolution(gadget.duration)
    evolution.setflags(write=False)
    return index, evolution


def gadget_amplitude(gadget: Gadget, source: int, target: int) -> AmplitudeReport:
    index, evolution = _gadget_evolution(gadget)
    if source not in index or target not in index:
        raise InvalidVertex(f"Wierzchołek spoza gadżetu {gadget.kind.value}")
    return make_report(source, target, gadget.duration, evolution[index[target], index[source]])


# ============================================================================
# Ewolucja rundy
# ============================================================================

@lru_cache(maxsize=1024)
def _vertex_owner(host: Graph, rnd: Round) -> Dict[int, Gadget]:
    validate_round(host, rnd)
    return {v: g for g in rnd.gadgets for v in g.vertices}


def round_unitary_entry(host: Graph, rnd: Round, u: int, v: int) -> AmplitudeReport:
    """Amplituda <v| U_rundy |u>; wierzchołki izolowane ewoluują jak identyczność"""
    host.check_vertex(u)
    host.check_vertex(v)
    owner = _vertex_owner(host, rnd)
    gadget = owner.get(u)
    if gadget is None:
        return make_report(u, v, rnd.duration, 1.0 if u == v else 0.0)
    if owner.get(v) is not gadget:
        return make_report(u, v, rnd.duration, 0.0)
    entry = gadget_amplitude(gadget, u, v)
    return make_report(u, v, rnd.duration, entry.amplitude)


def round_unitary(host: Graph, rnd: Round) -> np.ndarray:
    """Pełny operator rundy (blokowo-diagonalny)"""
    validate_round(host, rnd)
    operator = np.eye(host.vertex_count, dtype=complex)
    for gadget in rnd.gadgets:
        index, evolution = _gadget_evolution(gadget)
        order = sorted(index, key=index.get)
        operator[np.ix_(order, order)] = evolution
    return operator


def simulate_schedule(host: Graph, schedule: Schedule, tokens: Sequence[TokenState],
                      tol: float = DEFAULT_TOLERANCE) -> TransportTrace:
    """
    Przeprowadź tokeny przez kolejne rundy

    Token, którego pozycja jest źródłem transferu w rundzie, jedzie tym
    transferem; pozostałe muszą mieć amplitudę powrotu |a| >= 1 - tol.

    Raises:
        TokenCollision: Dwa tokeny w jednym wierzchołku na granicy rund
        AmplitudeLoss: Amplituda wymaganego przejścia poniżej progu
    """
    states = tuple(tokens)
    for s in states:
        host.check_vertex(s.position)
    _check_collisions(states, -1)

    initial = states
    steps: List[TraceStep] = []
    for rnd in schedule.rounds:
        moved = []
        for state in states:
            transfer = rnd.transfer_from(state.position)
            target = transfer[1] if transfer else state.position
            report = round_unitary_entry(host, rnd, state.position, target)
            if report.magnitude < 1 - tol:
                raise AmplitudeLoss(rnd.index, state.token, report.magnitude)
            moved.append(TokenState(
                token=state.token,
                position=target,
                accumulated_phase=_wrap_phase(state.accumulated_phase + report.phase),
                magnitude=state.magnitude * report.magnitude,
            ))
        states = tuple(moved)
        _check_collisions(states, rnd.index)
        steps.append(TraceStep(rnd.index, states))

    logger.debug(f"Symulacja: {len(steps)} rund, {len(states)} tokenów")
    return TransportTrace(initial, tuple(steps), schedule.total_time)


def _check_collisions(states: Sequence[TokenState], round_index: int):
    occupied: Dict[int, List[Label]] = {}
    for s in states:
        occupied.setdefault(s.position, []).append(s.token)
    for position, tokens in occupied.items():
        if len(tokens) > 1:
            raise TokenCollision(round_index, position, tokens)


def verify_union_lemma(parts: Sequence[Tuple[Graph, int, int, float]],
                       tol: float = DEFAULT_TOLERANCE) -> bool:
    """Czy PST części (g_i, u_i, v_i, τ_i) przetrwają w sumie rozłącznej"""
    union = disjoint_union([g for g, _, _, _ in parts])
    offset = 0
    for g, u, v, t in parts:
        if not check_pst(union, u + offset, v + offset, t, tol).is_pst:
            return False
        offset += g.vertex_count
    return True


# ============================================================================
# Rozmieszczenia gadżetów
# ============================================================================

def placement_key(gadget: Gadget):
    return (gadget.kind.order, tuple(sorted(gadget.vertices)), gadget.vertices)


def enumerate_placements(host: Graph, kinds: Iterable[Union[str, GadgetKind]] = DEFAULT_LIBRARY) -> Tuple[Gadget, ...]:
    """Wszystkie (niekoniecznie indukowane) rozmieszczenia gadżetów bibliotecznych w grafie"""
    library = tuple(sorted({parse_kind(k) for k in kinds} - {GadgetKind.CUSTOM}, key=lambda k: k.order))
    return _enumerate_placements(host, library)


@lru_cache(maxsize=64)
def _enumerate_placements(host: Graph, library: Tuple[GadgetKind, ...]) -> Tuple[Gadget, ...]:
    host_nx = host.to_networkx()
    placements: Dict[Tuple[GadgetKind, Tuple[Edge, ...]], Gadget] = {}
    for kind in library:
        size = _PATTERNS[kind][0]
        if size > host.vertex_count:
            continue
        matcher = GraphMatcher(host_nx, pattern_graph(kind).to_networkx())
        for mapping in matcher.subgraph_monomorphisms_iter():
            inverse = {p: h for h, p in mapping.items()}
            vertices = tuple(inverse[i] for i in range(size))
            gadget = make_gadget(host, kind, vertices)
            key = (kind, gadget.edges)
            if key not in placements or vertices < placements[key].vertices:
                placements[key] = gadget
    ordered = tuple(sorted(placements.values(), key=placement_key))
    logger.debug(f"Rozmieszczenia gadżetów w {host.name or 'grafie'}: {len(ordered)}")
    return ordered


def correct_durations(host: Graph, schedule: Schedule, t_max: float = 20.0,
                      tol: float = DEFAULT_TOLERANCE) -> Schedule:
    """Zastąp czasy gadżetów wyznaczonymi czasami PST"""
    rounds = []
    for rnd in schedule.rounds:
        gadgets = []
        for gadget in rnd.gadgets:
            duration = _computed_duration(gadget, t_max, tol)
            if duration != gadget.duration:
                logger.info(f"✓ Runda {rnd.index}: czas {gadget.kind.value} {gadget.duration:.9f} -> {duration:.9f}")
            gadgets.append(gadget.with_duration(duration))
        rounds.append(gadgets)
    return Schedule.from_gadgets(host, rounds)


def _computed_duration(gadget: Gadget, t_max: float, tol: float) -> float:
    if gadget.kind in CATALOG_DURATIONS:
        return CATALOG_DURATIONS[gadget.kind]
    if not gadget.transfers:
        return gadget.duration
    index, _ = _gadget_evolution(gadget)
    local = Graph(tuple(range(len(index))), tuple((index[u], index[v]) for u, v in gadget.edges))
    s, d = gadget.transfers[0]
    found = find_pst_time(local, index[s], index[d], t_max, tol)
    return found[0] if found else gadget.duration


# ============================================================================
# Schedule JSON
# ============================================================================

def gadget_to_dict(host: Graph, gadget: Gadget) -> dict:
    return {
        "kind": gadget.kind.value,
        "vertices": [host.name_of(v) for v in gadget.vertices],
        "edges": [[host.name_of(u), host.name_of(v)] for u, v in gadget.edges],
        "duration": gadget.duration,
        "transfers": [[host.name_of(s), host.name_of(d)] for s, d in gadget.transfers],
    }


def schedule_to_dict(schedule: Schedule) -> dict:
    host = schedule.host
    return {"rounds": [{"gadgets": [gadget_to_dict(host, g) for g in rnd.gadgets]} for rnd in schedule.rounds]}


def _vertex_field(host: Graph, label, path: str) -> int:
    if not isinstance(label, (str, int)) or isinstance(label, bool):
        raise MalformedDocument("Wierzchołek musi być napisem lub liczbą", field=path)
    try:
        return host.vertex(label)
    except InvalidVertex:
        raise MalformedDocument(f"Nieznany wierzchołek {label!r}", field=path) from None


def _pairs_field(host: Graph, doc, path: str) -> List[Tuple[int, int]]:
    if not isinstance(doc, list):
        raise MalformedDocument("Oczekiwano listy par", field=path)
    pairs = []
    for i, pair in enumerate(doc):
        if not isinstance(pair, list) or len(pair) != 2:
            raise MalformedDocument("Oczekiwano pary wierzchołków", field=f"{path}[{i}]")
        pairs.append((_vertex_field(host, pair[0], f"{path}[{i}][0]"),
                      _vertex_field(host, pair[1], f"{path}[{i}][1]")))
    return pairs


def gadget_from_dict(host: Graph, doc, path: str = "gadget", tol: float = DEFAULT_TOLERANCE) -> Gadget:
    if not isinstance(doc, dict):
        raise MalformedDocument("Gadżet musi być obiektem", field=path)
    if "kind" not in doc:
        raise MalformedDocument("Brak rodzaju gadżetu", field=f"{path}.kind")
    kind = parse_kind(doc["kind"])
    vertices = doc.get("vertices")
    if not isinstance(vertices, list):
        raise MalformedDocument("Brak listy wierzchołków", field=f"{path}.vertices")
    ids = [_vertex_field(host, label, f"{path}.vertices[{i}]") for i, label in enumerate(vertices)]

    edges = _pairs_field(host, doc["edges"], f"{path}.edges") if "edges" in doc else None
    transfers = _pairs_field(host, doc["transfers"], f"{path}.transfers") if "transfers" in doc else None
    duration = doc.get("duration")
    if duration is not None and (isinstance(duration, bool) or not isinstance(duration, (int, float))):
        raise MalformedDocument("Czas musi być liczbą", field=f"{path}.duration")
    return make_gadget(host, kind, ids, edges, duration, transfers, tol)


def schedule_from_dict(host: Graph, doc, tol: float = DEFAULT_TOLERANCE) -> Schedule:
    """Odczytaj Schedule JSON względem grafu-gospodarza"""
    if not isinstance(doc, dict) or not isinstance(doc.get("rounds"), list):
        raise MalformedDocument("Brak listy rund", field="rounds")
    rounds = []
    for j, rnd in enumerate(doc["rounds"]):
        if not isinstance(rnd, dict) or not isinstance(rnd.get("gadgets", []), list):
            raise MalformedDocument("Runda musi zawierać listę gadżetów", field=f"rounds[{j}]")
        rounds.append([
            gadget_from_dict(host, g, f"rounds[{j}].gadgets[{i}]", tol)
            for i, g in enumerate(rnd.get("gadgets", []))
        ])
    return Schedule.from_gadgets(host, rounds)
