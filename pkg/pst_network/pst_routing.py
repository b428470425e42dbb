# pst_routing.py - Problem trasowania kwantowego: sieci (nets), tabele trasowania, solver i weryfikator

"""
Tabela trasowania ma dla każdej sieci wiersz komórek: kolumna 0 odpowiada
podgrafowi G_0 bez krawędzi, kolumny 1..k rundom harmonogramu, a ostatnia
kolumna podgrafowi G_p bez krawędzi. Komórka to transfer (u,v) albo
postój {v}. Pusty harmonogram daje jedną kolumnę postoju.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from .pst_errors import (
    InstanceTooLarge,
    InvalidRound,
    InvalidVertex,
    MalformedDocument,
    PstInputError,
    RoutingInputError,
)
from .pst_engineering import (
    DEFAULT_LIBRARY,
    Gadget,
    Schedule,
    enumerate_placements,
    placement_key,
    round_unitary_entry,
    schedule_from_dict,
    schedule_to_dict,
    validate_round,
)
from .pst_graph import Graph, metrics
from .pst_spectral import DEFAULT_TOLERANCE
from .pst_violations import ViolationsCollector

logger = logging.getLogger(__name__)

EXACT_MAX_VERTICES = 20
EXACT_MAX_NETS = 4
CLASSICAL_MAX_NETS = 4
CLASSICAL_MAX_EDGES = 40
DEFAULT_ROUND_CAP = 16


class SolveMode(str, Enum):
    EXACT = "EXACT"
    GREEDY = "GREEDY"


# ============================================================================
# Typy
# ============================================================================

@dataclass(frozen=True)
class Net:
    id: Union[int, str]
    sender: int
    receiver: int

    def __post_init__(self):
        if self.sender == self.receiver:
            raise RoutingInputError(f"Sieć {self.id}: nadawca i odbiorca muszą być różne")


@dataclass(frozen=True)
class RoutingProblem:
    host: Graph
    nets: Tuple[Net, ...]

    def __post_init__(self):
        nets = tuple(self.nets)
        object.__setattr__(self, "nets", nets)
        ids = [net.id for net in nets]
        if len(set(ids)) != len(ids):
            raise RoutingInputError(f"Powtórzone identyfikatory sieci: {ids}")
        terminals: Dict[int, Union[int, str]] = {}
        for net in nets:
            for role, v in (("nadawca", net.sender), ("odbiorca", net.receiver)):
                if not self.host.has_vertex(v):
                    raise RoutingInputError(f"Sieć {net.id}: {role} {v!r} spoza grafu")
                if v in terminals:
                    raise RoutingInputError(
                        f"Sieć {net.id}: {role} {self.host.name_of(v)} jest już końcem sieci {terminals[v]}"
                    )
                terminals[v] = net.id
                if self.host.boundary is not None and v not in self.host.boundary:
                    raise RoutingInputError(
                        f"Sieć {net.id}: {role} {self.host.name_of(v)} nie leży na brzegu ściany zewnętrznej"
                    )

    @property
    def senders(self) -> Tuple[int, ...]:
        return tuple(net.sender for net in self.nets)

    @property
    def receivers(self) -> Tuple[int, ...]:
        return tuple(net.receiver for net in self.nets)


@dataclass(frozen=True)
class Cell:
    """Transfer (source, target) albo postój, gdy source == target"""
    source: int
    target: int

    @property
    def is_idle(self) -> bool:
        return self.source == self.target

    def render(self, host: Graph) -> str:
        if self.is_idle:
            return "{" + host.name_of(self.source) + "}"
        return f"({host.name_of(self.source)},{host.name_of(self.target)})"

    def to_dict(self, host: Graph) -> dict:
        if self.is_idle:
            return {"idle": host.name_of(self.source)}
        return {"transfer": [host.name_of(self.source), host.name_of(self.target)]}


@dataclass(frozen=True)
class Itinerary:
    net: Union[int, str]
    cells: Tuple[Cell, ...]

    @property
    def start(self) -> int:
        return self.cells[0].source

    @property
    def end(self) -> int:
        return self.cells[-1].target


@dataclass(frozen=True)
class RoutingTable:
    schedule: Schedule
    itineraries: Tuple[Itinerary, ...]

    @property
    def host(self) -> Graph:
        return self.schedule.host

    @property
    def round_count(self) -> int:
        return len(self.schedule.rounds)

    @property
    def column_count(self) -> int:
        return self.round_count + 2 if self.round_count else 1

    def itinerary_of(self, net_id) -> Optional[Itinerary]:
        for itinerary in self.itineraries:
            if itinerary.net == net_id:
                return itinerary
        return None

    def without_round(self, index: int) -> "RoutingTable":
        """Tabela z usuniętą rundą `index` i odpowiadającą jej kolumną"""
        schedule = self.schedule.without_round(index)
        itineraries = tuple(
            Itinerary(it.net, tuple(c for col, c in enumerate(it.cells) if col != index + 1))
            for it in self.itineraries
        )
        return RoutingTable(schedule, itineraries)


def build_table(schedule: Schedule, nets: Sequence[Net], positions: Sequence[Sequence[int]]) -> RoutingTable:
    """Tabela z ciągów pozycji tokenów (positions[i][j] = pozycja sieci i przed rundą j)"""
    itineraries = []
    for net, track in zip(nets, positions):
        if len(schedule.rounds) == 0:
            cells = (Cell(track[0], track[0]),)
        else:
            cells = [Cell(track[0], track[0])]
            cells.extend(Cell(track[j], track[j + 1]) for j in range(len(track) - 1))
            cells.append(Cell(track[-1], track[-1]))
            cells = tuple(cells)
        itineraries.append(Itinerary(net.id, cells))
    return RoutingTable(schedule, tuple(itineraries))


# ============================================================================
# Weryfikacja
# ============================================================================

@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    violations: Tuple
    net_magnitudes: Dict
    net_phases: Dict
    total_time: float
    rounds: int

    def to_dict(self) -> dict:
        return {
            "verdict": "PASS" if self.passed else "FAIL",
            "rounds": self.rounds,
            "total_time": self.total_time,
            "nets": [
                {"net": net, "magnitude": self.net_magnitudes[net], "phase": self.net_phases[net]}
                for net in self.net_magnitudes
            ],
            "violations": [v.to_dict() for v in self.violations],
        }


def verify_table(problem: RoutingProblem, table: RoutingTable, tol: float = DEFAULT_TOLERANCE,
                 collector: Optional[ViolationsCollector] = None) -> VerificationReport:
    """
    Sprawdź tabelę trasowania

    Warunek 1: wiersz sieci zaczyna się w nadawcy i kończy w odbiorcy.
    Warunek 2: pozycje tokenów na wejściu rundy są parami różne.
    Warunek 3: pozycje tokenów na wyjściu rundy są parami różne.
    Ponadto każdy transfer musi być transferem gadżetu rundy z |a| >= 1 - tol,
    a każdy postój musi mieć amplitudę powrotu |a| >= 1 - tol.
    """
    collector = collector if collector is not None else ViolationsCollector()
    start = len(collector.history)
    host = problem.host
    schedule = table.schedule
    k = len(schedule.rounds)
    expected_columns = table.column_count

    magnitudes: Dict = {}
    phases: Dict = {}
    rows: Dict = {}

    for net in problem.nets:
        itinerary = table.itinerary_of(net.id)
        if itinerary is None:
            collector.report("structure", f"Brak wiersza dla sieci {net.id}", net=net.id)
            continue
        if len(itinerary.cells) != expected_columns:
            collector.report("structure",
                             f"Sieć {net.id}: {len(itinerary.cells)} kolumn zamiast {expected_columns}",
                             net=net.id)
            continue
        cells = itinerary.cells
        broken = False
        for col in range(len(cells) - 1):
            if cells[col].target != cells[col + 1].source:
                collector.report("structure",
                                 f"Sieć {net.id}: kolumny {col} i {col + 1} nie tworzą ciągu",
                                 net=net.id, round_index=col)
                broken = True
        if not (cells[0].is_idle and cells[-1].is_idle):
            collector.report("structure", f"Sieć {net.id}: pierwsza i ostatnia kolumna muszą być postojem",
                             net=net.id)
            broken = True
        if itinerary.start != net.sender or itinerary.end != net.receiver:
            collector.report("condition-1",
                             f"Sieć {net.id}: wiersz prowadzi z {host.name_of(itinerary.start)} "
                             f"do {host.name_of(itinerary.end)}, oczekiwano "
                             f"{host.name_of(net.sender)} -> {host.name_of(net.receiver)}",
                             net=net.id)
        if not broken:
            rows[net.id] = cells
    for itinerary in table.itineraries:
        if not any(net.id == itinerary.net for net in problem.nets):
            collector.report("structure", f"Wiersz dla nieznanej sieci {itinerary.net}", net=itinerary.net)

    for rnd in schedule.rounds:
        try:
            validate_round(host, rnd)
        except (InvalidRound, PstInputError) as e:
            collector.report("gadget-disjointness", str(e), round_index=rnd.index)

    for net_id, cells in rows.items():
        magnitude, phase = 1.0, 0.0
        for rnd in schedule.rounds:
            cell = cells[rnd.index + 1]
            if not cell.is_idle and not rnd.has_transfer(cell.source, cell.target):
                collector.report("transfer",
                                 f"Sieć {net_id}, runda {rnd.index}: {cell.render(host)} nie jest transferem gadżetu",
                                 net=net_id, round_index=rnd.index)
            report = round_unitary_entry(host, rnd, cell.source, cell.target)
            if report.magnitude < 1 - tol:
                condition = "idle-amplitude" if cell.is_idle else "transfer-amplitude"
                collector.report(condition,
                                 f"Sieć {net_id}, runda {rnd.index}: {cell.render(host)} |a| = {report.magnitude:.6f}",
                                 net=net_id, round_index=rnd.index, magnitude=report.magnitude)
            magnitude *= report.magnitude
            phase = math.remainder(phase + report.phase, 2 * math.pi)
        magnitudes[net_id] = magnitude
        phases[net_id] = math.pi if phase <= -math.pi else phase

    for rnd in schedule.rounds:
        entry = {net_id: cells[rnd.index + 1].source for net_id, cells in rows.items()}
        exit_ = {net_id: cells[rnd.index + 1].target for net_id, cells in rows.items()}
        _report_shared_positions(collector, host, "condition-2", rnd.index, entry)
        _report_shared_positions(collector, host, "condition-3", rnd.index, exit_)

    violations = tuple(collector.history[start:])
    passed = not any(v.severity == "error" for v in violations)
    if passed:
        logger.info(f"✓ Tabela poprawna: {k} rund, czas {schedule.total_time:.9f}")
    return VerificationReport(passed, violations, magnitudes, phases, schedule.total_time, k)


def _report_shared_positions(collector: ViolationsCollector, host: Graph, condition: str,
                             round_index: int, positions: Dict):
    seen: Dict[int, Union[int, str]] = {}
    for net_id, position in positions.items():
        if position in seen:
            collector.report(condition,
                             f"Runda {round_index}: sieci {seen[position]} i {net_id} "
                             f"w wierzchołku {host.name_of(position)}",
                             net=net_id, round_index=round_index)
        seen[position] = net_id


# ============================================================================
# Solver
# ============================================================================

def _transfer_graph(host: Graph, library) -> nx.DiGraph:
    digraph = nx.DiGraph()
    digraph.add_nodes_from(range(host.vertex_count))
    for gadget in enumerate_placements(host, library):
        digraph.add_edges_from(gadget.transfers)
    return digraph


def _gadget_distances(host: Graph, library, receivers: Sequence[int]) -> List[Dict[int, int]]:
    """Dla każdego odbiorcy: minimalna liczba rund jednego tokenu z dowolnego wierzchołka"""
    reverse = _transfer_graph(host, library).reverse(copy=False)
    return [nx.single_source_shortest_path_length(reverse, r) for r in receivers]


def _moves_by_vertex(placements: Sequence[Gadget]) -> Dict[int, List[Tuple[Gadget, int]]]:
    moves: Dict[int, List[Tuple[Gadget, int]]] = {}
    for gadget in placements:
        for s, d in gadget.transfers:
            moves.setdefault(s, []).append((gadget, d))
    return moves


def solve(problem: RoutingProblem, gadget_library: Iterable = DEFAULT_LIBRARY,
          mode: Union[str, SolveMode] = SolveMode.EXACT,
          round_cap: int = DEFAULT_ROUND_CAP) -> Optional[RoutingTable]:
    """
    Znajdź tabelę trasowania

    Args:
        problem: Graf i sieci
        gadget_library: Dozwolone rodzaje gadżetów
        mode: EXACT (minimalna liczba rund) albo GREEDY
        round_cap: Maksymalna liczba rund

    Returns:
        RoutingTable albo None, gdy limit rund nie wystarcza
    """
    mode = SolveMode(str(mode.value if isinstance(mode, SolveMode) else mode).upper())
    library = tuple(gadget_library)
    if mode is SolveMode.EXACT:
        if problem.host.vertex_count > EXACT_MAX_VERTICES or len(problem.nets) > EXACT_MAX_NETS:
            raise InstanceTooLarge(
                f"EXACT: do {EXACT_MAX_VERTICES} wierzchołków i {EXACT_MAX_NETS} sieci, "
                f"jest {problem.host.vertex_count} i {len(problem.nets)}"
            )
        return _solve_exact(problem, library, round_cap)
    return _solve_greedy(problem, library, round_cap)


def _table_from_path(problem: RoutingProblem, configs: List[Tuple[int, ...]],
                     rounds: List[Tuple[Gadget, ...]]) -> RoutingTable:
    schedule = Schedule.from_gadgets(problem.host, rounds)
    tracks = [[config[i] for config in configs] for i in range(len(problem.nets))]
    return build_table(schedule, problem.nets, tracks)


def _solve_exact(problem: RoutingProblem, library, round_cap: int) -> Optional[RoutingTable]:
    host = problem.host
    placements = enumerate_placements(host, library)
    moves = _moves_by_vertex(placements)
    distances = _gadget_distances(host, library, problem.receivers)
    start, goal = problem.senders, problem.receivers

    def bound(config) -> float:
        return max((distances[i].get(p, math.inf) for i, p in enumerate(config)), default=0)

    lower = bound(start)
    if math.isinf(lower) or lower > round_cap:
        logger.warning("EXACT: któryś token nie może dotrzeć do odbiorcy w limicie rund")
        return None

    for limit in range(int(lower), round_cap + 1):
        result = _layered_search(start, goal, limit, moves, distances)
        if result is not None:
            configs, rounds = result
            logger.info(f"✓ EXACT: {len(rounds)} rund")
            return _table_from_path(problem, configs, rounds)
        logger.debug(f"EXACT: brak rozwiązania w {limit} rundach")
    return None


def _layered_search(start, goal, limit, moves, distances):
    parent: Dict[Tuple[int, ...], Optional[Tuple[Tuple[int, ...], Tuple[Gadget, ...]]]] = {start: None}
    layer = [start]
    depth = 0
    while layer:
        if goal in parent:
            break
        if depth == limit:
            return None
        next_layer = []
        for config in layer:
            for target, gadgets in _joint_moves(config, moves, distances, limit - depth - 1):
                if target not in parent:
                    parent[target] = (config, gadgets)
                    next_layer.append(target)
        layer = next_layer
        depth += 1
    if goal not in parent:
        return None

    configs = [goal]
    rounds = []
    while parent[configs[-1]] is not None:
        previous, gadgets = parent[configs[-1]]
        rounds.append(gadgets)
        configs.append(previous)
    return configs[::-1], rounds[::-1]


def _joint_moves(config: Tuple[int, ...], moves, distances, remaining: int):
    """
    Wszystkie ruchy łączne z konfiguracji: każdy token jedzie transferem albo
    stoi na wierzchołku izolowanym; token wewnątrz aktywnego gadżetu musi nim jechać
    """
    q = len(config)
    options = []
    for i, position in enumerate(config):
        choices = []
        if distances[i].get(position, math.inf) <= remaining:
            choices.append(None)
        for gadget, target in moves.get(position, ()):
            if distances[i].get(target, math.inf) <= remaining:
                choices.append((gadget, target))
        if not choices:
            return
        options.append(choices)

    seen_targets = set()
    chosen: List[Gadget] = []
    active: Set[int] = set()
    targets: List[int] = [0] * q

    def extend(i: int):
        if i == q:
            # tokeny stojące nie mogą leżeć w aktywnym gadżecie
            for j in range(q):
                if targets[j] == config[j] and config[j] in active:
                    return
            result = tuple(targets)
            if len(set(result)) == q and result not in seen_targets:
                seen_targets.add(result)
                yield result, tuple(sorted(chosen, key=placement_key))
            return
        for choice in options[i]:
            if choice is None:
                if config[i] in active:
                    continue
                targets[i] = config[i]
                yield from extend(i + 1)
                continue
            gadget, target = choice
            if gadget in chosen:
                targets[i] = target
                yield from extend(i + 1)
            elif not (gadget.vertex_set & active):
                # wcześniejsze tokeny stojące nie mogą trafić do gadżetu
                if any(targets[j] == config[j] and config[j] in gadget.vertex_set for j in range(i)):
                    continue
                # późniejsze tokeny w gadżecie muszą mieć w nim transfer
                if any(config[j] in gadget.vertex_set and gadget.transfer_from(config[j]) is None
                       for j in range(i + 1, q)):
                    continue
                chosen.append(gadget)
                active.update(gadget.vertex_set)
                targets[i] = target
                yield from extend(i + 1)
                chosen.pop()
                active.difference_update(gadget.vertex_set)

    yield from extend(0)


def _solve_greedy(problem: RoutingProblem, library, round_cap: int) -> Optional[RoutingTable]:
    host = problem.host
    placements = enumerate_placements(host, library)
    moves = _moves_by_vertex(placements)
    hops = metrics(host).distances
    receivers = problem.receivers
    positions = list(problem.senders)
    configs = [tuple(positions)]
    rounds: List[Tuple[Gadget, ...]] = []

    def distance(i: int, v: int) -> float:
        return hops[v, receivers[i]]

    while tuple(positions) != receivers:
        if len(rounds) >= round_cap:
            logger.warning(f"GREEDY: limit {round_cap} rund wyczerpany")
            return None
        order = sorted(
            (i for i in range(len(positions)) if positions[i] != receivers[i]),
            key=lambda i: (-distance(i, positions[i]), i),
        )
        active: Set[int] = set()
        chosen: List[Gadget] = []
        riding: Dict[int, int] = {}
        for i in order:
            if i in riding or math.isinf(distance(i, positions[i])):
                continue
            best = None
            for gadget, target in moves.get(positions[i], ()):
                advance = distance(i, positions[i]) - distance(i, target)
                if advance <= 0 or gadget.vertex_set & active:
                    continue
                plan = _greedy_plan(gadget, i, target, positions, riding, receivers, distance)
                if plan is None:
                    continue
                key = (-advance, placement_key(gadget))
                if best is None or key < best[0]:
                    best = (key, gadget, plan)
            if best is not None:
                _, gadget, plan = best
                chosen.append(gadget)
                active.update(gadget.vertex_set)
                riding.update(plan)

        if not riding:
            logger.warning(f"GREEDY: brak postępu w rundzie {len(rounds)}")
            return None
        for i, target in riding.items():
            positions[i] = target
        rounds.append(tuple(sorted(chosen, key=placement_key)))
        configs.append(tuple(positions))

    logger.info(f"✓ GREEDY: {len(rounds)} rund")
    return _table_from_path(problem, configs, rounds)


def _greedy_plan(gadget: Gadget, i: int, target: int, positions: Sequence[int],
                 riding: Dict[int, int], receivers: Sequence[int], distance) -> Optional[Dict[int, int]]:
    """Przejazdy wszystkich tokenów w gadżecie albo None, gdy gadżet koliduje"""
    plan = {i: target}
    for j, position in enumerate(positions):
        if j == i or position not in gadget.vertex_set:
            continue
        if j in riding or position == receivers[j]:
            return None
        transfer = gadget.transfer_from(position)
        if transfer is None or distance(j, transfer[1]) > distance(j, position):
            return None
        plan[j] = transfer[1]
    exits = set(plan.values())
    if len(exits) != len(plan):
        return None
    staying = {positions[j] for j in range(len(positions)) if j not in plan and j not in riding}
    staying |= set(riding.values())
    if exits & staying:
        return None
    return plan


# ============================================================================
# Trasowanie klasyczne
# ============================================================================

@dataclass(frozen=True)
class ClassicalReport:
    feasible: bool
    paths: Tuple[Tuple[int, ...], ...] = ()

    def to_dict(self, host: Graph) -> dict:
        return {
            "feasible": self.feasible,
            "paths": [[host.name_of(v) for v in path] for path in self.paths],
        }


def classical_feasible(problem: RoutingProblem) -> ClassicalReport:
    """Czy istnieją parami krawędziowo rozłączne ścieżki łączące końce wszystkich sieci"""
    host = problem.host
    if len(problem.nets) > CLASSICAL_MAX_NETS or host.edge_count > CLASSICAL_MAX_EDGES:
        raise InstanceTooLarge(
            f"Przeszukiwanie wyczerpujące do {CLASSICAL_MAX_NETS} sieci i {CLASSICAL_MAX_EDGES} krawędzi"
        )
    graph = host.to_networkx()
    used: Set[Tuple[int, int]] = set()
    paths: List[Tuple[int, ...]] = []

    def free_view():
        return nx.restricted_view(graph, [], list(used))

    def search(i: int) -> bool:
        if i == len(problem.nets):
            return True
        net = problem.nets[i]
        for path in nx.all_simple_paths(free_view(), net.sender, net.receiver):
            edges = {tuple(sorted(e)) for e in zip(path, path[1:])}
            used.update(edges)
            paths.append(tuple(path))
            if search(i + 1):
                return True
            paths.pop()
            used.difference_update(edges)
        return False

    feasible = search(0)
    logger.info(f"✓ Trasowanie klasyczne: {'możliwe' if feasible else 'niemożliwe'}")
    return ClassicalReport(feasible, tuple(paths) if feasible else ())


# ============================================================================
# Sieci i tabele: JSON oraz tekst
# ============================================================================

def _vertex(host: Graph, label, path: str) -> int:
    if not isinstance(label, (str, int)) or isinstance(label, bool):
        raise MalformedDocument("Wierzchołek musi być napisem lub liczbą", field=path)
    try:
        return host.vertex(label)
    except InvalidVertex:
        raise MalformedDocument(f"Nieznany wierzchołek {label!r}", field=path) from None


def nets_from_dict(host: Graph, doc) -> Tuple[Net, ...]:
    if not isinstance(doc, dict) or not isinstance(doc.get("nets"), list):
        raise MalformedDocument("Brak listy sieci", field="nets")
    nets = []
    for i, item in enumerate(doc["nets"]):
        path = f"nets[{i}]"
        if not isinstance(item, dict):
            raise MalformedDocument("Sieć musi być obiektem", field=path)
        for key in ("sender", "receiver"):
            if key not in item:
                raise MalformedDocument(f"Brak pola {key}", field=f"{path}.{key}")
        net_id = item.get("id", i + 1)
        if isinstance(net_id, bool) or not isinstance(net_id, (int, str)):
            raise MalformedDocument("Identyfikator sieci musi być liczbą lub napisem", field=f"{path}.id")
        nets.append(Net(net_id,
                        _vertex(host, item["sender"], f"{path}.sender"),
                        _vertex(host, item["receiver"], f"{path}.receiver")))
    return tuple(nets)


def nets_to_dict(host: Graph, nets: Iterable[Net]) -> dict:
    return {
        "nets": [
            {"id": net.id, "sender": host.name_of(net.sender), "receiver": host.name_of(net.receiver)}
            for net in nets
        ]
    }


def nets_from_table(table: RoutingTable) -> Tuple[Net, ...]:
    """Sieci odczytane z końców wierszy tabeli"""
    return tuple(Net(it.net, it.start, it.end) for it in table.itineraries)


def table_to_dict(table: RoutingTable) -> dict:
    host = table.host
    return {
        "schedule": schedule_to_dict(table.schedule),
        "itineraries": [
            {"net": it.net, "cells": [cell.to_dict(host) for cell in it.cells]}
            for it in table.itineraries
        ],
    }


def render_table(table: RoutingTable) -> str:
    host = table.host
    return "".join(" | ".join(cell.render(host) for cell in it.cells) + "\n" for it in table.itineraries)


def emit_table(table: RoutingTable) -> Tuple[str, dict]:
    """Tekst (wiersze jak w tabeli trasowania) i dokument JSON"""
    return render_table(table), table_to_dict(table)


def _cell_from_dict(host: Graph, doc, path: str) -> Cell:
    if isinstance(doc, dict) and len(doc) == 1 and "idle" in doc:
        v = _vertex(host, doc["idle"], f"{path}.idle")
        return Cell(v, v)
    if isinstance(doc, dict) and len(doc) == 1 and "transfer" in doc:
        pair = doc["transfer"]
        if not isinstance(pair, list) or len(pair) != 2:
            raise MalformedDocument("Transfer musi być parą wierzchołków", field=f"{path}.transfer")
        return Cell(_vertex(host, pair[0], f"{path}.transfer[0]"), _vertex(host, pair[1], f"{path}.transfer[1]"))
    raise MalformedDocument("Komórka musi mieć dokładnie jedno pole: idle albo transfer", field=path)


def parse_table(host: Graph, doc, tol: float = DEFAULT_TOLERANCE) -> RoutingTable:
    """Odczytaj RoutingTable JSON"""
    if not isinstance(doc, dict):
        raise MalformedDocument("Tabela musi być obiektem JSON")
    if "schedule" not in doc:
        raise MalformedDocument("Brak harmonogramu", field="schedule")
    schedule = schedule_from_dict(host, doc["schedule"], tol)
    items = doc.get("itineraries")
    if not isinstance(items, list):
        raise MalformedDocument("Brak listy wierszy", field="itineraries")

    itineraries = []
    for i, item in enumerate(items):
        path = f"itineraries[{i}]"
        if not isinstance(item, dict) or "net" not in item:
            raise MalformedDocument("Wiersz musi mieć pole net", field=f"{path}.net")
        cells = item.get("cells")
        if not isinstance(cells, list) or not cells:
            raise MalformedDocument("Wiersz musi mieć niepustą listę komórek", field=f"{path}.cells")
        itineraries.append(Itinerary(
            item["net"],
            tuple(_cell_from_dict(host, c, f"{path}.cells[{j}]") for j, c in enumerate(cells)),
        ))
    return RoutingTable(schedule, tuple(itineraries))
