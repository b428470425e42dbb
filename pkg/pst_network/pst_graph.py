# pst_graph.py - Model grafu z przełączalnymi krawędziami (sprzężenia J ∈ {0, 1})

import logging
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from .pst_errors import (
    DuplicateEdge,
    DuplicateLabel,
    EdgeNotInHost,
    InvalidBoundary,
    InvalidVertex,
    MalformedDocument,
    SelfLoop,
    UnknownEndpoint,
    WeightedCoupling,
)

logger = logging.getLogger(__name__)

Label = Union[int, str]
Edge = Tuple[int, int]


def label_sort_key(label: Label):
    """Klucz sortowania etykiet: liczby (także "12") numerycznie, potem tekst"""
    if isinstance(label, int):
        return (0, label, "")
    text = str(label)
    if text.isdigit():
        return (0, int(text), text)
    return (1, 0, text)


def _normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """
    Nieskierowany graf prosty z etykietami wierzchołków.

    Wierzchołki są identyfikowane wewnętrznie indeksami 0..n-1 w kolejności
    etykiet; krawędź (u, v) oznacza sprzężenie J_{u,v} = 1.
    """
    labels: Tuple[Label, ...]
    edges: Tuple[Edge, ...]
    boundary: Optional[Tuple[int, ...]] = None
    name: str = ""

    def __post_init__(self):
        labels = tuple(self.labels)
        if len(set(labels)) != len(labels) or len({str(l) for l in labels}) != len(labels):
            raise DuplicateLabel(f"Powtórzone etykiety wierzchołków: {labels}")
        n = len(labels)

        normalized = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise SelfLoop(f"Pętla w wierzchołku {labels[u] if 0 <= u < n else u}")
            if not (0 <= u < n and 0 <= v < n):
                raise UnknownEndpoint(f"Krawędź ({u}, {v}) poza zakresem 0..{n - 1}")
            normalized.append(_normalize_edge(u, v))
        edges = tuple(sorted(normalized))
        if len(set(edges)) != len(edges):
            raise DuplicateEdge(f"Powtórzone krawędzie w grafie {self.name!r}")

        boundary = self.boundary
        if boundary is not None:
            boundary = tuple(int(b) for b in boundary)
            if len(set(boundary)) != len(boundary):
                raise InvalidBoundary("Brzeg zawiera powtórzone wierzchołki")
            if any(not 0 <= b < n for b in boundary):
                raise InvalidBoundary("Brzeg zawiera nieznany wierzchołek")

        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "boundary", boundary)

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges)

    @cached_property
    def _ids_by_label(self) -> Dict[Label, int]:
        return {label: i for i, label in enumerate(self.labels)}

    @cached_property
    def _ids_by_name(self) -> Dict[str, int]:
        return {str(label): i for i, label in enumerate(self.labels)}

    def vertex(self, label: Label) -> int:
        """Zamień etykietę (lub jej zapis tekstowy) na identyfikator wierzchołka"""
        if label in self._ids_by_label:
            return self._ids_by_label[label]
        if str(label) in self._ids_by_name:
            return self._ids_by_name[str(label)]
        raise InvalidVertex(f"Nieznany wierzchołek: {label!r}")

    def name_of(self, v: int) -> str:
        self.check_vertex(v)
        return str(self.labels[v])

    def has_vertex(self, v) -> bool:
        return isinstance(v, (int, np.integer)) and 0 <= v < self.vertex_count

    def check_vertex(self, v) -> int:
        if not self.has_vertex(v):
            raise InvalidVertex(f"Wierzchołek {v!r} nie należy do grafu {self.name!r}")
        return int(v)

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_edge(u, v) in self.edge_set

    @cached_property
    def neighbors(self) -> Tuple[Tuple[int, ...], ...]:
        adjacency: List[List[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        return tuple(tuple(sorted(a)) for a in adjacency)

    @cached_property
    def _adjacency(self) -> np.ndarray:
        a = np.zeros((self.vertex_count, self.vertex_count), dtype=np.int64)
        for u, v in self.edges:
            a[u, v] = 1
            a[v, u] = 1
        a.setflags(write=False)
        return a

    def adjacency_matrix(self, dtype=np.int64) -> np.ndarray:
        """Macierz sąsiedztwa A(G) (kopia)"""
        return self._adjacency.astype(dtype, copy=True)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(self.edges)
        return g


@dataclass(frozen=True)
class ComponentMetrics:
    vertices: Tuple[int, ...]
    diameter: int
    radius: int
    center: FrozenSet[int]


@dataclass(frozen=True)
class GraphMetrics:
    """Odległości, ekscentryczności, średnica d, promień r, centrum C(G) i składowe"""
    distances: np.ndarray
    eccentricities: Tuple[int, ...]
    diameter: float
    radius: float
    center: FrozenSet[int]
    components: Tuple[ComponentMetrics, ...]

    @property
    def is_connected(self) -> bool:
        return len(self.components) <= 1

    def distance(self, u: int, v: int) -> float:
        return float(self.distances[u, v])

    def component_of(self, v: int) -> ComponentMetrics:
        for component in self.components:
            if v in component.vertices:
                return component
        raise InvalidVertex(f"Wierzchołek {v} poza grafem")

    def to_dict(self, g: Graph) -> dict:
        def finite(x):
            return None if x == float("inf") else int(x)

        return {
            "diameter": finite(self.diameter),
            "radius": finite(self.radius),
            "center": [g.name_of(v) for v in sorted(self.center)],
            "eccentricities": {g.name_of(v): e for v, e in enumerate(self.eccentricities)},
            "components": [
                {
                    "vertices": [g.name_of(v) for v in c.vertices],
                    "diameter": c.diameter,
                    "radius": c.radius,
                    "center": [g.name_of(v) for v in sorted(c.center)],
                }
                for c in self.components
            ],
        }


@dataclass(frozen=True)
class SubgraphMask:
    """Zbiór włączonych krawędzi grafu-gospodarza"""
    active_edges: FrozenSet[Edge]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, int]]) -> "SubgraphMask":
        return cls(frozenset(_normalize_edge(int(u), int(v)) for u, v in pairs))


# ============================================================================
# Operacje
# ============================================================================

def build_graph(labels: Sequence[Label], edge_list: Iterable[Sequence[Label]],
                boundary: Optional[Sequence[Label]] = None, name: str = "") -> Graph:
    """
    Zbuduj kanoniczny graf z etykiet i listy krawędzi

    Args:
        labels: Unikalne etykiety wierzchołków (napisy lub liczby)
        edge_list: Pary etykiet
        boundary: Opcjonalne wierzchołki brzegu ściany zewnętrznej
        name: Nazwa grafu (do raportów)

    Returns:
        Graph z identyfikatorami nadanymi według posortowanych etykiet
    """
    labels = list(labels)
    if len(set(labels)) != len(labels):
        raise DuplicateLabel(f"Powtórzone etykiety: {labels}")
    ordered = sorted(labels, key=label_sort_key)
    ids = {label: i for i, label in enumerate(ordered)}
    names = {str(label): i for i, label in enumerate(ordered)}

    def lookup(label) -> int:
        if label in ids:
            return ids[label]
        if str(label) in names:
            return names[str(label)]
        raise UnknownEndpoint(f"Nieznany koniec krawędzi: {label!r}")

    edges = []
    seen = set()
    for pair in edge_list:
        a, b = pair
        u, v = lookup(a), lookup(b)
        if u == v:
            raise SelfLoop(f"Pętla w wierzchołku {a!r}")
        key = _normalize_edge(u, v)
        if key in seen:
            raise DuplicateEdge(f"Powtórzona krawędź ({a!r}, {b!r})")
        seen.add(key)
        edges.append(key)

    boundary_ids = None
    if boundary is not None:
        try:
            boundary_ids = tuple(lookup(b) for b in boundary)
        except UnknownEndpoint as e:
            raise InvalidBoundary(str(e)) from e

    return Graph(tuple(ordered), tuple(edges), boundary_ids, name)


@lru_cache(maxsize=256)
def metrics(g: Graph) -> GraphMetrics:
    """Metryki BFS dla wszystkich par; ∞ dla par z różnych składowych"""
    n = g.vertex_count
    nx_graph = g.to_networkx()
    distances = np.full((n, n), np.inf)
    for source, lengths in nx.all_pairs_shortest_path_length(nx_graph):
        for target, length in lengths.items():
            distances[source, target] = length
    distances.setflags(write=False)

    eccentricities = [0] * n
    components = []
    for vertex_set in sorted(nx.connected_components(nx_graph), key=min):
        vertices = tuple(sorted(vertex_set))
        block = distances[np.ix_(vertices, vertices)]
        ecc = block.max(axis=1).astype(int)
        for v, e in zip(vertices, ecc):
            eccentricities[v] = int(e)
        radius = int(ecc.min())
        components.append(ComponentMetrics(
            vertices=vertices,
            diameter=int(ecc.max()),
            radius=radius,
            center=frozenset(v for v, e in zip(vertices, ecc) if e == radius),
        ))

    if len(components) == 1:
        only = components[0]
        diameter, radius, center = only.diameter, only.radius, only.center
    elif not components:
        diameter, radius, center = 0, 0, frozenset()
    else:
        diameter, radius, center = float("inf"), float("inf"), frozenset()

    return GraphMetrics(
        distances=distances,
        eccentricities=tuple(eccentricities),
        diameter=diameter,
        radius=radius,
        center=center,
        components=tuple(components),
    )


def disjoint_union(gs: Sequence[Graph]) -> Graph:
    """Suma rozłączna; A(G) = diag{A(G_1), ..., A(G_m)}"""
    edges: List[Edge] = []
    boundary: List[int] = []
    has_boundary = False
    offset = 0
    for g in gs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        if g.boundary is not None:
            has_boundary = True
            boundary.extend(b + offset for b in g.boundary)
        offset += g.vertex_count
    name = " ⊔ ".join(g.name for g in gs if g.name)
    return Graph(tuple(range(offset)), tuple(edges), tuple(boundary) if has_boundary else None, name)


def add_isolated_vertices(g: Graph, m: int) -> Graph:
    """Dołóż m izolowanych wierzchołków (identyfikatory g zachowane)"""
    return disjoint_union([g] + [single_vertex() for _ in range(m)])


def glue(g1: Graph, v1: int, g2: Graph, v2: int) -> Graph:
    """
    Graf sklejony G1 ⋏ G2: wierzchołek v2 grafu g2 utożsamiony z v1 grafu g1.

    Wierzchołki g1 zachowują identyfikatory; pozostałe wierzchołki g2
    otrzymują kolejno n1, n1 + 1, ... w rosnącej kolejności.
    """
    g1.check_vertex(v1)
    g2.check_vertex(v2)
    n1 = g1.vertex_count
    mapping = {}
    next_id = n1
    for w in range(g2.vertex_count):
        if w == v2:
            mapping[w] = v1
        else:
            mapping[w] = next_id
            next_id += 1

    edges = list(g1.edges) + [(mapping[u], mapping[v]) for u, v in g2.edges]

    boundary = None
    if g1.boundary is not None or g2.boundary is not None:
        merged: List[int] = list(g1.boundary or ())
        for b in g2.boundary or ():
            if mapping[b] not in merged:
                merged.append(mapping[b])
        boundary = tuple(merged)

    name = f"{g1.name} ⋏ {g2.name}" if g1.name and g2.name else ""
    return Graph(tuple(range(next_id)), tuple(edges), boundary, name)


def mask(g: Graph, m: SubgraphMask) -> Graph:
    """Wyłącz wszystkie krawędzie spoza maski"""
    foreign = m.active_edges - g.edge_set
    if foreign:
        raise EdgeNotInHost(f"Krawędzie spoza grafu-gospodarza: {sorted(foreign)}")
    return Graph(g.labels, tuple(sorted(m.active_edges)), g.boundary, g.name)


def planarity_bound_check(g: Graph) -> bool:
    """Warunek konieczny planarności |E| <= 3|V| - 6 (nie jest wystarczający)"""
    if g.vertex_count < 3:
        logger.debug("Graf z mniej niż 3 wierzchołkami jest planarny")
        return True
    return g.edge_count <= 3 * g.vertex_count - 6


# ============================================================================
# Grafy katalogowe
# ============================================================================

def from_networkx(nx_graph: nx.Graph, name: str = "") -> Graph:
    nodes = sorted(nx_graph.nodes())
    index = {node: i for i, node in enumerate(nodes)}
    edges = tuple((index[u], index[v]) for u, v in nx_graph.edges())
    return Graph(tuple(range(len(nodes))), edges, None, name)


def single_vertex() -> Graph:
    return Graph((0,), (), None, "K1")


def path_graph(n: int) -> Graph:
    return from_networkx(nx.path_graph(n), f"P{n}")


def cycle_graph(n: int) -> Graph:
    return from_networkx(nx.cycle_graph(n), f"C{n}")


def complete_graph(n: int) -> Graph:
    return from_networkx(nx.complete_graph(n), f"K{n}")


def complete_bipartite_graph(m: int, n: int) -> Graph:
    return from_networkx(nx.complete_bipartite_graph(m, n), f"K{m},{n}")


def star_graph(n: int) -> Graph:
    """Gwiazda o n wierzchołkach (środek 0)"""
    return from_networkx(nx.star_graph(n - 1), f"S{n}")


def wheel_graph(n: int) -> Graph:
    """Koło o n wierzchołkach (piasta 0)"""
    return from_networkx(nx.wheel_graph(n), f"W{n}")


def friendship_graph(k: int) -> Graph:
    """Graf przyjaźni F_k: k trójkątów ze wspólnym wierzchołkiem 0"""
    edges = []
    for i in range(1, k + 1):
        a, b = 2 * i - 1, 2 * i
        edges.extend([(0, a), (0, b), (a, b)])
    return Graph(tuple(range(2 * k + 1)), tuple(edges), None, f"F{k}")


def petersen_graph() -> Graph:
    return from_networkx(nx.petersen_graph(), "Petersen")


# Q3: kwadrat wewnętrzny 0-1-2-3, zewnętrzny 5-6-7-4
CUBE_EDGES = (
    (0, 1), (1, 2), (2, 3), (3, 0),
    (5, 6), (6, 7), (7, 4), (4, 5),
    (0, 5), (1, 6), (2, 7), (3, 4),
)
CUBE_ANTIPODES = ((0, 7), (1, 4), (2, 5), (3, 6))


def cube_graph() -> Graph:
    return Graph(tuple(range(8)), CUBE_EDGES, tuple(range(4, 8)), "Q3")


_CATALOG_PATTERNS = (
    (re.compile(r"^K1$"), lambda m: single_vertex()),
    (re.compile(r"^Q2$"), lambda m: cycle_graph(4)),
    (re.compile(r"^Q3$"), lambda m: cube_graph()),
    (re.compile(r"^P(\d+)$"), lambda m: path_graph(int(m.group(1)))),
    (re.compile(r"^C(\d+)$"), lambda m: cycle_graph(int(m.group(1)))),
    (re.compile(r"^K(\d+),(\d+)$"), lambda m: complete_bipartite_graph(int(m.group(1)), int(m.group(2)))),
    (re.compile(r"^K(\d+)$"), lambda m: complete_graph(int(m.group(1)))),
    (re.compile(r"^S(\d+)$"), lambda m: star_graph(int(m.group(1)))),
    (re.compile(r"^W(\d+)$"), lambda m: wheel_graph(int(m.group(1)))),
    (re.compile(r"^F(\d+)$"), lambda m: friendship_graph(int(m.group(1)))),
    (re.compile(r"^Petersen$", re.IGNORECASE), lambda m: petersen_graph()),
)


def catalog_graph(name: str) -> Graph:
    """Graf katalogowy po nazwie: P3, C4, K5, K2,3, Q3, S5, W5, F2, Petersen"""
    for pattern, factory in _CATALOG_PATTERNS:
        match = pattern.match(name.strip())
        if match:
            return factory(match)
    raise MalformedDocument(f"Nieznany graf katalogowy: {name!r}")


# ============================================================================
# Graph JSON
# ============================================================================

def graph_to_dict(g: Graph) -> dict:
    doc = {}
    if g.name:
        doc["name"] = g.name
    doc["vertices"] = [str(label) for label in g.labels]
    doc["edges"] = [[g.name_of(u), g.name_of(v)] for u, v in g.edges]
    if g.boundary is not None:
        doc["boundary"] = [g.name_of(b) for b in g.boundary]
    return doc


def graph_from_dict(doc: dict) -> Graph:
    """Odczytaj Graph JSON; krawędzie ważone (waga różna od 1) są odrzucane"""
    if not isinstance(doc, dict):
        raise MalformedDocument("Dokument grafu musi być obiektem JSON")
    vertices = doc.get("vertices")
    if not isinstance(vertices, list):
        raise MalformedDocument("Brak listy wierzchołków", field="vertices")
    edges = doc.get("edges", [])
    if not isinstance(edges, list):
        raise MalformedDocument("Krawędzie muszą być listą", field="edges")

    pairs = []
    for i, edge in enumerate(edges):
        if not isinstance(edge, list) or len(edge) not in (2, 3):
            raise MalformedDocument("Krawędź musi być parą wierzchołków", field=f"edges[{i}]")
        if len(edge) == 3 and edge[2] != 1:
            raise WeightedCoupling(f"Sprzężenie {edge[2]!r} krawędzi {i}: dozwolone tylko J = 1")
        pairs.append((edge[0], edge[1]))

    boundary = doc.get("boundary")
    if boundary is not None and not isinstance(boundary, list):
        raise MalformedDocument("Brzeg musi być listą", field="boundary")

    return build_graph(vertices, pairs, boundary, name=str(doc.get("name", "")))
