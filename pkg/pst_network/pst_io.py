# pst_io.py - Wczytywanie dokumentów JSON (grafy, sieci, harmonogramy, tabele)

import json
import logging
from pathlib import Path
from typing import List, Tuple, Union

from .pst_errors import MalformedDocument
from .pst_engineering import Schedule, schedule_from_dict
from .pst_graph import Graph, graph_from_dict
from .pst_routing import Net, RoutingTable, nets_from_dict, parse_table
from .pst_spectral import DEFAULT_TOLERANCE, CatalogClaim

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def read_json(path: PathLike):
    """Odczytaj JSON (UTF-8); błąd składni wskazuje numer linii"""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise MalformedDocument(f"Nie można odczytać {path}: {e.strerror}") from e
    except UnicodeDecodeError as e:
        raise MalformedDocument(f"Plik {path} nie jest w UTF-8") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedDocument(f"Błędny JSON w {path}: {e.msg}", line=e.lineno) from e


def claims_from_dict(g: Graph, doc: dict) -> List[CatalogClaim]:
    """Deklaracje PST osadzone w dokumencie grafu: [{"pair": [u, v], "time": τ}]"""
    claims = doc.get("claims", [])
    if not isinstance(claims, list):
        raise MalformedDocument("Deklaracje muszą być listą", field="claims")
    result = []
    for i, claim in enumerate(claims):
        path = f"claims[{i}]"
        if not isinstance(claim, dict):
            raise MalformedDocument("Deklaracja musi być obiektem", field=path)
        pair = claim.get("pair")
        if not isinstance(pair, list) or len(pair) != 2:
            raise MalformedDocument("Deklaracja wymaga pary wierzchołków", field=f"{path}.pair")
        time = claim.get("time")
        if isinstance(time, bool) or not isinstance(time, (int, float)) or time <= 0:
            raise MalformedDocument("Czas deklaracji musi być dodatni", field=f"{path}.time")
        try:
            u, v = g.vertex(pair[0]), g.vertex(pair[1])
        except Exception:
            raise MalformedDocument(f"Nieznany wierzchołek w parze {pair}", field=f"{path}.pair") from None
        result.append(CatalogClaim(g.name or "graph", g, u, v, float(time)))
    return result


def load_graph(path: PathLike) -> Tuple[Graph, List[CatalogClaim]]:
    doc = read_json(path)
    g = graph_from_dict(doc)
    if not g.name:
        g = Graph(g.labels, g.edges, g.boundary, Path(path).stem)
    claims = claims_from_dict(g, doc)
    logger.debug(f"Wczytano graf {g.name}: {g.vertex_count} wierzchołków, {g.edge_count} krawędzi")
    return g, claims


def load_nets(host: Graph, path: PathLike) -> Tuple[Net, ...]:
    return nets_from_dict(host, read_json(path))


def load_schedule(host: Graph, path: PathLike, tol: float = DEFAULT_TOLERANCE) -> Schedule:
    return schedule_from_dict(host, read_json(path), tol)


def load_table(host: Graph, path: PathLike, tol: float = DEFAULT_TOLERANCE) -> RoutingTable:
    return parse_table(host, read_json(path), tol)


def dump_json(doc) -> str:
    """Deterministyczny zapis dokumentu (stała kolejność kluczy wg konstrukcji)"""
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
