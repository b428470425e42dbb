# pst_cli.py - Polecenia pst-network (click): analyze, audit, route, verify, build, certify, xcheck

"""
Każde polecenie wypisuje dokument JSON na stdout (albo do pliku --output)
z kluczem "config". Logi trafiają wyłącznie na stderr lub do pliku.

Kody wyjścia:
    0 sukces, 2 błąd danych, 3 brak rozwiązania, 4 instancja za duża,
    5 weryfikacja nieudana, 6 certyfikacja nieudana
"""

import functools
import json
import logging
from pathlib import Path
from typing import Dict, List, Optional

import click

from ..pst_builder import certify_network, procedure1, procedure2
from ..pst_config import CliConfig, load_config
from ..pst_engineering import correct_durations
from ..pst_errors import (
    EXIT_CERTIFICATION_FAILED,
    EXIT_VERIFICATION_FAILED,
    ConfigError,
    InstanceTooLarge,
    MalformedDocument,
    NoSolution,
    PstError,
)
from ..pst_graph import Graph, catalog_graph, graph_to_dict, metrics
from ..pst_hilbert import xcheck_report
from ..pst_io import dump_json, load_graph, load_nets, load_table
from ..pst_logger import ROOT_LOGGER, reset_logger, setup_logger
from ..pst_routing import (
    EXACT_MAX_NETS,
    EXACT_MAX_VERTICES,
    RoutingProblem,
    RoutingTable,
    SolveMode,
    classical_feasible,
    emit_table,
    nets_from_table,
    solve,
    verify_table,
)
from ..pst_spectral import CATALOG_TIMES, audit_catalog, audit_family, catalog_claims, family_claims, find_pst_pairs
from ..pst_violations import ViolationsCollector
from ..report_exporter import ReportExporter

logger = logging.getLogger(__name__)

TABULAR_SUFFIXES = (".csv", ".xlsx", ".jsonl")


def _handle_errors(func):
    """Zamień wyjątki biblioteki na jednowierszowy komunikat i kod wyjścia"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except PstError as e:
            click.echo(f"{type(e).__name__}: {e}", err=True)
            click.get_current_context().exit(e.exit_code)

    return wrapper


def _config() -> CliConfig:
    return click.get_current_context().find_root().obj


def _emit(doc: Dict, rows: Optional[List[Dict]] = None, text: Optional[str] = None):
    """Wypisz dokument na stdout albo zapisz go do --output (format wg rozszerzenia)"""
    config = _config()
    if config.output is None:
        click.echo(text if text is not None else dump_json(doc), nl=False)
        return

    target = Path(config.output)
    exporter = ReportExporter(export_dir=str(target.parent or "."))
    if target.suffix.lower() in TABULAR_SUFFIXES:
        if rows is None:
            raise ConfigError(f"Polecenie nie ma postaci tabelarycznej: {target.name}")
        exporter.export_rows(rows, target.name)
    elif text is not None and target.suffix.lower() == ".txt":
        exporter.write_text(text, target.name)
    else:
        exporter.export_to_json(doc, target.name)


def _graph_argument(spec: str) -> Graph:
    """Plik Graph JSON albo nazwa grafu katalogowego (C4, Q3, K2,3, ...)"""
    if Path(spec).is_file():
        return load_graph(spec)[0]
    return catalog_graph(spec)


# ============================================================================
# Grupa poleceń
# ============================================================================

@click.group()
@click.option("--tolerance", type=float, default=None, help="Tolerancja werdyktów PST (domyślnie 1e-9)")
@click.option("--t-max", "t_max", type=float, default=None, help="Górna granica wyszukiwania czasu PST")
@click.option("--round-cap", "round_cap", type=int, default=None, help="Maksymalna liczba rund solvera")
@click.option("--mode", type=click.Choice(["EXACT", "GREEDY", "AUTO"], case_sensitive=False), default=None,
              help="Tryb solvera (AUTO: EXACT w granicach instancji)")
@click.option("--correct-durations", "correct", is_flag=True,
              help="Zastąp czasy z tabeli wyznaczonymi czasami PST")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None,
              help="Plik wynikowy (.json, .jsonl, .csv, .xlsx, .txt); domyślnie stdout")
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
                                               case_sensitive=False), default=None)
@click.option("--log-dir", type=click.Path(file_okay=False), default=None, help="Folder na pliki logów")
@click.pass_context
@_handle_errors
def cli(ctx, tolerance, t_max, round_cap, mode, correct, output, log_level, log_dir):
    """Symulacja PST na grafach, budowa sieci p-PST i trasowanie kwantowe"""
    config = load_config(
        tolerance=tolerance,
        t_max=t_max,
        round_cap=round_cap,
        mode=mode,
        correct_durations=correct or None,
        output=output,
        log_level=log_level.upper() if log_level else None,
        log_dir=log_dir,
    )
    reset_logger(ROOT_LOGGER)
    setup_logger(ROOT_LOGGER, config.log_dir, config.log_level)
    ctx.obj = config


# ============================================================================
# analyze / audit
# ============================================================================

@cli.command()
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@_handle_errors
def analyze(graph_file):
    """Metryki grafu, pary PST w czasach katalogowych i audyt deklaracji z pliku"""
    config = _config()
    g, claims = load_graph(graph_file)
    pairs = []
    for t in CATALOG_TIMES:
        for u, v, report in find_pst_pairs(g, t, config.tolerance):
            pairs.append({
                "pair": [g.name_of(u), g.name_of(v)],
                "time": t,
                "magnitude": report.magnitude,
                "phase": report.phase,
            })
    entries = [e.to_dict() for e in audit_catalog(claims, config.t_max, config.tolerance)]
    doc = {
        "config": config.to_dict(),
        "graph": g.name,
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "metrics": metrics(g).to_dict(g),
        "pst_pairs": pairs,
        "claims": entries,
    }
    logger.info(f"✓ analyze {g.name}: {len(pairs)} par PST")
    _emit(doc, rows=pairs)


@cli.command()
@click.option("--families", is_flag=True, help="Dołącz audyt rodzin deklarowanych jako 1-PST")
@_handle_errors
def audit(families):
    """Audyt wbudowanego katalogu deklaracji PST (JSON lines)"""
    config = _config()
    rows = [e.to_dict() for e in audit_catalog(catalog_claims(), config.t_max, config.tolerance)]
    if families:
        rows.extend({"family": audit_family(g, config.t_max, config.tolerance).to_dict()}
                    for g in family_claims())
    lines = [{"config": config.to_dict()}] + rows
    text = "".join(_compact(line) + "\n" for line in lines)
    _emit({"config": config.to_dict(), "entries": rows}, rows=rows, text=text)


def _compact(doc) -> str:
    return json.dumps(doc, ensure_ascii=False, separators=(", ", ": "))


# ============================================================================
# route / verify
# ============================================================================

def _resolve_mode(config: CliConfig, problem: RoutingProblem) -> SolveMode:
    if config.mode is not None:
        return config.mode
    within = problem.host.vertex_count <= EXACT_MAX_VERTICES and len(problem.nets) <= EXACT_MAX_NETS
    return SolveMode.EXACT if within else SolveMode.GREEDY


def _classical(problem: RoutingProblem) -> Optional[Dict]:
    try:
        return classical_feasible(problem).to_dict(problem.host)
    except InstanceTooLarge:
        return None


def _table_rows(table: RoutingTable) -> List[Dict]:
    host = table.host
    return [
        {"net": it.net, **{f"col{j}": cell.render(host) for j, cell in enumerate(it.cells)}}
        for it in table.itineraries
    ]


@cli.command()
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("nets_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json",
              help="json: tabela i raport; text: wiersze tabeli trasowania")
@_handle_errors
def route(graph_file, nets_file, fmt):
    """Znajdź tabelę trasowania dla sieci"""
    config = _config()
    g, _ = load_graph(graph_file)
    problem = RoutingProblem(g, load_nets(g, nets_file))
    mode = _resolve_mode(config, problem)
    table = solve(problem, mode=mode, round_cap=config.round_cap)
    if table is None:
        raise NoSolution(f"Brak tabeli w limicie {config.round_cap} rund ({mode.value}, {len(problem.nets)} sieci)")

    report = verify_table(problem, table, config.tolerance)
    text, table_doc = emit_table(table)
    doc = {
        "config": config.to_dict(),
        "graph": g.name,
        "mode": mode.value,
        "rounds": table.round_count,
        "total_time": table.schedule.total_time,
        "table": table_doc,
        "text": text.splitlines(),
        "verification": report.to_dict(),
        "classical": _classical(problem),
    }
    logger.info(f"✓ route {g.name}: {table.round_count} rund ({mode.value})")
    _emit(doc, rows=_table_rows(table), text=text if fmt == "text" else None)


@cli.command()
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("table_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--nets", "nets_file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Plik sieci (domyślnie końce wierszy tabeli)")
@_handle_errors
def verify(graph_file, table_file, nets_file):
    """Sprawdź tabelę trasowania (warunki 1-3, amplitudy transferów i postojów)"""
    config = _config()
    g, _ = load_graph(graph_file)
    table = load_table(g, table_file, config.tolerance)
    nets = load_nets(g, nets_file) if nets_file else nets_from_table(table)
    problem = RoutingProblem(g, nets)

    literal = verify_table(problem, table, config.tolerance, ViolationsCollector())
    doc = {"config": config.to_dict(), "graph": g.name}
    final = literal
    if config.correct_durations:
        corrected_table = RoutingTable(correct_durations(g, table.schedule, config.t_max, config.tolerance),
                                       table.itineraries)
        final = verify_table(problem, corrected_table, config.tolerance, ViolationsCollector())
        doc["table_durations"] = literal.to_dict()
        doc["corrected_durations"] = final.to_dict()
    else:
        doc["table_durations"] = literal.to_dict()
    doc["verdict"] = "PASS" if final.passed else "FAIL"

    rows = [
        {"net": net, "magnitude": final.net_magnitudes[net], "phase": final.net_phases[net]}
        for net in final.net_magnitudes
    ]
    _emit(doc, rows=rows)
    if not final.passed:
        click.get_current_context().exit(EXIT_VERIFICATION_FAILED)


# ============================================================================
# build / certify / xcheck
# ============================================================================

def _parse_attachment(spec: str):
    graph_spec, sep, label = spec.rpartition(":")
    if not sep or not graph_spec:
        raise MalformedDocument(f"Doklejenie w postaci GRAF:WIERZCHOŁEK, jest {spec!r}")
    gi = _graph_argument(graph_spec)
    return gi, gi.vertex(label)


@cli.command()
@click.option("--procedure", type=click.IntRange(1, 2), required=True)
@click.option("--base", required=True, help="Graf G0: plik Graph JSON lub nazwa katalogowa (K1, C4, ...)")
@click.option("--hub", default=None, help="Procedura 1: wierzchołek sklejenia w G0")
@click.option("--attach", "attachments", multiple=True, help="Procedura 1: GRAF:WIERZCHOŁEK (powtarzalne)")
@click.option("-u", "u_label", default=None, help="Procedura 2: pierwszy wierzchołek")
@click.option("-v", "v_label", default=None, help="Procedura 2: drugi wierzchołek")
@click.option("--count", "-m", type=int, default=None, help="Procedura 2: liczba nowych wierzchołków")
@click.option("--name", default=None, help="Nazwa grafu wynikowego")
@_handle_errors
def build(procedure, base, hub, attachments, u_label, v_label, count, name):
    """Zbuduj graf procedurą 1 (sklejanie) albo 2 (nowe wierzchołki przy u, v)"""
    config = _config()
    g0 = _graph_argument(base)
    violations = ViolationsCollector()
    if procedure == 1:
        if hub is None:
            raise MalformedDocument("Procedura 1 wymaga --hub", field="hub")
        parsed = [_parse_attachment(spec) for spec in attachments]
        result = procedure1(g0, g0.vertex(hub), parsed, violations)
        parameters = {"base": base, "hub": hub, "attachments": list(attachments)}
    else:
        if u_label is None or v_label is None or count is None:
            raise MalformedDocument("Procedura 2 wymaga -u, -v i --count")
        result = procedure2(g0, g0.vertex(u_label), g0.vertex(v_label), count, violations)
        parameters = {"base": base, "u": u_label, "v": v_label, "m": count}

    if name:
        result = Graph(result.labels, result.edges, result.boundary, name)
    doc = graph_to_dict(result)
    doc["provenance"] = {
        "procedure": procedure,
        "parameters": parameters,
        "warnings": [w.to_dict() for w in violations.warnings],
    }
    doc["config"] = config.to_dict()
    _emit(doc)


@cli.command()
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--p", "-p", "p_target", type=click.IntRange(min=0), required=True, help="Docelowe p")
@_handle_errors
def certify(graph_file, p_target):
    """Czy każda para wierzchołków komunikuje się w co najwyżej p transferach"""
    config = _config()
    g, _ = load_graph(graph_file)
    result = certify_network(g, p_target, tol=config.tolerance)
    doc = {"config": config.to_dict(), **result.to_dict()}
    _emit(doc, rows=result.rows())
    if not result.passed:
        click.get_current_context().exit(EXIT_CERTIFICATION_FAILED)


@cli.command()
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--samples", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@_handle_errors
def xcheck(graph_file, samples, seed):
    """Porównaj blok jednego wzbudzenia H_XY z A(G)"""
    config = _config()
    g, _ = load_graph(graph_file)
    report = xcheck_report(g, samples, seed)
    _emit({"config": config.to_dict(), "graph": g.name, **report}, rows=[report])


def main():
    """Punkt wejścia skryptu pst-network"""
    cli(prog_name="pst-network")


if __name__ == "__main__":
    main()
