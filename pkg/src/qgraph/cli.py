"""Command line interface for qgraph."""

import json
import sys
from typing import Any, Callable, Dict, Optional, Sequence

import click
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from qgraph.catalog import catalog_entry, classify, list_catalog, run_search
from qgraph.catalog.campaigns import ClassificationReport, SearchReport
from qgraph.config import Settings, load_settings, set_settings
from qgraph.core.gf2 import GF2Matrix
from qgraph.core.graph import parse_graph_source
from qgraph.core.graphstate import code_distance, is_pure, kl_verify
from qgraph.core.invariants import code_invariants, frequency_series, weight_distribution, weight_sum
from qgraph.exceptions import SearchIncompleteError, ValidationError, VerificationError
from qgraph.search import CodingClique, SearchMode, check_conditions, lc_transport
from qgraph.stabilizer import (convert_stabilizer, parse_check_matrix, stabilizer_weight_distribution,
                               standard_form)
from qgraph.utils import bits_to_labels, dump_json, format_weights, fraction_to_json, load_json_file, setup_logging

console = Console(stderr=True)
out = Console()

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2
EXIT_INCOMPLETE = 3


def print_banner():
    """Print application banner."""
    banner = """
[bold cyan]qgraph[/bold cyan] - Quantum codes from coding cliques on graphs

  • [green]search-clique / search-group[/green] - find ((n,K,d)) and [[n,k,d]] codes on a graph
  • [blue]verify / weights / freq[/blue] - check and fingerprint a code
  • [yellow]standard-form / to-graph[/yellow] - bring stabilizer codes into graph form
    """
    console.print(Panel(banner, title="🔷 qgraph", border_style="cyan"))


def load_code(source: str) -> CodingClique:
    """A code from ``catalog:<name>`` or a code JSON file."""
    if source.startswith("catalog:"):
        return catalog_entry(source[len("catalog:"):]).clique
    return CodingClique.from_json(load_json_file(source))


def emit(data: Any) -> None:
    click.echo(dump_json(data))


def _fail(error: Exception, verbose: bool) -> None:
    """Report ``error`` and exit with its code."""
    if isinstance(error, VerificationError):
        console.print(f"❌ Verification failed: {error}", style="red")
        code = EXIT_VERIFICATION
    elif isinstance(error, ValidationError):
        console.print(f"❌ Invalid input: {error}", style="red")
        code = EXIT_INPUT
    elif isinstance(error, SearchIncompleteError):
        console.print(f"⏱️ {error}", style="yellow")
        code = EXIT_INCOMPLETE
    elif isinstance(error, KeyboardInterrupt):
        console.print("\n⚠️ Operation interrupted by user", style="yellow")
        code = EXIT_VERIFICATION
    else:
        console.print(f"❌ Processing failed: {error}", style="red")
        code = EXIT_VERIFICATION
    if verbose:
        import traceback

        console.print(traceback.format_exc(), style="dim")
    sys.exit(code)


def _run(verbose: bool, action: Callable[[], Optional[int]]) -> None:
    setup_logging(verbose, console)
    try:
        code = action()
    except (Exception, KeyboardInterrupt) as e:
        _fail(e, verbose)
        return
    if code:
        sys.exit(code)


def _settings(ctx: click.Context) -> Settings:
    return ctx.obj["settings"]


# Tables
def _property_table() -> Table:
    table = Table(show_header=False, box=None)
    table.add_column("Property", style="cyan")
    table.add_column("Value", style="white")
    return table


def show_search_results(report: SearchReport):
    """Show search results."""
    status = "✅ Search completed!" if report.complete else "⏱️ Search stopped by the time budget"
    out.print(f"\n{status}", style="bold green" if report.complete else "bold yellow")

    table = _property_table()
    table.add_row("Graph", f"{report.graph.to_graph6()} (n={report.graph.n})")
    table.add_row("Distance", str(report.d))
    table.add_row("Mode", report.mode)
    table.add_row("Codes", str(len(report.codes)))
    for entry in report.log[1:]:
        details = ", ".join(f"{k}={v}" for k, v in entry.items() if k not in ("stage", "seconds"))
        table.add_row(entry["stage"], f"{details} [{entry['seconds']:.3f}s]")
    out.print(table)

    for i, code in enumerate(report.codes[:5]):
        out.print(f"  {i + 1}. K={code.K}: {code}", style="green")
    if len(report.codes) > 5:
        out.print(f"  ... and {len(report.codes) - 5} more codes", style="dim")


def show_verify_results(result: Dict[str, Any]):
    """Show verification results."""
    if result["accepted"]:
        out.print("\n✅ Code verified!", style="bold green")
    else:
        out.print("\n❌ Code rejected", style="bold red")

    table = _property_table()
    table.add_row("Parameters", f"(({result['n']},{result['K']},{result['d']}))")
    table.add_row("Knill-Laflamme", "accepted" if result["kl"]["accepted"] else result["kl"]["reason"])
    table.add_row("Distance", str(result["distance"]))
    table.add_row("Pure", "Yes" if result["pure"] else "No")
    for problem in result["conditions"]:
        table.add_row("Condition", problem)
    out.print(table)


def show_weights_results(result: Dict[str, Any]):
    """Show weight distribution."""
    table = Table(title="Weight distribution")
    table.add_column("d", style="cyan", justify="right")
    table.add_column("A_d", style="white", justify="right")
    for d, value in enumerate(result["weights"]):
        if value != 0:
            table.add_row(str(d), str(value))
    out.print(table)
    out.print(f"📊 {result['text']}, sum = {result['sum']}", style="dim")


def show_classification_results(report: ClassificationReport):
    """Show classification results."""
    out.print(f"\n🎉 [[{report.n},{report.k},{report.d}]] classification completed!", style="bold green")

    summary = _property_table()
    summary.add_row("LC classes searched", str(report.graphs))
    summary.add_row("Fingerprint classes", str(len(report.classes)))
    summary.add_row("Weight distributions", str(len(report.weight_distributions)))
    out.print(summary)

    table = Table()
    table.add_column("#", style="cyan", justify="right")
    table.add_column("Weights", style="white")
    table.add_column("Codes", justify="right")
    table.add_column("Graph6", style="green")
    table.add_column("Generators", style="dim")
    for i, code_class in enumerate(report.classes):
        data = code_class.to_json()
        table.add_row(
            str(i + 1),
            data["weights_text"],
            str(data["multiplicity"]),
            data["graph6"] + ("" if data["connected"] else " (disconnected)"),
            " ".join("{" + ",".join(map(str, g)) + "}" for g in data["generators"]),
        )
    out.print(table)


# Command group
@click.group()
@click.option("--config", "config_path", type=click.Path(), help="Config file (default: ~/.qgraph_config.json)")
@click.option("--threads", type=int, envvar="QGRAPH_THREADS", help="Worker processes (default: CPU count)")
@click.option("--time-budget", type=float, envvar="QGRAPH_TIME_BUDGET_SECS", help="Search time budget in seconds")
@click.pass_context
def cli(ctx, config_path, threads, time_budget):
    """qgraph - Quantum codes from coding cliques on graphs"""
    ctx.ensure_object(dict)
    try:
        settings = load_settings(config_path).with_overrides(threads=threads, time_budget_secs=time_budget)
    except ValidationError as e:
        console.print(f"❌ Invalid configuration: {e}", style="red")
        sys.exit(EXIT_INPUT)
    set_settings(settings)
    ctx.obj["settings"] = settings


def _search(ctx, graph: str, d: int, table: bool, verbose: bool, mode: Optional[SearchMode], k: Optional[int]):
    settings = _settings(ctx)

    def action() -> int:
        g = parse_graph_source(graph)
        if verbose:
            console.print(f"🔍 Searching on {g.to_graph6()} (n={g.n}) with d={d}", style="dim")
        report = run_search(g, d, mode=mode, group_k=k, time_budget=settings.time_budget_secs,
                            workers=settings.threads)
        if table:
            show_search_results(report)
        else:
            emit(report.to_json())
        if not report.complete:
            raise SearchIncompleteError("Time budget exhausted, results are incomplete", report)
        return EXIT_OK

    _run(verbose, action)


@cli.command("search-clique")
@click.option("--graph", "-g", "graph", required=True, help="g6:<graph6>, <family>:<n> or a JSON file")
@click.option("-d", "--distance", "d", type=int, required=True, help="Target distance")
@click.option("--mode", "-m", default="max", help="max, all_max, at_least:K or exhaustive:K")
@click.option("--table", is_flag=True, help="Show a table instead of JSON")
@click.option("--verbose", "-v", is_flag=True, help="Verbose output")
@click.pass_context
def search_clique(ctx, graph, d, mode, table, verbose):
    """Search coding cliques ((n,K,d)) on a graph."""
    try:
        search_mode = SearchMode.parse(mode)
    except ValidationError as e:
        _fail(e, verbose)
    _search(ctx, graph, d, table, verbose, search_mode, None)


@cli.command("search-group")
@click.option("--graph", "-g", "graph", required=True, help="g6:<graph6>, <family>:<n> or a JSON file")
@click.option("-d", "--distance", "d", type=int, required=True, help="Target distance")
@click.option("-k", "k", type=int, required=True, help="Number of logical qubits")
@click.option("--table", is_flag=True, help="Show a table instead of JSON")
@click.option("--verbose", "-v", is_flag=True, help="Verbose output")
@click.pass_context
def search_group(ctx, graph, d, k, table, verbose):
    """Search coding groups [[n,k,d]] on a graph."""
    _search(ctx, graph, d, table, verbose, None, k)


@cli.command("verify")
@click.argument("code_source", required=True)
@click.option("-d", "--distance", "d", type=int, help="Distance to check (default: the code's own)")
@click.option("--table", is_flag=True, help="Show a table instead of JSON")
@click.option("--verbose", "-v", is_flag=True, help="Verbose output")
def verify(code_source, d, table, verbose):
    """Verify a code: Conditions 0-2 and Knill-Laflamme.

    CODE_SOURCE: code JSON file or catalog:<name>
    """

    def action() -> int:
        code = load_code(code_source)
        if d is not None and d < 1:
            raise ValidationError(f"Distance must be at least 1, got {d}", "range", d)
        distance = d if d is not None else code.d
        checked = CodingClique(code.graph, distance, code.members) if d is not None else code
        problems = check_conditions(checked)
        verdict = kl_verify(code.graph, code.members, distance)
        result = {
            "n": code.n,
            "K": code.K,
            "d": distance,
            "accepted": verdict.accepted and not problems,
            "kl": verdict.to_json(),
            "conditions": problems,
            "pure": is_pure(code.graph, code.members, distance),
            "distance": code_distance(code.graph, code.members),
        }
        if table:
            show_verify_results(result)
        else:
            emit(result)
        return EXIT_OK if result["accepted"] else EXIT_VERIFICATION

    _run(verbose, action)


@cli.command("weights")
@click.argument("source", required=True)
@click.option("--stabilizer", "-s", is_flag=True, help="SOURCE is a stabilizer file")
@click.option("--table", is_flag=True, help="Show a table instead of JSON")
@click.option("--verbose", "-v", is_flag=True, help="Verbose output")
def weights(source, stabilizer, table, verbose):
    """Weight distribution A_0..A_n of a code.

    SOURCE: code JSON file, catalog:<name>, or with --stabilizer a stabilizer file
    """

    def action() -> int:
        extra: Dict[str, Any] = {}
        if stabilizer:
            cm = parse_check_matrix(source)
            code = convert_stabilizer(cm).clique
            extra["stabilizer_weights"] = list(stabilizer_weight_distribution(cm))
        else:
            code = load_code(source)
        values = weight_distribution(code.graph, code.members)
        result = {
            "n": code.n,
            "K": code.K,
            "weights": [fraction_to_json(a) for a in values],
            "text": format_weights(values),
            "sum": fraction_to_json(weight_sum(values)),
            **extra,
        }
        if table:
            show_weights_results(result)
        else:
            emit(result)
        return EXIT_OK

    _run(verbose, action)


@cli.command("freq")
@click.argument("code_source", required=True)
@click.option("-d", "--weight", "d", type=int, help="Only the series for this weight")
@click.option("--verbose", "-v", is_flag=True, help="Verbose output")
def freq(code_source, d, verbose):
    """Frequency series of a code (permutation-invariant fingerprint).

    CODE_SOURCE: code JSON file or catalog:<name>
    """

    def action() -> int:
        code = load_code(code_source)
        data = code_invariants(code.graph, code.members).to_json()
        if d is not None:
            if not 0 <= d <= code.n:
                raise ValidationError(f"Weight {d} outside 0..{code.n}", "range", d)
            series = frequency_series(code.graph, code.members, d)
            data["frequency"] = {str(d): [[fraction_to_json(v) for v in row] for row in series]}
        emit(data)
        return EXIT_OK

    _run(verbose, action)


@cli.command("lc")
@click.argument("code_source", required=True)
@click.option("--vertex", "vertices", type=int, multiple=True, required=True,
              help="Vertex (1-indexed) to complement at; repeat for a sequence")
@click.option("--verbose", "-v", is_flag=True, help="Verbose output")
def lc(code_source, vertices, verbose):
    """Transport a code along local complementations.

    CODE_SOURCE: code JSON file or catalog:<name>
    """

    def action() -> int:
        code = load_code(code_source)
        for label in vertices:
            code = lc_transport(code, label - 1)
        problems = check_conditions(code)
        if problems:
            raise VerificationError(f"Transported code is invalid: {problems[0]}", problems)
        emit(code.canonical().to_json())
        return EXIT_OK

    _run(verbose, action)


@cli.command("standard-form")
@click.argument("stabilizer_source", required=True)
@click.option("--verbose", "-v", is_flag=True, help="Verbose output")
def standard_form_command(stabilizer_source, verbose):
    """Standard form of a stabilizer check matrix.

    STABILIZER_SOURCE: text file of Pauli strings or stabilizer JSON
    """

    def action() -> int:
        emit(standard_form(parse_check_matrix(stabilizer_source)).to_json())
        return EXIT_OK

    _run(verbose, action)


def _parse_f_matrix(text: Optional[str]) -> Optional[GF2Matrix]:
    if text is None:
        return None
    try:
        entries = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"--f-matrix is not JSON: {e}", "input", text)
    if not isinstance(entries, list):
        raise ValidationError("--f-matrix must be a list of rows", "input", text)
    return GF2Matrix.from_lists(entries, len(entries))


@cli.command("to-graph")
@click.argument("stabilizer_source", required=True)
@click.option("--f-matrix", help="Symmetric k x k matrix F as JSON, e.g. [[0]] (default: zero)")
@click.option("-d", "--distance", "d", type=int, help="Distance to record (default: computed)")
@click.option("--table", is_flag=True, help="Show a table instead of JSON")
@click.option("--verbose", "-v", is_flag=True, help="Verbose output")
def to_graph(stabilizer_source, f_matrix, d, table, verbose):
    """Convert a stabilizer code to a graph and coding group.

    STABILIZER_SOURCE: text file of Pauli strings or stabilizer JSON
    """

    def action() -> int:
        cm = parse_check_matrix(stabilizer_source)
        conversion = convert_stabilizer(cm, _parse_f_matrix(f_matrix), d)
        if table:
            t = _property_table()
            t.add_row("Graph", f"{conversion.graph.to_graph6()} ({conversion.graph.edge_count} edges)")
            t.add_row("Code", f"[[{cm.n},{cm.k},{conversion.clique.d}]]")
            t.add_row("Group", str(conversion.clique))
            t.add_row("S-dagger on", str(bits_to_labels(conversion.s_dagger_qubits)))
            t.add_row("Pauli frame", str(bits_to_labels(conversion.pauli_frame)))
            out.print(t)
        else:
            emit(conversion.to_json())
        return EXIT_OK

    _run(verbose, action)


@cli.command("catalog")
@click.argument("name", required=False)
@click.option("--table", is_flag=True, help="Show a table instead of JSON")
@click.option("--verbose", "-v", is_flag=True, help="Verbose output")
def catalog(name, table, verbose):
    """List the catalog, or build and verify one entry.

    NAME: entry such as l5_662 or star_family(2)
    """

    def action() -> int:
        if name is None:
            entries = list_catalog()
            if table:
                t = Table(title="📋 Catalog")
                t.add_column("Name", style="cyan")
                t.add_column("Code", style="white")
                for entry, description in entries:
                    t.add_row(entry, description)
                out.print(t)
            else:
                emit([{"name": entry, "description": description} for entry, description in entries])
            return EXIT_OK
        descriptor = catalog_entry(name)
        if table:
            t = _property_table()
            t.add_row("Name", descriptor.name)
            t.add_row("Code", f"(({descriptor.n},{descriptor.K},{descriptor.d}))")
            t.add_row("Kind", descriptor.kind)
            t.add_row("Graph6", descriptor.graph.to_graph6())
            t.add_row("Provenance", descriptor.provenance)
            out.print(t)
        else:
            emit(descriptor.to_json())
        return EXIT_OK

    _run(verbose, action)


@cli.command("classify")
@click.option("-n", "n", type=int, required=True, help="Number of qubits (at most 8)")
@click.option("-k", "k", type=int, required=True, help="Number of logical qubits")
@click.option("-d", "--distance", "d", type=int, required=True, help="Distance")
@click.option("--include-trivial", is_flag=True, help="Keep graphs with isolated vertices")
@click.option("--witness", is_flag=True, help="Confirm equal fingerprints with explicit LC witnesses")
@click.option("--table", is_flag=True, help="Show a table instead of JSON")
@click.option("--verbose", "-v", is_flag=True, help="Verbose output")
@click.pass_context
def classify_command(ctx, n, k, d, include_trivial, witness, table, verbose):
    """Classify [[n,k,d]] stabilizer codes from coding groups."""
    settings = _settings(ctx)

    def action() -> int:
        report = classify(n, k, d, workers=settings.threads, include_trivial=include_trivial,
                          witness=witness, show_progress=table or verbose)
        if table:
            show_classification_results(report)
        else:
            emit(report.to_json())
        return EXIT_OK

    _run(verbose, action)


@cli.command("info")
def info():
    """Show tool information and usage examples."""
    print_banner()

    console.print("\n🚀 Usage examples:", style="bold")
    examples: Sequence[str] = [
        "qgraph search-clique -g loop:5 -d 2",
        "qgraph search-group -g loop:5 -d 3 -k 1 --table",
        "qgraph verify catalog:l5_662",
        "qgraph weights --stabilizer steane.txt",
        "qgraph classify -n 7 -k 1 -d 3 --table",
    ]
    for example in examples:
        console.print(f"  {example}", style="dim")


if __name__ == "__main__":
    cli()
