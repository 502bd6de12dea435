#!/usr/bin/env python3

import json
import logging
from contextlib import contextmanager
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional

import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

# Import centralized configuration
from .config import get_config

from .cover import cover_to_json, quotient, star_cover
from .errors import StarCoverError
from .graph import Graph, from_json, isomorphic, to_dot, to_json
from .honeycomb import build_quotient, label_vertices_s4, parse_lattice
from .perm import generate_group, parse_permutation
from .spectra import charpoly as compute_charpoly
from .spectra import integral_spectrum
from .suites import run_suite
from .syt import multiplicity, multiplicity_table
from .utils.animation import working_context
from .utils.formatting import format_expanded, format_factored, format_spectrum, format_zeta
from .zeta import cycle_count_series, ihara_zeta_reciprocal

# Initialize Typer app
app = typer.Typer(no_args_is_help=True, help="Star-graph Galois covers, spectra and zeta functions.")
console = Console()
err_console = Console(stderr=True)

state: Dict[str, Any] = {"quiet": False, "timestamps": None}

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class OutputFormat(str, Enum):
    text = "text"
    json = "json"


class GraphFormat(str, Enum):
    text = "text"
    json = "json"
    dot = "dot"


class StarFormat(str, Enum):
    text = "text"
    json = "json"
    dot = "dot"
    cover = "cover"


def _setup_logging(verbose: bool):
    level = "DEBUG" if verbose else get_config().log_level
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


@app.callback()
def main_callback(
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Suppress progress output"),
    no_timestamp: bool = typer.Option(False, "--no-timestamp", help="Omit the timestamp from JSON reports"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
):
    """Global options."""
    state["quiet"] = quiet
    state["timestamps"] = False if no_timestamp else None
    _setup_logging(verbose)


@contextmanager
def _guarded():
    """Map library errors to exit code 2."""
    try:
        yield
    except StarCoverError as e:
        err_console.print(f"❌ [red]{e}[/red]")
        raise typer.Exit(EXIT_USAGE)


def _working(message: str, fmt: str):
    return working_context(f"( ● ) {message}", enabled=not state["quiet"] and fmt == "text")


def _timestamps_enabled() -> bool:
    if state["timestamps"] is False:
        return False
    return get_config().timestamps


def _write(text: str, out: Optional[Path]):
    if out is None:
        typer.echo(text, nl=not text.endswith("\n"))
    else:
        out.write_text(text)
        if not state["quiet"]:
            err_console.print(f"✅ [green]Wrote {out}[/green]")


def _emit_json(report: Dict[str, Any], out: Optional[Path]):
    if _timestamps_enabled():
        report = dict(report, timestamp=datetime.now().isoformat())
    _write(json.dumps(report, indent=2, sort_keys=True) + "\n", out)


def _read_graph(path: Path) -> Graph:
    return from_json(path.read_text())


def _graph_report(g: Graph) -> Dict[str, Any]:
    return {"vertices": g.num_vertices, "edges": g.num_edges, "degrees": sorted(set(g.degrees()))}


@app.command()
def star(
    n: int = typer.Option(..., "--n", help="Build X_n, the S_n-cover of K_{n+1}"),
    fmt: StarFormat = typer.Option(StarFormat.text, "--format", help="text, json, dot or cover"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the graph here"),
):
    """Build the star graph X_n as a Galois cover of the complete graph."""
    with _guarded():
        with _working(f"Building X_{n}", fmt.value):
            gc = star_cover(n)
        g = gc.total
        if fmt == StarFormat.json:
            _write(to_json(g), out)
        elif fmt == StarFormat.dot:
            _write(to_dot(g), out)
        elif fmt == StarFormat.cover:
            _write(cover_to_json(gc) + "\n", out)
        else:
            console.print(f"✅ [green]X_{n}[/green]: {g.num_vertices} vertices, {g.num_edges} edges, "
                          f"covering K_{n + 1} with group of order {gc.group.order}")
            if out is not None:
                _write(to_json(g), out)


@app.command("quotient")
def quotient_cmd(
    n: int = typer.Option(..., "--n", help="Star graph X_n to divide"),
    subgroup: str = typer.Option(..., "--subgroup", help='Generators in cycle notation, e.g. "(1,2);(1,2,3)"'),
    fmt: GraphFormat = typer.Option(GraphFormat.text, "--format", help="text, json or dot"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the quotient graph here"),
):
    """Quotient X_n by a subgroup of the stabilizer of n+1."""
    with _guarded():
        gens = [parse_permutation(s, n + 1) for s in subgroup.split(";") if s.strip()]
        if not gens:
            raise StarCoverError("--subgroup needs at least one generator")
        with _working("Building quotient", fmt.value):
            gc = star_cover(n)
            h = generate_group(gens)
            result = quotient(gc, h)
            p = compute_charpoly(result.graph)
        g = result.graph
        if fmt == GraphFormat.json:
            _write(to_json(g), out)
        elif fmt == GraphFormat.dot:
            _write(to_dot(g), out)
        else:
            console.print(f"✅ [green]X_{n}/H[/green] (|H| = {h.order}): {g.num_vertices} vertices, {g.num_edges} edges")
            console.print(f"   characteristic polynomial: {format_factored(p)}")
            if out is not None:
                _write(to_json(g), out)


@app.command()
def verify(
    suite: str = typer.Option(..., "--suite", help="s3, s4v, zeta3, honeycomb, fourier, syt or all"),
    fmt: OutputFormat = typer.Option(OutputFormat.text, "--format", help="text or json"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the JSON report here"),
):
    """Run a verification suite; exit 1 if any identity fails."""
    with _guarded():
        with _working(f"Running {suite}", fmt.value):
            reports = run_suite(suite)
    passed = all(r.passed for r in reports)
    if fmt == OutputFormat.json or out is not None:
        _emit_json({"passed": passed, "suites": [r.to_dict() for r in reports]}, out)
    if fmt == OutputFormat.text:
        for report in reports:
            console.print(f"[bold]{report.suite}[/bold]")
            for check in report.checks:
                mark = "✅ [green]PASS[/green]" if check.passed else "❌ [red]FAIL[/red]"
                console.print(f"  {mark} {check.name}")
                for key in ("polynomial", "lhs", "rhs", "derived", "S", "spectrum", "Lsgn", "Lstd"):
                    if key in check.details and isinstance(check.details[key], str):
                        console.print(f"      {key}: {check.details[key]}")
    if not passed:
        raise typer.Exit(EXIT_FAILED)


@app.command()
def charpoly(
    graph: Path = typer.Option(..., "--in", exists=True, dir_okay=False, help="Graph JSON file"),
    fmt: OutputFormat = typer.Option(OutputFormat.text, "--format", help="text or json"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the JSON report here"),
):
    """Exact characteristic polynomial of a graph."""
    with _guarded():
        g = _read_graph(graph)
        with _working("Computing determinants", fmt.value):
            p = compute_charpoly(g)
    if fmt == OutputFormat.json:
        _emit_json(
            {
                "coefficients": list(p.coefficients),
                "expanded": format_expanded(p),
                "factored": format_factored(p),
                **_graph_report(g),
            },
            out,
        )
    else:
        console.print(format_expanded(p))
        console.print(f"= {format_factored(p)}")


@app.command()
def spectrum(
    graph: Path = typer.Option(..., "--in", exists=True, dir_okay=False, help="Graph JSON file"),
    fmt: OutputFormat = typer.Option(OutputFormat.text, "--format", help="text or json"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the JSON report here"),
):
    """Integer eigenvalues with multiplicities plus the non-integral residual."""
    with _guarded():
        g = _read_graph(graph)
        with _working("Computing spectrum", fmt.value):
            s = integral_spectrum(compute_charpoly(g))
    if fmt == OutputFormat.json:
        _emit_json(
            {
                "eigenvalues": {str(k): m for k, m in s.entries.items()},
                "residual": list(s.residual.coefficients),
                "integral": s.is_integral(),
            },
            out,
        )
    else:
        console.print(format_spectrum(s))
        if s.is_integral():
            console.print("✅ [green]integral graph[/green]")


@app.command()
def zeta(
    graph: Path = typer.Option(..., "--in", exists=True, dir_okay=False, help="Graph JSON file"),
    series: int = typer.Option(0, "--series", help="Also print N_1..N_m, the closed non-backtracking walk counts"),
    fmt: OutputFormat = typer.Option(OutputFormat.text, "--format", help="text or json"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the JSON report here"),
):
    """Reciprocal Ihara zeta function 1/zeta(u) via the Bass determinant."""
    with _guarded():
        g = _read_graph(graph)
        with _working("Computing Bass determinant", fmt.value):
            z = ihara_zeta_reciprocal(g)
        counts = cycle_count_series(z, series) if series > 0 else []
    if fmt == OutputFormat.json:
        report = {"coefficients": list(z.poly.coefficients), "factored": format_zeta(z.poly), "r_minus_1": z.r_minus_1}
        if counts:
            report["cycle_counts"] = counts
        _emit_json(report, out)
    else:
        console.print(f"1/zeta(u) = {format_zeta(z.poly)}")
        if counts:
            console.print(f"N_1..N_{series} = {counts}")


@app.command()
def mult(
    n: int = typer.Option(..., "--n", help="Star graph X_n"),
    k: Optional[int] = typer.Option(None, "--k", help="Single eigenvalue to count"),
    table: bool = typer.Option(False, "--table", help="Print the I_lambda(k) and f^lambda table"),
    fmt: OutputFormat = typer.Option(OutputFormat.text, "--format", help="text or json"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the JSON report here"),
):
    """Eigenvalue multiplicities of X_n from standard Young tableaux."""
    with _guarded():
        with _working("Enumerating tableaux", fmt.value):
            rows = multiplicity_table(n)
            values = {kk: multiplicity(n, kk) for kk in range(-n, n + 1)} if k is None else {k: multiplicity(n, k)}
    if fmt == OutputFormat.json:
        report: Dict[str, Any] = {"n": n, "multiplicities": {str(kk): v for kk, v in values.items()}}
        if table:
            report["table"] = [r.to_dict() for r in rows]
        _emit_json(report, out)
        return
    if table:
        t = Table(title=f"I_lambda(k) for n = {n}")
        t.add_column("lambda")
        for kk in range(-n, n + 1):
            t.add_column(str(kk), justify="right")
        t.add_column("f", justify="right")
        for r in rows:
            t.add_row(str(r.shape), *[str(r.counts[kk]) for kk in range(-n, n + 1)], str(r.f))
        console.print(t)
    for kk, v in values.items():
        console.print(f"mult({kk}) = {v}")


@app.command()
def honeycomb(
    lattice: str = typer.Option(..., "--lattice", help='"a,b;c,d" or Lambda_Q, Lambda_X3, G_K4, G_T'),
    half_turn: bool = typer.Option(False, "--half-turn", help="Also divide by the half-turn"),
    label: bool = typer.Option(False, "--label", help="Label vertices by permutations of {1,2,3,4}"),
    fmt: GraphFormat = typer.Option(GraphFormat.text, "--format", help="text, json or dot"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the graph here"),
):
    """Quotient of the honeycomb lattice by a sublattice."""
    with _guarded():
        spec = parse_lattice(lattice, half_turn)
        hq = build_quotient(spec)
        g = hq.graph
        labels = label_vertices_s4(spec) if label else None
    if labels is not None:
        g = Graph(tuple(labels[v].one_line() for v in hq.vertices), g.darts)
    if fmt == GraphFormat.json:
        _write(to_json(g), out)
    elif fmt == GraphFormat.dot:
        _write(to_dot(g), out)
    else:
        console.print(f"✅ [green]honeycomb quotient[/green]: {g.num_vertices} vertices, {g.num_edges} edges")
        if labels is not None:
            for v in hq.vertices:
                console.print(f"   {v.color}({v.a},{v.b}) -> {labels[v].one_line()}")
        if out is not None:
            _write(to_json(g), out)


@app.command()
def iso(
    first: Path = typer.Argument(..., exists=True, dir_okay=False, help="First graph JSON"),
    second: Path = typer.Argument(..., exists=True, dir_okay=False, help="Second graph JSON"),
    fmt: OutputFormat = typer.Option(OutputFormat.text, "--format", help="text or json"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the JSON report here"),
):
    """Search for an isomorphism between two graphs; exit 1 if none exists."""
    with _guarded():
        g1, g2 = _read_graph(first), _read_graph(second)
        mapping = isomorphic(g1, g2)
    if fmt == OutputFormat.json:
        _emit_json({"isomorphic": mapping is not None, "bijection": mapping}, out)
    elif mapping is None:
        console.print("❌ [red]not isomorphic[/red]")
    else:
        console.print("✅ [green]isomorphic[/green]")
        for v, w in enumerate(mapping):
            console.print(f"   {g1.labels[v]} -> {g2.labels[w]}")
    if mapping is None:
        raise typer.Exit(EXIT_FAILED)


@app.command()
def init_config():
    """Create ~/.starcover/.env with the default limits."""
    config = get_config()
    env_file = config.home_dir / ".env"
    existed = env_file.exists()
    config.create_default_env_file()
    if existed:
        console.print(f"✅ [green]Configuration already exists at {env_file}[/green]")
    else:
        console.print(f"✅ [green]Created {env_file}[/green]")


def main():
    """Main entry point for the CLI application."""
    app()


if __name__ == "__main__":
    main()
