import argparse
import itertools
import logging
import os
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import pandas as pd
from rich.console import Console
from rich.logging import RichHandler
from rich.traceback import install

from src.cli.progress import STAGE_DESCRIPTIONS, create_progress_bar
from src.cli.theme import generate_error_panel
from src.config.loader import load_config
from src.export.csv_exporter import export_to_csv, render_csv
from src.export.json_exporter import export_to_json, render_json, table_columns, table_records
from src.walkzeta.errors import MatrixFormatError, WalkZetaError
from src.walkzeta.linalg.evolution import EvolutionParams
from src.walkzeta.reporting.generator import generate_sweep_table, generate_verify_summary, generate_verify_table
from src.walkzeta.services.sweep import (
    GraphSource,
    Model,
    SweepConfig,
    SweepRunner,
    WalkKind,
    parse_float_list,
    parse_r_list,
    parse_u_list,
    parse_xi_list,
)
from src.walkzeta.services.verifier import LEVELS, Verifier
from src.walkzeta.spectra.graphs import TorusSpec

logger = logging.getLogger("walkzeta")

# Tables go to stdout; everything else goes to stderr.
console = Console(stderr=True)
install(console=console, show_locals=False)

EXIT_OK = 0
EXIT_ROW_ERROR = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Bad command-line input, reported with exit code 2."""


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level="DEBUG" if verbose else "WARNING",
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, rich_tracebacks=True, show_path=False)],
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Path to custom configuration file")
    common.add_argument("--verbose", action="store_true", help="Enable debug logging")
    common.add_argument("--no-color", action="store_true", help="Disable colored output")
    common.add_argument("--format", choices=["csv", "json"], help="Output format (default from config: csv)")
    common.add_argument("--out", help="Output file (default: standard output)")

    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("--torus", help="Torus T^d_N given as d,N")
    graph.add_argument("--matrix", help="Transition matrix CSV file")

    sweep = argparse.ArgumentParser(add_help=False)
    sweep.add_argument("--model", choices=[m.value for m in Model], default=Model.CTM.value,
                       help="ctm (continuous time) or dtm (discrete time)")
    sweep.add_argument("--xi", default="0", help="Comma-separated angles, or classical/quantum")
    sweep.add_argument("--t", default="1", help="Comma-separated times")
    sweep.add_argument("--grid", type=int, help="Quadrature grid side for limits (default from config: 256)")

    parser = argparse.ArgumentParser(
        prog="walkzeta",
        description="Zeta functions of continuous- and discrete-time walks on graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("spectrum", parents=[common, graph], help="Eigenvalues of the transition matrix")

    zeta = sub.add_parser("zeta", parents=[common, graph, sweep], help="zeta^-1 over a parameter sweep")
    zeta.add_argument("--u", default="0", help="Semicolon-separated points re,im (use --u=... for negatives)")
    zeta.add_argument("--limit", action="store_true", help="Evaluate the N -> infinity limit on the torus grid")

    coeff = sub.add_parser("coeff", parents=[common, graph, sweep], help="Log-series coefficients C_r")
    coeff.add_argument("--r", default="1", help="Comma-separated positive integers")

    walk = sub.add_parser("walk", parents=[common], help="Walk distributions and kernels on Z")
    walk.add_argument("kind", choices=[k.value for k in WalkKind])
    walk.add_argument("--xi", default="0", help="Angle for the kernel, or classical/quantum")
    walk.add_argument("--t", default="1", help="Time")
    walk.add_argument("--radius", type=int, help="Half-width of the site window (default from config: 32)")

    verify = sub.add_parser("verify", parents=[common], help="Run the self-verification checks")
    verify.add_argument("level", nargs="?", choices=list(LEVELS), help="quick or full (default from config)")

    return parser


def _parsed(parse: Callable[..., Any], *values: Any) -> Any:
    """Runs a parser, reporting library errors as usage errors."""
    try:
        return parse(*values)
    except WalkZetaError as e:
        raise UsageError(str(e))


def _graph(args: argparse.Namespace) -> GraphSource:
    if bool(args.torus) == bool(args.matrix):
        raise UsageError("Give exactly one of --torus d,N and --matrix PATH")
    if args.torus:
        return GraphSource(torus=_parsed(TorusSpec.parse, args.torus))
    return GraphSource(matrix_path=Path(args.matrix))


def _single(values: List[float], name: str) -> float:
    if len(values) != 1:
        raise UsageError(f"{name} takes a single value for walk")
    return values[0]


def _emit_table(table: pd.DataFrame, command: str, args: argparse.Namespace, config: Dict[str, Any],
                meta: Optional[Dict[str, Any]] = None) -> None:
    fmt = args.format or config["defaults"]["format"]
    document = None
    if fmt == "json":
        document = {"command": command}
        document.update(meta or {})
        document["columns"] = table_columns(table)
        document["rows"] = table_records(table)

    if not args.out:
        sys.stdout.write(render_json(document) if document is not None else render_csv(table))
        sys.stdout.flush()
        return

    out = Path(args.out)
    if document is not None:
        export_to_json(document, out)
    else:
        export_to_csv(table, out)
    console.print(f"[dim]Wrote {out}[/dim]")
    console.print(generate_sweep_table(table, command, config["display"]["significant_digits"]))


def _run_rows(runner: SweepRunner, command: str, config: Dict[str, Any]) -> pd.DataFrame:
    points = runner.zeta_points() if command == "zeta" else runner.coeff_points()
    evaluate = runner.zeta_table if command == "zeta" else runner.coeff_table
    if not config["display"].get("show_progress", True):
        return evaluate()

    with create_progress_bar(console) as progress:
        task = progress.add_task(STAGE_DESCRIPTIONS[command], total=len(points))

        def progress_callback(step: str, description: Optional[str]):
            if description:
                progress.update(task, description=description)
            else:
                progress.update(task, advance=1)

        return evaluate(progress_callback)


def cmd_spectrum(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    graph = _graph(args)
    runner = SweepRunner(SweepConfig(model=Model.CTM, graph=graph))
    table = runner.spectrum_table()
    _emit_table(table, "spectrum", args, config, {"graph": graph.label})
    return EXIT_OK


def _sweep_config(args: argparse.Namespace, config: Dict[str, Any]) -> SweepConfig:
    grid = args.grid if args.grid is not None else config["defaults"]["grid"]
    sweep_config = SweepConfig(
        model=Model(args.model),
        graph=_graph(args),
        xi_list=parse_xi_list(args.xi),
        t_list=parse_float_list(args.t),
        u_list=parse_u_list(args.u) if args.command == "zeta" else (0.0,),
        r_list=parse_r_list(args.r) if args.command == "coeff" else (1,),
        limit=grid if getattr(args, "limit", False) else None,
        grid=grid,
        output_format=args.format or config["defaults"]["format"],
        output_path=Path(args.out) if args.out else None,
    )
    if sweep_config.model is Model.CTM:
        for xi, t in itertools.product(sweep_config.xi_list, sweep_config.t_list):
            EvolutionParams(xi, t)
    return sweep_config


def cmd_sweep(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    sweep_config = _parsed(_sweep_config, args, config)
    runner = SweepRunner(sweep_config, config["limits"]["determinant_vertices"])
    if sweep_config.graph.matrix_path is not None:
        runner.matrix()

    table = _run_rows(runner, args.command, config)
    _emit_table(table, args.command, args, config, {"graph": sweep_config.graph.label, "model": sweep_config.model.value})
    if runner.failed:
        console.print(f"[yellow]{(table['error'] != '').sum()} row(s) failed; see the error column[/yellow]")
        return EXIT_ROW_ERROR
    return EXIT_OK


def cmd_walk(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    xi = _single(_parsed(parse_xi_list, args.xi), "--xi")
    t = _single(_parsed(parse_float_list, args.t), "--t")
    _parsed(EvolutionParams, xi, t)
    radius = args.radius if args.radius is not None else config["defaults"]["walk_radius"]
    table = SweepRunner.walk_table(WalkKind(args.kind), xi, t, radius)
    _emit_table(table, "walk", args, config, {"kind": args.kind, "xi": xi, "t": t})
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    level = args.level or config["defaults"]["verify_level"]
    verifier = Verifier(level)

    if config["display"].get("show_progress", True):
        with create_progress_bar(console) as progress:
            task = progress.add_task(STAGE_DESCRIPTIONS["verify"], total=len(verifier.checks()))

            def progress_callback(step: str, description: Optional[str]):
                if description:
                    progress.update(task, description=description)
                else:
                    progress.update(task, advance=1)

            results = verifier.run(progress_callback)
    else:
        results = verifier.run()

    console.print(generate_verify_table(results, level))
    console.print(generate_verify_summary(results))

    passed = all(r.passed for r in results)
    if args.out:
        document = {"command": "verify", "level": level, "passed": passed,
                    "checks": [r.to_dict() for r in results]}
        export_to_json(document, Path(args.out))
        console.print(f"[dim]Wrote {args.out}[/dim]")
    return EXIT_OK if passed else EXIT_ROW_ERROR


COMMANDS = {
    "spectrum": cmd_spectrum,
    "zeta": cmd_sweep,
    "coeff": cmd_sweep,
    "walk": cmd_walk,
    "verify": cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    configure_logging(args.verbose)

    # Handle No Color Mode
    console.no_color = bool(args.no_color or os.environ.get("NO_COLOR"))

    try:
        config = load_config(Path(args.config) if args.config else None)
    except ValueError as e:
        console.print(generate_error_panel("Configuration Error", str(e), ["Check the sections defaults, limits and display"]))
        return EXIT_USAGE

    try:
        return COMMANDS[args.command](args, config)
    except (UsageError, MatrixFormatError, IOError) as e:
        console.print(generate_error_panel("Input Error", str(e), ["Run with --help for the expected syntax"]))
        return EXIT_USAGE
    except WalkZetaError as e:
        console.print(generate_error_panel(type(e).__name__, str(e)))
        return EXIT_ROW_ERROR


if __name__ == "__main__":
    sys.exit(main())
