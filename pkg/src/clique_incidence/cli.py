"""
Command-line interface for clique incidence spectra.
"""

import argparse
import dataclasses
import io
import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from . import __version__
from .bounds import scan_partitions, spectral_report
from .certificates import Q2Certificate
from .cliques import CliqueCover, cover_from_json, min_clique_partition
from .config import DEFAULT_SEED, Tolerances, get_default_run_settings, parse_tolerance_overrides
from .conjecture import verify_conjecture
from .constructions import (
    CONSTRUCTION_ALIASES,
    FIXED_CONSTRUCTIONS,
    construct_complete,
    construct_fixed,
    construct_prism,
    construct_prism_join,
)
from .errors import CertificateError, CliqueIncidenceError, UsageError
from .graph import Graph, parse_family_spec
from .graph_io import GraphParser, FORMATS
from .isomorphism import enumerate_graphs
from .report import ReportRenderer
from .spectral import SpectralContext
from .ssp import check_ssp

logger = logging.getLogger(__name__)

COMMANDS = ("analyze", "partition", "energy", "ssp", "certify", "conjecture", "enumerate")
CONSTRUCTIONS = ("prism", "prism_join", "complete") + tuple(FIXED_CONSTRUCTIONS) + tuple(CONSTRUCTION_ALIASES)
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Fully resolved settings of one command; embedded in every report."""

    command: str
    input: Optional[str] = None
    fmt: str = "graph6"
    family: Optional[str] = None
    partition: str = "exact"
    seed: int = DEFAULT_SEED
    tolerances: Dict[str, str] = dataclasses.field(default_factory=dict)
    emit: str = "json"
    out: Optional[str] = None
    workers: int = 1
    log_level: str = "WARNING"
    params: Dict[str, Any] = dataclasses.field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)

    def resolved_tolerances(self) -> Tolerances:
        return Tolerances().with_overrides(self.tolerances)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        defaults = get_default_run_settings()
        params = {
            key: getattr(args, key)
            for key in ("construction", "s", "n", "m", "scan", "scan_limit")
            if getattr(args, key, None) is not None
        }
        return cls(
            command=args.command,
            input=args.input,
            fmt=args.format or defaults["format"],
            family=args.family,
            partition=args.partition or defaults["partition"],
            seed=defaults["seed"] if args.seed is None else args.seed,
            tolerances=parse_tolerance_overrides(args.tol),
            emit=args.emit or defaults["emit"],
            out=args.out,
            workers=args.workers or defaults["workers"],
            log_level=args.log_level or defaults["log_level"],
            params=params,
        )


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--input", help="Graph file (or matrix file for 'ssp')")
    common.add_argument("--format", choices=FORMATS, help="Graph file format (default graph6)")
    common.add_argument("--family", help="Named family, e.g. multipartite:2,2,2 or prism:3")
    common.add_argument("--partition", help="exact, greedy, edges or file:<path> (default exact)")
    common.add_argument("--seed", type=int, help=f"Random seed (default {DEFAULT_SEED})")
    common.add_argument("--tol", action="append", metavar="NAME=VALUE", help="Tolerance override")
    common.add_argument("--out", help="Output path (default stdout)")
    common.add_argument("--emit", choices=("json", "markdown"), help="Output format (default json)")
    common.add_argument("--workers", type=int, help="Worker processes (default 1)")
    common.add_argument("--log-level", choices=LOG_LEVELS, help="Logging level (default WARNING)")

    parser = _ArgumentParser(prog="clique-incidence",
                             description="Clique incidence spectra, bounds and two-eigenvalue certificates")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", parents=[common], help="Spectral report and bound suite")
    analyze.add_argument("--scan", action="store_true", help="Also scan all clique partitions (n ≤ 9)")
    analyze.add_argument("--scan-limit", type=int, help="Stop the scan after this many partitions")

    partition = sub.add_parser("partition", parents=[common], help="Clique partition search")
    partition.add_argument("--scan", action="store_true", help="Scan all clique partitions (n ≤ 9)")
    partition.add_argument("--scan-limit", type=int, help="Stop the scan after this many partitions")

    sub.add_parser("energy", parents=[common], help="All graph and clique energies")
    sub.add_parser("ssp", parents=[common], help="Strong Spectral Property of a matrix file")

    certify = sub.add_parser("certify", parents=[common], help="Build a named construction")
    certify.add_argument("construction", choices=CONSTRUCTIONS)
    certify.add_argument("--s", type=int, help="Clique size for prism and prism_join")
    certify.add_argument("--n", type=int, help="Vertex count for complete and k3_star")

    conjecture = sub.add_parser("conjecture", parents=[common], help="Certify K_n minus up to n-3 edges")
    conjecture.add_argument("--n", type=int, required=True, choices=(7, 8))

    enumerate_ = sub.add_parser("enumerate", parents=[common], help="Graph classes with n vertices, m edges")
    enumerate_.add_argument("--n", type=int, required=True)
    enumerate_.add_argument("--m", type=int, required=True)
    return parser


def _load_graph(config: RunConfig) -> Graph:
    if (config.input is None) == (config.family is None):
        raise UsageError("Give exactly one of --input and --family")
    if config.family is not None:
        return parse_family_spec(config.family)
    return GraphParser().load(Path(config.input), config.fmt)


def _load_cover(config: RunConfig, g: Graph) -> CliqueCover:
    mode = config.partition
    if mode.startswith("file:"):
        path = Path(mode[len("file:"):])
        try:
            text = path.read_text()
        except OSError as e:
            raise UsageError(f"Cannot read partition file {path}: {e}") from e
        return cover_from_json(text, g)
    if mode not in ("exact", "greedy", "edges"):
        raise UsageError(f"Unknown partition mode: {mode}")
    return min_clique_partition(g, mode, config.seed)


def _load_matrix(path: str) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"Cannot read matrix file {path}: {e}") from e
    try:
        return np.array(json.loads(text), dtype=float)
    except json.JSONDecodeError:
        try:
            return np.loadtxt(io.StringIO(text), ndmin=2)
        except ValueError as e:
            raise UsageError(f"Matrix file {path} is neither JSON nor whitespace-separated rows: {e}") from e


def _certify(config: RunConfig, tol: Tolerances) -> Q2Certificate:
    name = CONSTRUCTION_ALIASES.get(config.params.get("construction"), config.params.get("construction"))
    s, n = config.params.get("s"), config.params.get("n")
    if name in ("prism", "prism_join"):
        if s is None or s < 3:
            raise UsageError(f"certify {name} needs --s ≥ 3, got {s}")
        return construct_prism(s, tol) if name == "prism" else construct_prism_join(s, tol)
    elif name == "complete":
        if n is None or n < 2:
            raise UsageError(f"certify complete needs --n ≥ 2, got {n}")
        return construct_complete(n, tol)
    elif name == "k3_star":
        if n is None or n < 7:
            raise UsageError(f"certify k3_star needs --n ≥ 7, got {n}")
        return construct_fixed(name, n, tol)
    elif name in FIXED_CONSTRUCTIONS:
        return construct_fixed(name, None, tol)
    raise UsageError(f"Unknown construction: {name}")


def _execute(config: RunConfig, tol: Tolerances) -> Tuple[int, Dict[str, Any]]:
    """Run one command; returns (exit code, command-specific report sections)."""
    command = config.command
    if command == "analyze":
        g = _load_graph(config)
        report = spectral_report(g, _load_cover(config, g), tol)
        body: Dict[str, Any] = {"analysis": report.to_dict()}
        failed = bool(report.failed_bounds)
        if config.params.get("scan"):
            scan = scan_partitions(g, config.params.get("scan_limit") or 10000, tol)
            body["partition_scan"] = scan.to_dict(tol)
            failed = failed or any(r.failed for r in scan.records)
        return (2 if failed else 0), body
    elif command == "partition":
        g = _load_graph(config)
        cover = _load_cover(config, g)
        body = {"partition": {**cover.to_dict(), "size": cover.k}}
        if config.params.get("scan"):
            body["partition_scan"] = scan_partitions(g, config.params.get("scan_limit") or 10000, tol).to_dict(tol)
        return 0, body
    elif command == "energy":
        g = _load_graph(config)
        cover = _load_cover(config, g)
        return 0, {"energies": dict(SpectralContext(g, cover, tol).energies), "partition": cover.to_dict()}
    elif command == "ssp":
        if config.input is None:
            raise UsageError("ssp needs --input with a matrix file")
        return 0, {"ssp": check_ssp(_load_matrix(config.input), tol).to_dict()}
    elif command == "certify":
        cert = _certify(config, tol)
        return (0 if cert.verified else 2), {"certificate": cert.to_dict()}
    elif command == "conjecture":
        report = verify_conjecture(config.params["n"], config.seed, config.workers, tol)
        return (0 if report.all_certified else 2), {"conjecture": report.to_dict()}
    elif command == "enumerate":
        graphs = enumerate_graphs(config.params["n"], config.params["m"])
        parser = GraphParser()
        return 0, {"graphs": [parser.encode_graph6(g) for g in graphs], "count": len(graphs)}
    raise UsageError(f"Unknown command: {command}")


def _emit(config: RunConfig, report: Dict[str, Any]) -> None:
    renderer = ReportRenderer()
    if config.out is None:
        if config.emit == "markdown":
            sys.stdout.write(renderer.render(report))
        else:
            sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
        return
    out = Path(config.out)
    if config.emit == "markdown":
        renderer.write(report, out)
    else:
        out.write_text(json.dumps(report, sort_keys=True, indent=2) + "\n")
    meta = {"generated_at": datetime.now(timezone.utc).isoformat(), "report": out.name, "version": __version__}
    Path(f"{out}.meta.json").write_text(json.dumps(meta, sort_keys=True, indent=2) + "\n")
    logger.info(f"Wrote {config.emit} report to {out}")


def run(config: RunConfig) -> Tuple[int, Dict[str, Any]]:
    """
    Execute a command and write its report.

    Args:
        config: Resolved run configuration

    Returns:
        Tuple of (exit status, report): 0 on success, 2 when a bound or a
        certificate fails (the report is still written), 1 on usage or
        input errors
    """
    report: Dict[str, Any] = {"command": config.command, "config": config.to_dict(), "version": __version__}
    try:
        if config.command not in COMMANDS:
            raise UsageError(f"Unknown command: {config.command}; expected one of {', '.join(COMMANDS)}")
        if not 0 <= config.seed < 2 ** 64:
            raise UsageError(f"Seed must be an unsigned 64-bit integer, got {config.seed}")
        if config.workers < 1:
            raise UsageError(f"--workers must be positive, got {config.workers}")
        tol = config.resolved_tolerances()
        report["tolerances"] = tol.to_dict()
        code, body = _execute(config, tol)
    except CertificateError as e:
        logger.error(f"{config.command}: {e}")
        report["error"] = str(e)
        code = 2
    except (CliqueIncidenceError, ValueError, OSError) as e:
        logger.error(f"{config.command}: {e}")
        report["error"] = str(e)
        print(f"error: {e}", file=sys.stderr)
        return 1, report
    else:
        report.update(body)
    _emit(config, report)
    return code, report


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        config = RunConfig.from_args(args)
    except CliqueIncidenceError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    logging.basicConfig(level=getattr(logging, config.log_level.upper()))
    return run(config)[0]


if __name__ == "__main__":
    sys.exit(main())
