"""
Command-line dispatcher for the curve reparametrization toolkit.

Each subcommand wraps one stage (or the whole pipeline) and exchanges
artifacts through files, so runs can be resumed from any stage.

Usage:
    curve-reparam extract --demo droplet --param eps_p=1.7 --n1 1024 -o inv.json
    curve-reparam evolve --inv inv.json --monitor phi1 --n2 256 --dt 1e-3 -o spacing.json
    curve-reparam resample --inv inv.json --spacing spacing.json --n3 512 -o refined.csv
    curve-reparam validate --ref inv.json --test inv_refined.json -o report.json
    curve-reparam pipeline --config configs/droplet17.cfg
    curve-reparam study refinement --example peakons --n3 256,512,1024,2048 -o table.csv
    curve-reparam demo circle

Exit codes: 0 success, 2 usage / config / io errors, 3 numerical errors.
Failures print one ``error category=... component=...`` line on stderr.
"""

from __future__ import annotations

import argparse
import sys
from typing import Dict, List, Optional, Sequence

from src.config.settings import MonitorSource, get_settings, load_pipeline_config
from src.errors import ParameterError, ReparamError, error_line
from src.evolution import evolve
from src.invariants import default_n_up, extract
from src.monitor import load_monitor, normalize
from src.observability.logger import get_logger
from src.resample import refine
from src.state import (
    ValidationReport,
    read_curve,
    read_invariants,
    read_spacing,
    write_curve,
    write_document,
    write_invariants,
    write_spacing,
)
from src.validation import STUDY_KINDS, StudyParams, compare_invariants, get_example, run_study
from src.workflows import create_pipeline

logger = get_logger("cli")


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so errors share one format."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ParameterError(f"{self.prog}: {message}", component="cli")


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------

def _int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'") from exc


def _float_list(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'") from exc


def _params(pairs: Optional[Sequence[str]]) -> Dict[str, float]:
    out: Dict[str, float] = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep:
            raise ParameterError(f"--param expects key=value, got '{pair}'", component="cli")
        try:
            out[key.strip()] = float(value)
        except ValueError as exc:
            raise ParameterError(f"--param {key}: '{value}' is not a number", component="cli") from exc
    return out


def _eps(value: Optional[float]) -> float:
    return value if value is not None else get_settings().default_eps


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_extract(args: argparse.Namespace) -> int:
    if args.input is not None:
        curve = read_curve(args.input)
        if args.n1 is not None and args.n1 != curve.n:
            logger.warning("--n1 ignored for file input", extra_data={"file_n": curve.n, "n1": args.n1})
    else:
        curve = get_example(args.demo, _params(args.param)).sample(args.n1 or 256)
    n_up = args.nup or default_n_up(curve.n, curve.kind)
    k_max = args.kmax or curve.n // 2
    inv = extract(curve, n_up, k_max, _eps(args.eps))
    path = write_invariants(inv, args.output)
    print(f"extract: L={inv.L:.16g} k_max={inv.k_max} -> {path}")
    return 0


def _cmd_evolve(args: argparse.Namespace) -> int:
    inv = read_invariants(args.inv)
    phi = normalize(load_monitor(args.monitor), inv.L, args.n2)
    result = evolve(phi, args.n2, args.dt, _eps(args.eps))
    path = write_spacing(result.state, args.output, phi.name, result.residual)
    print(f"evolve: steps={result.steps} residual={result.residual:.3e} -> {path}")
    return 0


def _cmd_resample(args: argparse.Namespace) -> int:
    inv = read_invariants(args.inv)
    spacing = read_spacing(args.spacing)
    refined = refine(inv, spacing, args.n3, _eps(args.eps))
    path = write_curve(refined.x, refined.y, refined.kind, args.output)
    print(f"resample: n3={refined.n} -> {path}")
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    comparison = compare_invariants(read_invariants(args.ref), read_invariants(args.test), args.dense)
    report = ValidationReport(ref=args.ref, test=args.test, **comparison.model_dump())
    print(
        f"validate: l2_rel={report.l2_rel:.3e} linf_rel={report.linf_rel:.3e} "
        f"length_rel={report.length_rel:.3e}"
    )
    if args.output:
        print(f"  -> {write_document(report, args.output)}")
    return 0


def _cmd_pipeline(args: argparse.Namespace) -> int:
    overrides = {
        "n1": args.n1, "n2": args.n2, "n3": args.n3, "n_up": args.nup,
        "k_max": args.kmax, "dt": args.dt, "eps_rel": args.eps,
    }
    config = load_pipeline_config(args.config, overrides)
    if args.monitor is not None:
        config = config.model_copy(update={"monitor": MonitorSource(builtin=args.monitor)})
    result = create_pipeline(config).run()
    summary = result.summary
    print(f"pipeline: trace_id={summary.trace_id}")
    print(f"  L={summary.L:.16g} l1_norm={summary.l1_norm:.6g} steps={summary.steps}")
    print(f"  residual={summary.residual:.3e} max_drift={summary.max_drift:.3e}")
    for name, path in summary.outputs.items():
        print(f"  {name:12} -> {path}")
    if args.summary:
        print(f"  {'summary':12} -> {write_document(summary, args.summary)}")
    return 0


def _cmd_study(args: argparse.Namespace) -> int:
    data = {
        "example": args.example,
        "example_params": _params(args.param),
        "sweep": args.sweep or [],
        "dts": args.dts or [],
        "monitor": args.monitor,
        "n2": args.n2,
        "dt": args.dt,
        "ref_n1": args.ref_n1,
        "ref_n_up": args.ref_nup,
        "ref_k_max": args.ref_kmax,
        "eps_rel": args.eps,
        "cache_dir": args.cache_dir,
    }
    try:
        params = StudyParams.model_validate({k: v for k, v in data.items() if v is not None})
    except ValueError as exc:
        raise ParameterError(str(exc).splitlines()[-1].strip(), component="cli") from exc
    table = run_study(args.kind, params)
    print(f"study {table.kind}: {table.example}, {len(table.rows)} rows")
    if args.output:
        print(f"  -> {table.to_csv(args.output)}")
    return 0


def _cmd_demo(args: argparse.Namespace) -> int:
    from demos.demo_runner import run_single_scenario

    outcome = run_single_scenario(args.name, output_dir=args.output_dir)
    return 0 if outcome.get("all_validations_passed") else 3


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser with every subcommand registered."""
    parser = _Parser(
        prog="curve-reparam",
        description="Spectral reparametrization of planar curves",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="Arclength invariants of a sampled curve")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", help="Delimited curve file (alpha,x,y)")
    source.add_argument("--demo", choices=["circle", "droplet", "peakons"], help="Builtin example")
    p.add_argument("--param", action="append", metavar="KEY=VALUE", help="Example parameter")
    p.add_argument("--n1", type=int, help="Sample count for --demo (default 256)")
    p.add_argument("--nup", type=int, help="Upsampled grid size")
    p.add_argument("--kmax", type=int, help="Highest retained wavenumber")
    p.add_argument("--eps", type=float, help="NUFFT accuracy")
    p.add_argument("-o", "--output", required=True, help="Invariants JSON")
    p.set_defaults(handler=_cmd_extract)

    p = sub.add_parser("evolve", help="Equidistributing local spacing for a monitor")
    p.add_argument("--inv", required=True, help="Invariants JSON (supplies L)")
    p.add_argument("--monitor", required=True, help="phi0 | phi1 | phi2 | unit | monitor JSON")
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--eps", type=float)
    p.add_argument("-o", "--output", required=True, help="Spacing JSON")
    p.set_defaults(handler=_cmd_evolve)

    p = sub.add_parser("resample", help="Refined curve at the equidistributed nodes")
    p.add_argument("--inv", required=True)
    p.add_argument("--spacing", required=True)
    p.add_argument("--n3", type=int, required=True)
    p.add_argument("--eps", type=float)
    p.add_argument("-o", "--output", required=True, help="Delimited curve file")
    p.set_defaults(handler=_cmd_resample)

    p = sub.add_parser("validate", help="Compare two invariant files")
    p.add_argument("--ref", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--dense", type=int, help="Dense evaluation size for the Linf error")
    p.add_argument("-o", "--output", help="Validation report JSON")
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("pipeline", help="Run extract -> evolve -> resample from a config")
    p.add_argument("--config", required=True, help="JSON config file")
    p.add_argument("--monitor", help="Override the monitor with a builtin")
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--n3", type=int)
    p.add_argument("--nup", type=int)
    p.add_argument("--kmax", type=int)
    p.add_argument("--dt", type=float)
    p.add_argument("--eps", type=float)
    p.add_argument("--summary", help="Write the run summary JSON here")
    p.set_defaults(handler=_cmd_pipeline)

    p = sub.add_parser("study", help="Convergence study producing an error table")
    p.add_argument("kind", choices=STUDY_KINDS)
    p.add_argument("--example", default="droplet", choices=["circle", "droplet", "peakons"])
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--sweep", "--n1", "--n3", dest="sweep", type=_int_list, help="Comma-separated sizes")
    p.add_argument("--dts", type=_float_list, help="Comma-separated step sizes (rk4_convergence)")
    p.add_argument("--monitor", default="phi1")
    p.add_argument("--n2", type=int)
    p.add_argument("--dt", type=float)
    p.add_argument("--ref-n1", type=int)
    p.add_argument("--ref-nup", type=int)
    p.add_argument("--ref-kmax", type=int)
    p.add_argument("--cache-dir", help="Directory for cached reference invariants")
    p.add_argument("--eps", type=float)
    p.add_argument("-o", "--output", help="ErrorTable CSV")
    p.set_defaults(handler=_cmd_study)

    p = sub.add_parser("demo", help="Run a demo scenario")
    p.add_argument("name", choices=["circle", "droplet", "peakons"])
    p.add_argument("--output-dir", default="outputs", help="Directory for scenario files")
    p.set_defaults(handler=_cmd_demo)

    return parser


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """Parse *argv*, run the subcommand and return the process exit code."""
    try:
        args = build_parser().parse_args(argv)
        return args.handler(args)
    except ReparamError as exc:
        print(error_line(exc), file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(error_line(exc).replace("category=internal", "category=io", 1), file=sys.stderr)
        return 2


def main() -> None:
    """Console entry point."""
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
