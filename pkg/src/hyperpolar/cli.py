"""Command line interface: ``hyperpolar generate | analyze | verify``.

Exit codes: 0 success, 2 input error, 3 numerical/stage error,
4 acceptance-threshold failure (``verify`` only).
"""

from __future__ import annotations

import argparse
import math
import sys

from . import io
from .errors import AcceptanceFailure, HyperpolarError
from .models import DEFAULT_FS, PAPER_DURATION, ModelSpec, generate
from .pipeline import build_config, parse_config_file, run_pipeline

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3
EXIT_ACCEPTANCE = 4

_CONFIG_KEYS = (
    "phase_init_low",
    "phase_init_high",
    "edge_exclude",
    "eps_mag",
    "eta",
    "mask_degenerate",
    "b0_low",
    "unwrap",
    "envelope_frequency",
    "path",
)


def _add_model_args(p):
    p.add_argument("--model", choices=["paper"], default="paper")
    p.add_argument("--fs", type=float, default=DEFAULT_FS, help="sampling rate in Hz (default %(default)g)")
    p.add_argument("--duration", type=float, default=PAPER_DURATION, help="seconds (default %(default)g)")


def _add_analysis_args(p):
    p.add_argument("--phase-init-low", type=float, default=0.0)
    p.add_argument("--phase-init-high", type=float, default=math.pi / 2)
    p.add_argument("--edge-exclude", type=float, default=0.05, help="fraction dropped per side for interior metrics")
    p.add_argument("--eps-mag", default="auto", help="absolute magnitude floor (default 1e-12 * max|s|)")
    p.add_argument("--eta", type=float, default=0.5, help="class-II guard on minimum/peak ratio")
    p.add_argument("--mask-degenerate", action="store_true", help="interpolate through samples with no axis")
    p.add_argument("--b0-low", type=float, default=0.0)
    p.add_argument("--unwrap", choices=["quadrant", "reflection"], default="quadrant")
    p.add_argument("--envelope-frequency", action="store_true", help="report f_A when the envelope is analytic")
    p.add_argument("--config", help="key=value file; its entries override flags")
    p.add_argument("--report", help="text report path")
    p.add_argument("--report-json", help="machine-readable report path")
    p.add_argument("--timings", action="store_true", help="include stage timings in the reports")
    p.add_argument("--out", help="polar CSV output path")
    p.add_argument("--extended", action="store_true", help="add phi_A,f_A,alpha,beta,gamma columns")
    p.add_argument("--emit-plot-data", metavar="DIR", help="write per-panel CSVs into DIR")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperpolar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="synthesize a model signal")
    _add_model_args(g)
    g.add_argument("--out", required=True, help="complex signal CSV (t,z_r,z_i)")
    g.add_argument("--truth", help="ground-truth CSV")

    a = sub.add_parser("analyze", help="polar decomposition of a complex signal CSV")
    a.add_argument("--in", dest="input", required=True, help="complex signal CSV (t,z_r,z_i)")
    a.add_argument("--truth", dest="truth_file", help="ground-truth CSV for error metrics")
    a.add_argument("--fs", type=float, help="override the sample rate implied by the time column")
    a.add_argument("--path", choices=["full", "exact"], default="full")
    _add_analysis_args(a)

    v = sub.add_parser("verify", help="generate, analyze and check against thresholds")
    _add_model_args(v)
    v.add_argument("--path", choices=["full", "exact"], default="exact")
    _add_analysis_args(v)
    return parser


def _options(args) -> dict:
    opts = {k: getattr(args, k) for k in _CONFIG_KEYS if hasattr(args, k)}
    if getattr(args, "config", None):
        opts.update(parse_config_file(args.config))
    return opts


def _emit(args, polar, freq, report, z=None, truth=None):
    if args.out:
        io.write_csv(args.out, polar, freq, extended=args.extended)
    if args.report or args.report_json:
        data = report.as_dict(include_timings=args.timings)
        if args.report:
            io.write_report(args.report, data, args.report_json)
        else:
            io.write_report(args.report_json + ".txt", data, args.report_json)
    if args.emit_plot_data:
        io.write_plot_data(args.emit_plot_data, polar, freq, z, truth)


def cmd_generate(args):
    spec = ModelSpec.paper(fs=args.fs, duration=args.duration)
    z, truth = generate(spec)
    io.write_complex_csv(args.out, z)
    if args.truth:
        io.write_truth_csv(args.truth, truth)
    return EXIT_OK


def cmd_analyze(args):
    config = build_config(_options(args))
    z = io.read_csv(args.input, fs=args.fs)
    truth = io.read_truth_csv(args.truth_file) if args.truth_file else None
    polar, freq, report = run_pipeline(z, config, truth)
    _emit(args, polar, freq, report, z, truth)
    return EXIT_OK


def cmd_verify(args):
    config = build_config(_options(args))
    spec = ModelSpec.paper(fs=args.fs, duration=args.duration)
    z, truth = generate(spec)
    polar, freq, report = run_pipeline(z, config, truth)
    _emit(args, polar, freq, report, z, truth)
    for name, check in report.checks.items():
        status = "PASS" if check["pass"] else "FAIL"
        print(f"{status} {config.path}.{name} = {check['value']:.3e} (limit {check['limit']:g})")
    if not report.passed:
        raise AcceptanceFailure("acceptance thresholds not met")
    return EXIT_OK


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    handler = {"generate": cmd_generate, "analyze": cmd_analyze, "verify": cmd_verify}[args.command]
    try:
        return handler(args)
    except HyperpolarError as exc:
        print(f"hyperpolar {args.command}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"hyperpolar {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
