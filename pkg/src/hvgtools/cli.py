"""Command-line front end: generation, graph transform, analysis, batteries.

Exit codes: 0 success, 1 partial failure (some battery runs errored or a
generator failed at runtime), 2 bad arguments or config.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .experiment import (
    analyze_values,
    default_label,
    generate_series,
    load_battery_config,
    plane_dataset,
    record_row,
    run_battery,
    run_one,
    length_stability,
    system_class,
    wgn_entropy_reference,
    write_plane_csv,
    write_stability_csv,
    PlaneRow,
)
from .hvg import build_hvg, degree_pdf, write_degree_pdf, write_edges
from .maps import DEFAULT_TRANSIENT, OrbitEscape
from .quantifiers import ScalingZone
from .series import SystemDescriptor, read_series, write_manifest, write_series
from ._version import __version__


def _parse_zone(text):
    try:
        lo, hi = text.split(":")
        return ScalingZone(int(lo), int(hi))
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"zone must look like LO:HI, got {text!r}")


def _parse_param(text):
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    key, value = text.split("=", 1)
    return key, float(value)


def _collect_params(args) -> dict:
    params = {}
    for flag, key in (("z", "z"), ("hurst", "H"), ("k", "k"),
                      ("x0", "x0"), ("y0", "y0")):
        value = getattr(args, flag, None)
        if value is not None:
            params[key] = value
    for key, value in getattr(args, "param", None) or []:
        params[key] = value
    return params


def _descriptor(args) -> SystemDescriptor:
    return SystemDescriptor(
        system=args.system,
        params=_collect_params(args),
        coordinate=getattr(args, "coordinate", 0),
        seed=args.seed,
    )


def _add_system_flags(p, with_coordinate=True):
    p.add_argument("--system", required=True, help="system id (map or noise family)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--transient", type=int, default=DEFAULT_TRANSIENT)
    p.add_argument("--z", type=float, default=None, help="schuster exponent")
    p.add_argument("--hurst", type=float, default=None, help="Hurst exponent for fgn/fbm")
    p.add_argument("--k", type=float, default=None, help="noise spectral exponent")
    p.add_argument("--x0", type=float, default=None)
    p.add_argument("--y0", type=float, default=None)
    p.add_argument("--param", action="append", type=_parse_param, metavar="KEY=VALUE",
                   help="extra map parameter override (repeatable)")
    if with_coordinate:
        p.add_argument("--coordinate", type=int, default=0)


def cmd_generate(args) -> int:
    ts = generate_series(_descriptor(args), args.n, args.transient)
    write_series(ts, args.out)
    write_manifest(ts, str(args.out) + ".manifest.json", version=__version__)
    return 0


def cmd_hvg(args) -> int:
    if not (args.pdf or args.degrees or args.edges):
        raise ValueError("nothing to do: pass --pdf, --degrees, or --edges")
    values = read_series(args.infile)
    if args.edges:
        degrees, edges = build_hvg(values, collect_edges=True)
        write_edges(edges, args.edges)
    else:
        degrees = build_hvg(values)
    if args.degrees:
        with open(args.degrees, "w", encoding="utf-8") as fh:
            fh.writelines(f"{d}\n" for d in degrees)
    if args.pdf:
        write_degree_pdf(degree_pdf(degrees), args.pdf)
    return 0


def cmd_analyze(args) -> int:
    values = read_series(args.infile)
    if values.size < 2:
        raise ValueError("series too short")
    label = args.label or Path(args.infile).stem
    s_wgn = wgn_entropy_reference(values.size, args.wgn_replicates, args.wgn_seed)
    fit, classification, quantiles, info, pdf = analyze_values(
        values, args.system_class, zone=args.zone, s_wgn=s_wgn, label=label)
    if args.dump_pdf:
        write_degree_pdf(pdf, args.dump_pdf)
    report = {
        "label": label,
        "class": args.system_class,
        "n": int(values.size),
        "lambda": fit.decay_rate,
        "ci_lo": fit.ci_lo,
        "ci_hi": fit.ci_hi,
        "r_squared": fit.r_squared,
        "zone": [fit.zone.lo, fit.zone.hi],
        "classification": classification,
        "gamma1": quantiles.skewness,
        "gamma2": quantiles.kurtosis,
        "s_raw": info.shannon_raw,
        "s_norm": info.shannon_normalized,
        "s_rel_wgn": info.shannon_rel_wgn,
        "fisher": info.fisher,
    }
    text = json.dumps(report, indent=2)
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n")
    return 0


def cmd_battery(args) -> int:
    config = load_battery_config(args.config)
    if args.out_dir:
        config.output_dir = args.out_dir
    if config.output_dir is None:
        raise ValueError("no output_dir in config and no --out-dir given")
    records = run_battery(config)
    failures = [r for r in records if r.error]
    for record in failures:
        print(f"failed: {record.error}", file=sys.stderr)
    return 1 if failures else 0


def cmd_plane(args) -> int:
    rows = []
    lengths = set()
    with open(args.infile, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        for line in fh:
            cells = dict(zip(header, line.rstrip("\n").split(",")))
            if cells.get("error"):
                continue
            lengths.add(cells["n"])
            rows.append(PlaneRow(cells["label"], cells["class"],
                                 float(cells["s_rel_wgn"]), float(cells["fisher"])))
    if len(lengths) > 1:
        raise ValueError(f"battery mixes series lengths {sorted(lengths)}")
    write_plane_csv(rows, args.out)
    return 0


def cmd_stability(args) -> int:
    desc = _descriptor(args)
    rows = length_stability(desc, args.lengths, replicates=args.replicates,
                            transient=args.transient)
    write_stability_csv(rows, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hvgtools",
        description="Horizontal visibility graphs and information quantifiers "
                    "for time series",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a series file plus its manifest")
    _add_system_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("hvg", help="transform a series file into degree data")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--pdf", help="write the degree distribution (two columns)")
    p.add_argument("--degrees", help="write the raw degree sequence")
    p.add_argument("--edges", help="write the 0-indexed edge list")
    p.set_defaults(func=cmd_hvg)

    p = sub.add_parser("analyze", help="full quantifier report for a series file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--system-class", choices=("chaotic", "stochastic"),
                   default="stochastic")
    p.add_argument("--zone", type=_parse_zone, default=None, metavar="LO:HI")
    p.add_argument("--label", default="")
    p.add_argument("--out", help="also write the report as JSON")
    p.add_argument("--dump-pdf", help="write the degree distribution alongside")
    p.add_argument("--wgn-replicates", type=int, default=10)
    p.add_argument("--wgn-seed", type=int, default=90210)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("battery", help="run a battery config (JSON)")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir", default=None)
    p.set_defaults(func=cmd_battery)

    p = sub.add_parser("plane", help="project a battery CSV onto the S x F plane")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plane)

    p = sub.add_parser("stability", help="entropy/Fisher stability across lengths")
    _add_system_flags(p)
    p.add_argument("--lengths", required=True,
                   type=lambda s: [int(x) for x in s.split(",")],
                   help="comma-separated series lengths")
    p.add_argument("--replicates", type=int, default=10)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_stability)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OrbitEscape as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
