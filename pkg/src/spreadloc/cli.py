"""Command line interface: ``spreadloc {table1,select,slplot,boxplots}``.

Exit codes: 0 success, 2 usage error, 3 data policy violation (zero or
non-finite residuals, too few rows), 4 I/O failure.

CSV input is comma separated with two numeric columns, either
``fitted,residual`` or, with ``--raw``, ``x,y``. A single header row is
detected by its first field not being a number. Quartiles everywhere use
linear interpolation of the empirical quantile function (type 7).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import diagnostics as dg
from .loess import LoessConfig
from .plot import PlotSpec, power_axis_label, render_boxplots, render_spread_location
from .transform import (TABLE_MODELS, TABLE_POWERS, apply_power, format_power,
                        parse_power, sample_skewness, skewness_table)

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_IO = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _power_list(text: str) -> list[float]:
    try:
        powers = [parse_power(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not powers:
        raise argparse.ArgumentTypeError("empty power list")
    return powers


def _power_or_auto(text: str):
    if text.strip().lower() == "auto":
        return "auto"
    try:
        return parse_power(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _model_list(text: str) -> list[str]:
    names = [tok.strip().lower() for tok in text.split(",") if tok.strip()]
    unknown = [n for n in names if n not in TABLE_MODELS]
    if unknown or not names:
        raise argparse.ArgumentTypeError(
            f"unknown model(s) {', '.join(unknown) or '(none)'}; choose from "
            f"{', '.join(TABLE_MODELS)}")
    return names


def read_table(path: str) -> np.ndarray:
    """Parse a two-column numeric CSV into an ``(n, 2)`` array."""
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, newline="") as fh:
                text = fh.read()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc.strerror or exc}") from None
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if rows:
        try:
            float(rows[0][0])
        except ValueError:
            rows = rows[1:]
    values = []
    for lineno, row in enumerate(rows, 1):
        if len(row) < 2:
            raise CliError(EXIT_DATA, f"row {lineno}: expected two columns")
        try:
            pair = (float(row[0]), float(row[1]))
        except ValueError:
            raise CliError(EXIT_DATA, f"row {lineno}: non-numeric value") from None
        if not all(math.isfinite(v) for v in pair):
            raise CliError(EXIT_DATA, f"row {lineno}: non-finite value")
        values.append(pair)
    if len(values) < 3:
        raise CliError(EXIT_DATA, f"need at least 3 data rows, got {len(values)}")
    return np.array(values)


def _loess_config(args) -> LoessConfig:
    try:
        return LoessConfig(args.span, args.degree, args.iterations)
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None


def _residual_set(args) -> dg.ResidualSet:
    data = read_table(args.input)
    policy = "drop" if args.drop_zeros else "error"
    if args.raw:
        rs = dg.residuals_from_raw(data[:, 0], data[:, 1], _loess_config(args), policy)
    else:
        rs = dg.ResidualSet(data[:, 0], data[:, 1], zero_policy=policy)
    if rs.dropped_count:
        print(f"warning: dropped {rs.dropped_count} zero residual(s)", file=sys.stderr)
    if len(rs) < 3:
        raise CliError(EXIT_DATA, "fewer than 3 residuals remain")
    return rs


def _abs_residuals(rs) -> np.ndarray:
    try:
        return dg.fold(rs)
    except dg.ZeroResidualError as exc:
        raise CliError(EXIT_DATA, f"{exc}; rerun with --drop-zeros") from None


def _select(args, rs) -> dg.PowerSelection:
    try:
        return dg.select_power(_abs_residuals(rs), args.powers, args.criterion)
    except ValueError as exc:
        raise CliError(EXIT_DATA, str(exc)) from None


def _write(path: str, text: str) -> None:
    try:
        if path == "-":
            sys.stdout.write(text)
        else:
            with open(path, "w", newline="\n") as fh:
                fh.write(text)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc.strerror or exc}") from None


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def cmd_table1(args) -> int:
    models = {name: TABLE_MODELS[name] for name in (args.models or TABLE_MODELS)}
    powers = args.powers or list(TABLE_POWERS)
    table = skewness_table(models, powers)
    heads = [format_power(p) for p in powers]
    if args.format == "json":
        print(_dumps({
            "powers": powers,
            "models": list(models),
            "skewness": {m: [r.skewness for r in rows] for m, rows in table.items()},
            "error_bound": {m: [r.quadrature_error_bound for r in rows]
                            for m, rows in table.items()},
        }))
    elif args.format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["model"] + [f"p={h}" for h in heads])
        for m, rows in table.items():
            writer.writerow([m] + [repr(r.skewness) for r in rows])
        sys.stdout.write(out.getvalue())
    else:
        print("Skewness coefficient of |E|^p")
        print(f"{'model':<14}" + "".join(f"{'p=' + h:>10}" for h in heads))
        for m, rows in table.items():
            # three decimals at p = 1 and the log, four elsewhere
            cells = [f"{r.skewness:.3f}" if r.p in (0.0, 1.0) else f"{r.skewness:.4f}"
                     for r in rows]
            print(f"{m:<14}" + "".join(f"{c:>10}" for c in cells))
        worst = max(r.quadrature_error_bound for rows in table.values() for r in rows)
        print(f"max quadrature error bound: {worst:.2e}")
    return EXIT_OK


def cmd_select(args) -> int:
    rs = _residual_set(args)
    sel = _select(args, rs)
    if args.format == "json":
        report = sel.as_dict()
        report.update(n=len(rs), dropped=rs.dropped_count)
        print(_dumps(report))
    else:
        print(f"criterion: {sel.criterion} skewness (n={len(rs)})")
        for p, s in sel.skewness_by_p:
            print(f"  p={format_power(p):<6} {s: .6f}")
        print(f"chosen p: {format_power(sel.chosen_p)}")
    return EXIT_OK


def cmd_slplot(args) -> int:
    rs = _residual_set(args)
    p = _select(args, rs).chosen_p if args.power == "auto" else args.power
    a = _abs_residuals(rs)
    try:
        sl = dg.spread_location(rs, p, _loess_config(args))
    except ValueError as exc:
        raise CliError(EXIT_DATA, str(exc)) from None
    spec = PlotSpec(title=args.title or "Spread-location plot",
                    x_label="fitted value", y_label=power_axis_label(p))
    _write(args.output, render_spread_location(sl, spec))
    stat = dg.monotone_spread_statistic(sl)
    summary = (f"p={format_power(p)} skewness={sample_skewness(apply_power(a, p)):.6f} "
               f"monotone_spread={stat.value:.6f}" + (" (degenerate)" if stat.degenerate else ""))
    print(summary, file=sys.stderr if args.output == "-" else sys.stdout)
    return EXIT_OK


def cmd_boxplots(args) -> int:
    rs = _residual_set(args)
    a = _abs_residuals(rs)
    if a.size < 5:
        raise CliError(EXIT_DATA, "boxplots need at least 5 residuals")
    panels = [(f"p={format_power(p)}" if p != 0 else "log",
               dg.boxplot_stats(apply_power(a, p), common_axis=True))
              for p in args.powers]
    spec = PlotSpec(width_px=max(480, 110 * len(panels) + 90),
                    title=args.title or "Absolute residuals, rescaled to a common axis",
                    y_label="rescaled value")
    _write(args.output, render_boxplots(panels, spec))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spreadloc",
        description="Spread-location diagnostics with symmetrizing power transforms.")
    sub = parser.add_subparsers(dest="command", required=True)

    t1 = sub.add_parser("table1", help="theoretical skewness of |E|^p for the reference models")
    t1.add_argument("--models", type=_model_list,
                    help=f"comma list from {','.join(TABLE_MODELS)}")
    t1.add_argument("--powers", type=_power_list,
                    help="comma list of powers; '1/3' is exact, 'log' or '0' is the log")
    t1.add_argument("--format", choices=("text", "csv", "json"), default="text")
    t1.set_defaults(func=cmd_table1)

    def data_args(p):
        p.add_argument("input", help="CSV file, or '-' for standard input")
        p.add_argument("--raw", action="store_true",
                       help="input columns are x,y; residuals come from a loess fit")
        p.add_argument("--drop-zeros", action="store_true",
                       help="drop exact zero residuals instead of failing")
        p.add_argument("--powers", type=_power_list, default=list(TABLE_POWERS),
                       help="power grid (default 1,0.5,0.4,1/3,0.25,log)")
        p.add_argument("--span", type=float, default=0.75)
        p.add_argument("--degree", type=int, default=1)
        p.add_argument("--iterations", type=int, default=3,
                       help="robustness iterations")

    def criterion_arg(p):
        p.add_argument("--criterion", choices=("moment", "quartile"), default="moment",
                       help="moment skewness g1 or quartile (type 7) skewness")

    sel = sub.add_parser("select", help="choose the symmetrizing power")
    data_args(sel)
    criterion_arg(sel)
    sel.add_argument("--format", choices=("text", "json"), default="text")
    sel.set_defaults(func=cmd_select)

    sl = sub.add_parser("slplot", help="write a spread-location SVG")
    data_args(sl)
    criterion_arg(sl)
    sl.add_argument("--power", type=_power_or_auto, default="auto",
                    help="explicit power, 'log', or 'auto' (default)")
    sl.add_argument("-o", "--output", required=True, help="SVG path, or '-' for stdout")
    sl.add_argument("--title")
    sl.set_defaults(func=cmd_slplot)

    bx = sub.add_parser("boxplots", help="write common-axis boxplots of |residual|^p")
    data_args(bx)
    bx.add_argument("-o", "--output", required=True, help="SVG path, or '-' for stdout")
    bx.add_argument("--title")
    bx.set_defaults(func=cmd_boxplots)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"spreadloc: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
