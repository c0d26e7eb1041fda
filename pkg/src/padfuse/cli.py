"""Command-line entry point.

Subcommands build characteristics, compose cascade curves, run the GEER
break-even analysis, validate the model against replayed score data,
synthesize datasets, and serve the HTTP API. Reports are canonical JSON;
``--plots DIR`` additionally renders figures and the plotted series as CSV
into DIR.

Exit codes: 0 success; 2 input or parse error; 3 domain error; 4 operating
point unreachable while ``--strict`` is set.
"""

from __future__ import annotations

import argparse
import csv
import pathlib
import sys

from . import fileio, plots
from .dataset import ScoreDataset
from .errors import (
    DomainError,
    EmptyClassError,
    EmptyCurveError,
    EmptyInputError,
    ConfigError,
    GridMismatchError,
    PadfuseError,
    ParseError,
    ReportIOError,
    VersionMismatchError,
)
from .fusion import groc_curve, individual_groc_curve
from .geer import embed_decision, find_w_star, geer_sweep, individual_eer_sweep
from .roc import (
    OperationalPointSpec,
    PointMode,
    build_matcher_characteristic,
    build_pad_characteristic,
    resolve_operating_point,
)
from .synth import PRESET_NAMES, passthrough_demo, preset_dataset, wstar_demo
from .validation import independence_diagnostic, validate_against_point

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DOMAIN = 3
EXIT_UNREACHABLE = 4

_INPUT_ERRORS = (ParseError, ReportIOError, VersionMismatchError, OSError)
_DOMAIN_ERRORS = (
    DomainError,
    EmptyClassError,
    EmptyCurveError,
    EmptyInputError,
    ConfigError,
    GridMismatchError,
)


def parse_point(text: str) -> OperationalPointSpec:
    """Parse an operating point spec like ``apcer=0.01`` or ``bpcer=0.01``."""
    key, sep, value = text.partition("=")
    if not sep:
        raise DomainError(f"bad point spec {text!r}: expected apcer=<rate> or bpcer=<rate>")
    mode = {"apcer": PointMode.APCER_AT, "bpcer": PointMode.BPCER_AT}.get(key.strip().lower())
    if mode is None:
        raise DomainError(f"bad point spec {text!r}: mode must be apcer or bpcer")
    try:
        target = float(value)
    except ValueError:
        raise DomainError(f"bad point spec {text!r}: target is not a number") from None
    return OperationalPointSpec(mode, target)


def inclusive_range(start: float, stop: float, step: float) -> list[float]:
    """Ascending grid from start to stop inclusive (up to rounding), step > 0."""
    if step <= 0 or stop < start:
        raise DomainError(f"bad range {start}:{stop}:{step}: need step > 0 and stop >= start")
    n = int(round((stop - start) / step))
    values = [start + k * step for k in range(n + 1)]
    if values[-1] > stop + 1e-12:
        values.pop()
    return [round(v, 12) for v in values]


def parse_range(text: str) -> list[float]:
    """Parse ``start:stop:step`` into an inclusive, ascending grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError(f"bad range {text!r}: expected start:stop:step")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise DomainError(f"bad range {text!r}: fields must be numbers") from None
    return inclusive_range(start, stop, step)


def parse_w_values(text: str) -> list[float]:
    """Parse a w list (``0.1,0.25``) or a range (``0:0.75:0.05``)."""
    if ":" in text:
        return parse_range(text)
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise DomainError(f"bad w list {text!r}") from None


def _load(path: str) -> ScoreDataset:
    return fileio.load_scores(path)


def _resolve(data: ScoreDataset, spec: OperationalPointSpec):
    pad = build_pad_characteristic(data)
    matcher = build_matcher_characteristic(data)
    point = resolve_operating_point(pad, spec)
    if point.warning:
        print(f"warning: operating point {spec.mode.value}={spec.target:g} is {point.warning}; "
              f"using sentinel threshold {point.threshold!r}", file=sys.stderr)
    return pad, matcher, point


def _inputs(data: ScoreDataset, **extra) -> dict:
    base = {"dataset": data.name, "class_counts": data.class_counts()}
    base.update(extra)
    return base


def _spec_dict(spec: OperationalPointSpec) -> dict:
    return {"mode": spec.mode.value, "target": spec.target}


def _write_csv(path: pathlib.Path, header: list[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _plots_dir(args) -> pathlib.Path | None:
    if not getattr(args, "plots", None):
        return None
    out = pathlib.Path(args.plots)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_characteristics(args) -> int:
    data = _load(args.scores)
    pad = build_pad_characteristic(data)
    matcher = build_matcher_characteristic(data)
    report = fileio.ScenarioReport(
        kind="characteristics",
        inputs=_inputs(data),
        outputs={
            "pad_characteristic": fileio.pad_characteristic_to_dict(pad),
            "matcher_characteristic": fileio.matcher_characteristic_to_dict(matcher),
        },
    )
    fileio.write_report(report, args.out)
    plot_dir = _plots_dir(args)
    if plot_dir:
        plots.plot_characteristics(pad, matcher, plot_dir / "characteristics.png")
        _write_csv(plot_dir / "pad_characteristic.csv", ["threshold", "apcer", "bpcer"],
                   zip(pad.thresholds, pad.apcer, pad.bpcer))
        _write_csv(plot_dir / "matcher_characteristic.csv", ["threshold", "gar", "fmr", "iapmr"],
                   zip(matcher.thresholds, matcher.gar, matcher.fmr, matcher.iapmr))
    return EXIT_OK


def cmd_compose(args) -> int:
    data = _load(args.scores)
    spec = parse_point(args.point)
    w_values = parse_w_values(args.w)
    if args.p_genuine is not None and not (0.0 <= args.p_genuine <= 1.0):
        raise DomainError(f"p_genuine must lie in [0, 1], got {args.p_genuine!r}")
    pad, matcher, point = _resolve(data, spec)

    curves = []
    curve_objs = []
    for w in w_values:
        integrated = groc_curve(matcher, point, w)
        individual = individual_groc_curve(matcher, w)
        for kind, curve in (("integrated", integrated), ("individual", individual)):
            entry = fileio.groc_curve_to_dict(curve, kind)
            if args.p_genuine is not None:
                p = float(args.p_genuine)
                acceptance = curve.gar * p + curve.gfmr * (1.0 - p)
                entry["acceptance"] = [float(v) for v in acceptance]
            curves.append(entry)
            curve_objs.append((kind, curve))

    live_pass = 1.0 - point.bpcer
    fused = {
        "match_thresholds": [float(t) for t in matcher.thresholds],
        "gar_seq": [float(v) for v in matcher.gar * live_pass],
        "fmr_seq": [float(v) for v in matcher.fmr * live_pass],
        "iapmr_seq": [float(v) for v in matcher.iapmr * point.apcer],
    }
    report = fileio.ScenarioReport(
        kind="compose",
        inputs=_inputs(data, point_spec=_spec_dict(spec), w_values=w_values,
                       p_genuine=args.p_genuine),
        outputs={"resolved_point": fileio.point_to_dict(point), "fused": fused,
                 "groc_curves": curves},
    )
    fileio.write_report(report, args.out)

    plot_dir = _plots_dir(args)
    if plot_dir:
        plots.plot_groc(curve_objs, plot_dir / "groc.png")
        _write_csv(plot_dir / "groc_curves.csv", ["kind", "w", "match_threshold", "gar", "gfmr"],
                   ((kind, c.w, t, g, f) for kind, c in curve_objs
                    for t, g, f in zip(c.match_thresholds, c.gar, c.gfmr)))
    if point.warning and args.strict:
        return EXIT_UNREACHABLE
    return EXIT_OK


def cmd_geer(args) -> int:
    data = _load(args.scores)
    spec = parse_point(args.point)
    grid = parse_range(args.w_grid)
    pad, matcher, point = _resolve(data, spec)

    integrated = geer_sweep(matcher, point, grid)
    individual = individual_eer_sweep(matcher, grid)
    w_star = find_w_star(integrated, individual)
    outputs = {
        "resolved_point": fileio.point_to_dict(point),
        "geer_sweeps": [fileio.geer_sweep_to_dict(integrated), fileio.geer_sweep_to_dict(individual)],
        "w_star": fileio.w_star_to_dict(w_star),
    }
    if args.w_hat is not None:
        outputs["decision"] = embed_decision(w_star, float(args.w_hat)).value
    report = fileio.ScenarioReport(
        kind="geer",
        inputs=_inputs(data, point_spec=_spec_dict(spec), w_grid=grid, w_hat=args.w_hat),
        outputs=outputs,
    )
    fileio.write_report(report, args.out)

    plot_dir = _plots_dir(args)
    if plot_dir:
        plots.plot_geer([integrated, individual], w_star, plot_dir / "geer.png")
        _write_csv(plot_dir / "geer_sweeps.csv", ["kind", "w", "geer"],
                   [(s.kind.value, w, v) for s in (integrated, individual)
                    for w, v in zip(s.w_grid, s.geer_values)])
    if point.warning and args.strict:
        return EXIT_UNREACHABLE
    return EXIT_OK


def cmd_validate(args) -> int:
    data = _load(args.scores)
    spec = parse_point(args.point)
    pad, matcher, point = _resolve(data, spec)
    result = validate_against_point(data, matcher, point)
    correlation = independence_diagnostic(data)
    include_rows = len(result) <= args.max_rows
    report = fileio.ScenarioReport(
        kind="validate",
        inputs=_inputs(data, point_spec=_spec_dict(spec)),
        outputs={
            "resolved_point": fileio.point_to_dict(point),
            "validation": fileio.validation_to_dict(result, include_rows=include_rows),
            "correlation": fileio.correlation_to_dict(correlation),
        },
    )
    fileio.write_report(report, args.out)

    plot_dir = _plots_dir(args)
    if plot_dir:
        plots.plot_error_box(
            {"gar": result.err_gar, "fmr": result.err_fmr, "iapmr": result.err_iapmr},
            plot_dir / "validation_box.png",
        )
        _write_csv(plot_dir / "validation_errors.csv",
                   ["match_threshold", "err_gar_pct", "err_fmr_pct", "err_iapmr_pct"],
                   zip(result.match_thresholds, result.err_gar, result.err_fmr, result.err_iapmr))
    if point.warning and args.strict:
        return EXIT_UNREACHABLE
    return EXIT_OK


def cmd_synth(args) -> int:
    data = preset_dataset(args.preset, seed=args.seed)
    fileio.save_scores(data, args.out)
    return EXIT_OK


def cmd_demo(args) -> int:
    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    fileio.save_scores(wstar_demo(), out_dir / "wstar-demo.csv")
    fileio.save_scores(passthrough_demo(), out_dir / "passthrough-demo.csv")
    for name in PRESET_NAMES:
        fileio.save_scores(preset_dataset(name), out_dir / f"{name}.csv")
    print(f"wrote {2 + len(PRESET_NAMES)} score files to {out_dir}")
    return EXIT_OK


def cmd_serve(args) -> int:
    from .server import serve

    server = serve(args.port, args.data_dir)
    print(f"serving {len(server.api.dataset_ids())} dataset(s) on port {server.server_address[1]}",
          flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padfuse",
        description="Simulate a fingerprint verifier with an embedded presentation-attack detector.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, point=True):
        p.add_argument("--scores", required=True, help="score CSV file")
        p.add_argument("--out", required=True, help="output report path (JSON)")
        p.add_argument("--plots", help="directory for figures and plotted-series CSVs")
        if point:
            p.add_argument("--point", required=True,
                           help="detector operating point, apcer=<rate> or bpcer=<rate>")
            p.add_argument("--strict", action="store_true",
                           help="exit 4 when the operating point is unreachable")

    p = sub.add_parser("characteristics", help="build both operating characteristics")
    add_common(p, point=False)
    p.set_defaults(func=cmd_characteristics)

    p = sub.add_parser("compose", help="cascade GROC curves per attack probability w")
    add_common(p)
    p.add_argument("--w", required=True, help="w values: comma list or start:stop:step")
    p.add_argument("--p-genuine", type=float, default=None, dest="p_genuine",
                   help="genuine prior; adds overall acceptance-rate columns")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("geer", help="GEER sweeps, break-even w*, embed decision")
    add_common(p)
    p.add_argument("--w-grid", required=True, dest="w_grid", help="w grid as start:stop:step")
    p.add_argument("--w-hat", type=float, default=None, dest="w_hat",
                   help="estimated attack probability; adds the embed decision")
    p.set_defaults(func=cmd_geer)

    p = sub.add_parser("validate", help="model-vs-replayed errors and box-plot statistics")
    add_common(p)
    p.add_argument("--max-rows", type=int, default=20000,
                   help="omit per-threshold arrays from the report above this many thresholds")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("synth", help="write a synthetic score file from a preset")
    p.add_argument("--preset", required=True, choices=list(PRESET_NAMES))
    p.add_argument("--seed", type=int, default=None, help="override the preset seed")
    p.add_argument("--out", required=True, help="output score CSV path")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("demo", help="write the bundled demonstration score files")
    p.add_argument("--out-dir", required=True, dest="out_dir")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("serve", help="serve the HTTP API over a score-file directory")
    p.add_argument("--port", type=int, required=True)
    p.add_argument("--data-dir", required=True, dest="data_dir")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except PadfuseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
