"""Command-line interface.

Commands: eval, gain, angles, fan, trace, scan, verify, catalog.  Inputs are
spec JSON files or catalog names; outputs are CSV tables, JSON reports, a
deterministic SVG locus plot and a matplotlib PNG alongside it.  Degrees are
given on the command line in units of pi ("--degree 1" is the classical 180
degree locus).  Every tolerance flag can also be set through an environment
variable with the MEROLOCUS_ prefix (e.g. MEROLOCUS_CORRECTOR_TOL).

Exit status: 0 success, 1 verification failure, 2 invalid input, 3 numeric
failure.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, fields as dataclass_fields
from pathlib import Path

from . import catalog as cat
from . import report
from .angles import arrival_angle, arrival_fan, departure_angle, departure_fan
from .errors import (
    CorrectorDivergence,
    DegenerateGeometry,
    EmptyInput,
    InvalidIndex,
    MerolocusError,
    NotRegularPoint,
    OutOfValidityRegion,
    UnknownFunction,
    UnwrapAliasing,
)
from .model import ComplexPoint, load_spec, spec_to_dict
from .phase import PhaseTarget, gain as gain_op, principal_phase
from .tracer import (
    EndpointKind,
    TraceConfig,
    Window,
    continue_through_saddle,
    grid_scan_oracle,
    trace_from_pole,
    verify_curve,
)
from .verification import DEFAULT_SEED, acceptance_report, run_acceptance

_NUMERIC_ERRORS = (CorrectorDivergence, OutOfValidityRegion, DegenerateGeometry,
                   NotRegularPoint, UnwrapAliasing)
_INPUT_ERRORS = (InvalidIndex, UnknownFunction, EmptyInput, ValueError, KeyError,
                 FileNotFoundError, TypeError)


@dataclass
class RunManifest:
    """One CLI invocation: command, input source, validated parameters,
    output directory and the seed for randomized verification sampling.
    Identical manifest + seed produces byte-identical CSV/SVG/JSON outputs."""

    command: str
    spec_source: str | None
    parameters: dict
    output_dir: str
    seed: int = DEFAULT_SEED

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "spec_source": self.spec_source,
            "parameters": self.parameters,
            "output_dir": self.output_dir,
            "seed": self.seed,
        }


def _env_default(name: str, fallback):
    raw = os.environ.get(f"MEROLOCUS_{name.upper()}")
    if raw is None:
        return fallback
    return type(fallback)(raw) if not isinstance(fallback, int) else int(float(raw))


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    defaults = TraceConfig()
    for f in dataclass_fields(TraceConfig):
        flag = "--" + f.name.replace("_", "-")
        fallback = _env_default(f.name, getattr(defaults, f.name))
        kind = int if f.name == "max_points" else float
        parser.add_argument(flag, type=kind, default=fallback)


def _config_from(args: argparse.Namespace) -> TraceConfig:
    kwargs = {f.name: getattr(args, f.name) for f in dataclass_fields(TraceConfig)}
    return TraceConfig(**kwargs)


def _parse_point(text: str) -> ComplexPoint:
    bits = text.split(",")
    if len(bits) == 1:
        return ComplexPoint(float(bits[0]), 0.0)
    if len(bits) == 2:
        return ComplexPoint(float(bits[0]), float(bits[1]))
    raise ValueError(f"point must be 'sigma' or 'sigma,t', got {text!r}")


def _parse_degrees(args: argparse.Namespace) -> list[PhaseTarget]:
    if getattr(args, "degrees", None):
        units = [float(u) for u in args.degrees.split(",")]
    else:
        units = [args.degree]
    return [PhaseTarget.from_pi_units(u) for u in units]


def _parse_anchor(text: str) -> tuple[str, int]:
    kind, _, idx = text.partition(":")
    if kind not in ("pole", "zero") or not idx:
        raise ValueError(f"anchor must look like pole:0 or zero:1, got {text!r}")
    return kind, int(idx)


def _resolve_function(manifest: RunManifest):
    source = manifest.spec_source
    if source is None:
        raise ValueError("this command needs --spec or --catalog")
    if source.startswith("catalog:"):
        name = source.split(":", 1)[1]
        if name in cat.RATIONAL_NAMES:
            return cat.named_rational(name)
        return cat.as_black_box_spec(name)
    return load_spec(source)


def _describe_value(fn, point: ComplexPoint) -> dict:
    value = fn.value_at(point)
    out = {
        "point": {"sigma": point.sigma, "t": point.t},
        "kind": value.kind.value,
        "log_magnitude": value.log_magnitude,
        "phase": value.phase,
        "gain": gain_op(fn, point).k,
    }
    if value.kind.value == "regular":
        w = value.as_complex()
        out["re"] = w.real
        out["im"] = w.imag
    return out


# -- command bodies -------------------------------------------------------------


def _cmd_eval(manifest: RunManifest, out: Path) -> int:
    fn = _resolve_function(manifest)
    point = _parse_point(manifest.parameters["point"])
    report.write_json(_describe_value(fn, point), out / "eval.json")
    return 0


def _cmd_gain(manifest: RunManifest, out: Path) -> int:
    fn = _resolve_function(manifest)
    point = _parse_point(manifest.parameters["point"])
    payload = {
        "point": {"sigma": point.sigma, "t": point.t},
        "k": gain_op(fn, point).k,
    }
    report.write_json(payload, out / "gain.json")
    return 0


def _cmd_angles(manifest: RunManifest, out: Path) -> int:
    fn = _resolve_function(manifest)
    kind, index = _parse_anchor(manifest.parameters["anchor"])
    targets = [PhaseTarget.from_pi_units(u) for u in manifest.parameters["degrees"]]
    rows = []
    for target in targets:
        if kind == "pole":
            angle = departure_angle(fn, index, target)
        else:
            angle = arrival_angle(fn, index, target)
        rows.append((target.degree, angle.theta))
    report.write_fan_csv(rows, out / "angles.csv")
    return 0


def _cmd_fan(manifest: RunManifest, out: Path) -> int:
    fn = _resolve_function(manifest)
    kind, index = _parse_anchor(manifest.parameters["anchor"])
    count = manifest.parameters["count"]
    anchors = fn.pole_anchors() if kind == "pole" else fn.zero_anchors()
    if not 0 <= index < len(anchors):
        raise InvalidIndex(f"{kind} index {index} out of range")
    exponent = anchors[index][1]
    width = 2.0 * exponent * math.pi
    targets = [PhaseTarget.from_degree(i * width / count) for i in range(count)]
    fan = departure_fan(fn, index, targets) if kind == "pole" else arrival_fan(fn, index, targets)
    report.write_fan_csv([(t.degree, a.theta) for t, a in fan.entries], out / "fan.csv")
    return 0


def _cmd_trace(manifest: RunManifest, out: Path, config: TraceConfig) -> int:
    fn = _resolve_function(manifest)
    targets = [PhaseTarget.from_pi_units(u) for u in manifest.parameters["degrees"]]
    pole_indices = (range(len(fn.pole_anchors())) if manifest.parameters["all_poles"]
                    else [manifest.parameters["pole"]])
    curves = []
    summaries = []
    for pole_index in pole_indices:
        for target in targets:
            curve = trace_from_pole(fn, pole_index, target, config)
            curves.append(curve)
            if (manifest.parameters["follow_saddles"]
                    and curve.terminus.kind is EndpointKind.SADDLE):
                curves.extend(continue_through_saddle(fn, curve, config=config))
    for i, curve in enumerate(curves):
        report.write_curve_csv(curve, out / f"curve_{i:03d}.csv")
        entry = {"index": i, "degree_pi_units": curve.degree.pi_units,
                 "origin": curve.origin.describe(),
                 "terminus": curve.terminus.describe(),
                 "points": len(curve.points)}
        if curve.points:
            entry["report"] = verify_curve(fn, curve, tol=config.corrector_tol * 100).to_dict()
        summaries.append(entry)
    report.write_json({"curves": summaries}, out / "trace_summary.json")
    report.emit_plot(curves, fn, out / "locus.svg")
    if manifest.parameters["figure"]:
        report.render_figure(curves, fn, out / "locus.png")
    return 0


def _cmd_scan(manifest: RunManifest, out: Path) -> int:
    fn = _resolve_function(manifest)
    target = PhaseTarget.from_pi_units(manifest.parameters["degrees"][0])
    w = manifest.parameters["window"]
    window = Window(w[0], w[1], w[2], w[3])
    hits = grid_scan_oracle(fn, window, manifest.parameters["resolution"], target,
                            manifest.parameters["delta"])
    report.write_scan_csv(hits, out / "scan.csv")
    if manifest.parameters["figure"]:
        report.render_scan_figure(hits, fn, out / "scan.png",
                                  title=f"degree {target} oracle")
    return 0


def _cmd_verify(manifest: RunManifest, out: Path) -> int:
    results = run_acceptance(manifest.seed)
    payload = acceptance_report(results, manifest.seed)
    report.write_json(payload, out / "verify_report.json")
    for result in results:
        print(result.line())
    return 0 if payload["passed"] else 1


def _cmd_catalog(manifest: RunManifest, out: Path) -> int:
    listing = cat.catalog_listing()
    report.write_json(listing, out / "catalog.json")
    print("rational:", ", ".join(cat.RATIONAL_NAMES))
    print("black box:", ", ".join(cat.BLACK_BOX_NAMES))
    return 0


def run(manifest: RunManifest) -> int:
    """Execute a validated manifest; returns the process exit status."""
    out = Path(manifest.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    report.write_json(manifest.to_dict(), out / "run_manifest.json")
    handlers = {
        "eval": lambda: _cmd_eval(manifest, out),
        "gain": lambda: _cmd_gain(manifest, out),
        "angles": lambda: _cmd_angles(manifest, out),
        "fan": lambda: _cmd_fan(manifest, out),
        "trace": lambda: _cmd_trace(manifest, out,
                                    TraceConfig(**manifest.parameters["config"])),
        "scan": lambda: _cmd_scan(manifest, out),
        "verify": lambda: _cmd_verify(manifest, out),
        "catalog": lambda: _cmd_catalog(manifest, out),
    }
    if manifest.command not in handlers:
        raise ValueError(f"unknown command {manifest.command!r}")
    return handlers[manifest.command]()


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="merolocus",
        description="Root-locus analysis of factored meromorphic functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, needs_source: bool = True) -> None:
        p.add_argument("--out", default="merolocus-out", help="output directory")
        p.add_argument("--seed", type=int, default=int(_env_default("seed", DEFAULT_SEED)))
        if needs_source:
            group = p.add_mutually_exclusive_group(required=True)
            group.add_argument("--spec", help="path to a spec JSON file")
            group.add_argument("--catalog", help="catalog name (see the catalog command)")

    p = sub.add_parser("eval", help="evaluate W(s) at a point")
    common(p)
    p.add_argument("--point", required=True, help="sigma,t")

    p = sub.add_parser("gain", help="gain K = 1/|W(s)| at a point")
    common(p)
    p.add_argument("--point", required=True)

    p = sub.add_parser("angles", help="departure/arrival angles at an anchor")
    common(p)
    p.add_argument("--anchor", required=True, help="pole:IDX or zero:IDX")
    p.add_argument("--degree", type=float, default=1.0, help="degree in units of pi")
    p.add_argument("--degrees", help="comma-separated degrees in units of pi")

    p = sub.add_parser("fan", help="angle fan over one 2*exponent*pi degree window")
    common(p)
    p.add_argument("--anchor", required=True)
    p.add_argument("--count", type=int, default=16)

    p = sub.add_parser("trace", help="trace constant-degree loci from a pole")
    common(p)
    p.add_argument("--degree", type=float, default=1.0)
    p.add_argument("--degrees")
    p.add_argument("--pole", type=int, default=0)
    p.add_argument("--all-poles", action="store_true")
    p.add_argument("--no-follow-saddles", action="store_true")
    p.add_argument("--no-figure", action="store_true")
    _add_config_flags(p)

    p = sub.add_parser("scan", help="brute-force grid oracle for one degree")
    common(p)
    p.add_argument("--degree", type=float, default=1.0)
    p.add_argument("--window", required=True, help="sigma0,sigma1,t0,t1")
    p.add_argument("--resolution", type=int, default=int(_env_default("resolution", 300)))
    p.add_argument("--delta", type=float, default=float(_env_default("delta", 0.01)))
    p.add_argument("--no-figure", action="store_true")

    p = sub.add_parser("verify", help="run the acceptance suite over the catalog")
    common(p, needs_source=False)

    p = sub.add_parser("catalog", help="list built-in functions and zero tables")
    common(p, needs_source=False)
    return parser


def _manifest_from_args(args: argparse.Namespace) -> RunManifest:
    source = None
    if getattr(args, "spec", None):
        source = args.spec
    elif getattr(args, "catalog", None):
        source = f"catalog:{args.catalog}"
    parameters: dict = {}
    if args.command in ("eval", "gain"):
        parameters["point"] = args.point
    if args.command == "angles":
        parameters["anchor"] = args.anchor
        parameters["degrees"] = ([float(u) for u in args.degrees.split(",")]
                                 if args.degrees else [args.degree])
    if args.command == "fan":
        parameters["anchor"] = args.anchor
        parameters["count"] = args.count
    if args.command == "trace":
        parameters["degrees"] = ([float(u) for u in args.degrees.split(",")]
                                 if args.degrees else [args.degree])
        parameters["pole"] = args.pole
        parameters["all_poles"] = bool(args.all_poles)
        parameters["follow_saddles"] = not args.no_follow_saddles
        parameters["figure"] = not args.no_figure
        parameters["config"] = {f.name: getattr(args, f.name)
                                for f in dataclass_fields(TraceConfig)}
    if args.command == "scan":
        parameters["degrees"] = [args.degree]
        parameters["window"] = [float(v) for v in args.window.split(",")]
        parameters["resolution"] = args.resolution
        parameters["delta"] = args.delta
        parameters["figure"] = not args.no_figure
    return RunManifest(
        command=args.command,
        spec_source=source,
        parameters=parameters,
        output_dir=args.out,
        seed=args.seed,
    )


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        manifest = _manifest_from_args(args)
        status = run(manifest)
    except _NUMERIC_ERRORS as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except _INPUT_ERRORS as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    return status


if __name__ == "__main__":
    sys.exit(main())
