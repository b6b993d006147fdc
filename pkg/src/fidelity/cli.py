"""Command-line front end: ``fidelity <command> ...``.

Exit codes: 0 success, 2 input error (unreadable file, bad flags, schema
violation), 3 domain error (degenerate statistics, duplicate names, ...).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from . import __version__
from .errors import FidelityError
from .gradeability import SoilDistribution, VehicleConfig, monte_carlo_ca
from .metrics import ModelRecord, SampleSummary, fidelity_score, rank_absolute, rank_relative, summarize
from .report import FidelityReport, ReportRow, fmt, round_sig
from .scenario import Criterion, ScenarioDomain, fidelity_map, validity_range
from .surrogate import (
    derivative_bound,
    exp_derivatives,
    interpolate_equispaced,
    interpolation_error_bound,
    max_abs_error,
    overfit_demo,
    sin_derivatives,
    surrogate_fidelity_check,
    taylor_family,
)
from .variants import (
    DEFAULT_GRID,
    FEATURE_COSTS,
    CoilSpringSpec,
    DoEGrid,
    doe_run,
    max_deflection,
    select_cheapest_acceptable,
)

FUNCTIONS = {
    "sin": (math.sin, sin_derivatives),
    "exp": (math.exp, exp_derivatives),
}


class InputError(Exception):
    """Bad user input; maps to exit code 2."""


# ---------------------------------------------------------------- input helpers


def read_samples(path: str | Path) -> list[float]:
    """Read a CSV (header ``value``) or JSON array of reals; reject non-finite entries."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    if path.suffix.lower() == ".json" or text.lstrip().startswith("["):
        try:
            values = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON ({exc})") from exc
        if not isinstance(values, list):
            raise InputError(f"{path}: expected a JSON array of numbers")
        out, bad = [], []
        for i, v in enumerate(values):
            try:
                x = float(v)
            except (TypeError, ValueError):
                x = math.nan
            (out.append(x) if math.isfinite(x) else bad.append(f"item {i}"))
    else:
        lines = text.splitlines()
        if not lines or lines[0].strip().lower() not in ("value", "critical_angle_pct"):
            raise InputError(f"{path}: expected CSV header 'value'")
        out, bad = [], []
        for lineno, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            try:
                x = float(line.strip())
            except ValueError:
                x = math.nan
            (out.append(x) if math.isfinite(x) else bad.append(f"line {lineno}"))
    if bad:
        raise InputError(f"{path}: non-finite or unparsable entries at {', '.join(bad)}")
    if not out:
        raise InputError(f"{path}: no values")
    return out


def parse_stats(text: str) -> tuple[float, float]:
    try:
        mean, std = (float(p) for p in text.split(","))
    except ValueError as exc:
        raise InputError(f"expected MEAN,STD, got {text!r}") from exc
    return mean, std


def parse_model_arg(arg: str) -> tuple[str, SampleSummary, int | None]:
    """``name:mean,std`` shorthand, ``name=path`` or a bare sample-file path."""
    if ":" in arg:
        name, _, stats = arg.rpartition(":")
        try:
            mean, std = parse_stats(stats)
        except InputError:
            pass
        else:
            return name, _summary(mean, std), None
    if "=" in arg:
        name, _, path = arg.partition("=")
    else:
        name, path = Path(arg).stem, arg
    s = summarize(read_samples(path))
    return name, s, s.n


def _summary(mean: float, std: float, n: int = 1) -> SampleSummary:
    try:
        return SampleSummary(mean, std, n)
    except FidelityError as exc:
        raise InputError(str(exc)) from exc


def load_json_config(path: str | Path | None, schema_name: str) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc
    validate(data, schema_name, str(path))
    return data


def load_schema(schema_name: str) -> dict:
    return json.loads(resources.files("fidelity.schemas").joinpath(f"{schema_name}.schema.json").read_text())


def validate(data, schema_name: str, label: str) -> None:
    validator = jsonschema.Draft202012Validator(load_schema(schema_name))
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        lines = []
        for e in errors:
            where = "/".join(str(p) for p in e.absolute_path) or "<root>"
            lines.append(f"  {where}: {e.message}")
        raise InputError(f"{label}: config schema violation\n" + "\n".join(lines))


def emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def csv_text(header: list[str], rows: list[list], precision: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v, precision) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def dump_json(obj, precision: int | None) -> str:
    return json.dumps(round_sig(obj, precision), indent=2) + "\n"


# ---------------------------------------------------------------- commands


def cmd_eval(args) -> int:
    if args.referent_stats:
        mean, std = parse_stats(args.referent_stats)
        referent = _summary(mean, std)
    else:
        referent = summarize(read_samples(args.referent))
    rows = []
    for arg in args.model:
        name, summary, n = parse_model_arg(arg)
        rows.append(ReportRow.from_score(name, fidelity_score(summary, referent), summary, n))
    report = FidelityReport(args.referent_name, tuple(rows), __version__)
    if args.format == "json":
        emit(report.to_json(args.precision) + "\n", args.out)
    else:
        emit(report.to_table(args.precision) + "\n", args.out)
    return 0


def _registry_models(data: dict) -> tuple[list[ModelRecord], SampleSummary]:
    ref = data["referent"]
    referent = _summary(ref["mean"], ref["std"], ref.get("n", 1))
    models = [
        ModelRecord(
            m["name"],
            _summary(m["mean"], m["std"], m.get("n", 1)),
            frozenset(m.get("information_tags", ())),
            m.get("cost"),
        )
        for m in data["models"]
    ]
    return models, referent


def random_registry(n_models: int, seed: int) -> dict:
    """Synthetic registry around a unit referent; used for invariance spot checks."""
    rng = np.random.default_rng(seed)
    return {
        "referent": {"mean": 0.0, "std": 1.0},
        "models": [
            {"name": f"m{i}", "mean": float(rng.normal(0.0, 1.5)), "std": float(rng.uniform(0.2, 3.0))}
            for i in range(n_models)
        ],
    }


def cmd_rank(args) -> int:
    if args.registry:
        data = load_json_config(args.registry, "registry")
    elif args.random_models:
        if args.seed is None:
            raise InputError("--random-models requires --seed")
        data = random_registry(args.random_models, args.seed)
    else:
        raise InputError("give --registry FILE or --random-models N --seed S")
    models, referent = _registry_models(data)
    out: dict = {"version": __version__}
    rankings = {}
    if args.mode in ("absolute", "both"):
        rankings["absolute"] = rank_absolute(models, referent)
    if args.mode in ("relative", "both"):
        rankings["relative"] = rank_relative(models, referent)
    for mode, r in rankings.items():
        out[mode] = {
            "order": [{"name": n, "f": f} for n, f in r.entries],
            "tie_policy": r.tie_policy,
            "ties": [list(t) for t in r.ties],
        }
    if args.mode == "both":
        same = rankings["absolute"].names == rankings["relative"].names
        out["invariance"] = "PASS" if same else "FAIL"
    if args.format == "json":
        emit(dump_json(out, args.precision), args.out)
    else:
        lines = []
        for mode, r in rankings.items():
            lines.append(f"{mode}:")
            lines += [f"  {i + 1}. {n}  f={fmt(f, args.precision)}" for i, (n, f) in enumerate(r.entries)]
        if "invariance" in out:
            lines.append(f"ranking invariance: {out['invariance']}")
        emit("\n".join(lines) + "\n", args.out)
    return 0 if out.get("invariance", "PASS") == "PASS" else 1


def gradeability_inputs(config: dict) -> tuple[VehicleConfig, SoilDistribution]:
    try:
        return VehicleConfig(**config.get("vehicle", {})), SoilDistribution(**config.get("soil", {}))
    except FidelityError as exc:
        raise InputError(str(exc)) from exc


def cmd_gradeability(args) -> int:
    vehicle, soil = gradeability_inputs(load_json_config(args.config, "gradeability"))
    result = monte_carlo_ca(vehicle, soil, args.runs, args.seed)
    samples_csv = csv_text(["critical_angle_pct"], [[x] for x in result.samples], args.precision)
    emit(samples_csv, args.out)
    summary = {
        "mean": result.summary.mean,
        "std": result.summary.std,
        "n": result.summary.n,
        "censored_high": result.censored_high,
        "censored_low": result.censored_low,
        "flags": list(result.flags),
        "seed": args.seed,
        "runs": args.runs,
        "vehicle": asdict(vehicle),
        "soil": asdict(soil),
        "version": __version__,
    }
    (sys.stdout if args.out else sys.stderr).write(dump_json(summary, args.precision))
    return 0


def cmd_map(args) -> int:
    data = load_json_config(args.config, "regions")

    def regions(items):
        try:
            return [
                (ScenarioDomain(r["lo"], r["hi"], r["resolution"]), SampleSummary(r["mean"], r["std"], r.get("n", 1)))
                for r in items
            ]
        except FidelityError as exc:
            raise InputError(str(exc)) from exc

    result = fidelity_map(regions(data["model"]), regions(data["referent"]))
    rows = [[d.lo, d.hi, s.f, s.f_a, s.f_v] for d, s in result]
    out = {
        "version": __version__,
        "regions": [
            {"lo": d.lo, "hi": d.hi, "f": s.f, "f_a": s.f_a, "f_v": s.f_v, "percent_error": s.percent_error}
            for d, s in result
        ],
    }
    emit(dump_json(out, args.precision), args.out)
    if args.csv:
        Path(args.csv).write_text(csv_text(["lo", "hi", "f", "f_a", "f_v"], rows, args.precision))
    return 0


def _function(name: str):
    try:
        return FUNCTIONS[name]
    except KeyError:
        raise InputError(f"unknown function {name!r}; choose from {', '.join(FUNCTIONS)}") from None


def cmd_surrogate(args) -> int:
    fn, derivs = _function(args.function)
    domain = ScenarioDomain(args.a, args.b, (args.b - args.a) / 100)
    fits = []
    for n in args.degrees:
        p = interpolate_equispaced(fn, args.a, args.b, n)
        M = derivative_bound(derivs, n + 1, args.a, args.b)
        f_sur, f_ref = surrogate_fidelity_check(p, fn, domain, args.noise_std, args.mc_runs, args.seed)
        fits.append({
            "degree": n,
            "max_error": max_abs_error(fn, p, args.a, args.b),
            "error_bound": interpolation_error_bound(M, n, args.a, args.b).bound,
            "derivative_bound": M,
            "f_surrogate": f_sur,
            "f_referent": f_ref,
        })
    out = {"function": args.function, "a": args.a, "b": args.b, "seed": args.seed,
           "mc_runs": args.mc_runs, "noise_std": args.noise_std, "version": __version__, "fits": fits}
    emit(dump_json(out, args.precision), args.out)
    if args.csv:
        keys = ["degree", "max_error", "error_bound", "f_surrogate"]
        Path(args.csv).write_text(csv_text(keys, [[f[k] for k in keys] for f in fits], args.precision))
    return 0


def cmd_taylor(args) -> int:
    fn, derivs = _function(args.function)
    domain = ScenarioDomain(args.lo, args.hi, args.resolution)
    criterion = Criterion(args.criterion, args.threshold)
    rows = []
    for order, model in zip(args.orders, taylor_family(derivs, args.center, args.orders)):
        vr = validity_range(model, fn, domain, criterion)
        around = vr.interval_containing(args.center)
        lo, hi = around if around else (math.nan, math.nan)
        rows.append([order, lo, hi, (hi - lo) if around else 0.0])
    emit(csv_text(["order", "valid_lo", "valid_hi", "width"], rows, args.precision), args.out)
    return 0


def cmd_overfit(args) -> int:
    holdout = args.holdout_seed if args.holdout_seed is not None else args.seed + 1
    result = overfit_demo(args.seed, holdout, args.n, args.noise_std, args.degrees)
    result["version"] = __version__
    emit(dump_json(result, args.precision), args.out)
    return 0


def cmd_variants(args) -> int:
    config = load_json_config(args.config, "variants")
    try:
        spec = CoilSpringSpec(**config.get("spring", {}))
        grid = DoEGrid(**{k: tuple(v) for k, v in config["grid"].items()}) if "grid" in config else DEFAULT_GRID
    except (FidelityError, TypeError) as exc:
        raise InputError(str(exc)) from exc
    costs = config.get("feature_costs")
    if costs is not None:
        costs = {**FEATURE_COSTS, **costs}
    table = doe_run(spec, grid, costs)
    if args.epsilon is not None:
        eps = args.epsilon
    elif "epsilon" in config:
        eps = config["epsilon"]
    else:
        eps = config.get("epsilon_fraction", 0.01) * max_deflection(table)
    report = select_cheapest_acceptable(table, eps)
    points = grid.points()
    out = {
        "version": __version__,
        "epsilon": eps,
        "cost_ratio": report.cost_ratio,
        "chosen_cost": report.chosen_cost,
        "referent_cost": report.referent_cost,
        "points": [
            {"point": i, "load": p[0], "temperature": p[1], "length_multiplier": p[2], "chosen": list(v.bits)}
            for i, (p, v) in enumerate(zip(points, report.chosen))
        ],
    }
    emit(dump_json(out, args.precision), args.out)
    if args.csv:
        rows = [[pt, flags.label, "yes" if ok else "no"] for pt, flags, ok in report.accepted]
        Path(args.csv).write_text(csv_text(["point", "variant", "accepted"], rows, args.precision))
    return 0


# ---------------------------------------------------------------- parser


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fidelity", description="Model fidelity evaluation tools.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out=True):
        p.add_argument("--precision", type=int, default=6, help="significant digits for floats (default 6)")
        if out:
            p.add_argument("--out", help="write primary output here instead of stdout")

    p = sub.add_parser("eval", help="score models against a referent")
    p.add_argument("--model", action="append", required=True,
                   help="NAME:MEAN,STD, NAME=FILE or FILE; repeatable")
    ref = p.add_mutually_exclusive_group(required=True)
    ref.add_argument("--referent", help="referent sample file")
    ref.add_argument("--referent-stats", help="referent MEAN,STD")
    p.add_argument("--referent-name", default="referent")
    p.add_argument("--format", choices=("json", "table"), default="table")
    common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("rank", help="absolute/relative model rankings")
    p.add_argument("--registry", help="registry JSON")
    p.add_argument("--random-models", type=int, help="rank N synthetic models instead of a registry")
    p.add_argument("--seed", type=int)
    p.add_argument("--mode", choices=("absolute", "relative", "both"), default="both")
    p.add_argument("--format", choices=("json", "table"), default="table")
    common(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("gradeability", help="Monte Carlo critical-angle samples")
    p.add_argument("--config", help="gradeability config JSON (defaults if omitted)")
    p.add_argument("--runs", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_gradeability)

    p = sub.add_parser("map", help="per-region fidelity map")
    p.add_argument("--config", required=True, help="region JSON with 'model' and 'referent' lists")
    p.add_argument("--csv", help="plot-ready CSV output path")
    common(p)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("surrogate", help="interpolation surrogates: error bound and fidelity")
    p.add_argument("--function", default="sin", choices=sorted(FUNCTIONS))
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b", type=float, default=math.pi)
    p.add_argument("--degrees", type=_int_list, default=[2, 3, 4, 5, 6, 7, 8])
    p.add_argument("--mc-runs", type=int, default=1000)
    p.add_argument("--noise-std", type=float, default=0.0)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--csv")
    common(p)
    p.set_defaults(func=cmd_surrogate)

    p = sub.add_parser("taylor", help="validity widths of a Taylor family")
    p.add_argument("--function", default="sin", choices=sorted(FUNCTIONS))
    p.add_argument("--center", type=float, default=1.0)
    p.add_argument("--orders", type=_int_list, default=[1, 3, 5])
    p.add_argument("--lo", type=float, default=-2 * math.pi)
    p.add_argument("--hi", type=float, default=2 * math.pi)
    p.add_argument("--resolution", type=float, default=0.01)
    p.add_argument("--criterion", choices=("relative-error", "absolute-error"), default="relative-error")
    p.add_argument("--threshold", type=float, default=0.01)
    common(p)
    p.set_defaults(func=cmd_taylor)

    p = sub.add_parser("overfit", help="train/holdout RMSE of low- and high-degree fits")
    p.add_argument("--seed", type=int, required=True, help="training-data seed")
    p.add_argument("--holdout-seed", type=int, help="holdout seed (default seed + 1)")
    p.add_argument("--n", type=int, default=30)
    p.add_argument("--noise-std", type=float, default=0.2)
    p.add_argument("--degrees", type=_int_list, default=[3, 9])
    common(p)
    p.set_defaults(func=cmd_overfit)

    p = sub.add_parser("variants", help="cheapest acceptable coil-spring variants over a DoE")
    p.add_argument("--config", help="variants DoE JSON (defaults if omitted)")
    p.add_argument("--epsilon", type=float, help="absolute deformation tolerance in mm")
    p.add_argument("--csv", help="disagreement map CSV (point, variant, accepted)")
    common(p)
    p.set_defaults(func=cmd_variants)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FidelityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
