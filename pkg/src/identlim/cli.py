"""Command-line front end.

Subcommands: telltale, simulate, adversary, problang-verify, growth, compute,
report-all. Exit codes: 0 success, 1 usage error, 2 input parse error,
3 validation or check failure. All outputs are UTF-8, deterministic for a
fixed configuration, and written atomically.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from datetime import date
from pathlib import Path

from . import computecost, ecosystem, growth, problang
from .games import (
    Learner,
    constant_top_learner,
    fair_teacher,
    min_consistent_learner,
    nested_adversary,
    run_simulation,
    support_adversary,
)
from .languages import FamilyValidationError, LanguageFamily, SchemaError, parse_family
from .reporting import csv_text, dump_json, provenance, write_text_atomic
from .svgchart import render_line_chart
from .telltale import construct_telltales, make_finite_class_learner, verify_angluin_condition

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_CHECK = 3

LEARNER_NAMES = ("telltale", "min-consistent", "always-top", "prob-elim")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        raise UsageError(message)


def _build_learner(name: str, family: LanguageFamily) -> Learner:
    if name == "telltale":
        return make_finite_class_learner(family)
    if name == "min-consistent":
        return min_consistent_learner(family)
    if name == "always-top":
        return constant_top_learner(family)
    raise UsageError(f"learner {name!r} not usable here")


def _load_family(path: str) -> LanguageFamily:
    return parse_family(Path(path).read_text(encoding="utf-8"))


def _parse_window(text: str) -> tuple[date, date]:
    try:
        lo_text, hi_text = text.split(":")
        lo = date(int(lo_text[:4]), int(lo_text[5:7]), 1)
        hi = date(int(hi_text[:4]), int(hi_text[5:7]), 1)
    except (ValueError, IndexError) as exc:
        raise UsageError(f"window must look like 2019-01:2025-01, got {text!r}") from exc
    if lo > hi:
        raise UsageError("window start is after its end")
    return lo, hi


def _year_axis(grid: tuple[date, ...]) -> list[float]:
    return [t.year + (t.month - 1) / 12.0 for t in grid]


def _load_snapshot(args) -> tuple[ecosystem.Snapshot, dict[str, str]]:
    region_path = args.region_map or ecosystem.bundled_data_path("region_map.json")
    assets_path = args.assets or ecosystem.bundled_data_path("ecosystem_2025.csv")
    region_map = ecosystem.load_region_map(region_path)
    snapshot = ecosystem.ingest_csv(assets_path, region_map)
    return snapshot, {"assets": assets_path, "region_map": region_path}


# --- subcommands ----------------------------------------------------------------


def cmd_telltale(args) -> int:
    family_path = args.family or ecosystem.bundled_data_path("family_chain3.json")
    family = _load_family(family_path)
    telltales = construct_telltales(family)
    ok, violation = verify_angluin_condition(family, telltales)
    document = {
        "provenance": provenance({"command": "telltale"}, {"family": family_path}),
        "telltales": telltales.to_document(family),
        "verified": ok,
        "violation": list(violation) if violation else None,
    }
    write_text_atomic(args.out, dump_json(document))
    return EXIT_OK if ok else EXIT_CHECK


def cmd_simulate(args) -> int:
    family_path = args.family or ecosystem.bundled_data_path("family_chain3.json")
    family = _load_family(family_path)
    try:
        target_index = family.index_of(args.target)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc
    learner = _build_learner(args.learner, family)
    teacher = fair_teacher(family.languages[target_index], args.target)
    report = run_simulation(teacher, learner, args.horizon)
    document = {
        "provenance": provenance(
            {
                "command": "simulate",
                "target": args.target,
                "learner": args.learner,
                "horizon": args.horizon,
            },
            {"family": family_path},
        ),
        "report": report.to_json_dict(),
    }
    write_text_atomic(args.out, dump_json(document))
    if args.csv:
        write_text_atomic(
            args.csv, csv_text(report.CSV_FIELDS, [report.to_csv_row()])
        )
    return EXIT_OK


def cmd_adversary(args) -> int:
    config = {
        "command": "adversary",
        "mode": args.mode,
        "learner": args.learner,
        "horizon": args.horizon,
    }
    if args.mode == "nested":
        max_k = args.max_k or args.horizon
        config["max_k"] = max_k
        from .languages import build_unary_nested_family

        family = build_unary_nested_family(max_k)
        learner = _build_learner(
            args.learner if args.learner != "prob-elim" else "min-consistent", family
        )
        report = nested_adversary(learner, family, args.horizon)
    else:
        candidates = [problang.p1_language(), problang.p2_language()]
        if args.learner in ("prob-elim",):
            learner = problang.make_prob_learner(candidates)
        else:
            family = LanguageFamily(
                tuple(c.support for c in candidates), tuple(c.name for c in candidates)
            )
            learner = _build_learner(args.learner, family)
        report = run_simulation(support_adversary(), learner, args.horizon)
    document = {
        "provenance": provenance(config),
        "report": report.to_json_dict(),
    }
    write_text_atomic(args.out, dump_json(document))
    if args.csv:
        write_text_atomic(args.csv, csv_text(report.CSV_FIELDS, [report.to_csv_row()]))
    return EXIT_OK


def cmd_problang_verify(args) -> int:
    report = problang.verification_report(
        n_max=args.max_n, trials=args.trials, seed=args.seed
    )
    document = {
        "provenance": provenance(
            {
                "command": "problang-verify",
                "max_n": args.max_n,
                "trials": args.trials,
                "seed": args.seed,
            }
        ),
        "report": report,
    }
    write_text_atomic(args.out, dump_json(document))
    if args.grid_csv:
        rows = [
            {"samples": m, "accuracy": acc}
            for m, acc in sorted(
                ((int(k), v) for k, v in report["classifier_accuracy_by_m"].items())
            )
        ]
        write_text_atomic(args.grid_csv, csv_text(("samples", "accuracy"), rows))
    return EXIT_OK if report["checks_pass"] else EXIT_CHECK


def _series_csv_rows(series: ecosystem.CumulativeSeries) -> list[dict]:
    rows = []
    for i, t in enumerate(series.grid):
        c, o, d = series.closed[i], series.open[i], series.datasets[i]
        rows.append(
            {
                "t": t.isoformat()[:7],
                "C": c,
                "O": o,
                "D": d,
                "N_k1": growth.n_bound(c, o, d, 1),
                "N_k2": growth.n_bound(c, o, d, 2),
                "N_k3": growth.n_bound(c, o, d, 3),
            }
        )
    return rows


def _fit_line_points(fit: growth.ExpFit, grid: tuple[date, ...]) -> list[tuple[float, float]]:
    anchor = grid[0]
    points = []
    for t in grid:
        x = (t.year - anchor.year) + (t.month - anchor.month) / 12.0
        points.append((t.year + (t.month - 1) / 12.0, math.exp(fit.ln_a + fit.b * x)))
    return points


def cmd_growth(args) -> int:
    snapshot, inputs = _load_snapshot(args)
    snapshot = ecosystem.impute_params(snapshot)
    window = _parse_window(args.window)
    series = ecosystem.cumulative_series(snapshot, strict_access=args.strict_access)
    config = {
        "command": "growth",
        "k": args.k,
        "window": args.window,
        "strict_access": args.strict_access,
        "slice": args.slice,
    }
    header = provenance(config, inputs)
    write_text_atomic(args.out, csv_text(
        ("t", "C", "O", "D", "N_k1", "N_k2", "N_k3"), _series_csv_rows(series), header
    ))

    if args.slice:
        slices = growth.slice_series(snapshot, args.slice, k=args.k)
        fits = {}
        chart_series = []
        for label, points in sorted(slices.items()):
            usable = [p for p in points if window[0] <= p.t <= window[1] and p.n > 0]
            if len(usable) >= 3:
                fit = growth.fit_exponential(points, *window)
                fits[label] = {
                    "b_per_year": fit.b,
                    "r2": fit.r2,
                    "doubling_time_years": fit.tau,
                }
            chart_series.append(
                (label, [(t, float(p.n)) for t, p in zip(_year_axis(series.grid), points)])
            )
        fits_doc = {"provenance": header, "slice": args.slice, "k": args.k, "fits": fits}
        if args.fits:
            write_text_atomic(args.fits, dump_json(fits_doc))
        if args.svg:
            chart = render_line_chart(
                chart_series,
                title=f"Candidate-origin bound by {args.slice} (k={args.k})",
                x_label="year",
                y_label="N(t)",
                log_y=True,
                comment=f"identlim slice={args.slice} k={args.k}",
            )
            write_text_atomic(args.svg, chart)
        return EXIT_OK

    points = growth.n_series(series, args.k)
    fit = growth.fit_exponential(points, *window)
    fits_doc = {
        "provenance": header,
        "fits": growth.fits_table(series, *window),
        "selected_k": args.k,
    }
    if args.fits:
        write_text_atomic(args.fits, dump_json(fits_doc))
    if args.svg:
        observed = (
            f"N_k{args.k}",
            [(x, float(p.n)) for x, p in zip(_year_axis(series.grid), points)],
        )
        tau_text = "n/a" if fit.tau is None else f"{fit.tau:.2f}"
        fitted = (
            f"fit b={fit.b:.2f}/yr, tau={tau_text} yr",
            _fit_line_points(fit, series.grid),
        )
        chart = render_line_chart(
            [observed],
            title=f"Candidate-origin lower bound (k={args.k})",
            x_label="year",
            y_label="N(t)",
            log_y=True,
            dashed=fitted,
            comment=f"identlim growth k={args.k} window={args.window}",
        )
        write_text_atomic(args.svg, chart)
    return EXIT_OK


def _scenario_rows(results) -> list[dict]:
    return [
        {
            "scenario": r.scenario,
            "total_flops": f"{r.total_flops:.6g}",
            "wall_seconds": f"{r.wall_seconds:.6g}",
            "wall_human": r.wall_human,
            "data_bytes": f"{r.data_bytes:.6g}",
            "stream_seconds": f"{r.stream_seconds:.6g}",
            "stream_human": r.stream_human,
        }
        for r in results
    ]


def _national_text(report: dict) -> str:
    lines = [
        "Annual nationwide attribution budget (reference machine)",
        "-" * 58,
        f"Daily active users:            {report['daily_active_users']:.3g}",
        f"Tokens per day:                {report['tokens_per_day']:.3g}",
        f"Tokens per year:               {report['tokens_per_year']:.3g}",
        f"Model pool parameters:         {report['params_total']:.3g}",
        f"Data volume (4 B/token):       {report['data_bytes']:.3g} B",
        f"Streaming time, annual volume: {computecost.render_duration(report['stream_seconds_annual'])}",
        f"Streaming time, daily volume:  {computecost.render_duration(report['stream_seconds_daily'])}",
        f"Brute-force likelihood FLOPs:  {report['total_flops']:.3g}",
        f"Processing time:               {report['wall_human']} ({report['wall_seconds']:.3g} s)",
    ]
    return "\n".join(lines) + "\n"


def cmd_compute(args) -> int:
    params_total = args.params_total
    inputs: dict[str, str] = {}
    if params_total is None:
        if args.assets:
            snapshot, inputs = _load_snapshot(args)
            series = ecosystem.cumulative_series(ecosystem.impute_params(snapshot))
            params_total = series.params_total[-1]
        else:
            params_total = computecost.PARAMS_TOTAL_2025
    if args.preset == "all":
        scenarios = [factory(params_total) for factory in computecost.PRESETS.values()]
    elif args.preset:
        scenarios = [computecost.PRESETS[args.preset](params_total)]
    else:
        if args.tokens is None:
            raise UsageError("custom scenarios need --tokens (or pick a --preset)")
        scenarios = [
            computecost.ComputeScenario(
                name="custom",
                params_total=params_total,
                tokens=args.tokens,
                machine_flops_per_sec=args.machine_flops,
                io_bytes_per_sec=args.io_rate,
            )
        ]
    results = [computecost.evaluate(s) for s in scenarios]
    config = {
        "command": "compute",
        "preset": args.preset,
        "params_total": params_total,
        "tokens": args.tokens,
    }
    header = provenance(config, inputs)
    document = {
        "provenance": header,
        "results": [r.to_dict() for r in results],
        "national": computecost.national_report(params_total),
    }
    write_text_atomic(args.out, dump_json(document))
    if args.csv:
        write_text_atomic(
            args.csv,
            csv_text(
                (
                    "scenario",
                    "total_flops",
                    "wall_seconds",
                    "wall_human",
                    "data_bytes",
                    "stream_seconds",
                    "stream_human",
                ),
                _scenario_rows(results),
                header,
            ),
        )
    if args.text:
        write_text_atomic(args.text, _national_text(document["national"]))
    return EXIT_OK


def cmd_report_all(args) -> int:
    out_dir = Path(args.out_dir)
    snapshot, inputs = _load_snapshot(args)
    snapshot = ecosystem.impute_params(snapshot)
    series = ecosystem.cumulative_series(snapshot, strict_access=args.strict_access)
    window = _parse_window(args.window)
    header = provenance(
        {"command": "report-all", "window": args.window, "strict_access": args.strict_access},
        inputs,
    )
    years = _year_axis(series.grid)

    # Growth series, fits, and charts for each k.
    write_text_atomic(
        out_dir / "growth_series.csv",
        csv_text(("t", "C", "O", "D", "N_k1", "N_k2", "N_k3"), _series_csv_rows(series), header),
    )
    fits_rows = growth.fits_table(series, *window)
    write_text_atomic(
        out_dir / "fits.json", dump_json({"provenance": header, "fits": fits_rows})
    )
    write_text_atomic(
        out_dir / "fits.csv",
        csv_text(
            ("metric", "max_datasets_per_finetune", "b_per_year", "r2", "doubling_time_years"),
            [
                {k: row[k] for k in (
                    "metric", "max_datasets_per_finetune", "b_per_year", "r2", "doubling_time_years"
                )}
                for row in fits_rows
            ],
            header,
        ),
    )
    points_k1 = growth.n_series(series, 1)
    fit_k1 = growth.fit_exponential(points_k1, *window)
    tau_text = "n/a" if fit_k1.tau is None else f"{fit_k1.tau:.2f}"
    write_text_atomic(
        out_dir / "growth_k1.svg",
        render_line_chart(
            [("N_k1", [(x, float(p.n)) for x, p in zip(years, points_k1)])],
            title="Candidate-origin lower bound, single-dataset fine-tunes",
            x_label="year",
            y_label="N(t)",
            log_y=True,
            dashed=(f"fit b={fit_k1.b:.2f}/yr, tau={tau_text} yr", _fit_line_points(fit_k1, series.grid)),
            comment="identlim report-all growth k=1",
        ),
    )
    write_text_atomic(
        out_dir / "growth_k23.svg",
        render_line_chart(
            [
                (f"N_k{k}", [(x, float(p.n)) for x, p in zip(years, growth.n_series(series, k))])
                for k in (2, 3)
            ],
            title="Candidate-origin lower bound, multi-dataset fine-tunes",
            x_label="year",
            y_label="N(t)",
            log_y=True,
            comment="identlim report-all growth k=2,3",
        ),
    )

    # Modality and region slices.
    for dimension in ("modality", "region"):
        slices = growth.slice_series(snapshot, dimension, k=1)
        rows = []
        chart_series = []
        for label, points in sorted(slices.items()):
            for x, p in zip(years, points):
                rows.append(
                    {"t": p.t.isoformat()[:7], "label": label, "C": p.closed, "O": p.open,
                     "D": p.datasets, "N_k1": p.n}
                )
            chart_series.append((label, [(x, float(p.n)) for x, p in zip(years, points)]))
        write_text_atomic(
            out_dir / f"{dimension}_slices.csv",
            csv_text(("t", "label", "C", "O", "D", "N_k1"), rows, header),
        )
        write_text_atomic(
            out_dir / f"{dimension}.svg",
            render_line_chart(
                chart_series,
                title=f"Candidate-origin bound by {dimension} (k=1)",
                x_label="year",
                y_label="N(t)",
                log_y=True,
                comment=f"identlim report-all slice={dimension}",
            ),
        )

    # Cumulative parameters.
    write_text_atomic(
        out_dir / "params_cliff.csv",
        csv_text(
            ("t", "params_total"),
            [
                {"t": t.isoformat()[:7], "params_total": f"{v:.6g}"}
                for t, v in zip(series.grid, series.params_total)
            ],
            header,
        ),
    )
    write_text_atomic(
        out_dir / "params_cliff.svg",
        render_line_chart(
            [("cumulative parameters", [(x, v) for x, v in zip(years, series.params_total) if v > 0])],
            title="Cumulative parameters of catalogued models",
            x_label="year",
            y_label="parameters",
            log_y=True,
            comment="identlim report-all params",
        ),
    )

    # Compute sweeps.
    sweep = computecost.sweep_grid(series)
    write_text_atomic(
        out_dir / "compute_sweep_single.csv",
        csv_text(
            ("year", "params_total", "tokens_per_item", "wall_seconds", "log10_wall_seconds"),
            [
                {**row, "params_total": f"{row['params_total']:.6g}",
                 "wall_seconds": f"{row['wall_seconds']:.6g}",
                 "log10_wall_seconds": f"{row['log10_wall_seconds']:.6f}"}
                for row in sweep["single_item"]
            ],
            header,
        ),
    )
    token_lengths = sorted({row["tokens_per_item"] for row in sweep["single_item"]})
    write_text_atomic(
        out_dir / "compute_single.svg",
        render_line_chart(
            [
                (
                    f"{int(tokens):,} tokens",
                    [
                        (row["year"], row["wall_seconds"])
                        for row in sweep["single_item"]
                        if row["tokens_per_item"] == tokens
                    ],
                )
                for tokens in token_lengths
            ],
            title="Single-item attribution cost against all known models",
            x_label="year",
            y_label="wall seconds",
            log_y=True,
            comment="identlim report-all compute single-item",
        ),
    )
    write_text_atomic(
        out_dir / "compute_daily.csv",
        csv_text(
            ("year", "params_total", "wall_seconds", "wall_hours"),
            [
                {**row, "params_total": f"{row['params_total']:.6g}",
                 "wall_seconds": f"{row['wall_seconds']:.6g}",
                 "wall_hours": f"{row['wall_hours']:.6g}"}
                for row in sweep["daily_sweep"]
            ],
            header,
        ),
    )
    write_text_atomic(
        out_dir / "compute_daily.svg",
        render_line_chart(
            [
                (
                    "daily sweep (10k items x 100k tokens)",
                    [(row["year"], row["wall_hours"]) for row in sweep["daily_sweep"]],
                )
            ],
            title="Daily attribution sweep on the reference machine",
            x_label="year",
            y_label="wall hours",
            log_y=True,
            comment="identlim report-all compute daily",
        ),
    )

    # National annual budget.
    national = computecost.national_report(series.params_total[-1])
    write_text_atomic(
        out_dir / "national_budget.json",
        dump_json({"provenance": header, "national": national}),
    )
    write_text_atomic(out_dir / "national_budget.txt", _national_text(national))
    return EXIT_OK


# --- argument wiring -------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="identlim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("telltale", help="construct and verify tell-tale sets for a family")
    p.add_argument("--family", help="family JSON (default: bundled 3-chain)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_telltale)

    p = sub.add_parser("simulate", help="run a fair-presentation learning game")
    p.add_argument("--family", help="family JSON (default: bundled 3-chain)")
    p.add_argument("--target", required=True, help="family member name to present")
    p.add_argument("--learner", choices=LEARNER_NAMES[:3], default="telltale")
    p.add_argument("--horizon", type=int, default=100)
    p.add_argument("--out", required=True)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("adversary", help="run an adversarial presentation")
    p.add_argument("--mode", choices=("nested", "support"), required=True)
    p.add_argument("--learner", choices=LEARNER_NAMES, default="min-consistent")
    p.add_argument("--horizon", type=int, default=100)
    p.add_argument("--max-k", type=int, help="ladder height for nested mode (default: horizon)")
    p.add_argument("--out", required=True)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_adversary)

    p = sub.add_parser("problang-verify", help="verify the probabilistic pair and classifier")
    p.add_argument("--max-n", type=int, default=60)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--grid-csv")
    p.set_defaults(func=cmd_problang_verify)

    p = sub.add_parser("growth", help="hypothesis-space growth series, fits, chart")
    p.add_argument("--assets", help="asset CSV (default: bundled snapshot)")
    p.add_argument("--region-map", help="region map JSON (default: bundled)")
    p.add_argument("--k", type=int, choices=(1, 2, 3), default=1)
    p.add_argument("--window", default="2019-01:2025-01")
    p.add_argument("--strict-access", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--slice", choices=("modality", "region"))
    p.add_argument("--out", required=True, help="series CSV path")
    p.add_argument("--fits", help="fit summary JSON path")
    p.add_argument("--svg", help="chart path")
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("compute", help="attribution compute-cost scenarios")
    p.add_argument("--preset", choices=tuple(computecost.PRESETS) + ("all",), default="all")
    p.add_argument("--params-total", type=float)
    p.add_argument("--tokens", type=float)
    p.add_argument("--machine-flops", type=float, default=computecost.REFERENCE_MACHINE_FLOPS)
    p.add_argument("--io-rate", type=float, default=computecost.REFERENCE_IO_BYTES_PER_SEC)
    p.add_argument("--assets", help="derive the parameter pool from this asset CSV")
    p.add_argument("--region-map")
    p.add_argument("--out", required=True)
    p.add_argument("--csv")
    p.add_argument("--text")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("report-all", help="emit every analytics artifact into a directory")
    p.add_argument("--assets")
    p.add_argument("--region-map")
    p.add_argument("--window", default="2019-01:2025-01")
    p.add_argument("--strict-access", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_report_all)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SchemaError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (FamilyValidationError, ValueError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
