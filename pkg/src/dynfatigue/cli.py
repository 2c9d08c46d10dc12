"""Command-line entry point: ``dynfatigue <command> ...``.

Every failure prints one line ``<CODE>: <message>`` to stderr and exits
non-zero, so scripts can key off the prefix.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import catalog, fatigue, reference, stats
from .errors import ArgumentError, FatigueError, ManifestError, SingularParameterError
from .formatting import fmt

EXIT_ERROR = 2


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("E_USAGE", f"{self.prog}: {message}")


def _positive(name):
    def conv(text):
        try:
            v = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be a number, got {text!r}") from None
        if not (v > 0 and math.isfinite(v)):
            raise argparse.ArgumentTypeError(f"{name} must be positive, got {text!r}")
        return v

    return conv


def _json_dump(obj, path):
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _out_dir(path) -> Path:
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError("E_IO", f"cannot create output directory {out}: {exc.strerror}") from None
    return out


# -- simulate ---------------------------------------------------------------

def cmd_simulate(args) -> int:
    path = Path(args.profile)
    if not path.is_file():
        raise CliError("E_IO", f"profile file not found: {path}")
    profile = fatigue.LoadProfile.from_csv(path)
    muscle = fatigue.MuscleProfile(args.mvc, args.k)
    traj = fatigue.simulate(profile, muscle, dt=args.dt)
    out = _out_dir(args.out)
    traj.to_csv(out / "trajectory.csv", stride=args.stride)
    summary = {
        "final_f_cem": float(fmt(traj.final_f_cem)),
        "final_u": float(fmt(traj.final_u)),
        "exhausted_at": None if traj.exhausted_at is None else float(fmt(traj.exhausted_at)),
        "u_unit": fatigue.U_UNIT_LABEL,
        "mvc_N": args.mvc,
        "k_per_min": args.k,
        "dt_min": args.dt,
    }
    _json_dump(summary, out / "summary.json")
    ex = "not reached" if traj.exhausted_at is None else f"{fmt(traj.exhausted_at)} min"
    print(f"final F_cem = {fmt(traj.final_f_cem)} N, final U = {fmt(traj.final_u)}, exhaustion: {ex}")
    return 0


# -- met ----------------------------------------------------------------------

def cmd_met(args) -> int:
    if args.model == "dynamic":
        value = fatigue.met_dynamic(args.fmvc, args.k)
    else:
        value = catalog.evaluate(catalog.get_model(args.model), args.fmvc)
    print(f"{args.model},{fmt(args.fmvc)},{fmt(value)}")
    return 0


# -- validate-table2 ------------------------------------------------------------

def cmd_validate_table2(args) -> int:
    models = catalog.load_manifest(args.manifest) if args.manifest else catalog.default_catalog()
    models = catalog.list_models(args.region, catalog=models)
    grid = stats.ComparisonGrid.from_range(args.grid_start, args.grid_end, args.grid_step, args.k)
    report = stats.replicate_table2(grid, models)
    out = _out_dir(args.out)
    report.write_csv(out / "report.csv")
    report.write_region_curves(out)
    report.write_region_icc(out)
    _json_dump(
        {
            "grid_start": float(grid.f_values[0]),
            "grid_end": float(grid.f_values[-1]),
            "grid_points": int(grid.f_values.size),
            "k_per_min": grid.k,
            "models": len(report.records),
            "clipped": [r.model_id for r in report.records if r.clipped],
            "skipped": {r.model_id: r.skipped for r in report.records if r.skipped},
        },
        out / "grid.json",
    )
    if args.svg:
        from .svg import line_chart

        for region in catalog.REGIONS:
            recs = [r for r in report.records if r.region == region]
            if not recs:
                continue
            series = {r.model_id: report.curves[r.model_id] for r in recs}
            series["dynamic"] = report.met_dynamic
            line_chart(out / f"curves_{region}.svg", grid.f_values, series,
                       title=f"Endurance time, {region} models", xlabel="f_MVC", ylabel="MET (min)")
    print(report.render())
    return 0


# -- compare-dynamic ------------------------------------------------------------

_PARAM_DEFAULTS = {
    "active_motor": {"m0": 1.0, "f_rate": reference.DEFAULT_ACTIVE_F, "r_rate": 0.0, "b_rate": 1.0,
                     "duration_s": 180.0, "dt_s": 0.01},
    "limit_sweep": {"betas": [1e2, 1e3, 1e4], "f_rate": reference.DEFAULT_ACTIVE_F},
    "reservoir": {"s_upper": 1.0, "alpha": 0.0, "beta": 1.0, "relative_load": 0.5,
                  "duration_min": 1.5, "dt_min": 1e-3},
    "dynamic": {"k": fatigue.DEFAULT_K},
    "mvc_comparison": {"f_rate": reference.DEFAULT_ACTIVE_F, "duration_min": 3.0},
}


def load_params(path) -> dict:
    """Merge a parameter JSON over the defaults; unknown keys are rejected."""
    params = {sec: dict(vals) for sec, vals in _PARAM_DEFAULTS.items()}
    if path is None:
        return params
    path = Path(path)
    if not path.is_file():
        raise CliError("E_IO", f"params file not found: {path}")
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ManifestError(f"{path}: top level must be an object")
    for sec, vals in doc.items():
        if sec not in params:
            raise ManifestError(f"{path}: unknown section {sec!r}")
        if not isinstance(vals, dict):
            raise ManifestError(f"{path}: section {sec!r} must be an object")
        for key, val in vals.items():
            if key not in params[sec]:
                raise ManifestError(f"{path}: unknown key {sec}.{key}")
            if key == "betas":
                if not isinstance(val, list) or not all(isinstance(b, (int, float)) for b in val):
                    raise ManifestError(f"{path}: {sec}.betas must be a list of numbers")
            elif isinstance(val, bool) or not isinstance(val, (int, float)):
                raise ManifestError(f"{path}: {sec}.{key} must be a number")
            params[sec][key] = val
    return params


def cmd_compare_dynamic(args) -> int:
    p = load_params(args.params)
    out = _out_dir(args.out)
    summary = {}

    am = p["active_motor"]
    model = reference.ActiveMotorModel(am["m0"], am["f_rate"], am["r_rate"], am["b_rate"])
    traj = reference.active_motor_simulate(model, am["duration_s"], am["dt_s"])
    ode_frac = traj.m_a / model.m0
    try:
        closed = reference.active_motor_closed_form(model, traj.t)
        closed_err = float(np.max(np.abs(closed - ode_frac)))
        mode = "closed-form"
    except SingularParameterError as exc:
        print(f"notice: {exc}; closed-form column re-run via ODE path", file=sys.stderr)
        closed, closed_err, mode = ode_frac, None, "ode-fallback"
    reference.write_curve_csv(out / "active_motor.csv", traj.t, ode_frac, closed)
    with (out / "conservation.csv").open("w") as fh:
        fh.write("t_s,m_a,m_f,m_uc,residual\n")
        resid = traj.m_a + traj.m_f + traj.m_uc - model.m0
        for row in zip(traj.t, traj.m_a, traj.m_f, traj.m_uc, resid):
            fh.write(",".join(fmt(v) for v in row) + "\n")
    rel_resid = traj.conservation_residual / model.m0
    summary["conservation_residual_rel"] = rel_resid
    summary["closed_form_mode"] = mode
    summary["closed_form_max_abs_error"] = closed_err
    print(f"conservation residual = {rel_resid:.3e} * M_0 ({'ok' if rel_resid < 1e-9 else 'FAIL'}, limit 1e-09)")
    if closed_err is not None:
        print(f"ODE vs closed form: max |M_A/M_0 difference| = {closed_err:.3e}")

    ls = p["limit_sweep"]
    sweep = reference.limit_sweep(ls["betas"], ls["f_rate"])
    with (out / "limit_sweep.csv").open("w") as fh:
        fh.write("beta,max_deviation\n")
        for beta, dev in sweep:
            fh.write(f"{fmt(beta)},{fmt(dev)}\n")
    summary["limit_sweep"] = [{"beta": b, "max_deviation": float(fmt(d))} for b, d in sweep]
    print("limit sweep (gamma = 0): " + ", ".join(f"beta={b:g}: {d:.3e}" for b, d in sweep))

    rv = p["reservoir"]
    k = p["dynamic"]["k"]
    res = reference.ReservoirModel(rv["s_upper"], rv["alpha"], rv["beta"])
    c = rv["relative_load"]
    if not 0 < c <= 1:
        raise ArgumentError(f"reservoir.relative_load must be in (0, 1], got {c}")
    t_res, s0 = reference.reservoir_simulate(res, c * res.s_upper, rv["duration_min"], rv["dt_min"])
    dyn = np.exp(-k * c * t_res)
    reference.write_curve_csv(out / "reservoir_vs_dynamic.csv", t_res, s0 / res.s_upper, dyn)

    mc = p["mvc_comparison"]
    curve = reference.mvc_comparison_curve(k, mc["f_rate"], mc["duration_min"])
    curve.write_csv(out / "mvc_comparison.csv")
    summary["mvc_comparison_max_deviation"] = float(fmt(curve.max_deviation))
    print(f"full-load comparison (k={k:g}/min, F={mc['f_rate']:g}/s): max deviation = {fmt(curve.max_deviation)}")

    _json_dump(summary, out / "summary.json")
    return 0


# -- wiring -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dynfatigue", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("simulate", help="integrate the fatigue model over a load profile CSV")
    s.add_argument("--profile", required=True)
    s.add_argument("--mvc", required=True, type=_positive("--mvc"))
    s.add_argument("--k", type=_positive("--k"), default=fatigue.DEFAULT_K)
    s.add_argument("--dt", type=_positive("--dt"), default=fatigue.DEFAULT_DT)
    s.add_argument("--stride", type=int, default=1, help="keep every n-th step in trajectory.csv")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_simulate)

    m = sub.add_parser("met", help="maximum endurance time for a relative load")
    m.add_argument("--fmvc", required=True, type=float)
    m.add_argument("--model", default="dynamic", help="catalog model id or 'dynamic'")
    m.add_argument("--k", type=_positive("--k"), default=fatigue.DEFAULT_K)
    m.set_defaults(func=cmd_met)

    v = sub.add_parser("validate-table2", help="score the catalog against the dynamic model")
    v.add_argument("--grid-start", type=float, default=stats.DEFAULT_GRID_START)
    v.add_argument("--grid-end", type=float, default=stats.DEFAULT_GRID_END)
    v.add_argument("--grid-step", type=float, default=stats.DEFAULT_GRID_STEP)
    v.add_argument("--k", type=_positive("--k"), default=fatigue.DEFAULT_K)
    v.add_argument("--region", choices=catalog.REGIONS)
    v.add_argument("--manifest", help="alternative model manifest JSON")
    v.add_argument("--svg", action="store_true", help="also write per-region SVG line charts")
    v.add_argument("--out", required=True)
    v.set_defaults(func=cmd_validate_table2)

    c = sub.add_parser("compare-dynamic", help="reservoir and active-motor comparisons")
    c.add_argument("--params", help="parameter JSON; defaults used for missing keys")
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_compare_dynamic)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "stride", 1) < 1:
            raise CliError("E_USAGE", "--stride must be >= 1")
        return args.func(args)
    except CliError as exc:
        msg, code = str(exc), exc.code
    except FatigueError as exc:
        msg, code = str(exc), exc.code
    except OSError as exc:
        msg, code = f"{exc.filename or ''}: {exc.strerror or exc}", "E_IO"
    print(f"{code}: {' '.join(msg.split())}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
