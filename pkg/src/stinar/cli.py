"""Command-line interface.

Exit codes: 0 ok, 2 parameter domain, 3 input format, 4 degenerate data.
"""

import argparse
import json
import math
import sys
import time
from importlib import resources

import numpy as np

from . import diagnostics as dg
from .data import load_builtin
from .errors import DegenerateSeriesError, InputFormatError, ParameterError, StinarError
from .estimation import infer, tinar_fit
from .innovations import NginarInnovation
from .montecarlo import config_from_dict, emit_tables, load_config, run_study
from .params import StinarParams, TinarParams
from .process import simulate_alternating, simulate_nginar, simulate_stinar, simulate_tinar
from .rng import make_rng
from .sdl import sdl_abs_moment, sdl_cdf, sdl_cf, sdl_moment, sdl_pmf

EXIT_OK, EXIT_PARAM, EXIT_INPUT, EXIT_DEGENERATE = 0, 2, 3, 4

SIG_DIGITS = 10


def fmt_num(x):
    if isinstance(x, complex):
        return f"{fmt_num(x.real)}{'+' if x.imag >= 0 else '-'}{fmt_num(abs(x.imag))}i"
    return f"{x:.{SIG_DIGITS}g}"


def round_floats(obj):
    """Round every float to 10 significant digits; NaN and inf become ``None``."""
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return float(f"{x:.{SIG_DIGITS}g}") if math.isfinite(x) else None
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, dict):
        return {str(k): round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [round_floats(v) for v in obj]
    return obj


def read_series(path):
    """Parse one integer per line; a leading ``value`` header and ``#`` comment lines are skipped."""
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise InputFormatError(f"{path} is not valid UTF-8") from None
    values = []
    seen_data = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        tok = line.strip()
        if not tok or tok.startswith("#"):
            continue
        if not seen_data and not values and tok.lower() == "value":
            seen_data = True
            continue
        try:
            values.append(int(tok))
        except ValueError:
            raise InputFormatError(f"{path}, line {lineno}: {tok!r} is not an integer") from None
        seen_data = True
    if not values:
        raise InputFormatError(f"{path} holds no observations")
    return np.array(values, dtype=np.int64)


def load_data(spec):
    if spec.startswith("builtin:"):
        return load_builtin(spec)
    return read_series(spec)


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_simulate(args):
    rng = make_rng(args.seed)
    meta = {"variant": args.variant, "n": args.n, "seed": args.seed}
    if args.variant == "tinar":
        p = TinarParams(args.beta, args.lambda1, args.lambda2)
        meta.update(beta=p.beta, lambda1=p.lambda1, lambda2=p.lambda2)
        z = simulate_tinar(p, args.n, rng)
    elif args.variant == "nginar":
        NginarInnovation(args.mu1, args.alpha)
        meta.update(alpha=args.alpha, mu=args.mu1)
        z = simulate_nginar(args.mu1, args.alpha, args.n, rng)
    else:
        p = StinarParams(args.alpha, args.mu1, args.mu2)
        meta.update(alpha=p.alpha, mu1=p.mu1, mu2=p.mu2)
        sim = simulate_stinar if args.variant == "stinar" else simulate_alternating
        z = sim(p, args.n, rng)
    if args.format == "json":
        text = json.dumps({"meta": meta, "values": z.tolist()}, indent=1) + "\n"
    else:
        head = "".join(f"# {k}: {v}\n" for k, v in meta.items())
        text = head + "value\n" + "".join(f"{v}\n" for v in z.tolist())
    _emit(text, args.out)
    return EXIT_OK


def fit_payload(z, model="stinar", level=0.95, max_lag=20, symmetric=False, source=None):
    """Everything ``stinar fit`` reports, as a plain dict (floats unrounded)."""
    z = np.asarray(z, dtype=np.int64)
    max_lag = min(max_lag, len(z) - 2)
    out = {"model": model, "source": source, "n": int(len(z)), "describe": dg.describe(z)}
    if model == "stinar":
        rep = infer(z, level=level, symmetric=symmetric)
        est = rep.to_dict()
        pred = dg.stinar_predictor((rep.alpha_hat, rep.mu1_hat, rep.mu2_hat))
        chart = None
        try:
            chart = dg.jump_chart(z, rep.params())
        except ParameterError as exc:
            est["warnings"].append(f"jump chart unavailable: {exc}")
    elif model == "tinar":
        tf = tinar_fit(z)
        est = tf.to_dict()
        pred = dg.tinar_predictor(tf.beta_hat, tf.lambda1_hat, tf.lambda2_hat)
        chart = None
    else:
        raise ParameterError(f"unknown model {model!r}")
    e = dg.residuals(z, pred)
    stats = dg.gof(e)
    out["estimates"] = est
    out["gof"] = {"rm": stats.rm, "rms": stats.rms, "ma": stats.ma, "mda": stats.mda}
    out["residuals"] = stats.residuals
    diag = {"series_acf": [], "series_pacf": [], "residual_acf": [], "jump_chart": None}
    try:
        acf = dg.empirical_acf(z, max_lag)
        pacf = dg.empirical_pacf(z, max_lag)
        diag["series_acf"] = [{"lag": k, "value": v} for k, v in enumerate(acf)]
        diag["series_pacf"] = [{"lag": k + 1, "value": v} for k, v in enumerate(pacf)]
        racf = dg.empirical_acf(e, min(max_lag, len(e) - 1))
        diag["residual_acf"] = [{"lag": k, "value": v} for k, v in enumerate(racf)]
    except DegenerateSeriesError:
        pass
    if chart is not None:
        diag["jump_chart"] = {
            "sigma_j": chart.sigma_j,
            "lower": chart.lower,
            "upper": chart.upper,
            "rows": [{"t": t, "jump": j} for t, j, _, _ in chart.rows()],
            "violations": chart.violations,
        }
    out["diagnostics"] = diag
    return out


def _fit_text(payload):
    est = payload["estimates"]
    lines = [f"model: {payload['model']}  n = {payload['n']}"]
    for k, v in est.items():
        if k == "warnings":
            continue
        lines.append(f"  {k:<14} {v}")
    for w in est.get("warnings", []):
        lines.append(f"  warning: {w}")
    g = payload["gof"]
    lines.append(f"  RM {g['rm']:.4f}  RMS {g['rms']:.4f}  MA {g['ma']:.4f}  MDA {g['mda']:.4f}")
    return "\n".join(lines) + "\n"


def cmd_fit(args):
    z = load_data(args.data)
    payload = fit_payload(z, args.model, args.level, args.max_lag, args.symmetric, source=args.data)
    payload = round_floats(payload)
    if args.format == "json":
        text = json.dumps(payload, indent=1) + "\n"
    elif args.format == "text":
        text = _fit_text(payload)
    else:
        est = payload["estimates"]
        keys = [k for k, v in est.items() if not isinstance(v, (list, dict))]
        text = ",".join(keys) + "\n" + ",".join(str(est[k]) for k in keys) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def _preset(name):
    try:
        raw = resources.files("stinar").joinpath("presets", f"{name}.json").read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InputFormatError(f"unknown preset {name!r}") from None
    return config_from_dict(json.loads(raw))


def cmd_mc(args):
    cfg = _preset(args.preset) if args.preset else load_config(args.config)
    if args.parallelism is not None:
        cfg.parallelism = args.parallelism
    if args.replications is not None:
        cfg.replications = args.replications
    if args.seed is not None:
        cfg.seed = args.seed
    t0 = time.perf_counter()
    report = run_study(cfg)
    elapsed = time.perf_counter() - t0
    formats = ["csv", "text"] if args.format == "both" else [args.format]
    if args.out:
        for f in formats:
            path = f"{args.out}.{'csv' if f == 'csv' else 'txt'}"
            emit_tables(report, f, path)
            print(f"wrote {path}", file=sys.stderr)
    else:
        for f in formats:
            sys.stdout.write(emit_tables(report, f))
    print(f"{len(report.cells)} cells x {cfg.replications} replications in {elapsed:.1f} s", file=sys.stderr)
    return EXIT_OK


def cmd_dist(args):
    m1, m2 = args.mu1, args.mu2
    if args.query == "pmf":
        val = sdl_pmf(args.k, m1, m2)
    elif args.query == "cdf":
        val = sdl_cdf(args.k, m1, m2)
    elif args.query == "cf":
        val = sdl_cf(args.s, m1, m2)
    elif args.query == "moment":
        val = sdl_moment(args.k, m1, m2)
    else:
        val = sdl_abs_moment(args.k, m1, m2)
    print(fmt_num(val))
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="stinar", description="Skew true INAR(1) toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, formats=("json", "csv", "text"), default="json"):
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--out", default=None, help="output path (stdout if omitted)")

    s = sub.add_parser("simulate", help="simulate a path")
    s.add_argument("--variant", choices=("stinar", "nginar", "alternating", "tinar"), default="stinar")
    s.add_argument("--alpha", type=float, default=0.5)
    s.add_argument("--mu1", type=float, default=3.0)
    s.add_argument("--mu2", type=float, default=3.0)
    s.add_argument("--beta", type=float, default=0.5)
    s.add_argument("--lambda1", type=float, default=1.0)
    s.add_argument("--lambda2", type=float, default=1.0)
    s.add_argument("--n", type=int, default=100)
    common(s, default="csv")
    s.set_defaults(func=cmd_simulate)

    f = sub.add_parser("fit", help="fit a model to a series")
    f.add_argument("--data", required=True, help="CSV path or builtin:swedish")
    f.add_argument("--model", choices=("stinar", "tinar"), default="stinar")
    f.add_argument("--level", type=float, default=0.95)
    f.add_argument("--max-lag", type=int, default=20)
    f.add_argument("--symmetric", action="store_true", help="use the zero-mean CLS form")
    common(f)
    f.set_defaults(func=cmd_fit)

    m = sub.add_parser("mc", help="run a Monte Carlo study")
    src = m.add_mutually_exclusive_group(required=True)
    src.add_argument("config", nargs="?", help="JSON config path")
    src.add_argument("--preset", choices=("full", "desk", "smoke"))
    m.add_argument("--replications", type=int, default=None)
    m.add_argument("--parallelism", default=None)
    m.add_argument("--seed", type=int, default=None)
    m.add_argument("--format", choices=("csv", "text", "both"), default="text")
    m.add_argument("--out", default=None, help="path prefix; .csv/.txt appended")
    m.set_defaults(func=cmd_mc)

    d = sub.add_parser("dist", help="evaluate the SDL distribution")
    d.add_argument("query", choices=("pmf", "cdf", "cf", "moment", "absmoment"))
    d.add_argument("--mu1", type=float, default=1.0)
    d.add_argument("--mu2", type=float, default=1.0)
    d.add_argument("--k", type=int, default=0)
    d.add_argument("--s", type=float, default=0.0)
    d.set_defaults(func=cmd_dist)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except InputFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DegenerateSeriesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except StinarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
