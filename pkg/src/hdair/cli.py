"""Command-line front end.

Subcommands: dmc, air, threshold, de-trace, reach, oracle {bdd-stats, mi}.
Exit status: 0 success, 2 configuration error, 1 runtime failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from importlib import resources

import numpy as np

from . import __version__
from .air import SCHEMES, sweep
from .channel import hard_dmc_analytic, hard_dmc_montecarlo
from .constellation import build_square_qam, parse_modulation
from .de import ComponentCodeSpec, DeConfig, run_de, spectral_efficiency, threshold
from .errors import BracketError, ConfigurationError, DegenerateChannelError, DomainError
from .link import LinkModel, distance_profile, optimize_launch_power, reach
from .oracles import enumerate_bdd_stats, mc_mutual_information

DEFAULT_SEED = 0
FORMAT_VERSION = 1
CONFIG_ERRORS = (ConfigurationError, DomainError, BracketError, DegenerateChannelError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


@dataclass(frozen=True)
class RunManifest:
    command: str
    parameters: dict
    seed: int
    tool_version: str
    timestamp: str

    def to_dict(self):
        return {"command": self.command, "parameters": self.parameters, "seed": self.seed,
                "tool_version": self.tool_version, "timestamp": self.timestamp,
                "format_version": FORMAT_VERSION}


def _timestamp():
    # reproducible by default; SOURCE_DATE_EPOCH pins a real date
    epoch = int(os.environ.get("SOURCE_DATE_EPOCH", "0"))
    return datetime.fromtimestamp(epoch, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def num(v):
    """12 significant digits."""
    return format(float(v), ".12g")


def _round(obj):
    if isinstance(obj, float) or isinstance(obj, np.floating):
        v = float(obj)
        return v if not math.isfinite(v) else float(num(v))
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def _manifest(args):
    skip = {"out", "workers", "func", "command", "oracle_command"}
    params = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    name = args.command + (f" {args.oracle_command}" if getattr(args, "oracle_command", None) else "")
    return RunManifest(name, params, int(getattr(args, "seed", DEFAULT_SEED)),
                       f"hdair {__version__}", _timestamp())


def _emit(args, text):
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, payload):
    payload = dict(payload)
    payload["manifest"] = _manifest(args).to_dict()
    _emit(args, json.dumps(_round(payload), indent=1, sort_keys=False) + "\n")


def _emit_csv(args, header, rows):
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    for r in rows:
        wr.writerow([num(v) if isinstance(v, (float, np.floating)) else v for v in r])
    _emit(args, buf.getvalue())
    if args.out:
        with open(args.out + ".manifest.json", "w") as fh:
            fh.write(json.dumps(_round(_manifest(args).to_dict()), indent=1) + "\n")


# -- argument helpers ---------------------------------------------------

def parse_range(text):
    """``start:stop:step`` (inclusive) or a single value, in dB."""
    parts = text.split(":")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise ConfigurationError(f"bad range {text!r}") from None
    if len(vals) == 1:
        return [vals[0]]
    if len(vals) != 3 or vals[2] <= 0 or vals[1] < vals[0]:
        raise ConfigurationError(f"range must be start:stop:step with step > 0, got {text!r}")
    start, stop, step = vals
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + k * step, 10) for k in range(count)]


def parse_schemes(text):
    if text == "all":
        return list(SCHEMES)
    out = [s.strip() for s in text.split(",") if s.strip()]
    bad = [s for s in out if s not in SCHEMES]
    if bad or not out:
        raise ConfigurationError(f"unknown scheme(s) {bad}; choose from {', '.join(SCHEMES)}")
    return out


def parse_pair(text):
    try:
        lo, hi = (float(v) for v in text.split(","))
    except ValueError:
        raise ConfigurationError(f"expected 'low,high', got {text!r}") from None
    return lo, hi


def load_preset(name):
    """Key/value preset shipped in ``hdair/presets``."""
    try:
        text = resources.files("hdair").joinpath("presets", f"{name}.cfg").read_text()
    except FileNotFoundError:
        avail = sorted(p.name[:-4] for p in resources.files("hdair").joinpath("presets").iterdir()
                       if p.name.endswith(".cfg"))
        raise ConfigurationError(f"unknown preset {name!r}; available: {', '.join(avail)}") from None
    cfg = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            key, _, val = line.partition("=")
            cfg[key.strip()] = val.strip()
    return cfg


def _code_and_config(args):
    preset = load_preset(args.preset) if args.preset else {}

    def pick(attr, key, conv, default):
        v = getattr(args, attr)
        if v is not None:
            return v
        if key in preset:
            return conv(preset[key])
        return default

    q = pick("q", "q", int, None)
    n = pick("n", "n", int, None)
    t = pick("t", "t", int, None)
    if None in (q, n, t):
        raise ConfigurationError("component code needs --q, --n and --t (or --preset)")
    window = pick("window", "window", str, "7")
    cfg = DeConfig(
        L=pick("L", "L", int, 50),
        w=pick("w", "w", int, 2),
        W="full" if window == "full" else int(window),
        max_iters=pick("iters", "iters", int, 4),
        convergence_tol=pick("tol", "tol", float, 1e-14),
        target_error=pick("target_ser", "target_ser", float, 1e-6),
        mode=pick("mode", "mode", str, "miscorrection_aware"),
    )
    return ComponentCodeSpec(q, n, t), cfg


# -- subcommands ----------------------------------------------------------

def cmd_dmc(args):
    c = build_square_qam(parse_modulation(args.mod))
    if args.method == "analytic":
        model = hard_dmc_analytic(c, args.snr)
    else:
        model = hard_dmc_montecarlo(c, args.snr, args.samples, args.seed, workers=args.workers)
    _emit_json(args, model.to_dict())


def cmd_air(args):
    c = build_square_qam(parse_modulation(args.mod))
    snrs = parse_range(args.snr)
    schemes = parse_schemes(args.schemes)
    pts = sweep(c, snrs, schemes, method=args.method, nodes=args.nodes, samples=args.samples,
                seed=args.seed, workers=args.workers)
    _emit_csv(args, ["snr_db", "scheme", "rate_bpcu", "stderr"],
              [(p.snr_db, p.scheme, p.rate, p.stderr) for p in pts])


def _code_summary(spec, cfg):
    return {"q": spec.q, "n": spec.n, "t": spec.t, "k": spec.k,
            "component_overhead": spec.overhead,
            "staircase_overhead": (1.0 / spec.staircase_rate - 1.0) if spec.staircase_rate > 0 else None,
            "de": cfg.to_dict()}


def cmd_threshold(args):
    spec, cfg = _code_and_config(args)
    bracket = parse_pair(args.bracket) if args.bracket else None
    res = threshold(spec, cfg, bracket=bracket)
    se = spectral_efficiency(spec, coupled=cfg.w > 1)
    _emit_json(args, {"p_star": res.p_star, "iterations_used": res.iterations_used,
                      "post_fec_error": res.post_fec_error, "evaluations": res.evaluations,
                      "spectral_efficiency_bpcu": se, "config": _code_summary(spec, cfg)})


def cmd_de_trace(args):
    spec, cfg = _code_and_config(args)
    st = run_de(spec, args.ps, cfg, trace=True)
    rows = []
    for it, win, x in st.trace:
        rows.extend((it, win, pos + 1, float(v)) for pos, v in enumerate(x))
    _emit_csv(args, ["iteration", "window", "position", "x"], rows)


def cmd_reach(args):
    order = parse_modulation(args.mod)
    c = build_square_qam(order)
    link = LinkModel(span_length_km=args.span_km, channel_count=args.channels,
                     channel_spacing_ghz=args.spacing_ghz, nli_coefficient=args.nli_coeff)
    target = args.target_se / 2.0  # per polarization
    res = reach(link, c, args.scheme, target)
    last = args.max_spans or res.n_spans + 10
    prof = distance_profile(link, c, [args.scheme], range(1, last + 1))
    _emit_csv(args, ["distance_km", "snr_db", "rate_bpcu"],
              [(d, snr, rates[args.scheme]) for d, snr, rates in prof])
    opt = optimize_launch_power(link, 1)
    summary = {"scheme": args.scheme, "modulation": f"{order}qam",
               "target_se_pm": args.target_se, "target_rate_per_pol": target,
               "reach_km": res.distance_km, "n_spans": res.n_spans,
               "required_snr_db": res.required_snr_db,
               "launch_power_dbm": opt.power_dbm, "eta_per_span": link.eta_per_span,
               "ase_per_span_w": link.ase_power_per_span}
    sys.stdout.write(json.dumps(_round(summary), sort_keys=True) + "\n")


def cmd_oracle_bdd(args):
    stats = enumerate_bdd_stats(args.q, args.n, args.t, i_max=args.i_max, budget=args.budget,
                                seed=args.seed, decoder=args.decoder, workers=args.workers)
    _emit_json(args, stats.to_dict())


def cmd_oracle_mi(args):
    c = build_square_qam(parse_modulation(args.mod))
    rate, se = mc_mutual_information(c, args.snr, args.samples, args.seed)
    _emit_json(args, {"modulation": c.order, "snr_db": args.snr, "rate_bpcu": rate,
                      "stderr": se})


def _common(p, seed=True):
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    if seed:
        p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="master RNG seed")


def _de_flags(p):
    p.add_argument("--preset", help="named code preset, e.g. oh20.00")
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--mode", choices=["miscorrection_aware", "idealized"])
    p.add_argument("--L", type=int, help="spatial positions (default 50)")
    p.add_argument("--w", type=int, help="coupling width (default 2)")
    p.add_argument("--window", help="window size in positions or 'full' (default 7)")
    p.add_argument("--iters", type=int, help="iterations per window (default 4)")
    p.add_argument("--tol", type=float, help="convergence tolerance (default 1e-14)")
    p.add_argument("--target-ser", dest="target_ser", type=float,
                   help="post-FEC symbol error target (default 1e-6)")


def build_parser():
    ap = _Parser(prog="hdair", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"hdair {__version__}")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("dmc", help="hard-detection DMC as JSON")
    p.add_argument("--mod", required=True)
    p.add_argument("--snr", type=float, required=True, help="Es/N0 in dB")
    p.add_argument("--method", choices=["analytic", "montecarlo"], default="analytic")
    p.add_argument("--samples", type=int, default=10**6)
    _common(p)
    p.set_defaults(func=cmd_dmc)

    p = sub.add_parser("air", help="AIR sweep as CSV")
    p.add_argument("--mod", required=True)
    p.add_argument("--snr", required=True, help="start:stop:step in dB (inclusive)")
    p.add_argument("--schemes", default="all")
    p.add_argument("--method", choices=["gauss_hermite", "monte_carlo"], default="gauss_hermite")
    p.add_argument("--nodes", type=int, default=64)
    p.add_argument("--samples", type=int, default=10**6)
    _common(p)
    p.set_defaults(func=cmd_air)

    p = sub.add_parser("threshold", help="DE decoding threshold as JSON")
    _de_flags(p)
    p.add_argument("--bracket", help="low,high channel symbol error probability")
    _common(p)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("de-trace", help="per-iteration, per-position DE state as CSV")
    _de_flags(p)
    p.add_argument("--ps", type=float, required=True, help="channel symbol error probability")
    _common(p)
    p.set_defaults(func=cmd_de_trace)

    p = sub.add_parser("reach", help="optical reach under the GN model")
    p.add_argument("--mod", required=True)
    p.add_argument("--scheme", choices=SCHEMES, default="hdd_bw")
    p.add_argument("--target-se", dest="target_se", type=float, required=True,
                   help="target bits per symbol over two polarizations")
    p.add_argument("--channels", type=int, default=81)
    p.add_argument("--spacing-ghz", dest="spacing_ghz", type=float, default=50.0)
    p.add_argument("--nli-coeff", dest="nli_coeff", type=float, default=None,
                   help="override the per-span NLI coefficient [1/W^2]")
    p.add_argument("--span-km", dest="span_km", type=float, default=80.0)
    p.add_argument("--max-spans", dest="max_spans", type=int, default=None)
    _common(p)
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("oracle", help="brute-force reference computations")
    osub = p.add_subparsers(dest="oracle_command", parser_class=_Parser)
    osub.required = True
    o = osub.add_parser("bdd-stats", help="empirical P_n / P_bar_n of a small RS code")
    o.add_argument("--q", type=int, required=True)
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--t", type=int, required=True)
    o.add_argument("--i-max", dest="i_max", type=int, default=None)
    o.add_argument("--budget", type=int, default=10**6)
    o.add_argument("--decoder", choices=["auto", "syndrome", "exhaustive"], default="auto")
    _common(o)
    o.set_defaults(func=cmd_oracle_bdd)
    o = osub.add_parser("mi", help="Monte Carlo I(X;Y)")
    o.add_argument("--mod", required=True)
    o.add_argument("--snr", type=float, required=True)
    o.add_argument("--samples", type=int, default=10**6)
    _common(o)
    o.set_defaults(func=cmd_oracle_mi)
    return ap


def run(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(str(exc))
        return 2
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        if getattr(args, "workers", 1) < 1:
            raise ConfigurationError("--workers must be >= 1")
        args.func(args)
    except CONFIG_ERRORS as exc:
        sys.stderr.write(f"hdair {args.command}: configuration error: {exc}\n")
        return 2
    except Exception as exc:  # noqa: BLE001
        sys.stderr.write(f"hdair {args.command}: {type(exc).__name__}: {exc}\n")
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
