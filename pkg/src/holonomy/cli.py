"""Command-line entry point: ``holonomy {classify,trace,orbit,approx,bundle}``.

Exit codes: 0 decided, 2 bad input, 3 heuristic (or not converged), 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np
from mpmath import mp

from . import _precision
from ._precision import fmt_decimal
from .errors import BudgetError, HolonomyError, PrecisionError
from .rotation import Rotation3, build_pair, random_rotation
from .scalar.angles import parse_angle
from .scalar.expr import parse_expr

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_HEURISTIC = 3
EXIT_IO = 4


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    args: dict

    def get(self, key, default=None):
        v = self.args.get(key)
        return default if v is None else v


# -- shared pieces ------------------------------------------------------------------


def _pair_from(cfg: RunConfig):
    specs = {}
    for name in ("theta1", "theta2", "phi"):
        text = cfg.get(name)
        if text is None:
            raise InputError(f"--{name} is required")
        specs[name] = parse_angle(str(text))
    for name in cfg.get("assert_irrational", []) or []:
        if name not in specs:
            raise InputError(f"cannot assert irrationality of {name!r}")
        specs[name] = specs[name].with_assertion()
    return build_pair(specs["theta1"], specs["theta2"], specs["phi"], extended=bool(cfg.get("extended", False)))


def _classify_options(cfg: RunConfig):
    from .classify.decide import ClassifyOptions

    return ClassifyOptions(
        cap=cfg.get("cap"),
        heuristic_depth=cfg.get("depth", 12),
        threads=cfg.get("threads", 1),
    )


# -- subcommands ------------------------------------------------------------------------


def run_classify(cfg: RunConfig) -> int:
    from .classify import classify

    report = classify(_pair_from(cfg), _classify_options(cfg))
    _emit(report.dumps(), cfg.get("output"))
    return EXIT_OK if report.is_decided else EXIT_HEURISTIC


def run_trace(cfg: RunConfig) -> int:
    from .classify.trace import char_poly, solve_phi_for_trace, trace_formula, trace_interval, trace_quadratic

    t1, t2 = parse_angle(str(cfg.get("theta1"))), parse_angle(str(cfg.get("theta2")))
    q = trace_quadratic(t1, t2)
    out = {
        "quadratic": {k: fmt_decimal(getattr(q, k).value) for k in ("alpha", "beta", "gamma")},
        "interval": trace_interval(t1, t2).to_json(),
    }
    if cfg.get("phi") is not None:
        tv = trace_formula(t1, t2, parse_angle(str(cfg.get("phi"))))
        out["trace"] = fmt_decimal(tv.value)
        out["trace_exact"] = None if tv.rational is None else str(tv.rational)
        out["char_poly"] = char_poly(tv).text()
    if cfg.get("target") is not None:
        sols = solve_phi_for_trace(t1, t2, parse_expr(str(cfg.get("target"))))
        out["solutions"] = [{"cos_phi": fmt_decimal(s.cos_phi.value), "phi": fmt_decimal(s.phi)} for s in sols]
    _emit(_dump(out), cfg.get("output"))
    return EXIT_OK


def _base_point(cfg: RunConfig):
    from .orbit.enumerate import GENERIC_POINT

    raw = cfg.get("base_point")
    if raw is None:
        return GENERIC_POINT
    v = np.array([float(x) for x in str(raw).split(",")])
    if v.shape != (3,) or not np.linalg.norm(v) > 0:
        raise InputError("--base-point needs three comma-separated numbers")
    return v / np.linalg.norm(v)


def run_orbit(cfg: RunConfig) -> int:
    from .orbit.enumerate import enumerate_orbit, write_points_csv, write_radius_csv

    pair = _pair_from(cfg)
    code = EXIT_OK
    try:
        rep = enumerate_orbit(
            pair, _base_point(cfg), cfg.get("depth", 12), threads=cfg.get("threads", 1),
            budget=cfg.get("budget", 3_000_000),
        )
    except BudgetError as exc:
        rep, code = exc.partial, EXIT_HEURISTIC
    if cfg.get("points_out"):
        write_points_csv(rep, cfg.get("points_out"))
    if cfg.get("radius_out"):
        write_radius_csv(rep, cfg.get("radius_out"))
    conf = rep.plane_confinement
    summary = {
        "depth": rep.depth,
        "points": len(rep.points),
        "covering_radius": fmt_decimal(rep.covering_radius, 12),
        "radius_trace": [[d, fmt_decimal(r, 12)] for d, r in rep.radius_trace],
        "budget_exhausted": code != EXIT_OK,
        "plane_confinement": None
        if conf is None
        else {
            "normal": [fmt_decimal(x, 12) for x in conf.normal],
            "levels": [fmt_decimal(x, 12) for x in conf.levels],
            "max_deviation": fmt_decimal(conf.max_deviation, 20),
            "confined": conf.confined,
        },
    }
    _emit(_dump(summary), cfg.get("output"))
    return code


def _target(cfg: RunConfig) -> Rotation3:
    raw = cfg.get("target", "random:0")
    if isinstance(raw, str) and raw.startswith("random:"):
        return random_rotation(np.random.default_rng(int(raw[7:])))
    rows = json.loads(raw) if isinstance(raw, str) else raw
    m = Rotation3(rows)
    m.check_special_orthogonal(12)
    return m


def run_approx(cfg: RunConfig) -> int:
    from .orbit.approx import ApproxBudget, approximate_element

    pair = _pair_from(cfg)
    target = _target(cfg)
    res = approximate_element(pair, target, float(cfg.get("epsilon", 0.05)), ApproxBudget(depth=cfg.get("depth", 12)))
    out = {
        "word": str(res.word),
        "length": len(res.word),
        "distance": fmt_decimal(res.distance, 20),
        "converged": res.converged,
        "target": target.to_json(),
    }
    _emit(_dump(out), cfg.get("output"))
    return EXIT_OK if res.converged else EXIT_HEURISTIC


def run_bundle(cfg: RunConfig) -> int:
    from .bundle import DUALITY_LABELS, induced_pair, load_connection
    from .classify.decide import classify_matrices

    path = cfg.get("connection")
    if path is None:
        raise InputError("--connection is required")
    P, Q = load_connection(path)
    out, code = {}, EXIT_OK
    for eps in DUALITY_LABELS:
        ip = induced_pair(P, Q, eps)
        rep = classify_matrices(ip.c1, ip.c2, _classify_options(cfg))
        block = rep.to_json()
        block["degenerate"] = ip.degenerate
        block["generators"] = [ip.c1.to_json(), ip.c2.to_json()]
        out[eps] = block
        if not rep.is_decided:
            code = EXIT_HEURISTIC
    _emit(_dump(out), cfg.get("output"))
    return code


RUNNERS = {
    "classify": run_classify,
    "trace": run_trace,
    "orbit": run_orbit,
    "approx": run_approx,
    "bundle": run_bundle,
}


# -- argument parsing -----------------------------------------------------------------------


def _positive_int(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_float(text):
    v = float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file mirroring the command-line flags")
    common.add_argument("--precision-bits", type=int, help="working precision (>= 64)")
    common.add_argument("--threads", type=_positive_int)
    common.add_argument("--output", "-o", help="write the JSON report here instead of standard output")

    angles = argparse.ArgumentParser(add_help=False)
    angles.add_argument("--theta1")
    angles.add_argument("--theta2")
    angles.add_argument("--phi")
    angles.add_argument("--extended", action="store_true", default=None, help="allow phi = 0")
    angles.add_argument(
        "--assert-irrational", action="append", choices=["theta1", "theta2", "phi"],
        help="treat this angle as an irrational multiple of pi",
    )

    p = argparse.ArgumentParser(prog="holonomy", description="Classify two-generator subgroups of SO(3).")
    sub = p.add_subparsers(dest="subcommand", required=True)
    c = sub.add_parser("classify", parents=[common, angles])
    c.add_argument("--cap", type=_positive_int)
    c.add_argument("--depth", type=_positive_int, help="orbit depth for heuristic evidence")
    t = sub.add_parser("trace", parents=[common])
    t.add_argument("--theta1")
    t.add_argument("--theta2")
    t.add_argument("--phi")
    t.add_argument("--target", help="solve for cos(phi) giving this trace (use --target=-1/2 for negatives)")
    o = sub.add_parser("orbit", parents=[common, angles])
    o.add_argument("--depth", type=_positive_int)
    o.add_argument("--base-point")
    o.add_argument("--points-out")
    o.add_argument("--radius-out")
    o.add_argument("--budget", type=_positive_int)
    a = sub.add_parser("approx", parents=[common, angles])
    a.add_argument("--target", help="'random:SEED' or a JSON 3x3 array")
    a.add_argument("--epsilon", type=_positive_float)
    a.add_argument("--depth", type=_positive_int)
    b = sub.add_parser("bundle", parents=[common])
    b.add_argument("--connection", help="JSON file with skew 4x4 matrices P and Q")
    b.add_argument("--cap", type=_positive_int)
    b.add_argument("--depth", type=_positive_int)
    return p


def _load_config(path) -> dict:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise InputError("config file must hold a JSON object")
    return {k.replace("-", "_"): v for k, v in data.items()}


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    args = {k: v for k, v in vars(ns).items() if v is not None}
    if ns.config:
        merged = _load_config(ns.config)
        merged.update(args)  # explicit flags win
        args = merged
    sub = args.pop("subcommand")
    for key in ("depth", "cap", "threads", "budget"):
        if key in args and (not isinstance(args[key], int) or args[key] <= 0):
            raise InputError(f"{key} must be a positive integer")
    return RunConfig(sub, args)


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:  # argparse
        return EXIT_BAD_INPUT if exc.code else EXIT_OK
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    bits = cfg.get("precision_bits")
    prev = mp.prec
    try:
        if bits is not None:
            _precision.set_precision(int(bits))
        return RUNNERS[cfg.subcommand](cfg)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except PrecisionError as exc:
        print(f"error: {exc} (try a larger --precision-bits)", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (HolonomyError, InputError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    finally:
        mp.prec = prev


if __name__ == "__main__":
    sys.exit(main())
