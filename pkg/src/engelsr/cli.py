"""Command-line front end with reproducible CSV/JSON outputs."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field, fields

from .cutlocus import classify_point, curve_samples, k0, t_cut
from .expmap import Covector, classify, exp_trajectory
from .group import Point
from .synthesis import SynthesisError, minimizers

CONFIG_ENV = "ENGELSR_CONFIG"


@dataclass
class Config:
    """Tunable tolerances and output controls; flag values override the file."""

    eps_class: float = 1e-12
    eps_strat: float = 1e-9
    shoot_tol: float = 1e-6
    format: str = "csv"  # csv | json
    samples: int = 200
    k_grid: int = 200
    family_samples: int = 32

    def validate(self) -> None:
        for name in ("eps_class", "eps_strat", "shoot_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.samples < 2 or self.k_grid < 2 or self.family_samples < 2:
            raise ValueError("sample counts must be at least 2")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")


def load_config(path: str | None) -> Config:
    cfg = Config()
    path = path or os.environ.get(CONFIG_ENV)
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        known = {f.name for f in fields(Config)}
        for key, val in data.items():
            if key not in known:
                raise ValueError(f"unknown config key {key!r}")
            setattr(cfg, key, val)
    cfg.validate()
    return cfg


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_geodesic(args, cfg: Config) -> int:
    lam = Covector(args.theta, args.c, args.alpha)
    samples = args.samples or cfg.samples
    traj = exp_trajectory(lam, args.t, samples)
    if cfg.format == "json":
        rows = [dict(zip(("t", "x", "y", "z", "w", "theta", "c"), map(float, row))) for row in traj]
        _emit(json.dumps(rows, indent=1) + "\n", args.output)
    else:
        lines = ["t,x,y,z,w,theta,c"]
        lines += [",".join(_fmt(v) for v in row) for row in traj]
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_cut_time(args, cfg: Config) -> int:
    lam = Covector(args.theta, args.c, args.alpha)
    cls = classify(lam, cfg.eps_class)
    tc = t_cut(lam, cfg.eps_class)
    tc_str = "inf" if math.isinf(tc) else _fmt(tc)
    if cfg.format == "json":
        _emit(json.dumps({"class": cls.tag, "k": cls.k, "E": cls.E, "t_cut": None if math.isinf(tc) else tc}) + "\n",
              args.output)
    else:
        _emit(f"class,{cls.tag}\nt_cut,{tc_str}\n", args.output)
    return 0


def _cmd_classify(args, cfg: Config) -> int:
    q = Point(args.x, args.y, args.z, args.w)
    st = classify_point(q, cfg.eps_strat)
    if cfg.format == "json":
        _emit(json.dumps(st.to_json_dict()) + "\n", args.output)
    else:
        _emit(f"{st.display} {st.multiplicity}\n", args.output)
    return 0


def _cmd_synthesize(args, cfg: Config) -> int:
    q = Point(args.x, args.y, args.z, args.w)
    tol = args.tol or cfg.shoot_tol
    result = minimizers(q, tol, cfg.eps_strat, cfg.family_samples)
    payload = result.to_json_dict()
    payload["point"] = q.to_json_dict()
    payload["tol"] = tol
    _emit(json.dumps(payload, indent=1) + "\n", args.output)
    return 0


def _cmd_curves(args, cfg: Config) -> int:
    data = curve_samples(args.which, args.grid or cfg.k_grid)
    if cfg.format == "json":
        rows = [dict(zip(("k", "Y", "W"), map(float, row))) for row in data]
        _emit(json.dumps(rows, indent=1) + "\n", args.output)
    else:
        lines = ["k,Y,W"] + [",".join(_fmt(v) for v in row) for row in data]
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_k0(args, cfg: Config) -> int:
    _emit(f"{k0():.12f}\n", args.output)
    return 0


def _cmd_selftest(args, cfg: Config) -> int:
    from .acceptance import run_all

    print("defaults:", json.dumps(cfg.__dict__, sort_keys=True))
    results = run_all(fast=args.fast)
    ok = all(r.passed for r in results)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="engelsr",
        description="Sub-Riemannian geodesics, cut locus and optimal synthesis on the Engel group.",
    )
    ap.add_argument("--config", help=f"JSON config file (or set ${CONFIG_ENV})")
    ap.add_argument("--format", choices=("csv", "json"), help="output format override")
    ap.add_argument("-o", "--output", help="write to file instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("geodesic", help="sample a geodesic trajectory")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--samples", type=int)
    p.set_defaults(func=_cmd_geodesic)

    p = sub.add_parser("cut-time", help="cut time and covector class")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.set_defaults(func=_cmd_cut_time)

    p = sub.add_parser("classify", help="stratum of a terminal point")
    for name in ("x", "y", "z", "w"):
        p.add_argument(f"--{name}", type=float, required=True)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("synthesize", help="all minimizers to a terminal point (JSON)")
    for name in ("x", "y", "z", "w"):
        p.add_argument(f"--{name}", type=float, required=True)
    p.add_argument("--tol", type=float)
    p.set_defaults(func=_cmd_synthesize)

    p = sub.add_parser("curves", help="boundary-curve samples")
    p.add_argument("--which", choices=("w1", "w21", "w22", "fix3"), required=True)
    p.add_argument("--grid", type=int)
    p.set_defaults(func=_cmd_curves)

    p = sub.add_parser("k0", help="critical modulus to 12 digits")
    p.set_defaults(func=_cmd_k0)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--fast", action="store_true", help="smaller sample counts")
    p.set_defaults(func=_cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        cfg = load_config(args.config)
        if args.format:
            cfg.format = args.format
            cfg.validate()
    except (ValueError, OSError, json.JSONDecodeError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    try:
        return args.func(args, cfg)
    except (ValueError, SynthesisError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
