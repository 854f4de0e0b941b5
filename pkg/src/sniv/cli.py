"""``sniv`` command line: invert, interval, mc, encode-dump and plot.

Exit codes: 0 success, 2 empty set, 3 unbounded direction (ball binds at
the cap), 4 solver failure, 64 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import jsonschema
import numpy as np

from . import __version__, mc, region, sdp
from .encode import ARUndefined, SnivConfig, dump_system, encode_ar, encode_custom, encode_sniv
from .hierarchy import BallPolicy, SemialgebraicSet
from .poly import parse_polynomial
from .stats import ClassSpec, Sample, bootstrap_radius, cross_moments, radius, read_csv

log = logging.getLogger("sniv")

EXIT_OK = 0
EXIT_EMPTY = 2
EXIT_UNBOUNDED = 3
EXIT_SOLVER = 4
EXIT_USAGE = 64

CONFIG_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "method": {"enum": ["sniv", "ar", "ar-subvector", "custom"]},
        "class": {"enum": [1, 2, 3, 4]},
        "alpha": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
        "draws": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer", "minimum": 0},
        "s": {"type": "integer", "minimum": 0},
        "questioned": {"type": "array", "items": {"type": ["string", "integer"]}},
        "s_tilde": {"type": "integer", "minimum": 0},
        "exogenous": {"type": "array", "items": {"type": ["string", "integer"]}},
        "theta_signs": {"type": "object", "additionalProperties": {"enum": [-1, 1]}},
        "hbar": {"type": "integer", "minimum": 1},
        "start_h": {"type": "integer", "minimum": 1},
        "ball": {"type": "number", "exclusiveMinimum": 0},
        "ball_cap": {"type": "number", "exclusiveMinimum": 0},
        "directions": {"type": "integer", "minimum": 2},
        "workers": {"type": "integer", "minimum": 1},
        "custom_p": {"type": "string"},
        "custom_q": {"type": "string"},
        "tolerances": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "gap": {"type": "number", "exclusiveMinimum": 0},
                "feas": {"type": "number", "exclusiveMinimum": 0},
                "rank_tol": {"type": "number", "exclusiveMinimum": 0},
                "max_iter": {"type": "integer", "minimum": 1},
            },
        },
    },
}

_NUM = {"type": ["number", "null"]}
_PROVENANCE = {
    "tool": {"const": "sniv"},
    "version": {"type": "string"},
    "command": {"type": "string"},
    "seed": {"type": "integer"},
    "config": {"type": "object"},
}
_INTERVAL = {
    "coordinate": {"type": "integer", "minimum": 0},
    "name": {"type": "string"},
    "lower": _NUM,
    "upper": _NUM,
    "certified_lower": {"type": "boolean"},
    "certified_upper": {"type": "boolean"},
    "unbounded_lower": {"type": "boolean"},
    "unbounded_upper": {"type": "boolean"},
    "empty": {"type": "boolean"},
}

INTERVAL_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": [*_PROVENANCE, *_INTERVAL],
    "properties": {**_PROVENANCE, **_INTERVAL},
}

ENVELOPE_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": [*_PROVENANCE, "summary", "envelope"],
    "properties": {
        **_PROVENANCE,
        "summary": {
            "type": "object",
            "required": ["status", "empty", "unbounded", "failed_directions", "certified_fraction", "intervals"],
            "properties": {
                "status": {"enum": ["ok", "empty", "unbounded", "solver-failure"]},
                "empty": {"type": "boolean"},
                "unbounded": {"type": "array"},
                "failed_directions": {"type": "integer", "minimum": 0},
                "certified_fraction": {"type": "number", "minimum": 0, "maximum": 1},
                "intervals": {"type": "array", "items": {"type": "object", "required": list(_INTERVAL)}},
            },
        },
        "envelope": {
            "type": "object",
            "required": ["names", "hbar", "ball_radius_sq", "empty", "directions"],
            "properties": {
                "names": {"type": "array", "items": {"type": "string"}},
                "directions": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["u", "bound", "level", "certified", "ball_active", "verdict"],
                        "properties": {"u": {"type": "array", "items": {"type": "number"}}, "bound": _NUM},
                    },
                },
            },
        },
    },
}

DEFAULTS: Dict[str, Any] = {
    "method": "sniv",
    "class": 1,
    "alpha": 0.05,
    "draws": 1000,
    "seed": 0,
    "hbar": 2,
    "ball": 1000.0,
    "ball_cap": 1e5,
    "directions": 40,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


# output helpers ----------------------------------------------------------------

def _round(obj):
    """Recursively round floats to 12 significant digits; non-finite -> None."""
    if isinstance(obj, float) or isinstance(obj, np.floating):
        v = float(obj)
        return float(f"{v:.12g}") if math.isfinite(v) else None
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _write_json(payload: Dict, out: Optional[str]) -> None:
    text = json.dumps(_round(payload), indent=2, sort_keys=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _provenance(cfg: Dict, command: str) -> Dict:
    return {"tool": "sniv", "version": __version__, "command": command, "seed": cfg["seed"], "config": cfg}


# configuration -------------------------------------------------------------------

def _load_config(args) -> Dict[str, Any]:
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            user = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        try:
            jsonschema.validate(user, CONFIG_SCHEMA)
        except jsonschema.ValidationError as exc:
            raise UsageError(f"invalid config: {exc.message}") from None
        cfg.update(user)
    overrides = {
        "method": args.method,
        "class": args.cls,
        "alpha": args.alpha,
        "draws": args.draws,
        "seed": args.seed,
        "s": args.s,
        "questioned": _split(args.questioned),
        "s_tilde": args.s_tilde,
        "exogenous": _split(args.exogenous),
        "hbar": args.hbar,
        "start_h": args.start_h,
        "ball": args.ball,
        "ball_cap": args.ball_cap,
        "directions": args.directions,
        "workers": args.workers,
        "custom_p": args.custom_p,
        "custom_q": args.custom_q,
    }
    cfg.update({k: v for k, v in overrides.items() if v is not None})
    try:
        jsonschema.validate(cfg, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise UsageError(f"invalid option: {exc.message}") from None
    if cfg["ball_cap"] < cfg["ball"]:
        cfg["ball_cap"] = cfg["ball"]
    return cfg


def _split(text: Optional[str]) -> Optional[List[str]]:
    if text is None:
        return None
    return [t.strip() for t in text.split(",") if t.strip()]


def _index(ref, prefix: str, size: int) -> int:
    """Column reference ('x3', 3 or '3', 1-based) -> 0-based index."""
    s = str(ref).strip()
    if s.startswith(prefix):
        s = s[len(prefix):]
    try:
        k = int(s)
    except ValueError:
        raise UsageError(f"cannot parse column reference {ref!r}") from None
    if not 1 <= k <= size:
        raise UsageError(f"column {prefix}{k} out of range: data have {prefix}1..{prefix}{size}")
    return k - 1


def _tolerances(cfg) -> sdp.Tolerances:
    return sdp.Tolerances(**cfg.get("tolerances", {}))


def _read(path) -> Sample:
    try:
        return read_csv(path)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read data: {exc}") from None


def build_set(sample: Sample, cfg: Dict[str, Any], d_x1: Optional[int] = None) -> SemialgebraicSet:
    method = cfg["method"]
    try:
        if method in ("ar", "ar-subvector"):
            return encode_ar(sample, cfg["alpha"], d_x1 if method == "ar-subvector" else None, ball=cfg["ball"])
        if method == "custom":
            if "custom_p" not in cfg or "custom_q" not in cfg:
                raise UsageError("custom method needs custom_p and custom_q polynomial files")
            p = parse_polynomial(Path(cfg["custom_p"]).read_text(encoding="utf-8"), sample.d_x)
            q = parse_polynomial(Path(cfg["custom_q"]).read_text(encoding="utf-8"), sample.d_x)
            return encode_custom(p, q, cfg["ball"])
        spec = ClassSpec(cfg["class"], cfg["alpha"], cfg["draws"], cfg["seed"])
        if spec.cls == 4:
            r = bootstrap_radius(sample.Z, spec.alpha, spec.draws, spec.seed)
        else:
            r = radius(spec, sample.d_z, sample.n)
        questioned = cfg.get("questioned")
        exogenous = cfg.get("exogenous")
        signs = {_index(k, "z", sample.d_z): int(v) for k, v in cfg.get("theta_signs", {}).items()}
        sc = SnivConfig(
            class_spec=spec,
            questioned=None if questioned is None else tuple(_index(q, "x", sample.d_x) for q in questioned),
            s=cfg.get("s"),
            exogenous=None if exogenous is None else tuple(_index(z, "z", sample.d_z) for z in exogenous),
            s_tilde=cfg.get("s_tilde"),
            ball=cfg["ball"],
            theta_signs=signs,
        )
        return encode_sniv(cross_moments(sample), r, sc)
    except ARUndefined as exc:
        raise UsageError(f"AR undefined: {exc}") from None
    except (ValueError, OSError, np.linalg.LinAlgError) as exc:
        raise UsageError(str(exc)) from None


def _sweep(sset, dirs, cfg) -> region.Envelope:
    return region.sweep(
        sset,
        dirs,
        cfg["hbar"],
        workers=cfg.get("workers"),
        tolerances=_tolerances(cfg),
        ball=BallPolicy(cap=cfg["ball_cap"]),
    )


def _exit_code(env: region.Envelope) -> int:
    if env.empty:
        return EXIT_EMPTY
    if env.failed:
        return EXIT_SOLVER
    if any(b.ball_active for b in env.bounds):
        return EXIT_UNBOUNDED
    return EXIT_OK


def _coordinate(ref: str, names: List[str]) -> int:
    s = ref.strip()
    if s in names:
        return names.index(s)
    if s.startswith("x") and f"beta{s[1:]}" in names:
        return names.index(f"beta{s[1:]}")
    try:
        k = int(s)
    except ValueError:
        raise UsageError(f"unknown coordinate {ref!r}; choose from {', '.join(names)}") from None
    if not 1 <= k <= len(names):
        raise UsageError(f"coordinate {k} out of range 1..{len(names)}")
    return k - 1


# subcommands -----------------------------------------------------------------------

def cmd_invert(args) -> int:
    cfg = _load_config(args)
    sample = _read(args.data)
    sset = build_set(sample, cfg, d_x1=None)
    dim = len(sset.layout.primary)
    dirs = region.direction_grid(dim, max(cfg["directions"], 2 * dim), seed=cfg["seed"])
    env = _sweep(sset, dirs, cfg)
    code = _exit_code(env)
    intervals = [] if env.empty else [iv.record() for iv in env.intervals()]
    payload = _provenance(cfg, "invert")
    payload["summary"] = {
        "status": {0: "ok", 2: "empty", 3: "unbounded", 4: "solver-failure"}[code],
        "empty": env.empty,
        "unbounded": [b.u for b in env.bounds if b.ball_active],
        "failed_directions": len(env.failed),
        "certified_fraction": env.certified_fraction,
        "intervals": intervals,
    }
    payload["envelope"] = env.to_json(timing=args.timing)
    _write_json(payload, args.out)
    return code


def cmd_interval(args) -> int:
    cfg = _load_config(args)
    sample = _read(args.data)
    sset = build_set(sample, cfg, d_x1=1)
    names = [sset.layout.names()[k] for k in sset.layout.primary]
    k = _coordinate(args.coordinate, names)
    iv = region.interval(
        sset, k, cfg["hbar"], tolerances=_tolerances(cfg), ball=BallPolicy(cap=cfg["ball_cap"]), workers=1
    )
    payload = _provenance(cfg, "interval")
    payload.update(iv.record())
    _write_json(payload, args.out)
    if iv.empty:
        return EXIT_EMPTY
    if not (np.isfinite(iv.lower) and np.isfinite(iv.upper)) and not (iv.unbounded_lower or iv.unbounded_upper):
        return EXIT_SOLVER
    if iv.unbounded_lower or iv.unbounded_upper:
        return EXIT_UNBOUNDED
    return EXIT_OK


def cmd_encode_dump(args) -> int:
    cfg = _load_config(args)
    sample = _read(args.data)
    sset = build_set(sample, cfg, d_x1=None)
    header = [f"sniv {__version__} encode-dump", f"seed {cfg['seed']}", "config " + json.dumps(_round(cfg), sort_keys=True)]
    text = dump_system(sset, header)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_plot(args) -> int:
    from .plotting import plot_section

    cfg = _load_config(args)
    sample = _read(args.data)
    sset = build_set(sample, cfg, d_x1=None)
    names = [sset.layout.names()[k] for k in sset.layout.primary]
    axes_ref = _split(args.axes) or names[:2]
    if len(axes_ref) != 2 or len(names) < 2:
        raise UsageError("plot needs exactly two axes and a set of dimension >= 2")
    axes = tuple(_coordinate(a, names) for a in axes_ref)
    if axes[0] == axes[1]:
        raise UsageError("plot axes must differ")
    dim = len(names)
    dirs = region.direction_grid(dim, max(cfg["directions"], 2 * dim), seed=cfg["seed"])
    env = _sweep(sset, dirs, cfg)
    anchor = None
    if args.anchor:
        vals = [float(v) for v in _split(args.anchor)]
        if len(vals) != dim:
            raise UsageError(f"anchor needs {dim} values")
        anchor = np.array(vals)
    verts = region.cross_section(env, axes, anchor)
    out = Path(args.out)
    with out.open("w", encoding="utf-8") as fh:
        fh.write(f"# sniv {__version__} plot seed={cfg['seed']}\n")
        fh.write(f"vertex,{names[axes[0]]},{names[axes[1]]}\n")
        for i, (a, b) in enumerate(verts):
            fh.write(f"{i},{a:.12g},{b:.12g}\n")
    figure = Path(args.figure) if args.figure else out.with_suffix(".png")
    plot_section(figure, [("envelope", verts)], [names[axes[0]], names[axes[1]]], title=cfg["method"])
    return _exit_code(env)


def cmd_mc(args) -> int:
    try:
        design = mc.make_design(
            args.design,
            n=args.n,
            d_x=args.dx,
            d_z=args.dz,
            pi_star=args.pi_star,
            het=args.het or None,
            s=args.s,
            s_tilde=args.s_tilde,
        )
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None
    methods = _split(args.method) or ["sniv1"]
    for m in methods:
        if m not in mc.METHODS:
            raise UsageError(f"unknown method {m!r}; choose from {', '.join(mc.METHODS)}")
    metrics = [
        mc.run_experiment(
            design, m, args.reps, seed=args.seed, alpha=args.alpha, hbar=args.hbar, ball=args.ball,
            directions=args.directions, workers=args.workers or 1,
        )
        for m in methods
    ]
    text = mc.emit_table(metrics, args.format, timing=args.timing, provenance={"version": __version__, "seed": args.seed})
    out = Path(args.out)
    out.write_text(text, encoding="utf-8")
    if not args.no_figure:
        from .plotting import plot_metrics

        plot_metrics(out.with_suffix(".png"), metrics)
    return EXIT_OK


# parser ------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("data", help="CSV with header y,x1..,z1..")
    p.add_argument("--config", help="JSON configuration file")
    p.add_argument("--method", choices=["sniv", "ar", "ar-subvector", "custom"])
    p.add_argument("--class", dest="cls", type=int, choices=[1, 2, 3, 4])
    p.add_argument("--alpha", type=float)
    p.add_argument("--draws", type=int, help="bootstrap draws (class 4)")
    p.add_argument("--seed", type=int)
    p.add_argument("--s", type=int, help="sparsity certificate for beta")
    p.add_argument("--questioned", help="comma list of questioned regressors, e.g. x1,x3")
    p.add_argument("--s-tilde", type=int, help="bound on the number of endogenous instruments")
    p.add_argument("--exogenous", help="comma list of instruments known exogenous, e.g. z1,z2")
    p.add_argument("--hbar", type=int)
    p.add_argument("--start-h", type=int)
    p.add_argument("--ball", type=float, help="squared ball radius B")
    p.add_argument("--ball-cap", type=float, help="largest B tried while the ball binds")
    p.add_argument("--directions", type=int)
    p.add_argument("--workers", type=int, help="default: SNIV_WORKERS or 1")
    p.add_argument("--custom-p", help="polynomial file for p-hat (custom method)")
    p.add_argument("--custom-q", help="polynomial file for q-hat (custom method)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sniv", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"sniv {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("invert", help="outer envelope of the confidence set")
    p.add_argument("--timing", action="store_true", help="add wall-clock seconds (not reproducible)")
    _common(p)
    p.add_argument("--out", help="output JSON (default stdout)")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("interval", help="projection interval for one coordinate")
    _common(p)
    p.add_argument("--coordinate", required=True, help="beta1, x1, theta4 or a 1-based index")
    p.add_argument("--out", help="output JSON (default stdout)")
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("encode-dump", help="write the polynomial system as text")
    _common(p)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_encode_dump)

    p = sub.add_parser("plot", help="2-D envelope cross-section as CSV plus a PNG figure")
    _common(p)
    p.add_argument("--axes", help="two coordinates, e.g. beta1,beta2")
    p.add_argument("--anchor", help="values of all coordinates fixing the slice (default 0)")
    p.add_argument("--out", required=True, help="CSV of polygon vertices")
    p.add_argument("--figure", help="PNG path (default: next to --out)")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("mc", help="Monte Carlo experiment table")
    p.add_argument("--design", required=True, choices=list(mc.DESIGNS))
    p.add_argument("--method", help=f"comma list from {', '.join(mc.METHODS)} (default sniv1)")
    p.add_argument("--reps", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int)
    p.add_argument("--dx", type=int)
    p.add_argument("--dz", type=int)
    p.add_argument("--pi-star", type=float)
    p.add_argument("--het", action="store_true")
    p.add_argument("--s", type=int)
    p.add_argument("--s-tilde", type=int)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--hbar", type=int, default=2)
    p.add_argument("--ball", type=float, default=1000.0)
    p.add_argument("--directions", type=int, default=16)
    p.add_argument("--workers", type=int)
    p.add_argument("--format", choices=["csv", "markdown"], default="csv")
    p.add_argument("--timing", action="store_true", help="add the seconds-per-solve column (not reproducible)")
    p.add_argument("--no-figure", action="store_true")
    p.add_argument("--out", required=True, help="table file; a PNG figure is written next to it")
    p.set_defaults(func=cmd_mc)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING if args.verbose == 0 else (logging.INFO if args.verbose == 1 else logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"sniv: error: {exc}\n")
        return EXIT_USAGE
    except (np.linalg.LinAlgError, FloatingPointError, RuntimeError) as exc:
        sys.stderr.write(f"sniv: solver failure: {exc}\n")
        return EXIT_SOLVER


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
