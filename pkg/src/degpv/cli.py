"""Command-line front end: ``degpv {verify,integrate,monodromy,backlund,surface,sweep}``.

Configuration comes from an optional TOML file (complex numbers as
``[re, im]`` or plain numbers), overridden by flags. Exit codes: 0 on
success, 1 on a numeric or suite failure, 2 on a usage or config error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import suites
from .backlund import BTKind, apply_bt, verify_bt
from .errors import DegenerateInput, DegPVError, FixedSingularity, StepFailure
from .moduli import Chart1Point, Theta, chart1_residual
from .monodromy import (
    ContourConfig, cubic_gradient, cubic_residual, cubic_singular_points, expected_s,
    isomonodromy_drift, monodromy_invariants, rplus_fiber, rplus_residuals,
)
from .painleve import PState, Trajectory, integrate_flow, linear_path, qp_to_chart

log = logging.getLogger("degpv")


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    theta0: complex = 1.0
    theta1: complex = 1.0
    t_start: complex = 1.0
    t_end: complex = 2.0
    # the default solution has a pole at t = 1.599 on the real axis
    via: list = field(default_factory=lambda: [1.5 + 0.5j])
    initial_q: complex = 2.0
    initial_p: complex = 0.5
    tol: float = 1e-10
    segments: int = 10
    system: str = "moduli"
    base: complex = 0.5 + 0.75j
    radius: float = 0.3
    output: str | None = None
    seed: int = 0
    s0: complex = 3.0
    s1: complex = 2.0
    samples: int = 5
    grid0: list = field(default_factory=lambda: [0.2, 0.5, 0.8])
    grid1: list = field(default_factory=lambda: [0.2, 0.5, 0.8])
    workers: int = 2

    @property
    def theta(self) -> Theta:
        return Theta(self.theta0, self.theta1)

    def nodes(self) -> list:
        """Corners of the t polyline; waypoints are dropped for a zero-length path."""
        if self.t_start == self.t_end:
            return [self.t_start]
        return [self.t_start, *self.via, self.t_end]

    @property
    def contour(self) -> ContourConfig:
        return ContourConfig(self.base, self.radius)

    def validate(self):
        if not 0 < self.tol <= 1e-2:
            raise ConfigError(f"tol must lie in (0, 1e-2], got {self.tol}")
        nodes = self.nodes()
        if any(x == 0 for x in nodes):
            raise ConfigError("t path must avoid t = 0")
        for a, b in zip(nodes[:-1], nodes[1:]):
            d = b - a
            if d == 0:
                continue
            u = min(1.0, max(0.0, -(a * d.conjugate()).real / abs(d) ** 2))
            if abs(a + u * d) < 1e-12:
                raise ConfigError("t path passes through t = 0")
        if self.segments < 1:
            raise ConfigError("segments must be >= 1")
        if self.radius <= 0:
            raise ConfigError("contour radius must be positive")
        return self


COMPLEX_KEYS = {"theta0", "theta1", "t_start", "t_end", "initial_q", "initial_p", "base", "s0", "s1"}
FLOAT_KEYS = {"tol", "radius"}
INT_KEYS = {"segments", "seed", "samples", "workers"}
STR_KEYS = {"output", "system"}
LIST_KEYS = {"grid0", "grid1", "via"}


def _complex(v, key):
    if isinstance(v, (int, float, complex)) and not isinstance(v, bool):
        return complex(v)
    if isinstance(v, str):
        parts = v.split(",")
        if len(parts) in (1, 2):
            try:
                return complex(*(float(x) for x in parts))
            except ValueError:
                pass
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) for x in v):
        return complex(v[0], v[1])
    raise ConfigError(f"{key}: expected a number, 're,im' or [re, im], got {v!r}")


def _coerce(key, v):
    if key in COMPLEX_KEYS:
        return _complex(v, key)
    if key in FLOAT_KEYS:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"{key}: expected a real number, got {v!r}")
        return float(v)
    if key in INT_KEYS:
        if isinstance(v, bool) or not isinstance(v, int):
            raise ConfigError(f"{key}: expected an integer, got {v!r}")
        return v
    if key in LIST_KEYS:
        if not isinstance(v, list) or (not v and key != "via"):
            raise ConfigError(f"{key}: expected a nonempty list")
        return [_complex(x, key) for x in v]
    if key in STR_KEYS:
        if not isinstance(v, str):
            raise ConfigError(f"{key}: expected a string, got {v!r}")
        return v
    raise ConfigError(f"unknown config key {key!r}")


def _flatten(doc):
    # [contour] base = ... is accepted as well as a top-level base = ...
    out = {}
    for k, v in doc.items():
        if isinstance(v, dict):
            out.update(_flatten(v))
        else:
            out[k] = v
    return out


def load_config(path: str | None, overrides: dict) -> RunConfig:
    cfg = RunConfig()
    values = {}
    if path:
        try:
            with open(path, "rb") as fh:
                doc = tomllib.load(fh)
        except OSError as e:
            raise ConfigError(f"cannot read {path}: {e.strerror}")
        except tomllib.TOMLDecodeError as e:
            raise ConfigError(f"{path}: {e}")
        values.update(_flatten(doc))
    values.update({k: v for k, v in overrides.items() if v is not None})
    kw = {k: _coerce(k, getattr(cfg, k)) for k in COMPLEX_KEYS | LIST_KEYS}
    kw.update({k: _coerce(k, v) for k, v in values.items()})
    if "system" in kw and kw["system"] not in ("hamilton", "scalar", "moduli"):
        raise ConfigError(f"system must be hamilton, scalar or moduli, got {kw['system']!r}")
    return replace(cfg, **kw).validate()


# -- output -----------------------------------------------------------------

def _num(x):
    """JSON-safe number; complex values become [re, im]."""
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating, np.floating, np.integer, np.bool_)):
        return _num(obj)
    return obj


def _emit_json(obj, out):
    text = json.dumps(_clean(obj), indent=2)
    _write(text + "\n", out)


def _write(text, out):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _path(cfg: RunConfig):
    """The t polyline, each leg split into ``segments`` equal pieces."""
    nodes = cfg.nodes()
    out = [nodes[0]]
    for a, b in zip(nodes[:-1], nodes[1:]):
        out.extend(linear_path(a, b, cfg.segments)[1:])
    return out


def _state(cfg: RunConfig) -> PState:
    return PState(cfg.initial_q, cfg.initial_p, cfg.t_start, cfg.theta)


def _constraint_drift(traj: Trajectory) -> float:
    if traj.system != "moduli":
        return 0.0
    return float(max(abs(chart1_residual(Chart1Point(*traj.states[i], traj.t[i]), traj.theta))
                     for i in range(len(traj))))


# -- commands ---------------------------------------------------------------

def cmd_verify(cfg: RunConfig) -> int:
    results = suites.run_all(cfg.seed)
    _emit_json([r.as_dict() for r in results], cfg.output)
    return 0 if all(r.passed for r in results) else 1


def cmd_integrate(cfg: RunConfig) -> int:
    try:
        traj = integrate_flow(_state(cfg), _path(cfg), cfg.tol, system=cfg.system)
    except (StepFailure, FixedSingularity) as e:
        last = getattr(e, "last_t", None)
        print(f"integration failed: {e}" + (f" (last good t = {last})" if last is not None else ""),
              file=sys.stderr)
        return 1
    _write(traj.to_csv(), cfg.output)
    summary = {"samples": len(traj), "final": {"t": traj.t[-1], "q": traj.q[-1], "p": traj.p[-1]},
               "constraint_drift": _constraint_drift(traj),
               "max_residual": float(traj.residuals().max())}
    print(json.dumps(_clean(summary)), file=sys.stderr)
    return 0


def cmd_monodromy(cfg: RunConfig) -> int:
    th = cfg.theta
    s = _state(cfg)
    inv = monodromy_invariants(qp_to_chart(s), th, cfg.contour, cfg.tol)
    drift = 0.0
    if cfg.t_end != cfg.t_start:
        traj = integrate_flow(s, _path(cfg), cfg.tol, system=cfg.system)
        drift = isomonodromy_drift(traj, 5, cfg.contour, cfg.tol)
    s0, s1 = expected_s(th)
    _emit_json({"theta": [th.theta0, th.theta1], "t": cfg.t_start,
                "invariants": {"tr_m0": inv.tr_m0, "tr_m1": inv.tr_m1, "tr_m0m1": inv.tr_m0m1},
                "expected": {"s0": s0, "s1": s1}, "drift": drift}, cfg.output)
    return 0


def cmd_backlund(cfg: RunConfig, kind: str, input_path: str | None) -> int:
    bt = BTKind(kind)
    if input_path:
        try:
            with open(input_path) as fh:
                traj = Trajectory.from_csv(fh.read(), cfg.theta)
        except OSError as e:
            raise ConfigError(f"cannot read {input_path}: {e.strerror}")
        except (KeyError, ValueError) as e:
            raise ConfigError(f"{input_path}: malformed trajectory CSV ({e})")
    else:
        traj = integrate_flow(_state(cfg), _path(cfg), cfg.tol, samples_per_segment=1)
    image = apply_bt(traj, bt)
    _write(image.to_csv(), cfg.output)
    residual = verify_bt(traj, bt, cfg.tol) if len(traj) >= 5 else None
    print(json.dumps(_clean({"kind": bt.value, "theta": [image.theta.theta0, image.theta.theta1],
                             "verify_residual": residual})), file=sys.stderr)
    return 0


def cmd_surface(cfg: RunConfig) -> int:
    s0, s1 = cfg.s0, cfg.s1
    pts = cubic_singular_points(s0, s1)
    report = {"s0": s0, "s1": s1, "singular_points": [
        {"x": [complex(p.x1), complex(p.x2), complex(p.x3)], "residual": cubic_residual(p, s0, s1),
         "gradient": list(cubic_gradient(p, s0, s1))} for p in pts]}
    if s1 == 2 and s0 not in (2, -2):
        report["fiber"] = [{"point": [complex(v) for v in (f.x1, f.x2, f.x3, f.y1)],
                            "residuals": list(rplus_residuals(f, s0))}
                           for f in rplus_fiber(s0, cfg.samples)]
    _emit_json(report, cfg.output)
    return 0


SWEEP_HEADER = ["index", "theta0_re", "theta0_im", "theta1_re", "theta1_im", "ok",
                "constraint_drift", "isomonodromy_drift", "max_residual", "error"]


def _sweep_point(args):
    index, cfg = args
    row = [index, cfg.theta0.real, cfg.theta0.imag, cfg.theta1.real, cfg.theta1.imag]
    try:
        traj = integrate_flow(_state(cfg), _path(cfg), cfg.tol, system=cfg.system)
        drift = isomonodromy_drift(traj, 3, cfg.contour, cfg.tol)
        return row + [1, _constraint_drift(traj), drift, float(traj.residuals().max()), ""]
    except DegPVError as e:
        return row + [0, float("nan"), float("nan"), float("nan"), type(e).__name__]


def _fmt(v):
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def cmd_sweep(cfg: RunConfig) -> int:
    jobs = [(k, replace(cfg, theta0=a, theta1=b))
            for k, (a, b) in enumerate((a, b) for a in cfg.grid0 for b in cfg.grid1)]
    workers = max(1, min(cfg.workers, len(jobs)))
    if workers == 1:
        rows = [_sweep_point(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_point, jobs))  # map keeps grid order
    lines = [",".join(SWEEP_HEADER)] + [",".join(_fmt(v) for v in r) for r in rows]
    _write("\n".join(lines) + "\n", cfg.output)
    return 0 if all(r[5] == 1 for r in rows) else 1


# -- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="degpv", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML configuration file")
    common.add_argument("--theta0", help="re,im")
    common.add_argument("--theta1", help="re,im")
    common.add_argument("--t-start", dest="t_start", help="re,im")
    common.add_argument("--t-end", dest="t_end", help="re,im")
    common.add_argument("--q0", dest="initial_q", help="re,im")
    common.add_argument("--p0", dest="initial_p", help="re,im")
    common.add_argument("--via", action="append", help="t-path waypoint re,im (repeatable)")
    common.add_argument("--no-via", dest="no_via", action="store_true",
                        help="straight path from t-start to t-end")
    common.add_argument("--tol", type=float)
    common.add_argument("--segments", type=int)
    common.add_argument("--system", choices=["hamilton", "scalar", "moduli"])
    common.add_argument("--seed", type=int)
    common.add_argument("--workers", type=int)
    common.add_argument("-o", "--output")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="run the identity suites")
    sub.add_parser("integrate", parents=[common], help="integrate the flow, write trajectory CSV")
    sub.add_parser("monodromy", parents=[common], help="monodromy trace invariants as JSON")
    bp = sub.add_parser("backlund", parents=[common], help="apply a Backlund transformation")
    bp.add_argument("--kind", required=True, choices=[k.value for k in BTKind])
    bp.add_argument("--input", help="trajectory CSV (default: integrate from the config)")
    sp = sub.add_parser("surface", parents=[common], help="singular points of the cubic surface")
    sp.add_argument("--s0", help="re,im")
    sp.add_argument("--s1", help="re,im")
    sp.add_argument("--samples", type=int)
    sub.add_parser("sweep", parents=[common], help="integrate + monodromy over a theta grid")
    return ap


def main(argv=None) -> int:
    level = os.environ.get("DEGPV_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    keys = ["via", "theta0", "theta1", "t_start", "t_end", "initial_q", "initial_p", "tol", "segments",
            "system", "seed", "workers", "output", "s0", "s1", "samples"]
    overrides = {k: getattr(args, k, None) for k in keys}
    if args.no_via:
        overrides["via"] = []
    try:
        cfg = load_config(args.config, overrides)
        if args.command == "verify":
            return cmd_verify(cfg)
        if args.command == "integrate":
            return cmd_integrate(cfg)
        if args.command == "monodromy":
            return cmd_monodromy(cfg)
        if args.command == "backlund":
            return cmd_backlund(cfg, args.kind, args.input)
        if args.command == "surface":
            return cmd_surface(cfg)
        return cmd_sweep(cfg)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    except DegenerateInput as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return 2
    except DegPVError as e:
        print(f"numeric failure: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
