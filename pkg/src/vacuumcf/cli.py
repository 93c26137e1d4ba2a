"""Command-line surface.

Four subcommands drive the library:

  cf        characteristic-function table for one observable
  compare   engine deviation summary against the closed form
  spectrum  approximate-eigenvector reports, unbounded witnesses,
            oscillator eigenpairs (depending on the observable)
  density   tabulated probability density, or the point-mass tag

Output is CSV (12 significant digits) or JSON with identical fields, byte
deterministic for a given configuration.  Exit codes: 0 success, 1
comparison threshold exceeded, 2 usage or configuration error, 3 numerical
non-convergence (rows are still emitted, flagged).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .charfn import CfSample, Engine, JumpConfig, cf_closed, cf_jump, cf_spectral
from .distributions import NonIntegrableCfError, PointMass, classify, density_for
from .operators import Observable
from .spectral import (
    approx_eigvec_P,
    approx_eigvec_XplusP,
    approx_eigvec_XPplusPX,
    oscillator_eigenpair,
    unbounded_witness_X,
)

__all__ = ["main", "RunConfig", "COMPARE_THRESHOLDS"]

# acceptance deviation thresholds of the jump engine per observable
COMPARE_THRESHOLDS = {
    Observable.X: 1e-4,
    Observable.P: 5e-3,
    Observable.XplusP: 5e-3,
    Observable.XPplusPX: 1e-3,
    Observable.Harmonic: 1e-3,
}

_OBSERVABLES = {o.value: o for o in Observable}

_WITNESS_NS = (1, 2, 5, 10, 100)
_PARAM_GRIDS = {
    Observable.P: (1e-3, 1e-2, 1e-1, 1.0),
    Observable.XplusP: (1e-3, 1e-2, 1e-1, 1.0),
    Observable.XPplusPX: (0.25, 0.5, 1.0),
}
_SPECTRUM_Z = 0.5
_EIGENPAIR_COUNT = 6


@dataclass
class RunConfig:
    command: str
    observable: Observable
    engine: str = "all"
    t_min: float = -3.0
    t_max: float = 3.0
    t_step: float = 0.1
    radius: float = 12.0
    eps_schedule: tuple[float, ...] = (1e-1, 1e-2, 1e-3)
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    output_format: str = "csv"
    output_path: str | None = None
    threads: int = 1

    def t_grid(self) -> np.ndarray:
        n = int(round((self.t_max - self.t_min) / self.t_step)) + 1
        return self.t_min + self.t_step * np.arange(n)

    def jump_config(self) -> JumpConfig:
        return JumpConfig(radius=self.radius, abs_tol=self.abs_tol,
                          rel_tol=self.rel_tol, eps_schedule=self.eps_schedule)


class ConfigError(ValueError):
    pass


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def _parse_t_range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"--t-range wants min:max:step, got {text!r}")
    t_min, t_max, t_step = (float(p) for p in parts)
    if t_step <= 0:
        raise ConfigError(f"t step must be positive, got {t_step}")
    if t_min > t_max:
        raise ConfigError(f"empty t range: {t_min} > {t_max}")
    return t_min, t_max, t_step


def _parse_eps(text: str) -> tuple[float, ...]:
    try:
        eps = tuple(float(p) for p in text.split(",") if p)
    except ValueError as e:
        raise ConfigError(f"bad --eps-schedule {text!r}") from e
    if not eps:
        raise ConfigError("empty --eps-schedule")
    return eps


def _read_config_file(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"config line has no '=': {line!r}")
            key, _, val = line.partition("=")
            out[key.strip().replace("-", "_")] = val.strip()
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vacuumcf",
        description="Vacuum characteristic functions of quantum observables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("cf", "characteristic-function table"),
        ("compare", "engine deviation summary"),
        ("spectrum", "spectral diagnostics"),
        ("density", "probability density table"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--observable", required=False,
                       choices=sorted(_OBSERVABLES), help="x, p, x+p, xp+px or harmonic")
        p.add_argument("--engine", default=None,
                       choices=["closed", "jump", "spectral", "all"])
        p.add_argument("--t-range", default=None, metavar="MIN:MAX:STEP")
        p.add_argument("--radius", type=float, default=None)
        p.add_argument("--eps-schedule", default=None, metavar="E1,E2,...")
        p.add_argument("--abs-tol", type=float, default=None)
        p.add_argument("--rel-tol", type=float, default=None)
        p.add_argument("--format", dest="output_format", default=None,
                       choices=["csv", "json"])
        p.add_argument("--out", dest="output_path", default=None)
        p.add_argument("--config", dest="config_file", default=None,
                       help="key=value file; explicit flags win")
    return parser


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    file_vals: dict[str, str] = {}
    if args.config_file:
        file_vals = _read_config_file(args.config_file)

    def pick(flag_val, key: str, default):
        if flag_val is not None:
            return flag_val
        if key in file_vals:
            return file_vals[key]
        return default

    token = pick(args.observable, "observable", None)
    if token is None:
        raise ConfigError("--observable is required (flag or config file)")
    if token not in _OBSERVABLES:
        raise ConfigError(f"unknown observable {token!r}")

    t_range = pick(args.t_range, "t_range", "-3:3:0.1")
    t_min, t_max, t_step = _parse_t_range(str(t_range))
    eps_raw = pick(args.eps_schedule, "eps_schedule", "0.1,0.01,0.001")
    eps = _parse_eps(eps_raw) if isinstance(eps_raw, str) else tuple(eps_raw)

    cfg = RunConfig(
        command=args.command,
        observable=_OBSERVABLES[token],
        engine=str(pick(args.engine, "engine", "all")),
        t_min=t_min, t_max=t_max, t_step=t_step,
        radius=float(pick(args.radius, "radius", 12.0)),
        eps_schedule=eps,
        abs_tol=float(pick(args.abs_tol, "abs_tol", 1e-10)),
        rel_tol=float(pick(args.rel_tol, "rel_tol", 1e-8)),
        output_format=str(pick(args.output_format, "format", "csv")),
        output_path=pick(args.output_path, "out", None),
        threads=max(1, int(os.environ.get("QCF_THREADS", "1"))),
    )
    try:
        cfg.jump_config()
    except ValueError as e:
        raise ConfigError(str(e)) from e
    return cfg


def _config_echo(cfg: RunConfig) -> dict:
    return {
        "command": cfg.command,
        "observable": cfg.observable.value,
        "engine": cfg.engine,
        "t_range": f"{_fmt(cfg.t_min)}:{_fmt(cfg.t_max)}:{_fmt(cfg.t_step)}",
        "radius": cfg.radius,
        "eps_schedule": list(cfg.eps_schedule),
        "abs_tol": cfg.abs_tol,
        "rel_tol": cfg.rel_tol,
    }


def _emit(cfg: RunConfig, header: list[str], rows: list[list], extra_meta: dict | None = None) -> None:
    meta = _config_echo(cfg)
    if extra_meta:
        meta.update(extra_meta)
    if cfg.output_format == "json":
        payload = {
            "config": meta,
            "rows": [dict(zip(header, row)) for row in rows],
        }
        text = json.dumps(payload, indent=2, default=_fmt) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for key, val in meta.items():
            buf.write(f"# {key}={val}\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
        text = buf.getvalue()
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _engines_for(cfg: RunConfig) -> list[Engine]:
    T = cfg.observable
    if cfg.engine == "closed":
        return [Engine.ClosedForm]
    if cfg.engine == "jump":
        return [Engine.BoundaryJump]
    if cfg.engine == "spectral":
        if T is not Observable.Harmonic:
            raise ConfigError("spectral engine is only defined for harmonic")
        return [Engine.SpectralExpansion]
    engines = [Engine.ClosedForm, Engine.BoundaryJump]
    if T is Observable.Harmonic:
        engines.append(Engine.SpectralExpansion)
    return engines


def _evaluate(cfg: RunConfig, engine: Engine, ts: np.ndarray) -> list[CfSample]:
    T = cfg.observable
    if engine is Engine.ClosedForm:
        return [CfSample(float(t), cf_closed(T, t), 0.0, engine) for t in ts]
    if engine is Engine.SpectralExpansion:
        return [CfSample(float(t), cf_spectral(T, t), 1e-12, engine) for t in ts]
    jc = cfg.jump_config()
    cf_jump(T, 0.0, jc)  # build the boundary tables once before fanning out
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            return list(pool.map(lambda t: cf_jump(T, float(t), jc), ts))
    return [cf_jump(T, float(t), jc) for t in ts]


def cmd_cf(cfg: RunConfig) -> int:
    ts = cfg.t_grid()
    header = ["t", "engine", "re_cf", "im_cf", "error_estimate",
              "deviation_from_closed", "converged"]
    rows: list[list] = []
    exit_code = 0
    for engine in _engines_for(cfg):
        samples = _evaluate(cfg, engine, ts)
        for s in samples:
            dev = abs(s.value - cf_closed(cfg.observable, s.t))
            rows.append([s.t, engine.value, s.value.real, s.value.imag,
                         s.error_estimate, dev, s.converged])
            if not s.converged:
                exit_code = 3
    rows.sort(key=lambda r: (r[0], r[1]))
    _emit(cfg, header, rows)
    return exit_code


def cmd_compare(cfg: RunConfig) -> int:
    ts = cfg.t_grid()
    threshold = COMPARE_THRESHOLDS[cfg.observable]
    header = ["engine", "n_points", "max_abs_deviation", "mean_abs_deviation",
              "threshold", "within_threshold"]
    rows: list[list] = []
    worst = 0.0
    engines = [e for e in _engines_for(cfg) if e is not Engine.ClosedForm]
    for engine in engines:
        samples = _evaluate(cfg, engine, ts)
        devs = np.array([abs(s.value - cf_closed(cfg.observable, s.t)) for s in samples])
        rows.append([engine.value, len(samples), float(devs.max()),
                     float(devs.mean()), threshold, bool(devs.max() <= threshold)])
        worst = max(worst, float(devs.max()))
    _emit(cfg, header, rows)
    return 0 if worst <= threshold else 1


def cmd_spectrum(cfg: RunConfig) -> int:
    T = cfg.observable
    if T is Observable.X:
        header = ["n", "resolvent_norm_sq", "input_norm_sq",
                  "expected_resolvent_norm_sq", "expected_input_norm_sq"]
        rows = []
        for n in _WITNESS_NS:
            gn2, fn2 = unbounded_witness_X(_SPECTRUM_Z, n)
            rows.append([n, gn2, fn2, float(n - 1), 1.0 - 1.0 / n])
        _emit(cfg, header, rows)
        return 0
    if T is Observable.Harmonic:
        header = ["n", "eigenvalue", "parity"]
        rows = []
        for n in range(1, _EIGENPAIR_COUNT + 1):
            pair = oscillator_eigenpair(n)
            rows.append([pair.index, pair.eigenvalue, pair.parity])
        _emit(cfg, header, rows)
        return 0
    reports = {
        Observable.P: approx_eigvec_P,
        Observable.XplusP: approx_eigvec_XplusP,
        Observable.XPplusPX: approx_eigvec_XPplusPX,
    }
    maker = reports[T]
    header = ["z", "parameter", "vector_norm", "residual_norm",
              "closed_form_residual", "discrepancy"]
    rows = []
    for param in _PARAM_GRIDS[T]:
        rep = maker(_SPECTRUM_Z, param)
        rows.append([rep.z, rep.parameter, rep.vector_norm, rep.residual_norm,
                     rep.closed_form_residual, rep.discrepancy])
    _emit(cfg, header, rows)
    return 0


def cmd_density(cfg: RunConfig) -> int:
    T = cfg.observable
    tag = classify(T)
    if isinstance(tag, PointMass):
        _emit(cfg, ["law", "location"], [["PointMass", tag.location]])
        return 0
    try:
        table = density_for(T)
    except NonIntegrableCfError as e:  # pragma: no cover - guarded above
        print(f"error: {e}", file=sys.stderr)
        return 3
    meta = {"law": type(tag).__name__, "law_params": vars(tag)}
    rows = [[float(x), float(d)] for x, d in zip(table.x_grid, table.density)]
    _emit(cfg, ["x", "density"], rows, extra_meta=meta)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        cfg = _resolve_config(args)
    except (ConfigError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    handler = {
        "cf": cmd_cf,
        "compare": cmd_compare,
        "spectrum": cmd_spectrum,
        "density": cmd_density,
    }[cfg.command]
    return handler(cfg)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
