"""Command line front end: ``trace``, ``sweep``, ``validate`` and ``roots``.

Exit status: 0 success, 1 a validation tolerance failed, 2 usage or
configuration error, 3 numerical failure.  Failures print a single JSON line
``{"error": <type>, "message": <text>}`` on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .closedform import (
    build_root_system,
    eval_susceptibility,
    solve_closed_form,
    steady_state_value,
)
from .errors import BandEdgeError, ConfigError, NumericalError, StepTooLarge
from .kernels import KernelSpec, kernel_laplace, truncated_laplace
from .params import SystemParams, TimeGrid
from .polyroots import build_cubic, build_quintic, find_roots, multiply, quadratic_factor
from .volterra import SolverConfig, solve_perturbative

EXIT_OK, EXIT_TOLERANCE, EXIT_CONFIG, EXIT_NUMERICAL = 0, 1, 2, 3

COLUMNS = ["t", "re_b1", "im_b1", "re_chi", "im_chi", "neg_im_chi", "pop1"]
ORACLE_TOLERANCE = 5e-3
MARKOV_TOLERANCE = 1e-8
LAPLACE_TOLERANCE = 1e-6
LAPLACE_POINTS = (0.5, 1 + 1j, 2 - 0.5j)

# flag dest -> SystemParams field
_PARAM_FIELDS = {
    "beta": "beta",
    "gamma": "gamma",
    "delta": "delta",
    "delta_g": "delta_g",
    "omega": "omega_rabi",
    "chi_prefactor": "chi_prefactor",
}
_DEFAULTS = {
    "beta": 1.0,
    "gamma": 0.2,
    "delta": 0.0,
    "delta_g": 0.0,
    "omega": 0.01,
    "chi_prefactor": 1.0,
    "t_max": 50.0,
    "steps": 5000,
    "method": "closed_form",
    "format": None,
}
SWEEPABLE = ("gamma", "delta", "delta_g", "omega")


@dataclass(frozen=True)
class RunConfig:
    params: SystemParams
    grid: TimeGrid
    method: str = "closed_form"
    output_path: str | None = None
    format: str = "csv"


def read_config_file(path: str) -> dict:
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _DEFAULTS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def _coerce(key: str, value):
    if key == "steps":
        return int(value)
    if key in ("method", "format"):
        return value
    return float(value)


def build_run_config(args: argparse.Namespace) -> RunConfig:
    merged = dict(_DEFAULTS)
    if getattr(args, "config", None):
        merged.update(read_config_file(args.config))
    for key in _DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    try:
        merged = {k: (_coerce(k, v) if v is not None else None) for k, v in merged.items()}
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    params = SystemParams(**{_PARAM_FIELDS[k]: merged[k] for k in _PARAM_FIELDS})
    grid = TimeGrid(merged["t_max"], merged["steps"])
    if merged["method"] not in ("closed_form", "volterra", "both"):
        raise ConfigError(f"unknown method {merged['method']!r}")

    output = getattr(args, "output", None)
    fmt = merged["format"]
    suffix = Path(output).suffix.lower().lstrip(".") if output else ""
    if fmt is None:
        fmt = suffix if suffix in ("csv", "json") else "csv"
    if fmt not in ("csv", "json"):
        raise ConfigError(f"unknown format {fmt!r}")
    if suffix in ("csv", "json") and suffix != fmt:
        raise ConfigError(f"format {fmt} does not match output extension .{suffix}")
    return RunConfig(params, grid, merged["method"], output, fmt)


# {{{ computation


def compute_table(cfg: RunConfig) -> tuple[list[str], np.ndarray]:
    """Trace columns for ``cfg`` as ``(names, 2-D array)``."""
    p, grid = cfg.params, cfg.grid

    def columns(amp):
        sus = eval_susceptibility(p, amp)
        return [amp.b1.real, amp.b1.imag, sus.chi.real, sus.chi.imag, sus.neg_im_chi, sus.population1]

    names = list(COLUMNS)
    if cfg.method == "volterra":
        amp = solve_perturbative(p, cfg=SolverConfig(grid))
        data = [grid.t, *columns(amp)]
    else:
        amp = solve_closed_form(p, grid)
        data = [grid.t, *columns(amp)]
        if cfg.method == "both":
            oracle = solve_perturbative(p, cfg=SolverConfig(grid))
            data += columns(oracle) + [np.abs(amp.b1 - oracle.b1)]
            names += ["volterra_" + c for c in COLUMNS[1:]] + ["abs_diff"]
    return names, np.column_stack(data)


def format_csv(names: list[str], table: np.ndarray) -> str:
    lines = [",".join(names)]
    # + 0.0 folds -0.0 into 0.0
    lines += [",".join(format(float(v) + 0.0, ".17g") for v in row) for row in table]
    return "\n".join(lines) + "\n"


def format_json(cfg: RunConfig, names: list[str], table: np.ndarray) -> str:
    doc = {
        "schema": "bandedge-trace/1",
        "params": asdict(cfg.params),
        "grid": {"t_max": cfg.grid.t_max, "n_steps": cfg.grid.n_steps},
        "method": cfg.method,
        "columns": names,
        "data": {name: [float(v) for v in table[:, i]] for i, name in enumerate(names)},
    }
    return json.dumps(doc, indent=1) + "\n"


def write_atomic(path: str, text: str) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def render(cfg: RunConfig) -> str:
    names, table = compute_table(cfg)
    if cfg.format == "json":
        return format_json(cfg, names, table)
    return format_csv(names, table)


def gnuplot_script(data_path: str) -> str:
    return (
        "set datafile separator ','\n"
        "set key autotitle columnhead\n"
        "set xlabel 't (1/beta)'\n"
        "set multiplot layout 2,1\n"
        f"plot '{data_path}' using 1:6 with lines title '-Im chi'\n"
        f"plot '{data_path}' using 1:7 with lines title '|b1|^2'\n"
        "unset multiplot\n"
    )


# }}}


# {{{ commands


def cmd_trace(args: argparse.Namespace) -> int:
    cfg = build_run_config(args)
    text = render(cfg)
    if cfg.output_path:
        write_atomic(cfg.output_path, text)
        if args.gnuplot:
            write_atomic(str(Path(cfg.output_path).with_suffix(".gp")), gnuplot_script(cfg.output_path))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _sweep_one(base: RunConfig, param: str, value: float, path: Path) -> dict:
    entry = {"param": param, "value": value, "file": path.name}
    try:
        params = base.params.replace(**{_PARAM_FIELDS[param]: value})
        cfg = RunConfig(params, base.grid, base.method, str(path), base.format)
        write_atomic(str(path), render(cfg))
        entry["status"] = "ok"
    except BandEdgeError as exc:
        entry.update(status="failed", error=type(exc).__name__, message=str(exc))
    return entry


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.param not in SWEEPABLE:
        raise ConfigError(f"cannot sweep {args.param!r}; choose from {', '.join(SWEEPABLE)}")
    base = build_run_config(args)
    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    values = [float(v) for v in args.values]
    paths = [out_dir / f"{args.param}_{i:03d}.{base.format}" for i in range(len(values))]
    workers = max(1, min(args.workers, len(values) or 1))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        entries = list(pool.map(lambda vp: _sweep_one(base, args.param, *vp), zip(values, paths)))
    for i, entry in enumerate(entries):
        entry["index"] = i
    index = {"param": args.param, "count": len(entries), "entries": entries}
    write_atomic(str(out_dir / "index.json"), json.dumps(index, indent=1, sort_keys=True) + "\n")
    failed = [e for e in entries if e["status"] != "ok"]
    for e in failed:
        _report(e["error"], f"{args.param}={e['value']}: {e['message']}")
    return EXIT_NUMERICAL if failed else EXIT_OK


def run_validation(cfg: RunConfig, kernel: str = "edge", gamma_flat: float = 2.0) -> list[dict]:
    """Cross-method checks; each result has name, value, tolerance, passed."""
    results = []
    p, grid = cfg.params, cfg.grid

    def record(name, value, tol):
        results.append({"name": name, "value": float(value), "tolerance": tol, "passed": bool(value <= tol)})

    try:
        SolverConfig(grid).check()
    except StepTooLarge as exc:
        results.append({"name": "step_size", "value": grid.h, "tolerance": 0.05, "passed": False, "error": "StepTooLarge", "message": str(exc)})
        return results

    if kernel == "markovian":
        amp = solve_perturbative(p, KernelSpec.flat(gamma_flat), SolverConfig(grid))
        rate = p.delta + 0.5j * (p.gamma + gamma_flat)
        t = grid.t
        exact = (p.omega_rabi / rate) * (1 - np.exp(1j * rate * t)) if rate != 0 else -1j * p.omega_rabi * t
        scale = max(np.abs(exact).max(), np.finfo(float).tiny)
        record("markovian_relative_error", np.abs(amp.b1 - exact).max() / scale, MARKOV_TOLERANCE)
        return results

    closed = solve_closed_form(p, grid)
    oracle = solve_perturbative(p, cfg=SolverConfig(grid))
    scale = np.abs(closed.b1).max()
    err = np.abs(closed.b1 - oracle.b1).max() / scale if scale > 0 else np.abs(oracle.b1).max()
    record("closed_vs_volterra", err, ORACLE_TOLERANCE)
    spec = KernelSpec.band_edge(p)
    for s in LAPLACE_POINTS:
        exact = kernel_laplace(spec, s)
        rel = abs(truncated_laplace(spec, s) - exact) / abs(exact)
        record(f"kernel_laplace(s={s})", rel, LAPLACE_TOLERANCE)
    return results


def cmd_validate(args: argparse.Namespace) -> int:
    if args.step is None and args.steps is None and args.kernel == "markovian":
        args.step = 0.001
    if args.step is not None:
        args.steps = max(2, int(round((args.t_max or _DEFAULTS["t_max"]) / args.step)))
    elif args.steps is None:
        args.steps = int(round((args.t_max or _DEFAULTS["t_max"]) / 0.005))
    cfg = build_run_config(args)
    results = run_validation(cfg, args.kernel, args.gamma_flat)
    for r in results:
        status = "PASS" if r["passed"] else "FAIL"
        extra = f" ({r['error']})" if "error" in r else ""
        print(f"{status} {r['name']}: {r['value']:.3e} <= {r['tolerance']:g}{extra}")
    return EXIT_OK if all(r["passed"] for r in results) else EXIT_TOLERANCE


def _pair(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def roots_report(params: SystemParams) -> dict:
    quintic = build_quintic(params)
    rs = build_root_system(params)
    product = multiply(quadratic_factor(params), build_cubic(params))
    fact_err = max(abs(a - b) for a, b in zip(product.coefficients, quintic.coefficients))
    coef_scale = max(abs(c) for c in quintic.coefficients)
    cubic = find_roots(build_cubic(params)).roots
    return {
        "params": asdict(params),
        "coefficients": [_pair(c) for c in quintic.coefficients],
        "roots": [_pair(x) for x in rs.x],
        "residuals": [float(r) for r in rs.residuals],
        "y": [_pair(y) for y in rs.y],
        "alpha": [_pair(a) for a in rs.alpha],
        "contributing": [bool(c) for c in rs.contributing],
        "x_squared": [_pair(x * x) for x in rs.x],
        "sum_of_roots": _pair(np.sum(rs.x)),
        "sum_alpha_x": _pair(np.sum(rs.alpha * rs.x)),
        "factorization": {
            "max_abs_coefficient_error": float(fact_err),
            "relative_error": float(fact_err / coef_scale),
            "cubic_roots": [_pair(x) for x in cubic],
        },
        "steady_state": _pair(steady_state_value(params)),
    }


def cmd_roots(args: argparse.Namespace) -> int:
    cfg = build_run_config(args)
    print(json.dumps(roots_report(cfg.params), indent=1))
    return EXIT_OK


# }}}


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("physical parameters (units of beta)")
    g.add_argument("--beta", type=float, help="reservoir coupling (default 1)")
    g.add_argument("--gamma", type=float, help="background decay of |1> (default 0.2)")
    g.add_argument("--delta", type=float, help="probe detuning (default 0)")
    g.add_argument("--delta-g", dest="delta_g", type=float, help="band-edge detuning (default 0)")
    g.add_argument("--omega", type=float, help="probe Rabi frequency (default 0.01)")
    g.add_argument("--chi-prefactor", dest="chi_prefactor", type=float, help="4 pi N |mu01|^2 (default 1)")
    p.add_argument("--config", help="key = value file overriding defaults (flags win)")


def _add_grid_flags(p: argparse.ArgumentParser, with_output: bool = True) -> None:
    p.add_argument("--t-max", dest="t_max", type=float, help="final time (default 50)")
    p.add_argument("--steps", type=int, help="number of time steps (default 5000)")
    p.add_argument("--method", choices=("closed_form", "volterra", "both"))
    if with_output:
        p.add_argument("--format", choices=("csv", "json"))


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bandedge",
        description="Transient probe response of a three-level emitter near a band edge.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trace", help="time trace of b1, chi and |b1|^2")
    _add_param_flags(p)
    _add_grid_flags(p)
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.add_argument("--gnuplot", action="store_true", help="also write a gnuplot script next to the output")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("sweep", help="one trace per parameter value plus index.json")
    _add_param_flags(p)
    _add_grid_flags(p)
    p.add_argument("--param", required=True, help=f"one of {', '.join(SWEEPABLE)}")
    p.add_argument("--values", type=float, nargs="*", default=[])
    p.add_argument("--output-dir", required=True)
    p.add_argument("--workers", type=int, default=4)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="closed form vs Volterra oracle and kernel checks")
    _add_param_flags(p)
    _add_grid_flags(p, with_output=False)
    p.add_argument("--step", type=float, help="time step (default 0.005; overrides --steps)")
    p.add_argument("--kernel", choices=("edge", "markovian"), default="edge")
    p.add_argument("--gamma-flat", dest="gamma_flat", type=float, default=2.0)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("roots", help="quintic roots, branches and expansion coefficients as JSON")
    _add_param_flags(p)
    p.set_defaults(func=cmd_roots)
    return parser


def _report(kind: str, message: str) -> None:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        _report(type(exc).__name__, str(exc))
        return EXIT_CONFIG
    except NumericalError as exc:
        _report(type(exc).__name__, str(exc))
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
