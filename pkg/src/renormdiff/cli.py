"""Command-line workbench: simulate, compare, sweep.

Configuration comes from a plain key=value file ('#' comments) plus
command-line flags; flags win.  Output is CSV (17-significant-digit floats,
byte-stable across runs) or JSON mirroring the same field names.  Exit codes:
0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .analysis import compare, envelope, zero_crossing_period
from .asymptotic import GlobalSolution, assemble_modes
from .lineardiff import RootConvention, SchemeParams
from .oracle import (
    DivergenceError,
    SingularStepError,
    Trajectory,
    init_from_amplitude,
    iterate,
    iterate_mickens,
)
from .perturbation import AmplitudePair, Nonlinearity, Variant, naive_solution
from .renormalization import KappaConvention, build_flow, flow_path

__all__ = ["ExperimentConfig", "main", "entry", "run_compare_pipeline"]


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    kind: str = "cubic"
    dt: float = 0.01
    eps: float = 0.01
    a0_re: float = 0.5
    a0_im: float = 0.0
    t_max: float = 100.0
    root_convention: str = "exact"
    kappa_convention: str = "one-plus-c-squared"
    vdp_halving: bool = False
    scheme: str = "standard"
    output_path: str | None = None
    output_format: str = "csv"
    stride: int = 1


_KINDS = ("cubic", "vdp")
_ROOT_CONVENTIONS = {c.value: c for c in RootConvention}
_KAPPA_CONVENTIONS = {c.value: c for c in KappaConvention}
_SCHEMES = ("standard", "mickens")
_FORMATS = ("csv", "json")
_SWEEPABLE = ("dt", "eps", "a0_re")

_BOOL_WORDS = {
    "1": True,
    "true": True,
    "yes": True,
    "on": True,
    "0": False,
    "false": False,
    "no": False,
    "off": False,
}


def _parse_config_file(path: str) -> dict:
    fields = {f.name: f.type for f in dataclasses.fields(ExperimentConfig)}
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in fields:
            raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
        out[key] = _coerce_field(key, value)
    return out


def _coerce_field(key: str, value: str):
    default = getattr(ExperimentConfig(), key)
    if isinstance(default, bool):
        word = value.lower()
        if word not in _BOOL_WORDS:
            raise ConfigError(f"{key} expects a boolean, got {value!r}")
        return _BOOL_WORDS[word]
    if isinstance(default, int):
        try:
            return int(value)
        except ValueError as exc:
            raise ConfigError(f"{key} expects an integer, got {value!r}") from exc
    if isinstance(default, float):
        try:
            return float(value)
        except ValueError as exc:
            raise ConfigError(f"{key} expects a number, got {value!r}") from exc
    return value


def _validate(cfg: ExperimentConfig) -> ExperimentConfig:
    if cfg.kind not in _KINDS:
        raise ConfigError(f"kind must be one of {_KINDS}, got {cfg.kind!r}")
    if cfg.dt <= 0.0:
        raise ConfigError("dt must be positive")
    if cfg.t_max <= 0.0:
        raise ConfigError("t_max must be positive")
    if cfg.stride < 1:
        raise ConfigError("stride must be >= 1")
    if cfg.root_convention not in _ROOT_CONVENTIONS:
        raise ConfigError(
            f"root_convention must be one of {sorted(_ROOT_CONVENTIONS)}, "
            f"got {cfg.root_convention!r}"
        )
    if cfg.kappa_convention not in _KAPPA_CONVENTIONS:
        raise ConfigError(
            f"kappa_convention must be one of {sorted(_KAPPA_CONVENTIONS)}, "
            f"got {cfg.kappa_convention!r}"
        )
    if cfg.scheme not in _SCHEMES:
        raise ConfigError(f"scheme must be one of {_SCHEMES}, got {cfg.scheme!r}")
    if cfg.output_format not in _FORMATS:
        raise ConfigError(
            f"output_format must be one of {_FORMATS}, got {cfg.output_format!r}"
        )
    if cfg.scheme == "mickens" and cfg.dt >= math.pi:
        raise ConfigError("dt must lie in (0, pi) for the mickens scheme")
    if cfg.kind == "vdp" and cfg.a0_re == 0.0:
        raise ConfigError("vdp runs need a0_re != 0 to define the component ratio")
    if cfg.eps < 0.0:
        raise ConfigError("eps must be nonnegative")
    return cfg


def _scheme_params(cfg: ExperimentConfig) -> SchemeParams:
    return SchemeParams(
        dt=cfg.dt, eps=cfg.eps, root_convention=_ROOT_CONVENTIONS[cfg.root_convention]
    )


def _nonlinearity(cfg: ExperimentConfig) -> Nonlinearity:
    if cfg.kind == "cubic":
        return Nonlinearity(Variant.CUBIC)
    return Nonlinearity(Variant.VAN_DER_POL, vdp_halving=cfg.vdp_halving)


def _steps(cfg: ExperimentConfig) -> int:
    n = int(round(cfg.t_max / cfg.dt))
    if n < 2:
        raise ConfigError("t_max must cover at least two steps")
    return n


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _write_table(cfg: ExperimentConfig, header: list[str], columns: dict, summary: dict | None):
    stride = cfg.stride
    n_rows = len(columns[header[0]])
    rows = range(0, n_rows, stride)
    if cfg.output_format == "csv":
        lines = [",".join(header)]
        for i in rows:
            lines.append(",".join(_fmt(columns[name][i]) for name in header))
        if summary is not None:
            lines.append("# summary = " + json.dumps(summary, sort_keys=True))
        text = "\n".join(lines) + "\n"
    else:
        records = [
            {name: _json_value(columns[name][i]) for name in header} for i in rows
        ]
        doc: dict = {"rows": records}
        if summary is not None:
            doc["summary"] = summary
        text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if cfg.output_path is None:
        sys.stdout.write(text)
    else:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json_value(value):
    if value is None:
        return None
    if isinstance(value, (int, np.integer)):
        return int(value)
    return float(value)


def _oracle_trajectory(cfg: ExperimentConfig, kind: Nonlinearity, params: SchemeParams) -> Trajectory:
    a0 = complex(cfg.a0_re, cfg.a0_im)
    z0, z1 = init_from_amplitude(a0, params)
    n_steps = _steps(cfg)
    if cfg.scheme == "mickens":
        return iterate_mickens(kind, cfg.dt, cfg.eps, z0, z1, n_steps)
    return iterate(kind, params, z0, z1, n_steps)


def cmd_simulate(cfg: ExperimentConfig) -> int:
    kind = _nonlinearity(cfg)
    params = _scheme_params(cfg)
    traj = _oracle_trajectory(cfg, kind, params)
    n = np.arange(len(traj))
    columns = {"n": n, "t": traj.times, "z": traj.values}
    _write_table(cfg, ["n", "t", "z"], columns, summary=None)
    return 0


def run_compare_pipeline(cfg: ExperimentConfig) -> tuple[dict, dict]:
    """Oracle vs naive vs renormalized trajectories, plus summary statistics.

    Returns (columns, summary); every summary entry is recomputable from the
    columns alone.
    """
    kind = _nonlinearity(cfg)
    params = _scheme_params(cfg)
    a0 = complex(cfg.a0_re, cfg.a0_im)
    oracle_traj = _oracle_trajectory(cfg, kind, params)
    n_steps = len(oracle_traj) - 1
    n = np.arange(n_steps + 1)

    amps = AmplitudePair.conjugate_pair(a0)
    z_naive = naive_solution(kind, amps, params, n)

    sol = GlobalSolution(
        kind, params, a0, kappa_convention=_KAPPA_CONVENTIONS[cfg.kappa_convention]
    )
    z_renorm_continuum = sol.eval_discrete(n)

    flow = build_flow(kind, params)
    amp_path, _ = flow_path(flow, a0, a0.conjugate(), n_steps)
    z_renorm_discrete = assemble_modes(kind, params, amp_path, n)

    naive_profile = compare(oracle_traj, Trajectory(cfg.dt, z_naive))
    renorm_profile = compare(oracle_traj, Trajectory(cfg.dt, z_renorm_continuum))

    summary = {
        "max_err_naive": naive_profile.max_abs,
        "max_err_renorm": renorm_profile.max_abs,
        "slope_err_naive": naive_profile.slope,
        "slope_err_renorm": renorm_profile.slope,
        "period_oracle": None,
        "limit_amplitude_oracle": None,
    }
    try:
        summary["period_oracle"] = zero_crossing_period(oracle_traj).mean_period
    except ValueError:
        pass
    try:
        peaks = envelope(oracle_traj)
        tail = peaks[-min(5, peaks.shape[0]) :, 1]
        summary["limit_amplitude_oracle"] = float(tail.mean())
    except ValueError:
        pass

    columns = {
        "n": n,
        "t": oracle_traj.times,
        "z_oracle": oracle_traj.values,
        "z_naive": z_naive,
        "z_renorm_discrete": z_renorm_discrete,
        "z_renorm_continuum": z_renorm_continuum,
        "err_naive": naive_profile.diffs,
        "err_renorm": renorm_profile.diffs,
    }
    return columns, summary


_COMPARE_HEADER = [
    "n",
    "t",
    "z_oracle",
    "z_naive",
    "z_renorm_discrete",
    "z_renorm_continuum",
    "err_naive",
    "err_renorm",
]


def cmd_compare(cfg: ExperimentConfig) -> int:
    columns, summary = run_compare_pipeline(cfg)
    _write_table(cfg, _COMPARE_HEADER, columns, summary)
    if cfg.output_path is not None:
        sys.stdout.write(json.dumps(summary, sort_keys=True) + "\n")
    return 0


def cmd_sweep(cfg: ExperimentConfig, param: str, values: list[float]) -> int:
    if param not in _SWEEPABLE:
        raise ConfigError(f"sweep parameter must be one of {_SWEEPABLE}, got {param!r}")
    if not values:
        raise ConfigError("sweep needs a non-empty list of values")
    summaries = []
    for value in values:
        row_cfg = _validate(dataclasses.replace(cfg, **{param: value}))
        _, summary = run_compare_pipeline(row_cfg)
        summaries.append(summary)
    header = ["value"] + list(summaries[0].keys())
    columns = {"value": list(values)}
    for key in summaries[0]:
        columns[key] = [s[key] for s in summaries]
    sweep_cfg = dataclasses.replace(cfg, stride=1)
    _write_table(sweep_cfg, header, columns, summary={"param": param})
    return 0


def _add_config_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="key=value config file; flags override")
    parser.add_argument("--kind", choices=_KINDS)
    parser.add_argument("--dt", type=float)
    parser.add_argument("--eps", type=float)
    parser.add_argument("--a0-re", dest="a0_re", type=float)
    parser.add_argument("--a0-im", dest="a0_im", type=float)
    parser.add_argument("--t-max", dest="t_max", type=float)
    parser.add_argument("--root-convention", dest="root_convention",
                        choices=sorted(_ROOT_CONVENTIONS))
    parser.add_argument("--kappa-convention", dest="kappa_convention",
                        choices=sorted(_KAPPA_CONVENTIONS))
    parser.add_argument("--vdp-halving", dest="vdp_halving",
                        action=argparse.BooleanOptionalAction)
    parser.add_argument("--scheme", choices=_SCHEMES)
    parser.add_argument("--output-path", dest="output_path")
    parser.add_argument("--output-format", dest="output_format", choices=_FORMATS)
    parser.add_argument("--stride", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="renormdiff",
        description="Exact, naive, and renormalized solutions of weakly "
        "nonlinear second-order difference schemes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("simulate", "run the exact iteration and write the trajectory"),
        ("compare", "compare oracle, naive, and renormalized trajectories"),
        ("sweep", "repeat the comparison over a list of parameter values"),
    ):
        p = sub.add_parser(name, help=doc)
        _add_config_flags(p)
        if name == "sweep":
            p.add_argument("--param", required=True, help="one of dt, eps, a0_re")
            p.add_argument("--values", required=True,
                           help="comma-separated list of numbers")
    return parser


def _resolve_config(ns: argparse.Namespace) -> ExperimentConfig:
    cfg = ExperimentConfig()
    if ns.config:
        for key, value in _parse_config_file(ns.config).items():
            setattr(cfg, key, value)
    for field in dataclasses.fields(ExperimentConfig):
        override = getattr(ns, field.name, None)
        if override is not None:
            setattr(cfg, field.name, override)
    return _validate(cfg)


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        cfg = _resolve_config(ns)
        if ns.command == "simulate":
            return cmd_simulate(cfg)
        if ns.command == "compare":
            return cmd_compare(cfg)
        values_raw = [v for v in ns.values.split(",") if v.strip()]
        try:
            values = [float(v) for v in values_raw]
        except ValueError as exc:
            raise ConfigError(f"bad sweep value: {exc}") from exc
        return cmd_sweep(cfg, ns.param, values)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DivergenceError, SingularStepError, OverflowError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    raise SystemExit(main())
