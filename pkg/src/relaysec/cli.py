"""Command-line front end.

    relaysec simulate --n 5 --m 2 --k 2 --tau 0.3 --out runs.csv
    relaysec bounds --config net.cfg
    relaysec sweep --sweep k:1:5:1 --block-length 100000 --trials 100000 --svg k.svg

Configuration is resolved as defaults < ``--config`` file < flags. The config
file holds ``key=value`` lines (``#`` starts a comment) whose keys match the
CSV column names. Exit codes: 0 ok, 2 configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import asdict, dataclass, fields

import numpy as np

from .bounds import feasibility
from .montecarlo import SimConfig, run_simulation
from .params import ParameterError, SystemParams
from .report import csv_text, make_row, svg_chart

EXIT_OK, EXIT_CONFIG, EXIT_IO = 0, 2, 3

_INT_KEYS = {"n", "m", "k", "trials", "block_length", "seed", "workers"}
_FLOAT_KEYS = {"tau", "gamma_r", "gamma_e", "es", "n0", "epsilon_t", "epsilon_s"}
_STR_KEYS = {"out", "svg", "sweep"}
SWEEP_PARAMS = ("k", "tau", "n", "m")


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class Sweep:
    param: str
    values: tuple


@dataclass(frozen=True)
class RunConfig:
    params: SystemParams
    sim: SimConfig
    out: str | None = None
    svg: str | None = None
    sweep: Sweep | None = None

    def as_pairs(self) -> list[tuple[str, object]]:
        pairs = list(asdict(self.params).items()) + list(asdict(self.sim).items())
        pairs += [("out", self.out), ("svg", self.svg)]
        if self.sweep is not None:
            pairs.append(("sweep", f"{self.sweep.param}:" + ",".join(_fmt(v) for v in self.sweep.values)))
        return pairs


def _fmt(v) -> str:
    return f"{v:.9g}" if isinstance(v, float) else str(v)


def _convert(key: str, raw: str):
    try:
        if key in _INT_KEYS:
            return int(raw, 0)
        if key in _FLOAT_KEYS:
            return float(raw)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {raw!r}") from None
    return raw


def read_config_file(path: str) -> dict:
    """Parse a flat ``key=value`` file. Raises OSError if unreadable."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, raw = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _INT_KEYS | _FLOAT_KEYS | _STR_KEYS:
                raise ConfigError(f"{key}: unknown configuration key ({path}:{lineno})")
            values[key] = _convert(key, raw)
    return values


def parse_sweep(text: str, params: SystemParams) -> Sweep:
    """``PARAM:START:STOP:STEP`` (inclusive) or ``PARAM:v1,v2,...``."""
    param, _, rest = text.partition(":")
    if param not in SWEEP_PARAMS:
        raise ConfigError(f"sweep: parameter must be one of {', '.join(SWEEP_PARAMS)}, got {param!r}")
    parts = rest.split(":")
    try:
        if len(parts) == 3:
            start, stop, step = (float(p) for p in parts)
            if step <= 0 or stop < start:
                values = []
            else:
                count = math.floor((stop - start) / step + 1e-9) + 1
                values = [round(start + i * step, 12) for i in range(count)]
        elif len(parts) == 1 and parts[0]:
            values = [float(v) for v in parts[0].split(",")]
        else:
            raise ValueError
    except ValueError:
        raise ConfigError(f"sweep: cannot parse {text!r}") from None
    if not values:
        raise ConfigError("sweep: descriptor yields zero points")
    if param in _INT_KEYS:
        if any(v != int(v) for v in values):
            raise ConfigError(f"sweep: {param} values must be integers")
        values = [int(v) for v in values]
    for v in values:
        params.replace(**{param: v})  # validates every point
    return Sweep(param, tuple(values))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--svg", metavar="PATH")
    common.add_argument("--seed", type=str, metavar="U64")
    common.add_argument("--trials", type=str, metavar="N")
    common.add_argument("--block-length", dest="block_length", type=str, metavar="N")
    common.add_argument("--workers", type=str, metavar="N")
    common.add_argument("--sweep", metavar="PARAM:START:STOP:STEP")
    common.add_argument("--print-config", action="store_true", help="echo the resolved configuration and exit")
    for f in fields(SystemParams):
        flag = "--" + f.name.replace("_", "-")
        common.add_argument(flag, dest=f.name, type=str, metavar=f.name.upper())

    parser = argparse.ArgumentParser(prog="relaysec", description="Top-k relay selection with cooperative jamming.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("simulate", parents=[common], help="Monte Carlo run plus closed-form bounds")
    sub.add_parser("bounds", parents=[common], help="closed-form bounds only")
    sub.add_parser("sweep", parents=[common], help="simulate and bound across a parameter sweep")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values = {}
    if args.config:
        values.update(read_config_file(args.config))
    for key in _INT_KEYS | _FLOAT_KEYS | _STR_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = _convert(key, flag)

    param_keys = {f.name for f in fields(SystemParams)}
    sim_keys = {f.name for f in fields(SimConfig)}
    try:
        params = SystemParams(**{k: v for k, v in values.items() if k in param_keys})
        sim = SimConfig(**{k: v for k, v in values.items() if k in sim_keys})
    except ParameterError as exc:
        raise ConfigError(str(exc)) from None
    sweep = None
    if values.get("sweep"):
        try:
            sweep = parse_sweep(values["sweep"], params)
        except ParameterError as exc:
            raise ConfigError(f"sweep: {exc}") from None
    return RunConfig(params, sim, values.get("out"), values.get("svg"), sweep)


def point_seed(master: int, index: int) -> int:
    """Independent, reproducible seed for sweep point ``index``."""
    state = np.random.SeedSequence(master, spawn_key=(index,)).generate_state(1, np.uint64)
    return int(state[0])


def _summary(params: SystemParams, result, bounds) -> str:
    def opt(v):
        return "n/a" if v is None else f"{v:.6g}"

    lines = [f"n={params.n} m={params.m} k={params.k} tau={params.tau:g}"]
    if result is not None:
        lines += [
            f"  P_out(T) = {result.p_out_t_hat:.6g}  95% CI [{result.ci_t[0]:.6g}, {result.ci_t[1]:.6g}]",
            f"  P_out(S) = {result.p_out_s_hat:.6g}  95% CI [{result.ci_s[0]:.6g}, {result.ci_s[1]:.6g}]",
            f"  Jain index = {result.jain_index:.6g}  mean |R1| = {result.mean_jam1:.4g}  mean |R2| = {result.mean_jam2:.4g}",
        ]
    lines += [
        f"  psi = {bounds.psi:.6g}  P_out(T) bound = {bounds.p_out_t_bound:.6g}  P_out(S) bound = {bounds.p_out_s_bound:.6g}",
        f"  tau window = [{opt(bounds.tau_min)}, {opt(bounds.tau_max)}]  m_max = {opt(bounds.m_max)}",
        f"  feasible = {'yes' if bounds.feasible else 'no'}  configured tau in window = {'yes' if bounds.tau_in_window else 'no'}",
    ]
    if bounds.diagnostics:
        lines.append("  diagnostics: " + "; ".join(bounds.diagnostics))
    return "\n".join(lines)


def _write(path: str, text: str, append: bool = False):
    if append:
        with open(path, "a+", encoding="utf-8", newline="") as fh:
            fh.seek(0, 2)
            if fh.tell() == 0:
                fh.write(text)
            else:
                fh.write(text.split("\n", 1)[1])  # drop header
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def run_command(command: str, cfg: RunConfig) -> int:
    summary_stream = sys.stdout if cfg.out else sys.stderr
    if command == "sweep":
        if cfg.sweep is None:
            raise ConfigError("sweep: no --sweep descriptor given")
        rows = []
        for i, value in enumerate(cfg.sweep.values):
            params = cfg.params.replace(**{cfg.sweep.param: value})
            sim = SimConfig(cfg.sim.trials, cfg.sim.block_length, point_seed(cfg.sim.seed, i), cfg.sim.workers)
            result = run_simulation(params, sim)
            bounds = feasibility(params)
            rows.append(make_row(params, sim, bounds, result))
            print(_summary(params, result, bounds), file=summary_stream)
        text = csv_text(rows)
    else:
        result = run_simulation(cfg.params, cfg.sim) if command == "simulate" else None
        bounds = feasibility(cfg.params)
        rows = [make_row(cfg.params, cfg.sim, bounds, result)]
        print(_summary(cfg.params, result, bounds), file=summary_stream)
        text = csv_text(rows)

    if cfg.out:
        _write(cfg.out, text, append=command != "sweep")
    else:
        sys.stdout.write(text)
    if cfg.svg and command == "sweep":
        _write(cfg.svg, svg_chart(cfg.sweep.param, rows))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.print_config:
            for key, value in cfg.as_pairs():
                print(f"{key}={'' if value is None else _fmt(value)}")
            return EXIT_OK
        return run_command(args.command, cfg)
    except ConfigError as exc:
        print(f"relaysec: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"relaysec: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
