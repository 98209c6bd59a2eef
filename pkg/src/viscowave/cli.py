"""``viscowave`` command line: CSV exports of every computation.

Commands::

    coeffs     A_{k,l} table            k,lambda_k,l,A_kl
    wavefront  wave-front expansion     t,x,r_wavefront,trusted
    longtime   long-time approximation  t,x,r_longtime
    ilt        numerical inversion      t,x,r_ilt,method,nodes,flag
    match      all of the above         t,x,r_wavefront,r_longtime,r_ilt,trusted

Exit status is 0 on success, 2 for bad input and 3 for numerical failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .errors import ConfigError, NumericalError, ViscowaveError
from .ilt import ILTConfig, Method, Precision, invert_response
from .longtime import longtime_eval
from .models import ModelSpec, load_model
from .wavefront import DEFAULT_K, WavefrontExpansion

__all__ = ["RunConfig", "main", "cmd_coeffs", "cmd_wavefront", "cmd_longtime", "cmd_ilt", "cmd_match"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


@dataclass(frozen=True)
class RunConfig:
    model: ModelSpec
    xs: tuple = (1.0,)
    tmin: float = 0.05
    tmax: float = 10.0
    steps: int = 200
    kmax: int = DEFAULT_K
    ilt: ILTConfig = ILTConfig()

    def __post_init__(self):
        if not self.tmin > 0:
            raise ConfigError("--tmin must be positive")
        if not self.tmax >= self.tmin:
            raise ConfigError("--tmax must not be below --tmin")
        if self.steps < 0:
            raise ConfigError("--steps must be nonnegative")
        if self.kmax < 0:
            raise ConfigError("--kmax must be nonnegative")
        if any(not (x >= 0 and math.isfinite(x)) for x in self.xs):
            raise ConfigError("x values must be finite and nonnegative")

    def times(self) -> List[float]:
        if self.steps == 0:
            return [self.tmin]
        h = (self.tmax - self.tmin) / self.steps
        return [self.tmin + i * h for i in range(self.steps)] + [self.tmax]


def _fmt(value: Optional[float]) -> str:
    return "" if value is None else repr(float(value))


def _write(header: Sequence[str], rows, out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _horizon(expansion: WavefrontExpansion, x: float, t_end: float) -> float:
    front = x * expansion.table.front_slowness
    if t_end <= front:
        return math.inf
    return expansion.trust_horizon(x, t_max=t_end)


def cmd_coeffs(cfg: RunConfig, out) -> None:
    table = WavefrontExpansion.from_model(cfg.model, K=cfg.kmax).table
    rows = []
    for k, row in enumerate(table.A):
        lam = str(table.lambdas[k])
        for l, a in enumerate(row):
            rows.append((k, lam, l, format(float(a), ".17g")))
    _write(("k", "lambda_k", "l", "A_kl"), rows, out)


def cmd_wavefront(cfg: RunConfig, out) -> None:
    expansion = WavefrontExpansion.from_model(cfg.model, K=cfg.kmax)
    rows = []
    for x in cfg.xs:
        horizon = _horizon(expansion, x, cfg.tmax)
        for t in cfg.times():
            rows.append((_fmt(t), _fmt(x), _fmt(expansion(t, x)), int(t <= horizon)))
    _write(("t", "x", "r_wavefront", "trusted"), rows, out)


def cmd_longtime(cfg: RunConfig, out) -> None:
    rows = [
        (_fmt(t), _fmt(x), _fmt(longtime_eval(cfg.model, t, x)))
        for x in cfg.xs
        for t in cfg.times()
    ]
    _write(("t", "x", "r_longtime"), rows, out)


def _ilt_value(cfg: RunConfig, t: float, x: float):
    try:
        return invert_response(cfg.model, t, x, cfg.ilt), ""
    except NumericalError as exc:
        return None, type(exc).__name__


def cmd_ilt(cfg: RunConfig, out) -> None:
    method, nodes = cfg.ilt.method.value, cfg.ilt.node_count
    rows = []
    for x in cfg.xs:
        for t in cfg.times():
            value, flag = _ilt_value(cfg, t, x)
            rows.append((_fmt(t), _fmt(x), _fmt(value), method, nodes, flag))
    _write(("t", "x", "r_ilt", "method", "nodes", "flag"), rows, out)


def cmd_match(cfg: RunConfig, out) -> None:
    expansion = WavefrontExpansion.from_model(cfg.model, K=cfg.kmax)
    rows = []
    for x in cfg.xs:
        horizon = _horizon(expansion, x, cfg.tmax)
        for t in cfg.times():
            value, _ = _ilt_value(cfg, t, x)
            rows.append((
                _fmt(t),
                _fmt(x),
                _fmt(expansion(t, x)),
                _fmt(longtime_eval(cfg.model, t, x)),
                _fmt(value),
                int(t <= horizon),
            ))
    _write(("t", "x", "r_wavefront", "r_longtime", "r_ilt", "trusted"), rows, out)


COMMANDS = {
    "coeffs": cmd_coeffs,
    "wavefront": cmd_wavefront,
    "longtime": cmd_longtime,
    "ilt": cmd_ilt,
    "match": cmd_match,
}


def _x_list(values: Sequence[str]) -> tuple:
    xs = []
    for token in values:
        for part in token.split(","):
            if part.strip():
                xs.append(float(part))
    return tuple(xs)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", required=True, help="JSON model file")
    common.add_argument("--x", nargs="+", default=["1"], help="positions (space or comma separated)")
    common.add_argument("--tmin", type=float, default=0.05)
    common.add_argument("--tmax", type=float, default=10.0)
    common.add_argument("--steps", type=int, default=200, help="number of t intervals")
    common.add_argument("--kmax", type=int, default=DEFAULT_K, help="truncation order K")
    common.add_argument("--ilt-method", choices=[m.value for m in Method], default="talbot")
    common.add_argument("--ilt-nodes", type=int, default=None,
                        help="Talbot nodes (64), Stehfest order (16) or de Hoog degree (40)")
    common.add_argument("--ilt-precision", choices=[p.value for p in Precision], default="high")
    common.add_argument("--out", default=None, help="output file (default: standard output)")

    parser = argparse.ArgumentParser(prog="viscowave", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _config(args) -> RunConfig:
    try:
        xs = _x_list(args.x)
    except ValueError:
        raise ConfigError(f"bad --x value {args.x!r}") from None
    try:
        ilt = ILTConfig(Method(args.ilt_method), args.ilt_nodes, Precision(args.ilt_precision))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return RunConfig(
        model=load_model(args.model),
        xs=xs,
        tmin=args.tmin,
        tmax=args.tmax,
        steps=args.steps,
        kmax=args.kmax,
        ilt=ilt,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        buffer = io.StringIO()
        COMMANDS[args.command](cfg, buffer)
    except ConfigError as exc:
        print(f"viscowave: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, ViscowaveError) as exc:
        print(f"viscowave: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    text = buffer.getvalue()
    if args.out is None:
        sys.stdout.write(text)
    else:
        try:
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"viscowave: error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
