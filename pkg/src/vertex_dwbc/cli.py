"""Command-line front end: ``vertex-dwbc <command> [options]``.

Exit status: 0 on success, 1 when a ``verify`` check fails, 2 on a
configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
from dataclasses import dataclass

from .determinant import corr6_closed, corr6_recursive, z6_det
from .efp import EfpHomSpec, efp_homogeneous
from .errors import ConfigError, ParseError, SamplingFailed, SingularWeight, SizeLimit, VertexError
from .lattice import CorrSpec, CorrSpec19, corr19_oracle, corr6_oracle, z19_oracle, z6_config_sum, z6_oracle
from .params_io import params_to_dict, read_params
from .reduction import corr19_reduced, z19_reduced
from .verify import run_verify
from .weights import DELTA_GEN, ModelParams19, as_complex, sample_generic_params, sample_generic_params19

COMMANDS = ("z6", "corr6", "z19", "corr19", "efp-hom", "verify")
METHODS = ("oracle", "det", "recursive", "reduced", "config-sum")
VALID_METHODS = {
    "z6": ("oracle", "det", "config-sum"),
    "corr6": ("oracle", "det", "recursive"),
    "z19": ("oracle", "reduced"),
    "corr19": ("oracle", "reduced"),
    "efp-hom": ("det",),
    "verify": METHODS,
}
DEFAULT_METHOD = {"z6": "det", "corr6": "det", "z19": "reduced", "corr19": "reduced", "efp-hom": "det", "verify": "det"}
PRECISION_ENV = "VERTEX_DWBC_PRECISION"


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int
    eta: complex
    seed: int
    method: str
    params_file: str | None
    output: str
    precision: str
    delta_gen: float
    r: int | None = None
    eps: str | None = None
    s: int | None = None
    deltas: tuple | None = None
    z: complex = 0.3 + 0.1j
    n_max: int = 4
    seeds: int = 5

    def validate(self) -> None:
        if self.method not in VALID_METHODS[self.command]:
            raise ConfigError(f"method '{self.method}' not available for '{self.command}' (use {', '.join(VALID_METHODS[self.command])})")
        if self.n < 1:
            raise ConfigError("--n must be positive")
        if self.r is not None and not 0 <= self.r <= self.n:
            raise ConfigError(f"--r {self.r} outside [0, {self.n}]")
        if self.precision not in ("double", "extended"):
            raise ConfigError(f"precision must be 'double' or 'extended', got '{self.precision}'")
        if self.delta_gen <= 0:
            raise ConfigError("--delta-gen must be positive")


def _parse_deltas(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"--deltas expects comma-separated integers, got '{text}'") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vertex-dwbc", description="Six- and nineteen-vertex lattices with domain-wall boundaries.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--n", type=int, default=2, help="lattice size N")
    parser.add_argument("--eta", default="0.8", help="crossing parameter, e.g. 0.8 or 0.6+0.3j")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--method", choices=METHODS, default=None)
    parser.add_argument("--params-file", default=None, help="JSON parameter file (overrides --n/--eta/--seed)")
    parser.add_argument("--output", choices=("json", "csv"), default="json")
    parser.add_argument("--precision", choices=("double", "extended"), default=None, help=f"defaults to ${PRECISION_ENV} or 'double'")
    parser.add_argument("--delta-gen", type=float, default=DELTA_GEN)
    parser.add_argument("--r", type=int, default=None, help="row split; swept when omitted")
    parser.add_argument("--eps", default=None, help="spin-1/2 pattern such as '+-'; swept when omitted")
    parser.add_argument("--s", type=int, default=None, help="pattern length for sweeps and efp-hom")
    parser.add_argument("--deltas", default=None, help="spin-1 pattern such as '1,0,-1'")
    parser.add_argument("--z", default="0.3+0.1j", help="homogeneous row rapidity for efp-hom")
    parser.add_argument("--n-max", type=int, default=4)
    parser.add_argument("--seeds", type=int, default=5)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    precision = args.precision or os.environ.get(PRECISION_ENV, "double")
    try:
        eta, z = as_complex(args.eta), as_complex(args.z)
    except ValueError as exc:
        raise ConfigError(f"cannot parse complex value: {exc}") from exc
    return RunConfig(
        command=args.command,
        n=args.n,
        eta=eta,
        seed=args.seed,
        method=args.method or DEFAULT_METHOD[args.command],
        params_file=args.params_file,
        output=args.output,
        precision=precision,
        delta_gen=args.delta_gen,
        r=args.r,
        eps=args.eps,
        s=args.s,
        deltas=_parse_deltas(args.deltas) if args.deltas else None,
        z=z,
        n_max=args.n_max,
        seeds=args.seeds,
    )


def _load_params(cfg: RunConfig, spin1: bool):
    if cfg.params_file:
        params = read_params(cfg.params_file)
        if isinstance(params, ModelParams19) != spin1:
            raise ConfigError(f"{cfg.params_file}: expected {'zs/ws' if spin1 else 'lambdas/nus'} parameters")
        return params
    if spin1:
        return sample_generic_params19(cfg.n, cfg.seed, cfg.eta, cfg.delta_gen)
    return sample_generic_params(cfg.n, cfg.seed, cfg.eta, cfg.delta_gen)


def _rows(cfg: RunConfig, n: int, patterns) -> list:
    rs = [cfg.r] if cfg.r is not None else range(n + 1)
    if cfg.r is not None and not 0 <= cfg.r <= n:
        raise ConfigError(f"--r {cfg.r} outside [0, {n}]")
    return [(r, p) for r in rs for p in patterns]


def _corr6_patterns(cfg: RunConfig, n: int) -> list:
    if cfg.eps is not None:
        return [cfg.eps]
    lengths = [cfg.s] if cfg.s else range(1, min(n, 3) + 1)
    return ["".join(p) for s in lengths for p in itertools.product("+-", repeat=s)]


def _corr19_patterns(cfg: RunConfig, n: int) -> list:
    if cfg.deltas is not None:
        return [cfg.deltas]
    lengths = [cfg.s] if cfg.s else range(1, min(n, 2) + 1)
    return [p for s in lengths for p in itertools.product((1, 0, -1), repeat=s)]


def evaluate(cfg: RunConfig):
    """Return ``(rows, params)``; ``rows`` are ``(r, pattern, value)`` or ``(None, None, value)``."""
    d = cfg.delta_gen
    if cfg.command == "z6":
        p = _load_params(cfg, False)
        fn = {"oracle": z6_oracle, "det": lambda q: z6_det(q, d), "config-sum": z6_config_sum}[cfg.method]
        return [(None, None, fn(p))], p
    if cfg.command == "z19":
        p = _load_params(cfg, True)
        fn = {"oracle": lambda q: z19_oracle(q, delta=d), "reduced": lambda q: z19_reduced(q, d)}[cfg.method]
        return [(None, None, fn(p))], p
    if cfg.command == "corr6":
        p = _load_params(cfg, False)
        fn = {
            "oracle": lambda q, sp: corr6_oracle(q, sp),
            "det": lambda q, sp: corr6_closed(q, sp, d),
            "recursive": lambda q, sp: corr6_recursive(q, sp, d),
        }[cfg.method]
        rows = []
        for r, pat in _rows(cfg, p.n, _corr6_patterns(cfg, p.n)):
            spec = CorrSpec.parse(r, pat)
            spec.validate(p.n)
            rows.append((r, pat, fn(p, spec)))
        return rows, p
    if cfg.command == "corr19":
        p = _load_params(cfg, True)
        fn = {
            "oracle": lambda q, sp: corr19_oracle(q, sp, delta=d),
            "reduced": lambda q, sp: corr19_reduced(q, sp, d),
        }[cfg.method]
        rows = []
        for r, pat in _rows(cfg, p.n, _corr19_patterns(cfg, p.n)):
            spec = CorrSpec19(r, pat)
            spec.validate(p.n)
            rows.append((r, ",".join(str(x) for x in pat), fn(p, spec)))
        return rows, p
    if cfg.command == "efp-hom":
        s = cfg.s or 1
        rows = []
        for r, _ in _rows(cfg, cfg.n, [None]):
            spec = EfpHomSpec(cfg.n, r, s, cfg.z, cfg.eta)
            spec.validate()
            rows.append((r, "-" * s, efp_homogeneous(spec, cfg.precision, delta=d)))
        return rows, ModelParams19(cfg.eta, [cfg.z] * cfg.n, [0.0] * cfg.n)
    raise ConfigError(f"unknown command {cfg.command}")


def _value(v) -> dict:
    v = complex(v)
    return {"re": v.real, "im": v.imag}


def render(cfg: RunConfig, rows, params) -> str:
    n = params.n
    if cfg.output == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "r", "pattern", "re", "im", "method"])
        for r, pat, v in rows:
            v = complex(v)
            w.writerow([n, "" if r is None else r, "" if pat is None else pat, repr(v.real), repr(v.imag), cfg.method])
        return buf.getvalue()
    doc = {"method": cfg.method, "params": params_to_dict(params)}
    if len(rows) == 1:
        r, pat, v = rows[0]
        doc = {"value": _value(v), **doc}
        if r is not None:
            doc.update(r=r, pattern=pat)
    else:
        doc = {"values": [{"N": n, "r": r, "pattern": pat, "value": _value(v)} for r, pat, v in rows], **doc}
    return json.dumps(doc, indent=1) + "\n"


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    cfg.validate()
    if cfg.command == "verify":
        if cfg.n_max < 1 or cfg.seeds < 1:
            raise ConfigError("--n-max and --seeds must be positive")
        report = run_verify(cfg.n_max, cfg.seeds, cfg.seed, cfg.precision)
        out.write(report.to_csv() if cfg.output == "csv" else report.to_json())
        return 0 if report.ok else 1
    rows, params = evaluate(cfg)
    out.write(render(cfg, rows, params))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(config_from_args(args))
    except (ConfigError, ParseError, SizeLimit, SingularWeight, SamplingFailed, ValueError) as exc:
        print(f"vertex-dwbc: error: {exc}", file=sys.stderr)
        return 2
    except VertexError as exc:
        print(f"vertex-dwbc: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
