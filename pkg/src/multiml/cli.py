"""Command-line front end.

Usage:
    multiml eval --mus 0.5 1.0 --gamma 1.0 --z 0.3 -0.2
    multiml classic --mu 0.8 --nu 1.2 --x 2.5
    multiml constant --mus 0.3 0.9 --gamma 0.5 --format json
    multiml verify --trials 1000 --seed 7
    multiml identity --n 3 --k-max 12 --trials 100
    multiml table --mus 0.5 1.0 --gamma 1.0 --z-grid 0:1:11 0:0:1 --format csv

Exit codes: 0 ok, 1 bound or identity violated, 2 usage or parameter error,
3 numerical failure. Results go to stdout only; diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from . import __version__
from .classic import MLParams, eval_classic
from .combinatorics import identity_deviation
from .errors import DomainError, MultiMLError
from .estimate import compute_constants
from .multinomial import MultiMLParams, eval_multinomial
from .verify import UINT64_MAX, Ranges, trial_generator, verify_random

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2, 3
IDENTITY_THRESHOLD = 1e-12
VERIFY_ERROR_SHARE = 0.10
TABLE_MAX_POINTS = 10_000


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = 1e-12
    k_max_classic: int = 10_000
    k_max_multinomial: int = 500
    composition_budget: int = 10**8
    seed: int = 0
    output_format: str = "plain"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.tolerance) and self.tolerance > 0):
            raise DomainError(f"tolerance must be positive, got {self.tolerance!r}")
        for name in ("k_max_classic", "k_max_multinomial", "composition_budget"):
            if getattr(self, name) < 1:
                raise DomainError(f"{name} must be >= 1")
        if not (0 <= self.seed <= UINT64_MAX):
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if self.output_format not in ("json", "csv", "plain"):
            raise DomainError(f"unknown output format {self.output_format!r}")


_CONFIG_KEYS = {f.name: f.type for f in fields(RunConfig)}
_CONFIG_ALIASES = {"format": "output_format"}


def _parse_value(key: str, text: str):
    kind = _CONFIG_KEYS[key]
    try:
        if kind == "float":
            return float(text)
        if kind == "int":
            return int(float(text)) if "e" in text.lower() else int(text)
    except ValueError as exc:
        raise DomainError(f"bad value for {key}: {text!r}") from exc
    return text


def load_config(path: str | Path) -> dict:
    """Read ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise DomainError(f"cannot read config file {path}: {exc.strerror}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = _CONFIG_ALIASES.get(key.replace("-", "_"), key.replace("-", "_"))
        if key not in _CONFIG_KEYS:
            raise DomainError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = _parse_value(key, value)
    return out


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then the config file, then flags."""
    values = load_config(args.config) if getattr(args, "config", None) else {}
    for key in _CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    return replace(RunConfig(), **values)


# -- output ------------------------------------------------------------------

def _json_number(v: float) -> str:
    if not math.isfinite(v):
        return "null"
    return format(v, ".17g")


def to_json(obj) -> str:
    """JSON with every float written to 17 significant digits; NaN/inf as null."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _json_number(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g") if math.isfinite(v) else "nan"
    if isinstance(v, (list, tuple)):
        return " ".join(_cell(x) for x in v)
    if isinstance(v, dict):
        return " ".join(f"{k}={_cell(x)}" for k, x in v.items())
    return "" if v is None else str(v)


def _flatten(record: dict) -> dict:
    flat = {}
    for k, v in record.items():
        if isinstance(v, dict) and k != "error_kinds":
            for kk, vv in v.items():
                flat[f"{k}.{kk}"] = vv
        else:
            flat[k] = v
    return flat


def render_record(record: dict, fmt: str) -> str:
    if fmt == "json":
        return to_json(record) + "\n"
    if fmt == "csv":
        flat = _flatten(record)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(flat.keys())
        w.writerow(_cell(v) for v in flat.values())
        return buf.getvalue()
    return "".join(f"{k}: {_cell(v)}\n" for k, v in _flatten(record).items())


# -- commands ----------------------------------------------------------------

def _require_same_length(mus, z) -> None:
    if len(mus) != len(z):
        raise DomainError(f"--mus has {len(mus)} values but --z has {len(z)}")


def cmd_eval(args, cfg: RunConfig):
    _require_same_length(args.mus, args.z)
    if len(args.mus) == 1:
        res = eval_classic(MLParams(args.mus[0], args.gamma), args.z[0], cfg.tolerance, cfg.k_max_classic)
    else:
        res = eval_multinomial(
            MultiMLParams(tuple(args.mus), args.gamma), args.z, cfg.tolerance,
            cfg.k_max_multinomial, cfg.composition_budget,
        )
    return res.to_dict(), EXIT_OK


def cmd_classic(args, cfg: RunConfig):
    res = eval_classic(MLParams(args.mu, args.nu), args.x, cfg.tolerance, cfg.k_max_classic)
    return res.to_dict(), EXIT_OK


def cmd_constant(args, cfg: RunConfig):
    return compute_constants(MultiMLParams(tuple(args.mus), args.gamma)).to_dict(), EXIT_OK


def cmd_verify(args, cfg: RunConfig):
    ranges = Ranges(
        n_min=args.n_min, n_max=args.n_max, mu_min=args.mu_min, mu_max=args.mu_max,
        gamma_min=args.gamma_min, gamma_max=args.gamma_max, z_max=args.z_max,
    )
    rep = verify_random(
        args.trials, cfg.seed, ranges, cfg.tolerance, cfg.k_max_classic,
        cfg.k_max_multinomial, cfg.composition_budget, args.workers,
    )
    if rep.violations_safe > 0:
        code = EXIT_VIOLATION
    elif rep.errors > VERIFY_ERROR_SHARE * rep.trials:
        code = EXIT_NUMERICAL
    else:
        code = EXIT_OK
    return rep.to_dict(), code


def cmd_identity(args, cfg: RunConfig):
    if not (1 <= args.n <= 6):
        raise DomainError(f"--n must lie in [1, 6], got {args.n}")
    if not (0 <= args.k_max <= 15):
        raise DomainError(f"--k-max must lie in [0, 15], got {args.k_max}")
    if args.trials < 1:
        raise DomainError("--trials must be >= 1")
    worst = 0.0
    for i in range(args.trials):
        z = trial_generator(cfg.seed, i).uniform(-args.z_max, args.z_max, args.n)
        for k in range(args.k_max + 1):
            worst = max(worst, float(identity_deviation(z, k)))
    record = {
        "n": args.n, "k_max": args.k_max, "trials": args.trials, "seed": cfg.seed,
        "max_deviation": worst,
    }
    return record, EXIT_OK if worst <= IDENTITY_THRESHOLD else EXIT_VIOLATION


def parse_grid(axis_texts: list[str] | None, n: int) -> list[np.ndarray]:
    """One ``start:stop:count`` axis per coordinate."""
    if not axis_texts:
        raise DomainError("--z-grid needs one start:stop:count axis per coordinate")
    if len(axis_texts) != n:
        raise DomainError(f"--z-grid has {len(axis_texts)} axes but there are {n} exponents")
    axes = []
    total = 1
    for text in axis_texts:
        parts = text.split(":")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except (IndexError, ValueError) as exc:
            raise DomainError(f"malformed grid axis {text!r}; expected start:stop:count") from exc
        if len(parts) != 3 or count < 1 or not (math.isfinite(start) and math.isfinite(stop)):
            raise DomainError(f"malformed grid axis {text!r}; expected start:stop:count")
        total *= count
        if total > TABLE_MAX_POINTS:
            raise DomainError(f"grid has more than {TABLE_MAX_POINTS} points")
        axes.append(np.linspace(start, stop, count))
    return axes


def cmd_table(args, cfg: RunConfig):
    p = MultiMLParams(tuple(args.mus), args.gamma)
    axes = parse_grid(args.z_grid, p.n)
    c_safe = compute_constants(p).c_safe
    lead = MLParams(p.mus[0], p.gamma_param)
    rows = []
    failures = 0
    for point in itertools.product(*axes):
        z = [float(v) for v in point]
        try:
            value = eval_multinomial(
                p, z, cfg.tolerance, cfg.k_max_multinomial, cfg.composition_budget
            ).value
            bound = c_safe * eval_classic(
                lead, math.fsum(abs(v) for v in z), cfg.tolerance, cfg.k_max_classic
            ).value
            ratio = abs(value) / bound
        except MultiMLError:
            value = bound = ratio = math.nan
            failures += 1
        rows.append(z + [value, bound, ratio])
    header = [f"z{i + 1}" for i in range(p.n)] + ["value", "bound", "ratio"]
    return {"header": header, "rows": rows, "failures": failures}, EXIT_OK


def render_table(table: dict, fmt: str) -> str:
    if fmt == "json":
        return to_json(table) + "\n"
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(table["header"])
        for row in table["rows"]:
            w.writerow(_cell(v) for v in row)
    else:
        buf.write(" ".join(table["header"]) + "\n")
        for row in table["rows"]:
            buf.write(" ".join(_cell(v) for v in row) + "\n")
    if table["failures"]:
        buf.write(f"# failures: {table['failures']}\n")
    return buf.getvalue()


# -- argument parsing --------------------------------------------------------

def _global_flags() -> argparse.ArgumentParser:
    # SUPPRESS lets the same flags appear before or after the subcommand.
    g = argparse.ArgumentParser(add_help=False)
    d = argparse.SUPPRESS
    g.add_argument("--tolerance", type=float, default=d)
    g.add_argument("--seed", type=int, default=d)
    g.add_argument("--format", dest="output_format", choices=("json", "csv", "plain"), default=d)
    g.add_argument("--config", default=d, help="file of key=value defaults; flags win")
    g.add_argument("--k-max-classic", dest="k_max_classic", type=int, default=d)
    g.add_argument("--k-max-multinomial", dest="k_max_multinomial", type=int, default=d)
    g.add_argument("--composition-budget", dest="composition_budget", type=int, default=d)
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = argparse.ArgumentParser(
        prog="multiml", parents=[common], allow_abbrev=False,
        description="Multinomial Mittag-Leffler evaluation and bound checks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], allow_abbrev=False, help="evaluate the multinomial function")
    p.add_argument("--mus", type=float, nargs="+", required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--z", type=float, nargs="+", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("classic", parents=[common], allow_abbrev=False, help="evaluate E_{mu,nu}(x)")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.set_defaults(func=cmd_classic)

    p = sub.add_parser("constant", parents=[common], allow_abbrev=False, help="n0 and the bound constants")
    p.add_argument("--mus", type=float, nargs="+", required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.set_defaults(func=cmd_constant)

    r = Ranges()
    p = sub.add_parser("verify", parents=[common], allow_abbrev=False, help="randomized check of the bound")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--n-min", type=int, default=r.n_min)
    p.add_argument("--n-max", type=int, default=r.n_max)
    p.add_argument("--mu-min", type=float, default=r.mu_min)
    p.add_argument("--mu-max", type=float, default=r.mu_max)
    p.add_argument("--gamma-min", type=float, default=r.gamma_min)
    p.add_argument("--gamma-max", type=float, default=r.gamma_max)
    p.add_argument("--z-max", type=float, default=r.z_max)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("identity", parents=[common], allow_abbrev=False, help="check the multinomial identity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k-max", type=int, default=12)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--z-max", type=float, default=3.0)
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("table", parents=[common], allow_abbrev=False, help="value/bound table over a grid")
    p.add_argument("--mus", type=float, nargs="+", required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--z-grid", nargs="+", metavar="START:STOP:COUNT")
    p.set_defaults(func=cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
        result, code = args.func(args, cfg)
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MultiMLError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    if args.command == "table":
        sys.stdout.write(render_table(result, cfg.output_format))
    else:
        sys.stdout.write(render_record(result, cfg.output_format))
    return code


if __name__ == "__main__":
    sys.exit(main())
