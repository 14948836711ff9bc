"""Command-line front end.

Exit codes: 0 success, 1 bad input, 2 an internal verification failed.
Machine-readable output goes to ``--output`` (``-`` for stdout, in which case
the summary moves to stderr); the human summary is printed unless ``--quiet``.
"""

from __future__ import annotations

import argparse
import decimal
import json
import sys
from dataclasses import dataclass

from . import bayes, dominance, minimax, montecarlo, space
from .bayes import Prior, RevealKernel, ValidationError, format_fraction
from .core import GameError, Strategy, check_size

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass(frozen=True)
class GameSpecFile:
    n: int
    prior: Prior
    kernel: RevealKernel

    @classmethod
    def from_json(cls, data) -> GameSpecFile:
        if not isinstance(data, dict):
            raise ValidationError("spec", "top level must be a JSON object")
        unknown = sorted(set(data) - {"n", "prior", "kernel"})
        if unknown:
            raise ValidationError(unknown[0], "unknown field")
        if "n" not in data:
            raise ValidationError("n", "missing")
        n = data["n"]
        try:
            check_size(n)
        except GameError as exc:
            raise ValidationError("n", str(exc)) from None
        prior = data.get("prior")
        kernel = data.get("kernel")
        if prior is not None and not isinstance(prior, list):
            raise ValidationError("prior", "must be a list of rationals")
        if kernel is not None and not (isinstance(kernel, list) and all(isinstance(r, list) for r in kernel)):
            raise ValidationError("kernel", "must be a list of rows")
        return cls(
            n,
            Prior.uniform(n) if prior is None else Prior(n, tuple(prior)),
            RevealKernel.uniform(n) if kernel is None else RevealKernel(n, tuple(tuple(r) for r in kernel)),
        )

    @classmethod
    def load(cls, path: str) -> GameSpecFile:
        with open(path) as fh:
            try:
                # decimals stay exact instead of passing through binary floats
                data = json.load(fh, parse_float=decimal.Decimal)
            except json.JSONDecodeError as exc:
                raise ValidationError("spec", f"malformed JSON: {exc}") from None
        return cls.from_json(data)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


class _Out:
    def __init__(self, args):
        self.path = args.output
        self.quiet = args.quiet
        self._stream = sys.stderr if self.path == "-" else sys.stdout

    def say(self, line: str):
        if not self.quiet:
            print(line, file=self._stream)

    def write(self, text: str):
        if self.path is None:
            return
        if self.path == "-":
            sys.stdout.write(text)
        else:
            with open(self.path, "w", newline="") as fh:
                fh.write(text)


def cmd_dominance(args, out: _Out) -> int:
    table = space.build_payoff_table(args.n, cap=args.cap)
    try:
        certs = dominance.verify_dominance_theorem(args.n, table=table)
    except dominance.TheoremViolation as exc:
        out.say(f"n={args.n} strategies={len(table.rows)} certificates=FAILED ({exc})")
        return EXIT_VERIFY
    strict = dominance.strictness_report(certs, table)
    out.write(dump_json([c.to_json(s) for c, s in zip(certs, strict)]))
    out.say(f"n={args.n} strategies={len(certs)} certificates=OK")
    return EXIT_OK


def cmd_bayes(args, out: _Out) -> int:
    spec = GameSpecFile.load(args.spec)
    best, value = bayes.bayes_optimal(spec.prior)
    values = bayes.strategy_values(spec.prior, spec.kernel) if spec.n <= args.cap else []
    verified = None
    if values:
        verified = all(v <= value for _, v in values)
    report = {
        "n": spec.n,
        "optimal": {"x": best.x, "strategy": best.label, "value": format_fraction(value)},
        "verified": verified,
        "table": [
            {"strategy": s.label, "win_probability": format_fraction(v)} for s, v in values
        ],
    }
    out.write(dump_json(report))
    out.say(f"n={spec.n} optimal={best.label} value={format_fraction(value)} verified={verified}")
    return EXIT_VERIFY if verified is False else EXIT_OK


def cmd_minimax(args, out: _Out) -> int:
    n = args.n
    table = space.build_payoff_table(n, cap=args.cap)
    saddle = minimax.verify_saddle_point(
        minimax.uniform_switch_mix(n), minimax.uniform_theta_mix(n), table
    )
    fp = minimax.fictitious_play(table, max_iters=args.fp_iters, tolerance=args.fp_tol)
    exact = minimax.game_value(n)
    ok = saddle.is_saddle and saddle.value == exact
    report = {
        "n": n,
        "value": format_fraction(exact),
        "row_security": format_fraction(saddle.row_security),
        "col_security": format_fraction(saddle.col_security),
        "is_saddle": ok,
        "fp": {
            "lower": format_fraction(fp.lower),
            "upper": format_fraction(fp.upper),
            "iters": fp.iterations,
            "converged": fp.converged,
        },
    }
    out.write(dump_json(report))
    out.say(
        f"n={n} value={format_fraction(exact)} is_saddle={str(ok).lower()} "
        f"fp=[{float(fp.lower):.6f}, {float(fp.upper):.6f}] iters={fp.iterations}"
    )
    return EXIT_OK if ok else EXIT_VERIFY


def _player(choice: str, spec: GameSpecFile):
    if choice == "bayes":
        return bayes.bayes_optimal(spec.prior)[0], None
    if choice == "uniform-switch":
        return minimax.uniform_switch_mix(spec.n), "uniform-switch"
    try:
        return Strategy.from_label(spec.n, choice), None
    except GameError as exc:
        raise ValidationError("--strategy", str(exc)) from None


def cmd_simulate(args, out: _Out) -> int:
    spec = GameSpecFile.load(args.spec)
    if args.trials < 1:
        raise ValidationError("--trials", "must be at least 1")
    player, label = _player(args.strategy, spec)
    sim = montecarlo.SimulationSpec(
        spec.n, spec.prior, spec.kernel, player, args.trials, args.seed, label
    )
    result = montecarlo.simulate(sim, chunk_size=args.chunk_size, workers=args.workers)
    out.write(montecarlo.results_to_csv([result]))
    out.say(
        f"n={spec.n} strategy={result.strategy_label} estimate={result.estimate:.6f} "
        f"exact={format_fraction(result.exact_value)} z={result.z_score:.3f}"
    )
    return EXIT_OK


def cmd_enumerate(args, out: _Out) -> int:
    table = space.build_payoff_table(args.n, cap=args.cap)
    out.write(table.to_csv())
    out.say(f"n={args.n} strategies={table.shape[0]} states={table.shape[1]}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", "-o", default=argparse.SUPPRESS, help="write the report here ('-' for stdout)")
    common.add_argument("--quiet", "-q", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--cap", type=int, default=argparse.SUPPRESS, help="largest n to enumerate")

    parser = _Parser(prog="montyhall", parents=[common], description="Exact analysis of the n-door Monty Hall game.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dominance", parents=[common], help="verify always-switching dominance")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_dominance)

    p = sub.add_parser("bayes", parents=[common], help="Bayes-optimal strategy for a game spec")
    p.add_argument("spec")
    p.set_defaults(func=cmd_bayes)

    p = sub.add_parser("minimax", parents=[common], help="saddle point and fictitious play")
    p.add_argument("n", type=int)
    p.add_argument("--fp-iters", type=int, default=100_000)
    p.add_argument("--fp-tol", type=float, default=1e-3)
    p.set_defaults(func=cmd_minimax)

    p = sub.add_parser("simulate", parents=[common], help="seeded Monte Carlo run")
    p.add_argument("spec")
    p.add_argument("--strategy", default="bayes", help="'bayes', 'uniform-switch' or 'x=<door>;map=<word>'")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--chunk-size", type=int, default=montecarlo.DEFAULT_CHUNK)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("enumerate", parents=[common], help="dump the payoff table as CSV")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    for name, default in (("output", None), ("quiet", False), ("cap", space.DEFAULT_CAP)):
        if not hasattr(args, name):
            setattr(args, name, default)
    if getattr(args, "fp_iters", 1) < 1 or not getattr(args, "fp_tol", 1) > 0:
        print("montyhall: error: --fp-iters must be >= 1 and --fp-tol > 0", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "chunk_size", 1) < 1 or getattr(args, "workers", 1) < 1:
        print("montyhall: error: --chunk-size and --workers must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, _Out(args))
    except (GameError, OSError) as exc:
        print(f"montyhall: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
