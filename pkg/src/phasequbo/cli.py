"""Command line entry point: ``phasequbo <command> ...``.

Exit codes: 0 success, 1 usage error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
import time
from pathlib import Path

from . import quantum_equiv
from .baseline_lin import LinRelaxConfig, lin_relax_solve
from .instances import InstanceFormatError, gen_random, list_instances, read_instance, write_instance
from .optimizer import NumericalFailure, OptimizerConfig, solve
from .phase_relax import parse_profile
from .qubo_core import BRUTE_FORCE_CAP, CapacityError, brute_force_solve
from .reports import brute_record, dumps, run_record

log = logging.getLogger("phasequbo")

BENCH_HEADER = ["instance", "method", "n", "energy", "oracle_energy", "gap",
                "saturation", "time_ms", "seed"]
_DEFAULTS = OptimizerConfig()
_LIN_DEFAULTS = LinRelaxConfig()


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _profile(text):
    try:
        return parse_profile(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _shared(p: argparse.ArgumentParser, phase: bool):
    p.add_argument("--restarts", type=int, default=_DEFAULTS.restarts)
    p.add_argument("--iters", type=int, default=_DEFAULTS.max_iters)
    p.add_argument("--step", type=float, default=_DEFAULTS.step_size)
    p.add_argument("--seed", type=int, default=0)
    if phase:
        p.add_argument("--profile", type=_profile, default="clamped:1.0",
                       help="logistic:<k> or clamped:<a> (default clamped:1.0)")
        p.add_argument("--noise", type=float, default=_DEFAULTS.noise_sigma)
        p.add_argument("--step-decay", type=float, default=_DEFAULTS.step_decay)
        p.add_argument("--noise-decay", type=float, default=_DEFAULTS.noise_decay)
        p.add_argument("--init-width", type=float, default=None)
        p.add_argument("--grad-tol", type=float, default=_DEFAULTS.grad_tol)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="phasequbo", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="phase-relaxation heuristic")
    p.add_argument("instance")
    _shared(p, phase=True)
    p.add_argument("--out")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")

    p = sub.add_parser("baseline", help="linear box relaxation with sign rounding")
    p.add_argument("instance")
    _shared(p, phase=False)
    p.add_argument("--out")
    p.add_argument("--timing", action="store_true")

    p = sub.add_parser("brute", help="exhaustive optimum")
    p.add_argument("instance")
    p.add_argument("--out")

    p = sub.add_parser("qcheck", help="statevector cross-check of the phase cost")
    p.add_argument("instance")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--profile", type=_profile, default="clamped:1.0")
    p.add_argument("--out")

    p = sub.add_parser("gen", help="random instance file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--density", type=float, default=1.0)
    p.add_argument("--range", type=float, nargs=2, default=(-1.0, 1.0), metavar=("LO", "HI"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("bench", help="solve + baseline + brute over a directory of *.squbo")
    p.add_argument("directory")
    _shared(p, phase=True)
    p.add_argument("--out", help="CSV path (default stdout)")
    return parser


def _phase_config(args) -> OptimizerConfig:
    return OptimizerConfig(
        step_size=args.step, step_decay=args.step_decay, noise_sigma=args.noise,
        noise_decay=args.noise_decay, max_iters=args.iters, restarts=args.restarts,
        init_half_width=args.init_width, grad_tol=args.grad_tol, seed=args.seed,
    )


def _lin_config(args) -> LinRelaxConfig:
    return LinRelaxConfig(step_size=args.step, max_iters=args.iters,
                          restarts=args.restarts, seed=args.seed)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _summary(method: str, e: float, s):
    print(f"method: {method}")
    print(f"energy: {e!r}")
    print("assignment: " + " ".join(str(int(v)) for v in s))


def _cmd_solve(args):
    inst = read_instance(args.instance)
    try:
        config = _phase_config(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = solve(inst, args.profile, config)
    rec = run_record(inst, rep, include_timing=args.timing)
    if args.out:
        _emit(dumps(rec), args.out)
        _summary("phase", rep.best_energy, rep.best_assignment)
    else:
        _emit(dumps(rec), None)


def _cmd_baseline(args):
    inst = read_instance(args.instance)
    try:
        config = _lin_config(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = lin_relax_solve(inst, config)
    rec = run_record(inst, rep, include_timing=args.timing)
    if args.out:
        _emit(dumps(rec), args.out)
        _summary("linear", rep.best_energy, rep.best_assignment)
    else:
        _emit(dumps(rec), None)


def _cmd_brute(args):
    inst = read_instance(args.instance)
    s, e = brute_force_solve(inst)
    if args.out:
        _emit(dumps(brute_record(inst, s, e)), args.out)
    _summary("brute", e, s)


def _cmd_qcheck(args):
    inst = read_instance(args.instance)
    rep = quantum_equiv.equivalence_report(inst, args.trials, args.seed, args.profile)
    rec = {"instance": inst.name, "profile": args.profile.spec(), "seed": args.seed,
           **rep.to_dict(), "passed": rep.passed()}
    _emit(dumps(rec), args.out)
    if args.out:
        print(f"max_deviation: {rep.max_deviation!r}")
        print(f"terms: {rep.term_count} (bound {rep.term_bound})")
    if not rep.passed():
        log.error("quantum/classical equivalence check failed")
        return 2
    return 0


def _cmd_gen(args):
    try:
        inst = gen_random(args.n, args.density, tuple(args.range), args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    write_instance(inst, args.out)


def bench_rows(paths, phase_config, lin_config, profile) -> list[dict]:
    rows = []
    for path in paths:
        inst = read_instance(path)
        results = []
        t0 = time.perf_counter()
        rep = solve(inst, profile, phase_config)
        results.append(("phase", rep.best_energy, rep.saturation,
                        time.perf_counter() - t0, phase_config.seed))
        t0 = time.perf_counter()
        rep = lin_relax_solve(inst, lin_config)
        results.append(("linear", rep.best_energy, rep.saturation,
                        time.perf_counter() - t0, lin_config.seed))
        oracle = None
        if inst.n <= BRUTE_FORCE_CAP:
            t0 = time.perf_counter()
            _, oracle = brute_force_solve(inst)
            results.append(("brute", oracle, 1.0, time.perf_counter() - t0, ""))
        for method, e, sat, dt, seed in results:
            rows.append({
                "instance": inst.name, "method": method, "n": inst.n, "energy": repr(e),
                "oracle_energy": "" if oracle is None else repr(oracle),
                "gap": "" if oracle is None else repr(e - oracle),
                "saturation": repr(sat), "time_ms": f"{dt * 1e3:.3f}", "seed": seed,
            })
    rows.sort(key=lambda r: (r["instance"], r["method"]))
    return rows


def _cmd_bench(args):
    paths = list_instances(args.directory)
    if not paths:
        raise FileNotFoundError(f"no *.squbo files in {args.directory}")
    try:
        phase_cfg, lin_cfg = _phase_config(args), _lin_config(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = bench_rows(paths, phase_cfg, lin_cfg, args.profile)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_HEADER, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _emit(buf.getvalue(), args.out)


COMMANDS = {
    "solve": _cmd_solve, "baseline": _cmd_baseline, "brute": _cmd_brute,
    "qcheck": _cmd_qcheck, "gen": _cmd_gen, "bench": _cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        return COMMANDS[args.command](args) or 0
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except (InstanceFormatError, CapacityError, NumericalFailure,
            quantum_equiv.NumericalFailure, OSError, ValueError) as exc:
        print(f"phasequbo: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
