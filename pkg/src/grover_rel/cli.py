"""Command-line entry point: ``grover-rel simulate|sweep|predict``.

Exit status: 0 on success, 1 on invalid arguments or I/O failure, 2 when a
run ends for any reason other than finding the first maximum.
"""

from __future__ import annotations

import argparse
import os
import sys

from grover_rel.backend import get_backend
from grover_rel.io import (RawNumber, dumps, records_json, write_csv,
                           write_trajectory)
from grover_rel.kinematics import DomainError
from grover_rel.sweep import (Speed, SweepSpec, classical_asymptote,
                              lin_spaced, log_spaced,
                              predict_breakpoints,
                              predict_single_step_velocity,
                              record_from_outcome, run_sweep)
from grover_rel.transfer import Termination, TransferConfig, run_transfer

EXIT_OK, EXIT_USAGE, EXIT_INCOMPLETE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_jobs() -> int:
    env = os.environ.get("GROVER_REL_JOBS")
    if env:
        return int(env)
    return os.cpu_count() or 1


def parse_n_list(text: str, backend) -> list:
    """``"100,400"`` or ``"start:stop:count-log"`` (also ``-lin``)."""
    if ":" not in text:
        return [t.strip() for t in text.split(",") if t.strip()]
    try:
        start, stop, count = text.split(":")
        count, _, kind = count.partition("-")
        count = int(count)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected start:stop:count-log")
    if kind in ("", "log"):
        return log_spaced(start, stop, count, backend)
    if kind == "lin":
        return lin_spaced(start, stop, count, backend)
    raise UsageError(f"unknown spacing {kind!r} in {text!r}")


def _print_summary(fields: dict, out) -> None:
    for k, v in fields.items():
        out.write(f"{k}: {v}\n")


def cmd_simulate(args) -> int:
    b = get_backend(args.precision)
    cfg = TransferConfig(args.n, args.v0, args.one_minus_v0, b, args.max_iter,
                         record_trajectory=args.trajectory is not None)
    out = run_transfer(cfg)
    if args.trajectory is not None:
        with open(args.trajectory, "w", encoding="utf-8") as fh:
            write_trajectory(cfg, out.trajectory, fh)

    if args.format is None:
        _print_summary({
            "steps_to_max": out.steps_to_max,
            "max_fraction": b.format(out.max_fraction),
            "termination": out.termination.value,
            "big_ball_reversed": str(out.big_ball_reversed).lower(),
        }, sys.stdout)
    else:
        rec = record_from_outcome(cfg, out)
        if args.format == "csv":
            write_csv([rec], sys.stdout, b)
        else:
            sys.stdout.write(records_json([rec], b, b.name))
    if out.termination is Termination.FIRST_MAX_FOUND:
        return EXIT_OK
    return EXIT_INCOMPLETE


def cmd_sweep(args) -> int:
    b = get_backend(args.precision)
    spec = SweepSpec(parse_n_list(args.n_list, b),
                     [Speed.parse(t) for t in args.v0_list.split(",")
                      if t.strip()],
                     b, args.classical)
    # open first so an unwritable path fails before any computing
    try:
        fh = (open(args.out, "w", encoding="utf-8", newline="")
              if args.out else sys.stdout)
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        records = run_sweep(spec, jobs=args.jobs)
        if args.format == "json":
            fh.write(records_json(records, b, b.name))
        else:
            write_csv(records, fh, b)
    finally:
        if fh is not sys.stdout:
            fh.close()
    done = all(r.termination == Termination.FIRST_MAX_FOUND.value
               for r in records)
    return EXIT_OK if done else EXIT_INCOMPLETE


def cmd_predict(args) -> int:
    if args.n is None and args.v0 is None:
        raise UsageError("give --n and/or --v0")
    b = get_backend(args.precision)
    fields = {}
    if args.n is not None:
        ss = predict_single_step_velocity(args.n, b)
        fields["v0_ss"] = b.format(ss.v0)
        fields["one_minus_v0_ss"] = b.format(ss.one_minus_v0)
        fields["v0_ss_extrapolated"] = ss.extrapolated
        fields["asymptote"] = b.format(classical_asymptote(args.n, b))
        fields["v0_b"] = b.format(
            predict_breakpoints(M=b.num(args.n) - 1, backend=b).v0_b)
    if args.v0 is not None:
        fields["M_b"] = b.format(predict_breakpoints(v0=args.v0, backend=b).M_b)
    if args.format == "json":
        doc = {k: (v if isinstance(v, bool) else RawNumber(v))
               for k, v in fields.items()}
        sys.stdout.write(dumps(doc) + "\n")
    else:
        _print_summary({k: (str(v).lower() if isinstance(v, bool) else v)
                        for k, v in fields.items()}, sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="grover-rel",
                description="Relativistic Grover energy transfer between "
                            "two balls and a wall.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def precision(sp):
        sp.add_argument("--precision", choices=("standard", "extended"),
                        default="standard")

    s = sub.add_parser("simulate", help="run one transfer")
    s.add_argument("--n", required=True, help="N (heavy mass is N - 1)")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--v0")
    g.add_argument("--one-minus-v0", dest="one_minus_v0")
    precision(s)
    s.add_argument("--max-iter", type=int)
    s.add_argument("--trajectory", help="write the trajectory as JSON here")
    s.add_argument("--format", choices=("csv", "json"))
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("sweep", help="run a grid of (N, v0)")
    s.add_argument("--n-list", required=True,
                   help="comma list or start:stop:count-log")
    s.add_argument("--v0-list", required=True,
                   help="comma list; '1-x' gives 1 - v0 = x")
    s.add_argument("--classical", action="store_true",
                   help="include the classical baseline")
    precision(s)
    s.add_argument("--out")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--jobs", type=int, default=None)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("predict", help="closed-form predictions")
    s.add_argument("--n")
    s.add_argument("--v0")
    precision(s)
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_predict)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 0) is None:
        args.jobs = _default_jobs()
    try:
        return args.func(args)
    except (UsageError, DomainError, ValueError, ArithmeticError) as exc:
        parser.print_usage(sys.stderr)
        print(f"grover-rel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"grover-rel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
