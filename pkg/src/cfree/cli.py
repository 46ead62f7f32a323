"""Command-line interface: ``cfree {transform,invert,convolve,simulate,verify}``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage or
domain errors; errors are reported as one JSON line on stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ._expr import TruncationOverflow, operator_from_json
from .axioms import InsufficientData, convolve_axiomatic
from .convolution import PATHS, cfree_convolve, cross_check, operator_convolve, realize_law
from .series import (
    DomainError,
    SeriesError,
    TruncatedSeries,
    TwoStateLaw,
    format_scalar,
    moments_from_transform,
    series_from_json,
    series_to_json,
    transform_from_moments,
)
from .twolevel import required_ranks, state_pair_moments
from .verify import SUITES, run_suite

DEFAULT_ORDER = 6
DEFAULT_RANK = 8
DEFAULT_TRIALS = 20


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    order: int = DEFAULT_ORDER
    lh: int = DEFAULT_RANK
    lk: int = DEFAULT_RANK
    seed: int = 0
    trials: int = DEFAULT_TRIALS
    output: Optional[str] = None
    fmt: str = "json"

    def __post_init__(self):
        if self.order < 1:
            raise UsageError("-N must be >= 1")
        if self.trials < 1:
            raise UsageError("--trials must be >= 1")


def _max_rank() -> Optional[int]:
    cap = os.environ.get("CFREE_MAX_RANK")
    if not cap:
        return None
    try:
        return int(cap)
    except ValueError:
        raise UsageError(f"CFREE_MAX_RANK must be an integer, got {cap!r}") from None


def _check_cap(lh: int, lk: int) -> None:
    cap = _max_rank()
    if cap is not None and max(lh, lk) > cap:
        raise UsageError(f"truncation rank {max(lh, lk)} exceeds CFREE_MAX_RANK={cap}")


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc.msg} at line {exc.lineno}") from None


def _load_law(path: str) -> TwoStateLaw:
    data = _load_json(path)
    try:
        return TwoStateLaw.from_json(data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed law in {path}: {exc}") from None


def _load_psi(path: str) -> tuple:
    data = _load_json(path)
    if isinstance(data, dict):
        data = data.get("psi")
    if not isinstance(data, list):
        raise UsageError(f"{path} must hold a list of psi-moments or a law")
    try:
        return tuple(Fraction(str(x)) for x in data)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed psi-moments in {path}: {exc}") from None


def _law_csv(law: TwoStateLaw) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "psi", "phi"])
    for n, (a, b) in enumerate(zip(law.psi, law.phi), start=1):
        w.writerow([n, format_scalar(a), format_scalar(b)])
    return buf.getvalue()


def _series_csv(s: TruncatedSeries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "coeff"])
    for k, c in enumerate(s.coeffs):
        w.writerow([k, format_scalar(c)])
    return buf.getvalue()


def _emit(cfg: RunConfig, payload, csv_text: Optional[str] = None) -> None:
    if cfg.fmt == "csv" and csv_text is not None:
        text = csv_text
    else:
        text = json.dumps(payload) + "\n"
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands -------------------------------------------------------------


def cmd_transform(args, cfg: RunConfig) -> int:
    law = _load_law(args.law)
    if cfg.order > law.order:
        raise UsageError(f"-N {cfg.order} exceeds the {law.order} moments in {args.law}")
    s = transform_from_moments(args.kind, law.truncate(cfg.order))
    _emit(cfg, series_to_json(s), _series_csv(s))
    return 0


def cmd_invert(args, cfg: RunConfig) -> int:
    try:
        s = series_from_json(_load_json(args.series))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed series in {args.series}: {exc}") from None
    psi = _load_psi(args.psi) if args.psi else None
    # R/cR of order N give N moments, T/cT of order N-1 give N
    need = cfg.order if args.kind in ("R", "cR") else cfg.order - 1
    if need > s.order:
        raise UsageError(f"-N {cfg.order} needs a series of order {need}, got {s.order}")
    moments = moments_from_transform(args.kind, s.truncate(need), psi)
    state = "psi" if args.kind in ("R", "T") else "phi"
    payload = {"order": len(moments), state: [format_scalar(q) for q in moments]}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", state])
    for n, q in enumerate(moments, start=1):
        w.writerow([n, format_scalar(q)])
    _emit(cfg, payload, buf.getvalue())
    return 0


def cmd_convolve(args, cfg: RunConfig) -> int:
    x, y = _load_law(args.x), _load_law(args.y)
    if cfg.order > min(x.order, y.order):
        raise UsageError(f"-N {cfg.order} exceeds the moments available ({x.order} and {y.order})")
    x, y = x.truncate(cfg.order), y.truncate(cfg.order)
    if args.path in ("operator", "all") and _max_rank() is not None:
        try:
            ox, oy = realize_law(args.kind, x, 0, 0), realize_law(args.kind, y, 1, 1)
        except DomainError:
            pass  # reported by the path itself
        else:
            r = required_ranks(ox + oy if args.kind == "add" else ox * oy, cfg.order)
            _check_cap(r.lh, r.lk)
    if args.path == "all":
        rep = cross_check(args.kind, x, y, cfg.order)
        if rep.error:
            raise DomainError(rep.error)
        _emit(cfg, rep.to_json())
        return 0 if rep.agree else 1
    if args.path == "transform":
        law = cfree_convolve(args.kind, x, y, cfg.order)
    elif args.path == "axiomatic":
        if args.kind == "mul" and (not x.psi[0] or not y.psi[0]):
            raise DomainError("multiplicative convolution needs psi(X), psi(Y) != 0")
        law = convolve_axiomatic(args.kind, x, y, cfg.order)
    else:
        law = operator_convolve(args.kind, x, y, cfg.order)
    _emit(cfg, law.to_json(), _law_csv(law))
    return 0


def cmd_simulate(args, cfg: RunConfig) -> int:
    data = _load_json(args.op)
    try:
        op = operator_from_json(data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed operator expression in {args.op}: {exc}") from None
    if op.space != "E":
        raise UsageError("simulate expects an operator on the two-level space (use pi(...) for Fock operators)")
    _check_cap(cfg.lh, cfg.lk)
    law = state_pair_moments(op, cfg.order, cfg.lh, cfg.lk)
    _emit(cfg, law.to_json(), _law_csv(law))
    return 0


def cmd_verify(args, cfg: RunConfig) -> int:
    rep = run_suite(args.suite, cfg.trials, cfg.seed, cfg.order)
    _emit(cfg, rep.to_json())
    return 0 if rep.passed else 1


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cfree", description="Exact c-free transforms, convolutions and operator models.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("-N", dest="order", type=int, default=DEFAULT_ORDER, help="truncation order")
        sp.add_argument("-o", "--output", help="write output to FILE instead of stdout")
        sp.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")

    sp = sub.add_parser("transform", help="law -> transform series")
    sp.add_argument("--kind", required=True, choices=("R", "T", "S", "cR", "cT", "cS"))
    sp.add_argument("--law", required=True)
    common(sp)
    sp.set_defaults(func=cmd_transform)

    sp = sub.add_parser("invert", help="transform series -> moments")
    sp.add_argument("--kind", required=True, choices=("R", "T", "cR", "cT"))
    sp.add_argument("--series", required=True)
    sp.add_argument("--psi", help="psi-moments (list or law JSON); required for cR and cT")
    common(sp)
    sp.set_defaults(func=cmd_invert)

    sp = sub.add_parser("convolve", help="c-free convolution of two laws")
    sp.add_argument("--kind", required=True, choices=("add", "mul"))
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    sp.add_argument("--path", choices=(*PATHS, "all"), default="transform")
    common(sp)
    sp.set_defaults(func=cmd_convolve)

    sp = sub.add_parser("simulate", help="moments of an operator expression")
    sp.add_argument("--op", required=True)
    sp.add_argument("--lh", type=int, default=DEFAULT_RANK)
    sp.add_argument("--lk", type=int, default=DEFAULT_RANK)
    common(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("verify", help="run a seeded verification suite")
    sp.add_argument("--suite", required=True, choices=sorted(SUITES))
    sp.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def _fail(kind: str, msg: str) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": msg}) + "\n")
    return 2


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            order=args.order,
            lh=getattr(args, "lh", DEFAULT_RANK),
            lk=getattr(args, "lk", DEFAULT_RANK),
            seed=getattr(args, "seed", 0),
            trials=getattr(args, "trials", DEFAULT_TRIALS),
            output=args.output,
            fmt=args.fmt,
        )
        return args.func(args, cfg)
    except UsageError as exc:
        return _fail("usage", str(exc))
    except (DomainError, SeriesError, InsufficientData) as exc:
        return _fail("domain", str(exc))
    except TruncationOverflow as exc:
        return _fail("overflow", str(exc))


if __name__ == "__main__":
    sys.exit(main())
