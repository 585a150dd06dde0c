"""Command line front end.

Three subcommands: check (axiom scan), spectrum (dual-space dump), verify
(named invariant suites).  Input is a JSON algebra description, either
inline or as a file path.  Exit codes: 0 all pass, 1 any failure, 2 usage
or parse error.  Output for a fixed configuration is byte-identical across
runs: suites execute in registry order and JSON is emitted with sorted
keys.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .chang import ChangAlgebra
from .errors import CapExceeded, Error
from .lattice import SCHEMA
from .mv import algebra_from_json, check_axioms
from .spectrum import build_dual_space, space_to_dot, space_to_json
from .verify import SUITE_NAMES, run_suite

USAGE_ERROR, CHECK_FAILED, OK = 2, 1, 0


class UsageError(Exception):
    pass


def _load_algebra(raw, validate=True):
    """Inline JSON if the argument looks like an object, else a file path."""
    if raw is None:
        raise UsageError("an algebra is required: pass --input")
    text = raw
    if not raw.lstrip().startswith("{"):
        try:
            with open(raw, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {raw}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(
            f"parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    try:
        return algebra_from_json(data, validate=validate)
    except Error as exc:
        raise UsageError(str(exc)) from None


def _threads_from_env():
    """MV_SPECTRA_THREADS caps parallelism; execution here is sequential,
    which respects any cap, but the value is still validated."""
    raw = os.environ.get("MV_SPECTRA_THREADS")
    if raw is None:
        return 1
    try:
        val = int(raw)
    except ValueError:
        raise UsageError(f"MV_SPECTRA_THREADS must be an integer, got {raw!r}") from None
    if val < 1:
        raise UsageError("MV_SPECTRA_THREADS must be at least 1")
    return val


def _emit(data, fmt, out):
    if fmt == "json":
        out.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
    else:
        raise UsageError(f"this command has no {fmt} form")


def _carrier_guard(alg, cap):
    if not isinstance(alg, ChangAlgebra) and alg.n > cap:
        raise CapExceeded(f"carrier {alg.n} exceeds the cap {cap}")


def cmd_check(args, out):
    if args.format == "dot":
        raise UsageError("check has no dot form")
    # load without validation so the scan itself reports the witness
    alg = _load_algebra(args.input, validate=False)
    if isinstance(alg, ChangAlgebra):
        bad = alg.check_axioms_bounded(args.chang_bound)
    else:
        bad = check_axioms(alg)
    report = {
        "schema": SCHEMA,
        "ok": bad is None,
        "violation": None
        if bad is None
        else {
            "law": bad.law,
            "witness": list(bad.witness),
            "witness_labels": list(bad.witness_labels),
        },
    }
    if args.format == "json":
        _emit(report, "json", out)
    else:
        if bad is None:
            out.write("ok\n")
        else:
            out.write(f"violation: {bad.law} at {list(bad.witness_labels)}\n")
    return OK if bad is None else CHECK_FAILED


def cmd_spectrum(args, out):
    alg = _load_algebra(args.input)
    _carrier_guard(alg, args.cap)
    space = build_dual_space(alg)
    if args.format == "dot":
        out.write(space_to_dot(space, chang_bound=min(args.chang_bound, 8)))
        return OK
    data = space_to_json(space, chang_bound=args.chang_bound)
    if args.format == "json":
        _emit(data, "json", out)
        return OK
    if "points" in data and isinstance(data["points"], list):
        out.write(f"points: {len(data['points'])}\n")
        out.write(f"Y: {data['Y']}\nZ: {data['Z']}\n")
        out.write(f"k: {data['k']}\nm: {data['m']}\n")
    else:
        out.write("symbolic chain space\n")
        out.write(f"Y: {data['Y']}\nZ: {data['Z']}\n")
    return OK


def cmd_verify(args, out):
    if args.format == "dot":
        raise UsageError("verify has no dot form")
    alg = _load_algebra(args.input)
    try:
        _carrier_guard(alg, args.cap)
    except CapExceeded as exc:
        rows = []
        skipped_all = str(exc)
    else:
        rows = run_suite(
            alg,
            args.suite,
            chang_bound=args.chang_bound,
            section_cap=args.cap,
            seed=args.seed,
        )
        skipped_all = None
    if args.format == "json":
        _emit(
            {
                "schema": SCHEMA,
                "suite": args.suite,
                "skipped": skipped_all,
                "results": [
                    {"name": r.name, "status": r.status, "detail": r.detail}
                    for r in rows
                ],
            },
            "json",
            out,
        )
    else:
        if skipped_all is not None:
            out.write(f"[SKIP] whole suite  ({skipped_all})\n")
        for r in rows:
            out.write(r.line() + "\n")
    return CHECK_FAILED if any(r.status == "fail" for r in rows) else OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mvspectra",
        description="Finite MV-algebra dual spaces, sheaves, and checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in (
        ("check", cmd_check),
        ("spectrum", cmd_spectrum),
        ("verify", cmd_verify),
    ):
        p = sub.add_parser(name)
        p.add_argument(
            "--input",
            help='algebra JSON, inline (starts with "{") or a file path',
        )
        p.add_argument("--cap", type=int, default=10**6, help="size budget")
        p.add_argument("--chang-bound", type=int, default=32)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument(
            "--format",
            choices=("json", "dot", "text"),
            default="text",
        )
        if name == "verify":
            p.add_argument("--suite", choices=SUITE_NAMES, default="all")
        p.set_defaults(fn=fn)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _threads_from_env()
        return args.fn(args, out)
    except UsageError as exc:
        print(f"mvspectra: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except CapExceeded as exc:
        print(f"mvspectra: {exc}", file=sys.stderr)
        return CHECK_FAILED
    except Error as exc:
        print(f"mvspectra: {exc}", file=sys.stderr)
        return CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
