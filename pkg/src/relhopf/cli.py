"""Command-line front end.

Exit status: 0 when every check passes, 1 when a check fails, 2 when the
input cannot be read, parsed, or is of the wrong kind.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from relhopf import codec
from relhopf.doublegpd import CoreError, DoubleGroupoid, core_groupoid_square, validate_double
from relhopf.generators import CorpusSpec, base_groupoids, pair_double, small_corpus, trivial_double
from relhopf.groupoid import Groupoid, ValidationError, validate_groupoid
from relhopf.hopfoid import (
    ReverseError,
    build_double,
    build_hopfoid,
    check_hopfoid,
    roundtrip_double,
    roundtrip_hopfoid,
)
from relhopf.report import CheckReport

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(path, *kinds):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        obj = codec.loads(text)
    except codec.ParseError as exc:
        raise InputError(f"{path}: parse error at {exc}") from exc
    kind = "groupoid" if isinstance(obj, Groupoid) else "double-groupoid" if isinstance(obj, DoubleGroupoid) else "hopfoid"
    if kinds and kind not in kinds:
        raise InputError(f"{path}: expected {' or '.join(kinds)}, got {kind}")
    return kind, obj


def _write(doc_or_obj, out):
    text = codec.dumps(doc_or_obj)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit(args, command, reports, extra=None):
    ok = all(r.ok for r in reports)
    if args.format == "text":
        for r in reports:
            print(r.text())
        for k, v in sorted((extra or {}).items()):
            print(f"{k}: {v}")
        print("OK" if ok else "FAILED")
    else:
        doc = {"command": command, "passed": ok, "reports": [r.to_dict() for r in reports]}
        doc.update(extra or {})
        print(json.dumps(doc, sort_keys=True, indent=1))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_validate(args):
    kind, obj = _read(args.path, "groupoid", "double-groupoid")
    rep = validate_groupoid(obj) if kind == "groupoid" else validate_double(obj)
    return _emit(args, "validate", [rep], {"kind": kind})


def _valid_double(args, command):
    _, d = _read(args.path, "double-groupoid")
    rep = validate_double(d)
    if not rep.ok:
        return None, _emit(args, command, [rep])
    return d, None


def cmd_core(args):
    d, code = _valid_double(args, "core")
    if d is None:
        return code
    rep = CheckReport("core")
    try:
        core = core_groupoid_square(d)
    except CoreError as exc:
        rep.add("core product diagram", False, exc.witness)
        return _emit(args, "core", [rep])
    rep.extend(validate_groupoid(core, "core groupoid"))
    if args.out:
        _write(core, args.out)
    extra = {"core_size": len(core.arrows), "base_size": len(core.objects)}
    if args.format == "json":
        extra["core"] = codec.encode(core)
    return _emit(args, "core", [rep], extra)


def cmd_hopfoid(args):
    d, code = _valid_double(args, "hopfoid")
    if d is None:
        return code
    h = build_hopfoid(d)
    rep = check_hopfoid(h)
    if args.out:
        _write(h, args.out)
    return _emit(args, "hopfoid", [rep], {"carrier_size": len(h.carrier), "base_size": len(h.base)})


def cmd_double(args):
    _, h = _read(args.path, "hopfoid")
    rep = check_hopfoid(h)
    if not rep.ok:
        return _emit(args, "double", [rep])
    try:
        d = build_double(h)
    except ReverseError as exc:
        rep.add(f"rebuild ({exc.stage})", False, exc.witness or str(exc))
        return _emit(args, "double", [rep])
    if args.out:
        _write(d, args.out)
    return _emit(args, "double", [rep, validate_double(d)], {"squares": len(d.squares)})


def cmd_roundtrip(args):
    kind, obj = _read(args.path, "double-groupoid", "hopfoid")
    if kind == "double-groupoid":
        pre = validate_double(obj)
        reps = [pre] if not pre.ok else [pre, roundtrip_double(obj)]
    else:
        pre = check_hopfoid(obj)
        reps = [pre] if not pre.ok else [pre, roundtrip_hopfoid(obj)]
    return _emit(args, "roundtrip", reps, {"kind": kind})


def cmd_check(args):
    kind, obj = _read(args.path, "hopfoid", "double-groupoid")
    if kind == "double-groupoid":
        pre = validate_double(obj)
        if not pre.ok:
            return _emit(args, "check", [pre])
        obj = build_hopfoid(obj)
    return _emit(args, "check", [check_hopfoid(obj)], {"kind": kind})


GEN_FAMILIES = ("group", "trivial", "pair", "corpus")


def cmd_gen(args):
    if args.family == "corpus":
        if not args.out:
            raise InputError("gen corpus needs --out DIRECTORY")
        spec = CorpusSpec(max_arrows=args.max_size, seed=args.seed)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        names = []
        for name, d in small_corpus(spec).items():
            fname = name.replace("(", "_").replace(")", "").replace("+", "_") + ".json"
            (out / fname).write_text(codec.dumps(d))
            names.append(fname)
        print(json.dumps({"command": "gen", "passed": True, "files": sorted(names)}, sort_keys=True, indent=1))
        return EXIT_OK
    groups = base_groupoids()
    if args.group not in groups:
        raise InputError(f"unknown groupoid {args.group!r}; choose from {', '.join(sorted(groups))}")
    g = groups[args.group]
    try:
        obj = {"group": lambda: g, "trivial": lambda: trivial_double(g), "pair": lambda: pair_double(g)}[args.family]()
    except ValidationError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    _write(obj, args.out)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="relhopf", description="Finite double groupoids and hopfoids.")
    p.add_argument("--format", choices=("json", "text"), default="json", help="report format")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, helptext, out=False):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("path")
        if out:
            sp.add_argument("--out", help="write the resulting document here")
        sp.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "validate a groupoid or double groupoid")
    add("core", cmd_core, "core groupoid of a double groupoid", out=True)
    add("hopfoid", cmd_hopfoid, "build the hopfoid of a double groupoid", out=True)
    add("double", cmd_double, "rebuild a double groupoid from a hopfoid", out=True)
    add("roundtrip", cmd_roundtrip, "round trip a double groupoid or hopfoid")
    add("check", cmd_check, "check the hopfoid axioms")

    gp = sub.add_parser("gen", help="write an example structure")
    gp.add_argument("family", choices=GEN_FAMILIES)
    gp.add_argument("group", nargs="?", default="Z2", help="base groupoid name, e.g. Z3, S3, Pair2")
    gp.add_argument("--out")
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--max-size", type=int, default=36, help="largest number of squares in the corpus")
    gp.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    gp.set_defaults(fn=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
