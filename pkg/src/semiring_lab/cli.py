"""Command-line driver: JSON results on stdout, a short summary on stderr.

Exit codes: 0 success, 1 axiom violation, 2 I/O or format error,
3 congruence cap exceeded, 4 a verification suite failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from . import lattices as L
from .catalog import construct, parse_spec
from .config import load_config, set_config
from .congruences import all_congruences
from .core import FLAGS, FiniteSemimodule, FiniteSemiring, classify, opposite
from .enumeration import enumerate_commutative_monoids, enumerate_semirings
from .errors import (
    AxiomViolation,
    BadParams,
    CongruenceLimitExceeded,
    FormatError,
    KindMismatch,
    NotBooleanBase,
    SemiringLabError,
    ShapeError,
)
from .projectivity import is_cp
from .simpleness import is_congruence_simple, is_ideal_simple, is_simple
from .suites import SUITES, run_suite

EXIT_OK, EXIT_AXIOM, EXIT_FORMAT, EXIT_CAP, EXIT_VERIFY = 0, 1, 2, 3, 4
CHECKS = ("cp", "simple", "congruence_simple", "ideal_simple")


class _Out:
    def __init__(self, quiet):
        self.quiet = quiet

    def json(self, obj):
        sys.stdout.write(io.dumps(obj))

    def say(self, msg):
        if not self.quiet:
            print(msg, file=sys.stderr)


def _load(path, want=None):
    X = io.load(path)
    if want is not None and not isinstance(X, want):
        raise KindMismatch(f"{path} holds a {X.kind}, expected a {want.kind}")
    return X


def cmd_validate(args, out):
    X = _load(args.path)
    out.json({"valid": True, "kind": X.kind, "size": X.size, "name": X.name})
    out.say(f"{args.path}: valid {X.kind} with {X.size} elements")
    return EXIT_OK


def cmd_report(args, out):
    S = _load(args.path, FiniteSemiring)
    rep = classify(S)
    out.json(rep.to_dict())
    out.say(", ".join(f for f in FLAGS if rep.flags[f]) or "no flags set")
    return EXIT_OK


def _verdict(S, what, exhaustive):
    if what == "cp":
        return is_cp(S, exhaustive=exhaustive).to_dict()
    fn = {"simple": is_simple, "congruence_simple": is_congruence_simple, "ideal_simple": is_ideal_simple}[what]
    return {what: fn(S)}


def cmd_check(args, out):
    S = _load(args.path, FiniteSemiring)
    if args.side == "left":
        S = opposite(S)
    v = _verdict(S, args.what, args.exhaustive)
    v["side"] = args.side
    out.json(v)
    out.say(f"{args.what} ({args.side}): {v.get('is_cp', v.get(args.what))}")
    return EXIT_OK


def cmd_congruences(args, out):
    X = _load(args.path, (FiniteSemiring, FiniteSemimodule))
    kind = args.kind or X.kind
    if kind == "semiring" and not isinstance(X, FiniteSemiring):
        raise KindMismatch("semiring congruences need a semiring")
    cs = all_congruences(X, kind)
    out.json({"kind": kind, "count": len(cs), "complete": cs.complete, "congruences": [c.to_dict() for c in cs]})
    out.say(f"{len(cs)} {kind} congruences")
    return EXIT_OK


def _write(path, obj):
    Path(path).write_text(io.dumps(obj), encoding="utf-8")


def cmd_construct(args, out):
    S = construct(args.id, *args.params) if args.params else parse_spec(args.id)
    if args.out:
        _write(args.out, S)
        out.json({"written": str(args.out), "size": S.size, "name": S.name})
    else:
        out.json(S)
    out.say(f"constructed {S.name} with {S.size} elements")
    return EXIT_OK


def _matches(S, predicates):
    for p in predicates:
        neg = p.startswith("!")
        name = p.lstrip("!")
        if name in FLAGS:
            val = bool(classify(S).flags[name])
        elif name in CHECKS:
            v = _verdict(S, name, False)
            val = bool(v.get("is_cp", v.get(name)))
        else:
            raise BadParams(f"unknown predicate {name!r}")
        if val == neg:
            return False
    return True


def cmd_enumerate(args, out):
    if args.kind == "monoids":
        found = [{"elements": [str(i) for i in range(M.size)], "zero": 0, "add": M.add.tolist()} for M in enumerate_commutative_monoids(args.order)]
    else:
        found = [S for S in enumerate_semirings(args.order) if _matches(S, args.predicate)]
    if args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        paths = []
        for i, X in enumerate(found):
            p = d / f"{args.kind}-{args.order}-{i}.json"
            _write(p, X)
            paths.append(str(p))
        out.json({"count": len(found), "files": paths})
    else:
        for X in found:
            out.json(X)
    out.say(f"{len(found)} {args.kind} of order {args.order}")
    return EXIT_OK


def cmd_lattice(args, out):
    if args.sub == "decompose-510":
        M = _load(args.path, FiniteSemimodule)
        parts = L.theorem510_decomposition(M)
        res = [
            {
                "atom": int(a),
                "lattice": io.lattice_to_dict(P),
                "distributive": L.is_distributive(P)[0],
                "condition3": L.theorem59_condition3(P) if L.is_distributive(P)[0] else False,
            }
            for a, P in parts
        ]
        out.json({"components": res})
        out.say(f"{len(res)} atom components")
        return EXIT_OK
    X = _load(args.path)
    M = X if isinstance(X, L.FiniteLattice) else L.lattice_from_semimodule(X)
    if args.sub == "endo":
        E = L.endomorphism_semiring(M)
        if args.out:
            _write(args.out, E)
            out.json({"written": str(args.out), "size": E.size})
        else:
            out.json(E)
        out.say(f"End has {E.size} elements")
        return EXIT_OK
    dist, witness = L.is_distributive(M)
    res = {"distributive": dist, "t_chain": [int(t) for t in L.t_chain(M).members]}
    if dist:
        res["condition2"] = L.theorem59_condition2(M)
        res["condition3"] = L.theorem59_condition3(M)
    else:
        res["forbidden_sublattice"] = {"kind": witness[0], "elements": witness[1]} if witness else None
        res["condition2"] = res["condition3"] = False
    if args.with_end:
        res["end_is_cp"] = is_cp(L.endomorphism_semiring(M)).is_cp
    out.json(res)
    out.say(f"distributive={dist} condition2={res['condition2']} condition3={res['condition3']}")
    return EXIT_OK


def cmd_verify(args, out):
    ids = list(SUITES) if args.suite == "all" else [args.suite]
    if any(i not in SUITES for i in ids):
        raise BadParams(f"unknown suite {args.suite!r}; known: {', '.join(SUITES)}")
    failed = False
    for sid in ids:
        rep = run_suite(sid)
        out.json(rep.to_dict())
        c = rep.counts()
        out.say(f"{sid}: {'PASS' if rep.passed else 'FAIL'} ({c['pass']} pass, {c['fail']} fail, {c['skipped']} skipped) in {rep.wall_time:.2f}s")
        failed |= not rep.passed
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    # global options are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="no summary on stderr")
    common.add_argument("--config", default=argparse.SUPPRESS, help="TOML file with cap overrides")
    p = argparse.ArgumentParser(prog="semiring-lab", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    s = sub.add_parser("validate", help="check the axioms of a JSON structure")
    s.add_argument("path")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("report", help="property flags of a semiring")
    s.add_argument("path")
    s.set_defaults(fn=cmd_report)

    s = sub.add_parser("check", help="CP or simpleness verdict")
    s.add_argument("what", choices=CHECKS)
    s.add_argument("path")
    s.add_argument("--side", choices=("right", "left"), default="right")
    s.add_argument("--exhaustive", action="store_true", help="record a splitting for every congruence")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("congruences", help="all congruences of a semiring or semimodule")
    s.add_argument("path")
    s.add_argument("--kind", choices=("semiring", "semimodule"))
    s.set_defaults(fn=cmd_congruences)

    s = sub.add_parser("construct", help="build a catalog semiring, e.g. 'Ext Z4' or 'MatB 2'")
    s.add_argument("id")
    s.add_argument("params", nargs="*")
    s.add_argument("-o", "--out")
    s.set_defaults(fn=cmd_construct)

    s = sub.add_parser("enumerate", help="small structures up to isomorphism")
    s.add_argument("kind", choices=("semirings", "monoids"))
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--predicate", action="append", default=[], help="flag name or check; prefix with ! to negate")
    s.add_argument("--out-dir")
    s.set_defaults(fn=cmd_enumerate)

    s = sub.add_parser("lattice", help="lattice tools")
    s.add_argument("sub", choices=("check-59", "endo", "decompose-510"))
    s.add_argument("path")
    s.add_argument("-o", "--out")
    s.add_argument("--with-end", action="store_true", help="also decide CP of the endomorphism semiring")
    s.set_defaults(fn=cmd_lattice)

    s = sub.add_parser("verify", help="run a named verification suite (or 'all')")
    s.add_argument("suite")
    s.set_defaults(fn=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.quiet = getattr(args, "quiet", False)
    args.config = getattr(args, "config", None)
    out = _Out(args.quiet)
    try:
        if args.config:
            try:
                set_config(load_config(args.config))
            except ValueError as exc:  # unknown keys or malformed TOML
                raise FormatError(f"{args.config}: {exc}") from exc
        return args.fn(args, out)
    except AxiomViolation as exc:
        out.json(exc.to_dict())
        out.say(f"axiom violation: {exc}")
        return EXIT_AXIOM
    except CongruenceLimitExceeded as exc:
        out.json({"error": "CongruenceLimitExceeded", "cap": exc.cap})
        out.say(str(exc))
        return EXIT_CAP
    except (FormatError, ShapeError, KindMismatch, NotBooleanBase, BadParams, OSError, json.JSONDecodeError) as exc:
        out.json({"error": type(exc).__name__, "message": str(exc)})
        out.say(f"error: {exc}")
        return EXIT_FORMAT
    except SemiringLabError as exc:
        out.json({"error": type(exc).__name__, "message": str(exc)})
        out.say(f"error: {exc}")
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
