"""Command-line front end.

Exit codes: 0 success, 1 semantic failure (not equal, not ContFlow, ...),
2 usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .blackbox import IntegratorMode, blackbox
from .contflow import extract, verify_square
from .diagram.dsl import parse, print_term
from .diagram.dualities import dagger_term, star_term
from .diagram.equations import equation_library
from .diagram.synth import synth_map_diagram, synth_rel_diagram
from .diagram.terms import Term, count_integrators
from .errors import NotContFlow, SigflowError
from .exactalg import QS, Field, Matrix, field_from_descriptor
from .pendulum import pendulum_check
from .relation import LinRel
from .statebox import (
    StatefulMorphism, ctrb_matrix, is_controllable, is_observable, kalman_dual, obsv_matrix, st_compose,
    st_tensor, st_transfer,
)


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _field(desc: str) -> Field:
    try:
        return field_from_descriptor(desc)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _diagram(path: str, field: Optional[Field] = None) -> Term:
    return parse(_read(path), allow_s=field is None or field is QS)


def _json(path: str) -> dict:
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON ({e})") from None


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _mode(args, F: Field) -> IntegratorMode:
    if args.int is not None:
        return IntegratorMode.parse(args.int)
    return IntegratorMode.SYMBOLIC


def cmd_check(args) -> int:
    F = _field(args.field)
    t = _diagram(args.file, F)
    info = {"dom": t.dom, "cod": t.cod, "integrators": count_integrators(t), "term": print_term(t)}
    if args.json:
        _emit(info)
    else:
        print(f"ok: {t.dom} -> {t.cod}, {info['integrators']} integrator(s)")
    return 0


def cmd_blackbox(args) -> int:
    F = _field(args.field)
    t = _diagram(args.file, F)
    _emit(blackbox(t, F, _mode(args, F)).to_json())
    return 0


def cmd_equal(args) -> int:
    F = _field(args.field)
    a, b = _diagram(args.a, F), _diagram(args.b, F)
    mode = _mode(args, F)
    same = (a.dom, a.cod) == (b.dom, b.cod) and blackbox(a, F, mode) == blackbox(b, F, mode)
    if args.json:
        _emit({"equal": same})
    else:
        print("equal" if same else "not equal")
    return 0 if same else 1


def cmd_dagger(args) -> int:
    print(print_term(dagger_term(_diagram(args.file))))
    return 0


def cmd_star(args) -> int:
    print(print_term(star_term(_diagram(args.file))))
    return 0


def cmd_synth(args) -> int:
    print(print_term(synth_map_diagram(Matrix.from_json(_json(args.file)))))
    return 0


def cmd_synth_rel(args) -> int:
    print(print_term(synth_rel_diagram(LinRel.from_json(_json(args.file)))))
    return 0


def _system(path: str) -> StatefulMorphism:
    return StatefulMorphism.from_json(_json(path))


def cmd_stateful(args) -> int:
    op = args.op
    f = _system(args.f)
    needs_g = op in ("compose", "tensor")
    if needs_g != (args.g is not None):
        raise UsageError(f"stateful {op} takes {'two files' if needs_g else 'one file'}")
    if op == "compose":
        _emit(st_compose(_system(args.g), f).to_json())
    elif op == "tensor":
        _emit(st_tensor(f, _system(args.g)).to_json())
    elif op == "transfer":
        _emit(st_transfer(f).to_json())
    elif op == "dual":
        _emit(kalman_dual(f).to_json())
    elif op == "ctrb":
        M = ctrb_matrix(f)
        _emit({"matrix": M.to_json(), "rank": M.rank(), "n": f.n, "controllable": is_controllable(f)})
    elif op == "obsv":
        M = obsv_matrix(f)
        _emit({"matrix": M.to_json(), "rank": M.rank(), "n": f.n, "observable": is_observable(f)})
    return 0


def cmd_contflow(args) -> int:
    F = _field(args.field)
    ex = extract(_diagram(args.file, F), F)
    fails = ex.failures()
    if args.json:
        _emit({"contflow": not fails, "failures": [{"which": k, "reason": r} for k, r in fails],
               "extraction": ex.to_json()})
    elif fails:
        for k, r in fails:
            print(f"{k}(f) {r}")
    else:
        _emit(ex.to_json())
    return 1 if fails else 0


def cmd_verify_square(args) -> int:
    t = _diagram(args.file)
    try:
        ok = verify_square(t)
    except NotContFlow as e:
        if args.json:
            _emit({"square": False, "contflow": False, "reason": str(e)})
        else:
            print(f"not ContFlow: {e}")
        return 1
    if args.json:
        _emit({"square": ok, "contflow": True})
    else:
        print("square commutes" if ok else "square does not commute")
    return 0 if ok else 1


def cmd_verify_equations(args) -> int:
    fields = [_field(d) for d in (args.field or ["q", "gf:5", "gf:7", "qs"])]
    results = []
    for rule in equation_library():
        for F in fields:
            if not rule.applies_in(F):
                results.append((rule.id, F.descriptor, "skip"))
                continue
            ok = blackbox(rule.lhs, F) == blackbox(rule.rhs, F)
            results.append((rule.id, F.descriptor, "pass" if ok else "FAIL"))
    if args.json:
        _emit([{"rule": r, "field": f, "result": s} for r, f, s in results])
    else:
        for r, f, s in results:
            print(f"{s:4}  {r}  [{f}]")
    return 1 if any(s == "FAIL" for _, _, s in results) else 0


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def cmd_example(args) -> int:
    if args.name != "pendulum":
        raise UsageError(f"unknown example {args.name!r}")
    for k in ("M", "l"):
        if getattr(args, k) == 0:
            raise UsageError(f"--{k} must be nonzero")
    a, b, eq = pendulum_check(args.M, args.m, args.g, args.l)
    if args.json:
        _emit({"composite": print_term(a), "friedland": print_term(b), "equal": eq})
    else:
        print("# composite diagram")
        print(print_term(a))
        print("# Friedland's diagram")
        print(print_term(b))
        print("diagrams black-box equal" if eq else "diagrams differ")
    return 0 if eq else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sigflow", description="Signal-flow diagrams over exact fields.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = add("check", cmd_check, "parse and arity-check a diagram")
    sp.add_argument("file")
    sp.add_argument("--field", default="qs")

    sp = add("blackbox", cmd_blackbox, "print the relation of a diagram as JSON")
    sp.add_argument("file")
    sp.add_argument("--field", default="q")
    sp.add_argument("--int", choices=["symbolic", "zero", "cut"])

    sp = add("equal", cmd_equal, "compare two diagrams by black-boxing")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--field", default="q")
    sp.add_argument("--int", choices=["symbolic", "zero", "cut"])

    sp = add("dagger", cmd_dagger, "print the daggered diagram")
    sp.add_argument("file")
    sp = add("star", cmd_star, "print the star-dual diagram")
    sp.add_argument("file")

    sp = add("synth", cmd_synth, "standard-form diagram of a matrix JSON")
    sp.add_argument("file")
    sp = add("synth-rel", cmd_synth_rel, "prestandard-form diagram of a relation JSON")
    sp.add_argument("file")

    sp = add("stateful", cmd_stateful, "operations on stateful morphisms")
    sp.add_argument("op", choices=["compose", "tensor", "transfer", "ctrb", "obsv", "dual"])
    sp.add_argument("f")
    sp.add_argument("g", nargs="?")

    sp = add("contflow", cmd_contflow, "extract A, B, C, D or diagnose non-membership")
    sp.add_argument("file")
    sp.add_argument("--field", default="q")

    sp = add("verify-square", cmd_verify_square, "check black box = transfer of the extracted system")
    sp.add_argument("file")

    sp = add("verify-equations", cmd_verify_equations, "check every rule of the equation library")
    sp.add_argument("--field", action="append")

    sp = add("example", cmd_example, "worked examples")
    sp.add_argument("name", choices=["pendulum"])
    sp.add_argument("--M", type=_rational, required=True)
    sp.add_argument("--m", type=_rational, required=True)
    sp.add_argument("--g", type=_rational, required=True)
    sp.add_argument("--l", type=_rational, required=True)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args)
    except NotContFlow as e:
        print(f"not ContFlow: {e}", file=sys.stderr)
        return 1
    except (UsageError, SigflowError, OSError, KeyError, ValueError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
