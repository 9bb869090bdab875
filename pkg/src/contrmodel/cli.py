"""Command-line entry point.

Exit codes: 0 success, 1 an identity or precondition failed (a report is
printed), 2 the input could not be parsed, 3 an internal invariant broke.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import jsonio
from .complex import (
    GradedMap,
    check_chain_map,
    is_cofibration,
    is_fibration,
    is_quasi_iso,
    path_object,
    validate_complex,
)
from .errors import ContrModelError, DimensionError, InvariantViolation, ParseError, PreconditionError
from .harness import CAMPAIGNS, MUTATIONS, default_config, run_campaign
from .model import FLAVORS, classify, factor_ar, factor_contr, lift_ar, lift_contr
from .perturb import trick2, trick3
from .report import Report
from .retract import SDR, Morphism, check_ar, check_ar_morphism, check_contr_morphism, check_contraction, check_sdr, trick1
from .semifree import LiftingProblem, exhibit_retract, factor_coch, lift_linear

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INVARIANT = 0, 1, 2, 3


class Failed(Exception):
    """Raised by a subcommand to exit with status 1 and print ``report``."""

    def __init__(self, report: Report):
        super().__init__(report.subject)
        self.report = report


def _emit(obj, out: str | None) -> None:
    text = jsonio.dumps(obj)
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _parse(fn, path, **kw):
    return jsonio.safe_parse(fn, jsonio.load_file(path), **kw)


def _require(rep: Report) -> None:
    if not rep.ok:
        raise Failed(rep)


# ----------------------------------------------------------------------------
# subcommands


def _kind_of(obj) -> str:
    if not isinstance(obj, dict):
        raise ParseError("$", "expected an object")
    if "M" in obj and "N" in obj:
        return "diagram"
    if {"src", "tgt", "f"} <= obj.keys():
        return "morphism"
    if "blocks" in obj:
        return "map"
    if "dims" in obj:
        return "complex"
    raise ParseError("$", "cannot tell what this file holds (complex, map, diagram or morphism)")


def cmd_check(args) -> int:
    obj = jsonio.load_file(args.input)
    kind = _kind_of(obj)
    if kind == "complex":
        rep = validate_complex(jsonio.safe_parse(jsonio.complex_from_json, obj))
    elif kind == "map":
        rep = check_chain_map(jsonio.safe_parse(jsonio.map_from_json, obj))
    elif kind == "diagram":
        x = jsonio.safe_parse(jsonio.diagram_from_json, obj)
        check = {"ar": check_ar, "sdr": check_sdr, "contraction": check_contraction}[jsonio.diagram_kind(x)]
        rep = check(x)
    else:
        m = jsonio.safe_parse(jsonio.morphism_from_json, obj)
        contr = isinstance(m.src, SDR) and isinstance(m.tgt, SDR)
        rep = Report("morphism of contractions" if contr else "morphism of acyclic retractions")
        rep.extend(check_ar(m.src), "src: ")
        rep.extend(check_ar(m.tgt), "tgt: ")
        rep.check(check_ar_morphism(m), "AR morphism")
        if contr:
            rep.check(check_contr_morphism(m), "Contr morphism")
    _emit(rep.to_json(), None)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_trick1(args) -> int:
    if len(args.inputs) == 1:
        m = _parse(jsonio.morphism_from_json, args.inputs[0])
        f, src, tgt = m.f, m.src, m.tgt
    elif len(args.inputs) == 3:
        src = _parse(jsonio.diagram_from_json, args.inputs[0])
        tgt = _parse(jsonio.diagram_from_json, args.inputs[1])
        f = jsonio.safe_parse(jsonio.map_from_json, jsonio.load_file(args.inputs[2]), src=src.N, tgt=tgt.N)
    else:
        raise ParseError("argv", "trick1 takes <morphism.json> or <src.json> <tgt.json> <map.json>")
    for x, role in ((src, "src"), (tgt, "tgt")):
        _require(_with_subject(check_ar(x), f"{role} acyclic retraction"))
    _require(check_chain_map(f))
    _emit(jsonio.morphism_to_json(trick1(f, src, tgt)), args.output)
    return EXIT_OK


def _with_subject(rep: Report, subject: str) -> Report:
    rep.subject = subject
    return rep


def _one_input(args, name):
    if len(args.inputs) != 1:
        raise ParseError("argv", f"{name} takes exactly one input file")
    return args.inputs[0]


def cmd_trick2(args) -> int:
    x = _parse(jsonio.diagram_from_json, _one_input(args, "trick2"))
    if not isinstance(x, SDR):
        raise Failed(Report("strong deformation retraction", ["input has no homotopy h"]))
    _require(check_sdr(x))
    _emit(jsonio.diagram_to_json(trick2(x)), args.output)
    return EXIT_OK


def cmd_trick3(args) -> int:
    m = _parse(jsonio.morphism_from_json, _one_input(args, "trick3"))
    rep = Report("morphism of acyclic retractions between contractions")
    for x, role in ((m.src, "src"), (m.tgt, "tgt")):
        if isinstance(x, SDR):
            rep.extend(check_contraction(x), f"{role}: ")
        else:
            rep.fail(f"{role}: not a contraction")
    rep.check(check_ar_morphism(m), "AR morphism")
    _require(rep)
    _emit(jsonio.morphism_to_json(trick3(m)), args.output)
    return EXIT_OK


def cmd_factor(args) -> int:
    if args.category == "coch":
        alpha = _parse(jsonio.map_from_json, args.input)
        _require(check_chain_map(alpha))
        ext, g = factor_coch(alpha, args.flavor)
        out = {
            "category": "coch",
            "flavor": args.flavor,
            "left": jsonio.map_to_json(ext.f, standalone=True),
            "right": jsonio.map_to_json(g, standalone=True),
            "flags": {"left": classify(ext.f), "right": classify(g)},
        }
        cells = ext
    else:
        m = _parse(jsonio.morphism_from_json, args.input)
        rep = Report("input morphism")
        rep.extend(check_ar(m.src), "src: ")
        rep.extend(check_ar(m.tgt), "tgt: ")
        rep.check(check_ar_morphism(m), "AR morphism")
        if args.category == "contr":
            for x, role in ((m.src, "src"), (m.tgt, "tgt")):
                rep.check(isinstance(x, SDR) and check_contraction(x).ok, f"{role}: contraction")
            rep.check(rep.ok and check_contr_morphism(m), "Contr morphism")
        _require(rep)
        fa = factor_ar(m, args.flavor) if args.category == "ar" else factor_contr(m, args.flavor)
        ar = fa if args.category == "ar" else fa.ar
        out = {
            "category": args.category,
            "flavor": args.flavor,
            "middle": jsonio.diagram_to_json(fa.middle),
            "left": jsonio.map_to_json(fa.left.f),
            "right": jsonio.map_to_json(fa.right.f),
            "flags": {"left": classify(fa.left.f), "right": classify(fa.right.f), **ar.flags},
        }
        cells = ar.cells
    if args.emit_cells:
        out["cells"] = jsonio.cells_to_json(cells)
    _emit(out, args.output)
    return EXIT_OK


def _coch_hypotheses(prob: LiftingProblem) -> Report:
    rep = Report("lifting hypotheses")
    rep.check(prob.commutes(), "square commutes")
    rep.check(is_cofibration(prob.i), "i cofibration")
    rep.check(is_fibration(prob.p), "p fibration")
    rep.check(is_quasi_iso(prob.i) or is_quasi_iso(prob.p), "i or p trivial")
    return rep


def cmd_lift(args) -> int:
    obj = jsonio.load_file(args.input)
    if args.category == "coch":
        prob = jsonio.safe_parse(jsonio.coch_square_from_json, obj)
        _require(_coch_hypotheses(prob))
        h = lift_linear(prob)
        if h is None:
            raise InvariantViolation("no lift exists although the hypotheses hold")
        _emit({"lift": jsonio.map_to_json(h)}, args.output)
        return EXIT_OK
    sq = jsonio.safe_parse(jsonio.morphism_square_from_json, obj)
    rep = _coch_hypotheses(sq.underlying())
    for name in ("i", "f", "p", "g"):
        m: Morphism = getattr(sq, name)
        ok = check_ar_morphism(m) if args.category == "ar" else check_contr_morphism(m)
        rep.check(ok, f"{name} {args.category} morphism")
    _require(rep)
    m = lift_ar(sq) if args.category == "ar" else lift_contr(sq)
    _emit({"lift": jsonio.map_to_json(m.f)}, args.output)
    return EXIT_OK


def cmd_path(args) -> int:
    B = _parse(jsonio.complex_from_json, args.input)
    _require(validate_complex(B))
    P = path_object(B)
    _emit(
        {
            "object": jsonio.complex_to_json(P.obj),
            "incl": jsonio.map_to_json(P.incl),
            "proj": jsonio.map_to_json(P.proj),
        },
        args.output,
    )
    return EXIT_OK


def cmd_retract(args) -> int:
    g = _parse(jsonio.map_from_json, args.input)
    rep = check_chain_map(g)
    rep.check(is_cofibration(g), "degreewise injective")
    _require(rep)
    pres = exhibit_retract(g)
    _emit(
        {
            "semifree": jsonio.map_to_json(pres.f.f, standalone=True),
            "cells": jsonio.cells_to_json(pres.f),
            "section": jsonio.map_to_json(pres.section),
            "retraction": jsonio.map_to_json(pres.retraction),
        },
        args.output,
    )
    return EXIT_OK


def cmd_fuzz(args) -> int:
    field = jsonio.parse_field_spec(args.field)
    if args.trials < 0:
        raise ParseError("--trials", "must be non-negative")
    if not 0 <= args.seed < 2**64:
        raise ParseError("--seed", "must fit in 64 unsigned bits")
    cfg = default_config(args.campaign, field, args.seed)
    rep = run_campaign(args.campaign, args.trials, cfg, mutation=args.mutation, shrink=not args.no_shrink)
    _emit(rep.to_json(), args.output)
    return EXIT_OK if rep.ok else EXIT_FAIL


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="contrmodel", description="Exact contractions, tricks, factorizations and fuzzing.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a complex, chain map, diagram or morphism")
    p.add_argument("input")
    p.set_defaults(run=cmd_check)

    for name, fn, hint in (
        ("trick1", cmd_trick1, "<morphism.json> or <src.json> <tgt.json> <map.json>"),
        ("trick2", cmd_trick2, "<sdr.json>"),
        ("trick3", cmd_trick3, "<morphism.json>"),
    ):
        p = sub.add_parser(name, help=f"apply the {name[:-1]} {name[-1]} construction to {hint}")
        p.add_argument("inputs", nargs="+")
        p.add_argument("-o", "--output")
        p.set_defaults(run=fn)

    p = sub.add_parser("factor", help="factor a map or morphism")
    p.add_argument("input")
    p.add_argument("--category", choices=("coch", "ar", "contr"), required=True)
    p.add_argument("--flavor", choices=FLAVORS, default="c-fw")
    p.add_argument("--emit-cells", action="store_true", help="include the cell data of the left leg")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_factor)

    p = sub.add_parser("lift", help="solve a lifting square")
    p.add_argument("input")
    p.add_argument("--category", choices=("coch", "ar", "contr"), required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_lift)

    p = sub.add_parser("path", help="path object of a complex")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_path)

    p = sub.add_parser("retract", help="present a cofibration as a retract of a semifree extension")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_retract)

    p = sub.add_parser("fuzz", help="run a seeded fuzz campaign")
    p.add_argument("--campaign", choices=sorted(CAMPAIGNS), required=True)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--field", default="fp:5", help="fp:P or q (default fp:5)")
    p.add_argument("--mutation", choices=MUTATIONS, help="deliberately break one construction")
    p.add_argument("--no-shrink", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_fuzz)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except Failed as e:
        _emit(e.report.to_json(), None)
        return EXIT_FAIL
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except DimensionError as e:
        print(f"parse error: inconsistent input: {e}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as e:
        rep = e.report if e.report is not None else Report("precondition", [str(e)])
        _emit(rep.to_json(), None)
        return EXIT_FAIL
    except InvariantViolation as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except ContrModelError as e:
        print(f"invariant violation: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
