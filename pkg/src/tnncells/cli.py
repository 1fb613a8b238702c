"""Command-line front end.

Every subcommand writes one JSON document (to stdout or ``--out``).  Exit
status: 0 on success, 1 when a mathematical check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import checks
from .embed import cell_coordinates, certify_positive
from .fold import (certify_folded, check_expansion, folded_cell_representative, is_tau_fixed,
                   standard_folding)
from .pinning import NotRealizable, cell_representative, evaluate_matrix, random_positive_point
from .poset import (enumerate_QJ, enumerate_full_flag_cells, euler_char_closure, eulerian_check,
                    project_closures)
from .subexpr import NotBelow, NotReduced, positive_subexpression
from .toric import boundary_scan, build_exponent_set, hull
from .weyl import CartanData, GroupTooLarge, bruhat_leq, enumerate_elements, parse_cartan


class UsageError(ValueError):
    pass


def _int_list(text: str | None) -> tuple[int, ...]:
    if text is None:
        return ()
    text = text.strip()
    if text in ("", "e", "[]"):
        return ()
    if text.startswith("s"):
        return tuple(int(x) for x in re.findall(r"\d+", text))
    try:
        return tuple(int(x) for x in re.split(r"[,\s]+", text.strip("[]()")) if x)
    except ValueError:
        raise UsageError(f"cannot read {text!r} as a list of node indices") from None


def _cartan(args) -> CartanData:
    try:
        return parse_cartan(args.type, args.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cell(args, cd: CartanData):
    try:
        w = cd.element(_int_list(args.w_word)) if args.w_word is not None else cd.longest()
        word = _int_list(args.w_word) if args.w_word is not None else w.word
        v = cd.element(_int_list(args.v))
        return positive_subexpression(cd, word, v)
    except (NotBelow, NotReduced, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _J(args, cd: CartanData) -> tuple[int, ...] | None:
    if args.J is None:
        return None
    J = tuple(sorted(set(_int_list(args.J))))
    if any(not 1 <= j <= cd.rank for j in J):
        raise UsageError(f"J = {J} is not a set of nodes of {cd!r}")
    return J


def _figures(args) -> Path | None:
    if not getattr(args, "figures", None):
        return None
    path = Path(args.figures)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _matrix_json(m, names=None):
    return [[x.to_str(names) if hasattr(x, "to_str") else str(x) for x in row] for row in m]


# subcommands; each returns (document, ok)

def cmd_cells(args):
    cd = _cartan(args)
    J = _J(args, cd)
    if J is None:
        poset = enumerate_full_flag_cells(cd)
        cells = [c.to_json() for c in poset.elements]
        census = poset.census()
    else:
        triples = enumerate_QJ(cd, J)
        cells = [c.to_json() for c in triples]
        census = [sum(1 for c in triples if c.dim == d)
                  for d in range(max(c.dim for c in triples) + 1)]
    _write_csv(args, census)
    return {"type": cd.to_json(), "J": None if J is None else list(J), "count": len(cells),
            "census": census, "cells": cells}, True


def _write_csv(args, census):
    if getattr(args, "csv", None):
        with open(args.csv, "w", newline="") as fh:
            fh.write("dim,cells\n")
            for d, k in enumerate(census):
                fh.write(f"{d},{k}\n")


def cmd_param(args):
    cd = _cartan(args)
    pse = _cell(args, cd)
    if cd.type_label == "A":
        g = cell_representative(pse)
        doc = {}
    elif cd.type_label == "C":
        fd = standard_folding(cd)
        g = folded_cell_representative(fd, pse)
        doc = {"folding": fd.to_json()}
    else:
        raise UsageError(f"no matrix realisation for {cd!r}")
    doc.update({"cell": {"v": pse.v.to_json(), "w": pse.w.to_json()}, "word": list(pse.word),
                "v_plus": list(pse.v_plus), "params": pse.param_names(),
                "matrix": _matrix_json(g, pse.param_names()),
                "matrix_json": [[x.to_json() for x in row] for row in g]})
    return doc, True


def cmd_certify(args):
    cd = _cartan(args)
    if cd.type_label not in "AC":
        raise UsageError(f"certificates need a type A or C group, not {cd!r}")
    fd = standard_folding(cd) if cd.type_label == "C" else None
    if args.w_word is not None or args.v is not None:
        cells = [_cell(args, cd)]
    else:
        elts = enumerate_elements(cd)
        cells = [positive_subexpression(cd, w.word, v) for w in elts for v in elts if bruhat_leq(v, w)]
    reports = [certify_folded(fd, p) if fd else certify_positive(p) for p in cells]
    ok = all(r.passed for r in reports)
    return {"type": cd.to_json(), "pass": ok, "reports": [r.to_json() for r in reports]}, ok


def _polytope_for(args):
    cd = _cartan(args)
    pse = _cell(args, cd)
    matrix = None
    if cd.type_label == "C":
        matrix = folded_cell_representative(standard_folding(cd), pse)
    elif cd.type_label != "A":
        raise UsageError(f"no matrix realisation for {cd!r}")
    return cd, pse, matrix


def cmd_polytope(args):
    cd, pse, matrix = _polytope_for(args)
    keys, polys = cell_coordinates(pse, matrix)
    es = build_exponent_set(polys, keys)
    poly = hull(es)
    ok = poly.dim == len(pse.w) - len(pse.v)
    figs = _figures(args)
    if figs:
        from .plotting import polytope_projection
        polytope_projection(poly, figs / f"polytope_{cd!r}_{pse.v!r}_{pse.w!r}.png")
    return {"cell": {"v": pse.v.to_json(), "w": pse.w.to_json()}, "exponent_set": es.to_json(),
            "polytope": poly.to_json(), "f_vector": poly.f_vector(),
            "dim_matches_length_difference": ok}, ok


def cmd_glue_scan(args):
    cd, pse, matrix = _polytope_for(args)
    rep = boundary_scan(pse, seed=args.seed, matrix=matrix)
    figs = _figures(args)
    if figs:
        from .plotting import polytope_projection
        keys, polys = cell_coordinates(pse, matrix)
        polytope_projection(hull(build_exponent_set(polys, keys)),
                            figs / f"glue_{cd!r}_{pse.v!r}_{pse.w!r}.png")
    return rep.to_json(), rep.ok


def cmd_poset(args):
    cd = _cartan(args)
    J = _J(args, cd)
    doc = {"type": cd.to_json(), "J": None if J is None else list(J)}
    ok = True
    if J is None:
        poset = enumerate_full_flag_cells(cd)
    else:
        rep = project_closures(cd, J, seed=args.seed)
        poset = rep.poset
        doc.update({"round_trip": rep.round_trip_ok, "sample_independent": rep.sample_independent,
                    "boundary_dims_drop": rep.dims_drop, "problems": rep.problems})
        ok = rep.ok
    euler = [euler_char_closure(poset, i) for i in range(len(poset))]
    eul = eulerian_check(poset)
    ok = ok and all(x == 1 for x in euler) and eul.ok
    doc.update(poset.to_json())
    doc.update({"census": poset.census(), "euler_characteristics": euler,
                "eulerian": eul.to_json()})
    _write_csv(args, poset.census())
    figs = _figures(args)
    if figs:
        from .plotting import hasse_diagram
        tag = f"{cd!r}" if J is None else f"{cd!r}_J{''.join(map(str, J))}"
        hasse_diagram(poset, figs / f"hasse_{tag}.png", title=tag)
    return doc, ok


def cmd_fold(args):
    cd = _cartan(args)
    try:
        fd = standard_folding(cd)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    elts = enumerate_elements(cd)
    pairs = [(v, w) for w in elts for v in elts if bruhat_leq(v, w)]
    expansion = [[v.to_json(), w.to_json()] for v, w in pairs if not check_expansion(fd, w, v)]
    doc = {"folding": fd.to_json(), "folded_type": cd.to_json(), "cells": len(pairs),
           "expansion_mismatches": expansion}
    ok = not expansion
    if fd.dot_cartan.type_label == "A":
        rng = random.Random(args.seed)
        certs, tau_bad = [], []
        for v, w in pairs:
            pse = positive_subexpression(cd, w.word, v)
            rep = certify_folded(fd, pse)
            if not rep.passed:
                certs.append(rep.to_json())
            g = folded_cell_representative(fd, pse)
            if not is_tau_fixed(evaluate_matrix(g, random_positive_point(pse.n_params, rng))):
                tau_bad.append([v.to_json(), w.to_json()])
        doc.update({"certificate_failures": certs, "tau_symmetry_failures": tau_bad})
        ok = ok and not certs and not tau_bad
    return doc, ok


def cmd_check(args):
    cd = _cartan(args)
    if args.suite != "all" and args.suite not in checks.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}")
    plan = checks.default_plan(cd, args.suite, args.seed)
    results = []
    for name, target, fn, a, kw in plan:
        res = checks.run_suite(name, target, fn, *a, **kw)
        print(res.line(), file=sys.stderr)
        results.append(res)
    ok = all(r.ok for r in results)
    return {"type": cd.to_json(), "suite": args.suite, "pass": ok,
            "results": [r.to_json() for r in results]}, ok


COMMANDS = {
    "cells": cmd_cells, "param": cmd_param, "certify": cmd_certify, "polytope": cmd_polytope,
    "glue-scan": cmd_glue_scan, "poset": cmd_poset, "fold": cmd_fold, "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tnncells",
        description="Exact computations with cells of totally nonnegative flag varieties.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", required=True, help="Cartan type, e.g. A3 or C2")
    common.add_argument("--rank", type=int, help="rank, if --type is a bare letter")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--out", help="write JSON here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "cells": "list full-flag cells or Q^J triples",
        "param": "symbolic cell representative",
        "certify": "positivity certificates of the flag coordinates",
        "polytope": "exponent set and its lattice polytope",
        "glue-scan": "identify the cells hit on each proper face of the polytope",
        "poset": "closure poset with Euler characteristics and Eulerian check",
        "fold": "folding checks for a type B or C group",
        "check": "run verification suites",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text, description=text)
        if name in ("param", "certify", "polytope", "glue-scan"):
            p.add_argument("--w-word", help="reduced word for w, e.g. 1,2,1 (default: w0)")
            p.add_argument("--v", help="word for v, e.g. 1 or e (default: e)")
        if name in ("cells", "poset"):
            p.add_argument("--J", help="parabolic subset, e.g. 2 or 1,3")
            p.add_argument("--csv", help="also write the dimension census as CSV")
        if name in ("polytope", "glue-scan", "poset"):
            p.add_argument("--figures", metavar="DIR", help="write PNG figures into DIR")
        if name == "check":
            p.add_argument("--suite", default="all",
                           help="one of: all, " + ", ".join(checks.SUITES))
    return parser


def _default(x):
    if isinstance(x, Fraction):
        return str(x)
    raise TypeError(f"cannot serialise {type(x).__name__}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, ok = COMMANDS[args.command](args)
    except (UsageError, NotRealizable, GroupTooLarge) as exc:
        print(f"tnncells: error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(doc, indent=2, sort_keys=True, default=_default) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
