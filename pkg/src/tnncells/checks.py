"""Verification suites shared by the ``check`` command and the acceptance tests."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .braid import random_word_pair, segre_invariant, verify_all_rules
from .embed import cell_coordinates, certify_positive
from .fold import certify_folded, check_expansion, standard_folding
from .pinning import (Flag, bruhat_pair, cell_representative, random_positive_point,
                      tnn_minor_check, word_matrix)
from .poset import (enumerate_QJ, enumerate_full_flag_cells, euler_char_closure, eulerian_check,
                    identify_partial_cell, project_closures, sample_projected)
from .subexpr import positive_subexpression
from .toric import boundary_scan, build_exponent_set, hull
from .weyl import CartanData, bruhat_leq, enumerate_elements, parse_cartan, reduced_words

__all__ = ["SuiteResult", "SUITES", "run_suite", "default_plan"]


@dataclass
class SuiteResult:
    name: str
    target: str
    ok: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"suite": self.name, "target": self.target, "pass": self.ok,
                "details": self.details}

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name} [{self.target}] ({self.seconds:.1f}s)"


def _cd(t) -> CartanData:
    return parse_cartan(t) if isinstance(t, str) else t


def _cells(cd: CartanData):
    elts = enumerate_elements(cd)
    return [(v, w) for w in elts for v in elts if bruhat_leq(v, w)]


def euler(cd, J: Iterable[int] | None = None, seed: int = 0) -> dict:
    cd = _cd(cd)
    if J is None:
        p = enumerate_full_flag_cells(cd)
        extra = {}
    else:
        rep = project_closures(cd, J, samples=1, seed=seed)
        p = rep.poset
        extra = {"projection_ok": rep.ok}
    values = [euler_char_closure(p, i) for i in range(len(p))]
    bad = [p.elements[i].label() for i, x in enumerate(values) if x != 1]
    return {"ok": not bad and extra.get("projection_ok", True), "cells": len(p),
            "not_one": bad, **extra}


def eulerian(cd) -> dict:
    rep = eulerian_check(enumerate_full_flag_cells(_cd(cd)))
    return {"ok": rep.ok, **rep.to_json()}


def certificates(cd) -> dict:
    cd = _cd(cd)
    failed = []
    count = 0
    if cd.type_label == "A":
        for v, w in _cells(cd):
            count += 1
            if not certify_positive(positive_subexpression(cd, w.word, v)).passed:
                failed.append([v.to_json(), w.to_json()])
    else:
        fd = standard_folding(cd)
        for v, w in _cells(cd):
            count += 1
            if not certify_folded(fd, positive_subexpression(cd, w.word, v)).passed:
                failed.append([v.to_json(), w.to_json()])
    return {"ok": not failed, "cells": count, "failed": failed}


def braid_rules() -> dict:
    exact = verify_all_rules()
    flags = verify_all_rules(modulo_borel=True)
    return {"ok": all(exact.values()), "exact_identity": exact, "same_flag": flags}


def braid_invariance(cd, pairs: int | None = None, seed: int = 0) -> dict:
    """Segre invariance along word paths for reduced words of w0.

    With ``pairs`` unset every ordered pair of reduced words is used, else that
    many random pairs; every cell below w0 is transported each time.
    """
    cd = _cd(cd)
    w0 = cd.longest()
    words = reduced_words(w0)
    rng = random.Random(seed)
    if pairs is None:
        todo = [(a, b) for a in words for b in words]
    else:
        todo = [random_word_pair(w0, rng) for _ in range(pairs)]
    below = [v for v in enumerate_elements(cd) if bruhat_leq(v, w0)]
    bad = [[list(a), list(b), v.to_json()] for a, b in todo for v in below
           if not segre_invariant(positive_subexpression(cd, a, v), b)]
    return {"ok": not bad, "word_pairs": len(todo), "failures": bad}


def membership(cd, samples: int = 5, seed: int = 0) -> dict:
    cd = _cd(cd)
    rng = random.Random(seed)
    n = cd.rank + 1
    wrong = []
    negative = 0
    checked = 0
    for v, w in _cells(cd):
        pse = positive_subexpression(cd, w.word, v)
        for _ in range(samples):
            g = cell_representative(pse, symbolic=False,
                                    params=random_positive_point(pse.n_params, rng))
            checked += 1
            if bruhat_pair(Flag.from_matrix(g)) != (v, w):
                wrong.append([v.to_json(), w.to_json()])
    # products of y_i(t) with t > 0 are totally nonnegative
    for w in enumerate_elements(cd):
        for _ in range(samples):
            t = random_positive_point(len(w), rng)
            if not tnn_minor_check(word_matrix([("y", i, x) for i, x in zip(w.word, t)], n)):
                negative += 1
    return {"ok": not wrong and not negative, "samples": checked,
            "wrong_cell": wrong, "y_products_with_negative_minor": negative}


def toric_dimension(cd) -> dict:
    cd = _cd(cd)
    bad = []
    for v, w in _cells(cd):
        keys, polys = cell_coordinates(positive_subexpression(cd, w.word, v))
        d = hull(build_exponent_set(polys, keys)).dim
        if d != len(w) - len(v):
            bad.append({"v": v.to_json(), "w": w.to_json(), "dim": d})
    return {"ok": not bad, "mismatches": bad}


def glue(cd, seed: int = 0, samples: int = 3) -> dict:
    cd = _cd(cd)
    bad = []
    faces = 0
    for v, w in _cells(cd):
        rep = boundary_scan(positive_subexpression(cd, w.word, v), seed=seed, samples=samples)
        faces += len(rep.faces)
        if not rep.ok:
            bad.append(rep.to_json())
    return {"ok": not bad, "faces_scanned": faces, "failures": bad}


def folding(cd) -> dict:
    cd = _cd(cd)
    fd = standard_folding(cd)
    bad = [[v.to_json(), w.to_json()] for v, w in _cells(cd) if not check_expansion(fd, w, v)]
    return {"ok": not bad, "folding": fd.to_json(), "mismatches": bad}


CENSUS_ORACLE = {("A1", ()): [2, 1], ("A2", ()): [6, 8, 4, 1], ("A2", (2,)): [3, 3, 1],
                 ("A2", (1,)): [3, 3, 1], ("A3", ()): [24, 58, 63, 42, 19, 6, 1]}


def census(cd, J: Iterable[int] = ()) -> dict:
    cd = _cd(cd)
    J = tuple(sorted(set(J)))
    if J:
        cells = enumerate_QJ(cd, J)
        counts = [0] * (max(c.dim for c in cells) + 1)
        for c in cells:
            counts[c.dim] += 1
    else:
        counts = enumerate_full_flag_cells(cd).census()
    expected = CENSUS_ORACLE.get((repr(cd), J))
    return {"ok": expected is None or counts == expected, "census": counts, "expected": expected}


def round_trip(cd, J: Iterable[int], samples: int = 5, seed: int = 0) -> dict:
    cd = _cd(cd)
    J = tuple(sorted(set(J)))
    rng = random.Random(seed)
    bad = []
    triples = enumerate_QJ(cd, J)
    for t in triples:
        for _ in range(samples):
            got = identify_partial_cell(sample_projected(cd, t.x, t.w * t.u, J, rng), J, cd)
            if got != t:
                bad.append({"expected": t.to_json(), "got": got.to_json()})
    return {"ok": not bad, "triples": len(triples), "failures": bad}


def run_suite(name: str, target: str, fn: Callable[..., dict], *args, **kwargs) -> SuiteResult:
    t0 = time.perf_counter()
    details = fn(*args, **kwargs)
    ok = bool(details.pop("ok"))
    return SuiteResult(name, target, ok, details, time.perf_counter() - t0)


def _braid_suite(cd: CartanData, seed: int) -> dict:
    rules = braid_rules()
    inv = braid_invariance(cd, None if cd.rank <= 2 else 10, seed)
    return {"ok": rules["ok"] and inv["ok"], "rules": rules, "invariance": inv}


SUITES = ("census", "euler", "eulerian", "certify", "membership", "toric", "glue", "braid",
          "fold", "roundtrip")


def default_plan(cd: CartanData, suite: str = "all", seed: int = 0) -> list[tuple]:
    """(name, target, fn, args, kwargs) tuples for ``check --suite ...`` on one type."""
    t = repr(cd)
    plan = []
    want = (lambda s: suite in ("all", s))
    type_a = cd.type_label == "A"
    if want("census"):
        plan.append(("census", t, census, (cd,), {}))
    if want("euler"):
        plan.append(("euler", t, euler, (cd,), {}))
    if want("eulerian"):
        plan.append(("eulerian", t, eulerian, (cd,), {}))
    if want("certify") and (type_a or cd.type_label == "C"):
        plan.append(("certify", t, certificates, (cd,), {}))
    if type_a and want("membership"):
        plan.append(("membership", t, membership, (cd,), {"seed": seed}))
    if type_a and want("toric"):
        plan.append(("toric", t, toric_dimension, (cd,), {}))
    if type_a and want("glue") and cd.rank <= 2:
        plan.append(("glue", t, glue, (cd,), {"seed": seed}))
    if type_a and want("braid"):
        plan.append(("braid", t, _braid_suite, (cd, seed), {}))
    if cd.type_label in "BC" and want("fold"):
        plan.append(("fold", t, folding, (cd,), {}))
    if type_a and 2 <= cd.rank <= 3:
        for J in ([1], [2]) if cd.rank == 2 else ([2],):
            if want("roundtrip"):
                plan.append(("roundtrip", f"{t} J={J}", round_trip, (cd, J), {"seed": seed}))
            if want("euler"):
                plan.append(("euler", f"{t} J={J}", euler, (cd, J), {"seed": seed}))
    return plan
