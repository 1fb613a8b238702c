"""Acceptance gate: one test per criterion, each with its time limit.

Every test prints a single PASS/FAIL line; run with ``pytest -s`` to see them.
"""

import time

from oracles import full_flag_census, parabolic_triples
from tnncells import checks
from tnncells.weyl import parse_cartan


def gate(number, text, ok, seconds, limit):
    ok = ok and seconds < limit
    print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {text} ({seconds:.1f}s, limit {limit}s)")
    return ok


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t0


def test_01_euler_characteristic():
    def run():
        results = [checks.euler(t) for t in ("A1", "A2", "A3")]
        results += [checks.euler("A2", [1]), checks.euler("A2", [2]), checks.euler("A3", [2])]
        return results
    results, dt = timed(run)
    ok = all(r["ok"] for r in results)
    assert gate(1, "closure Euler characteristic 1 (A1-A3, Q^J A2 J=1,2, A3 J=2)", ok, dt, 30)


def test_02_eulerian():
    results, dt = timed(lambda: [checks.eulerian(t) for t in ("A2", "A3")])
    ok = all(r["ok"] for r in results)
    assert gate(2, "Mobius = (-1)^rank on A2, A3 augmented posets", ok, dt, 60)


def test_03_positivity_certificates():
    results, dt = timed(lambda: [checks.certificates(t) for t in ("A2", "A3", "C2")])
    ok = all(r["ok"] for r in results) and [r["cells"] for r in results] == [19, 213, 33]
    assert gate(3, "nonnegative flag coordinates, all A2, A3 and folded C2 cells", ok, dt, 300)


def test_04_braid_identities():
    def run():
        return (checks.braid_rules(), checks.braid_invariance("A2"),
                checks.braid_invariance("A3", pairs=10, seed=0))
    (rules, inv2, inv3), dt = timed(run)
    ok = rules["ok"] and inv2["ok"] and inv3["ok"]
    text = (f"exact SL3 rules {rules['exact_identity']}, "
            f"same flag {rules['same_flag']}, "
            f"invariance A2 {inv2['ok']} ({inv2['word_pairs']} pairs), "
            f"A3 {inv3['ok']} ({inv3['word_pairs']} pairs)")
    assert gate(4, text, ok, dt, 120)


def test_05_membership():
    results, dt = timed(lambda: [checks.membership(t, samples=5, seed=0) for t in ("A2", "A3")])
    ok = all(r["ok"] for r in results)
    assert gate(5, "sampled points land in their cell; y-products are TNN", ok, dt, 120)


def test_06_toric_dimension():
    results, dt = timed(lambda: [checks.toric_dimension(t) for t in ("A2", "A3")])
    ok = all(r["ok"] for r in results)
    assert gate(6, "polytope dimension = l(w) - l(v) on A2, A3", ok, dt, 120)


def test_07_glue_boundary():
    result, dt = timed(checks.glue, "A2", seed=0, samples=3)
    ok = result["ok"] and result["faces_scanned"] > 0
    assert gate(7, f"boundary scan of all A2 cells ({result['faces_scanned']} faces)", ok, dt, 300)


def test_08_folding():
    results, dt = timed(lambda: [checks.folding(t) for t in ("C2", "C3")])
    ok = all(r["ok"] for r in results)
    assert gate(8, "folded subexpressions expand to upstairs ones in C2, C3", ok, dt, 60)


def test_09_census():
    def run():
        return checks.census("A2"), checks.census("A2", [2])
    (full, part), dt = timed(run)
    expected_full = full_flag_census(3)
    tri = parabolic_triples(3, {2})
    expected_part = [sum(1 for t in tri if t[3] == d) for d in range(3)]
    ok = (full["ok"] and part["ok"] and full["census"] == expected_full == [6, 8, 4, 1]
          and part["census"] == expected_part == [3, 3, 1] and sum(full["census"]) == 19
          and len(tri) == 7)
    assert gate(9, "A2 census (6,8,4,1); A2 J=2 census (3,3,1)", ok, dt, 60)


def test_10_round_trip():
    def run():
        return [checks.round_trip(t, J, samples=5, seed=0)
                for t, J in (("A2", [1]), ("A2", [2]), ("A3", [2]))]
    results, dt = timed(run)
    ok = all(r["ok"] for r in results) and [r["triples"] for r in results] == [7, 7, 85]
    assert gate(10, "partial-flag cells identified from projected samples", ok, dt, 300)
