"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s`` or as a script with
``python tests/test_acceptance.py``. Randomized parts use the verification
suites at seed 7, 50 trials, graphs of at most 10 edges.
"""
import random
import sys
from functools import lru_cache
from itertools import combinations

import pytest

from confpoly import fixtures
from confpoly.config import h1_configuration, plucker, psi_det, restrict, symbolic_form
from confpoly.exactalg import Polynomial
from confpoly.graphhom import first_graph_polynomial_forests
from confpoly.singular import (
    form_at,
    generic_det_pullback,
    generic_symmetric_det,
    multiplicity_at,
    tangent_cone,
)
from confpoly.suites import run_suite

SEED, TRIALS, MAX_EDGES = 7, 50, 10


@lru_cache(maxsize=None)
def suite(name):
    return run_suite(name, seed=SEED, trials=TRIALS, max_edges=MAX_EDGES)


def report(number, title, checks, detail=""):
    """Print one line for the criterion and return whether every check held."""
    failed = [name for name, ok in checks if not ok]
    status = "PASS" if not failed else "FAIL"
    line = f"[{status}] criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    if failed:
        line += " -- failed: " + "; ".join(failed)
    sys.__stdout__.write(line + "\n")
    sys.__stdout__.flush()
    return not failed


def criterion_1():
    W, V = fixtures.cfg1(), fixtures.cfg1_rescaled()
    psi = psi_det(W)
    R = restrict(W, [1, 2])
    checks = [
        ("Psi text", psi.to_text() == "A1*A2 + 4*A1*A3 + 4*A2*A3"),
        ("Plücker (-1, 2, 2)", plucker(W) == {(0, 1): -1, (0, 2): 2, (1, 2): 2}),
        ("rescaled basis gives 9 Psi", psi_det(V) == psi.scale(9)),
        ("d_A1 Psi = A2 + 4 A3", psi.partial(0).to_text() == "A2 + 4*A3"),
        ("restriction to {e2,e3}", R is not None and psi_det(R) == psi.partial(0)),
    ]
    return report(1, "CFG1 golden values", checks)


def criterion_2():
    W = fixtures.ban4_chain_configuration()
    G = fixtures.banana(4, alternating=True)
    A = [Polynomial.variable(4, i) for i in range(4)]
    zero = Polynomial.zero(4)
    displayed = [[A[0] + A[1], A[1], zero], [A[1], A[1] + A[2], A[2]], [zero, A[2], A[2] + A[3]]]
    psi = psi_det(W)
    a = (1, 0, 0, 0)
    fa = form_at(W, a)
    cone = tangent_cone(W, a, psi)
    f, names, _ = generic_symmetric_det(3)
    pull = generic_det_pullback(W, psi)
    checks = [
        ("chain basis spans H_1 of the banana", W.same_subspace(h1_configuration(G))),
        ("symbolic form matches the displayed matrix", symbolic_form(W) == displayed),
        ("Psi equals the forest sum", psi == first_graph_polynomial_forests(G)),
        ("rank 1, corank 2", (fa.rank, fa.corank) == (1, 2)),
        ("multiplicity 2", multiplicity_at(W, a, psi) == 2),
        ("tangent cone A2A3 + A2A4 + A3A4", cone.projective.to_text() == "A2*A3 + A2*A4 + A3*A4" and cone.agree),
        ("generic f(B)", f.to_text(names) == "B1*B2*B3 - B1*B23^2 - B2*B13^2 - B3*B12^2 + 2*B12*B13*B23"),
        ("pullback equals Psi", pull.ok and pull.pullback == psi),
    ]
    return report(2, "BAN4 golden values", checks)


def criterion_3():
    r = suite("matrixtree")
    c = r.counts
    checks = [
        ("at least 50 graphs", c["graphs"] >= 50),
        ("loops present", c["graphs with loops"] > 0),
        ("parallel edges present", c["graphs with parallel edges"] > 0),
        ("forest sum == determinant on every graph", c["forest-sum == H1 determinant"] == c["graphs"]),
        ("no failures", not r.failures),
    ]
    return report(3, "forest enumeration equals the circuit-basis determinant", checks,
                  f"{c['graphs']} graphs, {c['graphs with loops']} with loops, "
                  f"{c['graphs with parallel edges']} with parallel edges")


def criterion_4():
    r = suite("secondpoly")
    c = r.counts
    checks = [
        ("at least 50 pairs", c["pairs"] >= 50),
        ("two lifts each", c["lift-1: cut-set sum == H1(G,p) determinant"] == c["pairs"]
         == c["lift-2: cut-set sum == H1(G,p) determinant"]),
        ("orientation flips", c["orientation flip: cut-set sum"] == c["pairs"]),
        ("no failures", not r.failures),
    ]
    return report(4, "cut-set sum equals the H_1(G,p) determinant for two lifts and flips", checks,
                  f"{c['pairs']} pairs")


def criterion_5():
    r = suite("matrixtree")
    c = r.counts
    names = ("minor is ±1 on spanning forest", "minor is 0 off spanning forests", "own-complement minor is ±1")
    bad = [f for f in r.failures if f["check"] in names]
    checks = [
        ("every spanning forest checked", c["minor is ±1 on spanning forest"] == c["spanning forests"]),
        ("non-forest subsets checked", c["minor is 0 off spanning forests"] > 0),
        ("no failures", not bad),
    ]
    return report(5, "circuit-basis minors are ±1 on forests and 0 elsewhere", checks,
                  f"{c['spanning forests']} forests, {c['minor is 0 off spanning forests']} other subsets")


def criterion_6():
    r = suite("secondpoly")
    c = r.counts
    bad = [f for f in r.failures if f["check"] == "vertex momentum == edge momentum"]
    checks = [
        ("quasi-spanning forests visited", c["vertex momentum == edge momentum"] > 0),
        ("no failures", not bad),
    ]
    return report(6, "vertex and edge momenta agree on every quasi-spanning forest", checks,
                  f"{c['vertex momentum == edge momentum']} forest/lift checks")


def criterion_7():
    r = suite("restriction")
    c = r.counts
    cfg1 = [n for n in r.notes if n.startswith("CFG1 F=(1,)")]
    checks = [
        ("every pair classifies", c["pair classifies"] == c["pairs"]),
        ("graph constants are 1", not [f for f in r.failures if f["check"] == "graph constant is 1"]),
        ("CFG1 F={e1} has C=1", bool(cfg1) and "C=1 " in cfg1[0]),
        ("no failures", not r.failures),
    ]
    return report(7, "derivatives match restrictions", checks,
                  f"{c['pairs']} pairs, {c['graph constant is 1']} graph pairs with C=1")


def criterion_8():
    r = suite("theorem")
    c = r.counts
    full = c["(W,k) pairs"] - c["(W,k) pairs below target"]
    checks = [
        ("every sampled point has multiplicity == corank",
         not [f for f in r.failures if "multiplicity == corank" in f["check"]]),
        ("at least 100 coordinate-section points", c["coordinate-section points"] >= 100),
        ("no failures", not r.failures),
    ]
    # Some strata (for example the four nodes of BAN4 at corank 2) hold fewer than
    # ten rational points; there every distinct point found is certified instead.
    return report(8, "multiplicity equals corank", checks,
                  f"{c['configurations']} configurations; {full} of {c['(W,k) pairs']} (W,k) strata gave 10 "
                  f"distinct points, {c['(W,k) pairs below target']} ran out of new points earlier and were "
                  f"certified on every point found; {c['coordinate-section points']} coordinate-section points")


def criterion_9():
    rng = random.Random("trivial")
    checks = []
    points = 0
    for n in range(1, 9):
        W = fixtures.trivial(n)
        psi = psi_det(W)
        checks.append((f"Psi of TRIV({n}) is the product", psi == Polynomial.product_of(n, range(n))))
        for j in range(n):
            for zeros in list(combinations(range(n), j))[:6]:
                a = [0 if e in zeros else rng.choice([-3, -2, -1, 1, 2, 3]) for e in range(n)]
                points += 1
                ok = multiplicity_at(W, a, psi) == j == form_at(W, a).corank
                checks.append((f"TRIV({n}) at {a}", ok))
    return report(9, "trivial configurations", checks, f"n = 1..8, {points} points")


def criterion_10():
    r = suite("cones")
    c = r.counts
    checks = [
        ("singular points tested", c["taylor cone == restriction cone"] > 0),
        ("every cone pair agrees", not [f for f in r.failures if f["check"] == "taylor cone == restriction cone"]),
        ("no failures", not r.failures),
    ]
    return report(10, "Taylor and restriction tangent cones agree", checks,
                  f"{c['taylor cone == restriction cone']} points")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_acceptance(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [criterion() for criterion in CRITERIA]
    print(f"{sum(results)} of {len(results)} criteria pass")
    sys.exit(0 if all(results) else 1)
