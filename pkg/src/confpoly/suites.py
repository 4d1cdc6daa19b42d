"""Seeded certification suites behind ``confpoly verify``.

Every suite draws its trial inputs from ``random.Random(f"{suite}:{seed}:{i}")``
so a run is reproducible trial by trial regardless of worker count.
"""
from __future__ import annotations

import os
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from . import fixtures
from .config import (
    Configuration,
    h1_configuration,
    h1p_configuration,
    phi_config,
    plucker,
    psi_det,
    psi_plucker,
    restrict,
)
from .exactalg import Polynomial, mat_det, mat_kernel
from .formats import emit_configuration, emit_graph
from .graphhom import (
    Multigraph,
    betti_one,
    boundary_matrix,
    circuit_basis,
    complement,
    cut_sets,
    first_graph_polynomial_forests,
    forest_momentum_forms,
    momentum_lift,
    quasi_spanning_forests,
    second_graph_polynomial_cutsets,
    spanning_forests,
)
from .randomgen import random_configuration, random_flips, random_momentum, random_multigraph
from .singular import (
    form_at,
    generic_det_pullback,
    generic_symmetric_det,
    hyperplane_radical_containment,
    multiplicity_at,
    rank_bound_check,
    sample_corank_points,
    sample_zero_points,
    singular_ideal_gens,
    tangent_cone,
    verify_theorem,
)

SUITES = ("matrixtree", "secondpoly", "restriction", "theorem", "cones", "generic")

DESCRIPTIONS = {
    "matrixtree": "spanning-forest sum equals the H_1 determinant; circuit-basis minors are 0 or ±1",
    "secondpoly": "cut-set sum equals the H_1(G,p) determinant for two lifts and flipped orientations",
    "restriction": "each derivative d_F Psi is C * Psi of W ∩ K^(E-F), or 0 with a repeated restriction",
    "theorem": "multiplicity equals corank at sampled degenerate points and on coordinate sections",
    "cones": "Taylor tangent cone equals the restriction-sum tangent cone",
    "generic": "generic symmetric determinant pulls back to Psi_W and has multiplicity = corank",
}


@dataclass
class TrialOutcome:
    index: int
    checks: int = 0
    failures: list = field(default_factory=list)
    counts: Counter = field(default_factory=Counter)
    notes: list = field(default_factory=list)

    def check(self, name: str, ok: bool, **detail) -> bool:
        self.checks += 1
        self.counts[name] += 1
        if not ok:
            self.failures.append({"trial": self.index, "check": name, **detail})
        return ok


@dataclass
class SuiteResult:
    name: str
    seed: int
    trials: int
    checks: int
    failures: list
    counts: Counter
    notes: list

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.name}: {DESCRIPTIONS[self.name]} "
                f"({self.trials} trials, {self.checks} checks, {len(self.failures)} failures)")


def _trial_rng(suite: str, seed: int, index: int) -> random.Random:
    return random.Random(f"{suite}:{seed}:{index}")


def _graph_dump(G: Multigraph) -> str:
    return emit_graph(G)


def _trial_configuration(rng: random.Random, index: int, max_edges: int, min_dim: int = 2,
                         max_dim: int = 5) -> tuple[str, Configuration, str]:
    """Rotate between graph H_1, graph H_1(G,p) and random integer configurations."""
    kind = ("graph", "graph-momentum", "random")[index % 3]
    while True:
        if kind == "random":
            W = random_configuration(rng, max_dim=max_dim, max_n=10, min_dim=min_dim)
            return kind, W, emit_configuration(W)
        G = random_multigraph(rng, max_edges=max_edges, min_betti=min_dim - (kind == "graph-momentum"))
        if kind == "graph":
            if betti_one(G) <= max_dim:
                return kind, h1_configuration(G), _graph_dump(G)
            continue
        p = random_momentum(rng, G)
        if p is None or betti_one(G) + 1 > max_dim:
            continue
        return kind, h1p_configuration(G, p), _graph_dump(G)


def trial_matrixtree(seed: int, index: int, max_edges: int) -> TrialOutcome:
    rng = _trial_rng("matrixtree", seed, index)
    out = TrialOutcome(index)
    G = random_multigraph(rng, max_edges=max_edges, min_betti=1, loop_rate=0.15)
    dump = _graph_dump(G)
    out.check("euler-characteristic", betti_one(G) == mat_kernel(boundary_matrix(G)).rows, graph=dump)
    forests = spanning_forests(G, "filter")
    out.check("enumeration-agrees", forests == spanning_forests(G, "branch"), graph=dump)
    W = h1_configuration(G)
    by_forests = first_graph_polynomial_forests(G)
    by_det = psi_det(W)
    out.check("forest-sum == H1 determinant", by_forests == by_det, graph=dump,
              forests=by_forests.to_text(), det=by_det.to_text())
    out.check("plucker == determinant", psi_plucker(W) == by_det, graph=dump)
    out.check("coefficients are 1", all(c == 1 for _, c in by_det.terms), graph=dump)

    D = boundary_matrix(G)
    for F in forests:
        B = circuit_basis(G, F)
        ok = (D @ B.transpose()).is_zero() and all(x in (-1, 0, 1) for x in B.entries)
        out.check("circuit rows are integral cycles", ok, graph=dump, forest=F)
        cols = complement(G, F)
        out.check("own-complement minor is ±1", abs(mat_det(B.select_columns(cols))) == 1, graph=dump, forest=F)
    # minors of one fixed integral basis: ±1 on forest complements, 0 elsewhere
    h1 = W.dim
    forest_set = set(forests)
    for cols in combinations(range(G.n_edges), h1):
        F = complement(G, cols)
        v = mat_det(W.basis.select_columns(cols))
        if F in forest_set:
            out.check("minor is ±1 on spanning forest", abs(v) == 1, graph=dump, forest=F)
        else:
            out.check("minor is 0 off spanning forests", v == 0, graph=dump, subset=F)
    out.counts["graphs"] += 1
    out.counts["graphs with loops"] += any(t == h for t, h in G.edges)
    out.counts["graphs with parallel edges"] += len({frozenset(e) for e in G.edges if e[0] != e[1]}) < \
        sum(1 for t, h in G.edges if t != h)
    out.counts["spanning forests"] += len(forests)
    return out


def _second_lift(rng: random.Random, G: Multigraph, p) -> tuple:
    forests = spanning_forests(G)
    q = list(momentum_lift(G, p, forest=forests[-1]))
    if betti_one(G):
        for row in circuit_basis(G).tolist():
            c = rng.randint(-2, 2)
            q = [x + c * y for x, y in zip(q, row)]
    return tuple(q)


def trial_secondpoly(seed: int, index: int, max_edges: int) -> TrialOutcome:
    rng = _trial_rng("secondpoly", seed, index)
    out = TrialOutcome(index)
    while True:
        G = random_multigraph(rng, max_edges=max_edges, loop_rate=0.15)
        p = random_momentum(rng, G)
        if p is not None:
            break
    dump = _graph_dump(G)
    D = boundary_matrix(G)
    by_cuts = second_graph_polynomial_cutsets(G, p)
    q1 = momentum_lift(G, p)
    q2 = _second_lift(rng, G, p)
    for name, q in (("lift-1", q1), ("lift-2", q2)):
        out.check(f"{name}: boundary(q) == p", D.apply(q) == p, graph=dump)
        phi = phi_config(G, p, q)
        out.check(f"{name}: cut-set sum == H1(G,p) determinant", phi == by_cuts, graph=dump,
                  momentum=[str(x) for x in p], cuts=by_cuts.to_text(), det=phi.to_text())
        for F in quasi_spanning_forests(G):
            forms = forest_momentum_forms(G, F, p, q)
            out.check("vertex momentum == edge momentum", forms.consistent, graph=dump, forest=F,
                      vertex=[str(x) for x in forms.vertex], edge=[str(x) for x in forms.edge])
    flips = random_flips(rng, G)
    Gf = G.flipped(flips)
    out.check("orientation flip: cut-set sum", second_graph_polynomial_cutsets(Gf, p) == by_cuts,
              graph=dump, flips=flips)
    out.check("orientation flip: determinant", phi_config(Gf, p) == by_cuts, graph=dump, flips=flips)
    out.check("orientation flip: first polynomial",
              first_graph_polynomial_forests(Gf) == first_graph_polynomial_forests(G), graph=dump, flips=flips)

    cuts = set(cut_sets(G))
    W = h1p_configuration(G, p, q1)
    for C, v in plucker(W).items():
        if v == 0:
            continue
        ok = C in cuts and v * v == by_cuts.coefficient(tuple((e, 1) for e in C))
        out.check("plucker^2 == cut momentum", ok, graph=dump, cut=C, value=str(v))
    out.counts["pairs"] += 1
    out.counts["quasi-spanning forests"] += len(cuts)
    return out


def trial_restriction(seed: int, index: int, max_edges: int) -> TrialOutcome:
    rng = _trial_rng("restriction", seed, index)
    out = TrialOutcome(index)
    if index == 0:
        kind, W, dump = "fixture", fixtures.cfg1(), "CFG1"
    elif index == 1:
        kind, W, dump = "graph", h1_configuration(fixtures.banana(4)), "BAN4"
    else:
        kind, W, dump = _trial_configuration(rng, index, max_edges)
    psi = psi_det(W)
    # the pair list for k = dim - 1 contains the lists for every smaller k
    gens = singular_ideal_gens(W, W.dim - 1, psi)
    for pair in gens.pairs:
        out.check("pair classifies", pair.kind != "inconsistent", input=dump, F=pair.F, kind=pair.kind)
        if pair.kind == "proportional":
            out.check("constant is nonzero", pair.constant != 0, input=dump, F=pair.F)
        if kind == "graph" and pair.kind == "proportional":
            out.check("graph constant is 1", pair.constant == 1, input=dump, F=pair.F, C=str(pair.constant))
    if index == 0:
        out.notes.extend(f"CFG1 F={tuple(e + 1 for e in p.F)}: C={p.constant} "
                         f"({p.partial.to_text()} vs {p.restriction.to_text()})" for p in gens.pairs)
    for e in range(W.n):
        R = restrict(W, [f for f in range(W.n) if f != e])
        contained = R is not None and R.same_subspace(W)
        out.check("W ⊆ K^(E-e) iff d_e Psi == 0", contained == psi.partial(e).is_zero(), input=dump, e=e)
    out.counts[f"{kind} configurations"] += 1
    out.counts["pairs"] += len(gens.pairs)
    return out


def trial_theorem(seed: int, index: int, max_edges: int, per_k: int = 10, zero_points: int = 5) -> TrialOutcome:
    rng = _trial_rng("theorem", seed, index)
    out = TrialOutcome(index)
    kind, W, dump = _trial_configuration(rng, index, max_edges)
    psi = psi_det(W)
    for k in range(1, W.dim):
        points = sample_corank_points(W, k, per_k, seed=rng.randrange(2**32))
        out.counts[f"corank>={k} points"] += len(points)
        out.counts["(W,k) pairs"] += 1
        if len(points) < per_k:
            # the rational points of this stratum ran out before the target
            out.counts["(W,k) pairs below target"] += 1
            out.notes.append({"trial": index, "k": k, "found": len(points), "input": dump})
        for a in points:
            rep = verify_theorem(W, a, psi=psi)
            out.check("multiplicity == corank (sampled)", rep.theorem_ok and rep.corank >= k, input=dump,
                      point=[str(x) for x in a], corank=rep.corank, multiplicity=rep.multiplicity)
            out.check("rank bound from restrictions", rank_bound_check(W, a, k) is not False, input=dump,
                      point=[str(x) for x in a])
            for e, down, up in hyperplane_radical_containment(W, a):
                out.check("radicals nest across a hyperplane", down or up, input=dump, e=e,
                          point=[str(x) for x in a])
    for a in sample_zero_points(W, zero_points, seed=rng.randrange(2**32)):
        rep = verify_theorem(W, a, psi=psi)
        out.check("multiplicity == corank (coordinate section)", rep.theorem_ok and rep.psi_value == 0,
                  input=dump, point=[str(x) for x in a], corank=rep.corank, multiplicity=rep.multiplicity)
        out.check("taylor order == multiplicity", psi.multiplicity(a) == rep.multiplicity, input=dump,
                  point=[str(x) for x in a])
        out.counts["coordinate-section points"] += 1
    out.counts["configurations"] += 1
    return out


def trial_cones(seed: int, index: int, max_edges: int, per_k: int = 3, zero_points: int = 4) -> TrialOutcome:
    rng = _trial_rng("cones", seed, index)
    out = TrialOutcome(index)
    kind, W, dump = _trial_configuration(rng, index, max_edges)
    psi = psi_det(W)
    points = []
    for k in range(1, W.dim):
        points.extend(sample_corank_points(W, k, per_k, seed=rng.randrange(2**32)))
    points.extend(sample_zero_points(W, zero_points, seed=rng.randrange(2**32)))
    for a in points:
        if psi(a) != 0:
            continue
        cone = tangent_cone(W, a, psi)
        mult = multiplicity_at(W, a, psi)
        tag = {"input": dump, "point": [str(x) for x in a]}
        out.check("taylor cone == restriction cone", cone.agree, **tag,
                  taylor=cone.projective.to_text(), restriction=cone.projective_by_restriction.to_text())
        out.check("cone degree == multiplicity", cone.order == mult and cone.projective.degree() == mult
                  and cone.projective.is_homogeneous(), **tag)
        out.check("cone passes through the point", cone.projective(a) == 0, **tag)
        out.counts[f"multiplicity {mult} points"] += 1
    return out


def _generic_golden(out: TrialOutcome):
    f, names, slots = generic_symmetric_det(3)
    idx = {n: i for i, n in enumerate(names)}
    nv = len(names)

    def mono(*vs):
        exps = Counter(idx[v] for v in vs)
        return tuple(sorted(exps.items()))

    expected = Polynomial(nv, {mono("B1", "B2", "B3"): 1, mono("B12", "B23", "B13"): 2,
                               mono("B1", "B23", "B23"): -1, mono("B2", "B13", "B13"): -1,
                               mono("B3", "B12", "B12"): -1})
    out.check("generic 3x3 determinant", f == expected, got=f.to_text(names))
    W = fixtures.ban4_chain_configuration()
    g = generic_det_pullback(W)
    out.check("BAN4 chain basis pullback", g.ok, got=g.pullback.to_text())


def trial_generic(seed: int, index: int, max_edges: int, points: int = 4) -> TrialOutcome:
    rng = _trial_rng("generic", seed, index)
    out = TrialOutcome(index)
    if index == 0:
        _generic_golden(out)
    kind, W, dump = _trial_configuration(rng, index, max_edges, min_dim=1)
    psi = psi_det(W)
    g = generic_det_pullback(W, psi)
    out.check("pullback == Psi_W", g.ok, input=dump)
    if W.dim >= 2:
        k = rng.randint(1, W.dim - 1)
        for a in sample_corank_points(W, k, points, seed=rng.randrange(2**32)):
            fa = form_at(W, a)
            b = [fa.matrix[i, j] for i, j in
                 [(i, i) for i in range(W.dim)] + list(combinations(range(W.dim), 2))]
            out.check("generic multiplicity == corank", g.generic.multiplicity(b) == fa.corank, input=dump,
                      point=[str(x) for x in a])
    out.counts[f"dim {W.dim}"] += 1
    return out


TRIALS = {
    "matrixtree": trial_matrixtree,
    "secondpoly": trial_secondpoly,
    "restriction": trial_restriction,
    "theorem": trial_theorem,
    "cones": trial_cones,
    "generic": trial_generic,
}


def _run_one(args):
    suite, seed, index, max_edges = args
    return TRIALS[suite](seed, index, max_edges)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("CONFPOLY_WORKERS", "1")))
    except ValueError:
        return 1


def run_suite(suite: str, seed: int = 7, trials: int = 50, max_edges: int = 8,
              workers: int | None = None) -> SuiteResult:
    if suite not in TRIALS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    workers = worker_count() if workers is None else workers
    jobs = [(suite, seed, i, max_edges) for i in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_one, jobs))
    else:
        outcomes = [_run_one(j) for j in jobs]
    counts = Counter()
    failures, notes = [], []
    for o in outcomes:
        counts.update(o.counts)
        failures.extend(o.failures)
        notes.extend(o.notes)
    return SuiteResult(suite, seed, trials, sum(o.checks for o in outcomes), failures, counts, notes)
