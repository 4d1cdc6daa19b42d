"""Seeded random multigraphs, momenta and configurations for property checks."""
from __future__ import annotations

import random
from fractions import Fraction

from .config import Configuration
from .exactalg import RatMatrix, mat_rank
from .graphhom import Multigraph, betti_one, components


def random_multigraph(rng: random.Random, max_edges: int = 10, max_vertices: int = 6,
                      min_betti: int = 0, loop_rate: float = 0.1) -> Multigraph:
    """Random oriented multigraph; parallels arise naturally, loops at ``loop_rate``."""
    while True:
        nv = rng.randint(1, max_vertices)
        ne = rng.randint(1, max_edges)
        edges = []
        for _ in range(ne):
            t = rng.randrange(nv)
            if nv == 1 or rng.random() < loop_rate:
                h = t
            else:
                h = rng.choice([v for v in range(nv) if v != t])
            edges.append((t, h))
        G = Multigraph(nv, tuple(edges))
        if betti_one(G) >= min_betti:
            return G


def random_momentum(rng: random.Random, G: Multigraph, bound: int = 4) -> tuple[Fraction, ...] | None:
    """Conserved nonzero momentum with small integer (sometimes halved) entries.

    None when every component is a single vertex.
    """
    comps = [c for c in components(G) if len(c) > 1]
    if not comps:
        return None
    p = [Fraction(0)] * G.vertex_count
    while not any(p):
        for comp in comps:
            vals = [Fraction(rng.randint(-bound, bound), rng.choice([1, 1, 2])) for _ in comp[1:]]
            p[comp[0]] = -sum(vals, Fraction(0))
            for v, x in zip(comp[1:], vals):
                p[v] = x
    return tuple(p)


def random_flips(rng: random.Random, G: Multigraph) -> list[int]:
    return [e for e in range(G.n_edges) if rng.random() < 0.5]


def random_configuration(rng: random.Random, max_dim: int = 5, max_n: int = 10,
                         min_dim: int = 1, bound: int = 2, density: float = 0.7) -> Configuration:
    """Random full-row-rank integer basis; some zero entries keep it structured."""
    while True:
        n = rng.randint(max(min_dim, 2), max_n)
        dim = rng.randint(min_dim, min(max_dim, n))
        rows = [[rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(n)]
                for _ in range(dim)]
        M = RatMatrix.from_rows(rows, n)
        if mat_rank(M) == dim:
            return Configuration(M)
