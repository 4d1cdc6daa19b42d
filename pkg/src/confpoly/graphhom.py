"""Oriented multigraphs, their forests and cut sets, homology, and momenta.

Edges are ``(tail, head)`` pairs; edge ``i`` carries the variable ``A<i+1>``.
Edge subsets are sorted tuples of edge indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import CheckFailure, EdgeCapError, MomentumError
from .exactalg import Polynomial, RatMatrix, rat

EdgeSubset = tuple

MAX_EDGES = 64
# above this many edges enumeration switches from subset filtering to branching
FILTER_LIMIT = 20


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[max(rx, ry)] = min(rx, ry)
        return True


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    edges: tuple
    vertex_names: tuple = field(default=None, compare=False)
    edge_names: tuple = field(default=None, compare=False)
    max_edges: int = field(default=MAX_EDGES, compare=False, repr=False)

    def __post_init__(self):
        edges = tuple((int(t), int(h)) for t, h in self.edges)
        object.__setattr__(self, "edges", edges)
        if len(edges) > self.max_edges:
            raise EdgeCapError(f"{len(edges)} edges exceeds the cap of {self.max_edges}")
        for t, h in edges:
            if not (0 <= t < self.vertex_count and 0 <= h < self.vertex_count):
                raise ValueError(f"edge ({t}, {h}) references a missing vertex")
        if self.vertex_names is None:
            object.__setattr__(self, "vertex_names", tuple(f"v{i}" for i in range(self.vertex_count)))
        if self.edge_names is None:
            object.__setattr__(self, "edge_names", tuple(f"e{i + 1}" for i in range(len(edges))))
        if len(self.vertex_names) != self.vertex_count or len(self.edge_names) != len(edges):
            raise ValueError("name lists do not match the graph size")

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def tail(self, e: int) -> int:
        return self.edges[e][0]

    def head(self, e: int) -> int:
        return self.edges[e][1]

    def is_loop(self, e: int) -> bool:
        return self.edges[e][0] == self.edges[e][1]

    def flipped(self, which: Sequence[int]) -> "Multigraph":
        """Same graph with the orientation of the listed edges reversed."""
        which = set(which)
        edges = tuple((h, t) if i in which else (t, h) for i, (t, h) in enumerate(self.edges))
        return Multigraph(self.vertex_count, edges, self.vertex_names, self.edge_names, self.max_edges)


def components(G: Multigraph) -> list[tuple[int, ...]]:
    """Connected components as sorted vertex tuples, ordered by smallest vertex."""
    uf = _UnionFind(G.vertex_count)
    for t, h in G.edges:
        uf.union(t, h)
    groups: dict[int, list[int]] = {}
    for v in range(G.vertex_count):
        groups.setdefault(uf.find(v), []).append(v)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def betti_one(G: Multigraph) -> int:
    return G.n_edges - G.vertex_count + len(components(G))


def boundary_matrix(G: Multigraph) -> RatMatrix:
    """|V| x |E| matrix whose column e is head(e) - tail(e)."""
    m = [[0] * G.n_edges for _ in range(G.vertex_count)]
    for e, (t, h) in enumerate(G.edges):
        if t != h:
            m[h][e] += 1
            m[t][e] -= 1
    return RatMatrix.from_rows(m, G.n_edges)


def _forest_rank(G: Multigraph) -> int:
    return G.vertex_count - len(components(G))


def is_forest(G: Multigraph, F: Sequence[int]) -> bool:
    uf = _UnionFind(G.vertex_count)
    return all(uf.union(*G.edges[e]) for e in F)


def is_spanning_forest(G: Multigraph, F: Sequence[int]) -> bool:
    return len(set(F)) == len(F) == _forest_rank(G) and is_forest(G, F)


def is_quasi_spanning_forest(G: Multigraph, F: Sequence[int]) -> bool:
    # acyclic sets of size rank-1 are exactly the spanning forests minus one edge
    r = _forest_rank(G)
    return r >= 1 and len(set(F)) == len(F) == r - 1 and is_forest(G, F)


def _forests_by_filter(G: Multigraph, r: int) -> list[EdgeSubset]:
    candidates = [e for e in range(G.n_edges) if not G.is_loop(e)]
    return [F for F in combinations(candidates, r) if is_forest(G, F)]


def _forests_by_branching(G: Multigraph, r: int) -> list[EdgeSubset]:
    # include/exclude recursion (deletion-contraction) with an acyclicity prune
    out = []
    n = G.n_edges

    def walk(e, chosen, parent):
        if len(chosen) == r:
            out.append(tuple(chosen))
            return
        if n - e < r - len(chosen):
            return
        t, h = G.edges[e]

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        rt, rh = find(t), find(h)
        if rt != rh:
            parent[rh] = rt
            chosen.append(e)
            walk(e + 1, chosen, parent)
            chosen.pop()
            parent[rh] = rh
        walk(e + 1, chosen, parent)

    walk(0, [], list(range(G.vertex_count)))
    return sorted(out)


def spanning_forests(G: Multigraph, method: str = "auto") -> list[EdgeSubset]:
    """All spanning forests, in lexicographic order of their sorted edge tuples."""
    r = _forest_rank(G)
    if method == "auto":
        method = "filter" if G.n_edges <= FILTER_LIMIT else "branch"
    if method == "filter":
        return _forests_by_filter(G, r)
    if method == "branch":
        return _forests_by_branching(G, r)
    raise ValueError(f"unknown enumeration method {method!r}")


def first_spanning_forest(G: Multigraph) -> EdgeSubset:
    """Lexicographically first spanning forest (greedy in edge order)."""
    uf = _UnionFind(G.vertex_count)
    return tuple(e for e, (t, h) in enumerate(G.edges) if uf.union(t, h))


def quasi_spanning_forests(G: Multigraph) -> list[EdgeSubset]:
    seen = set()
    for F in spanning_forests(G):
        for i in range(len(F)):
            seen.add(F[:i] + F[i + 1:])
    return sorted(seen)


def cut_sets(G: Multigraph) -> list[EdgeSubset]:
    return sorted(complement(G, F) for F in quasi_spanning_forests(G))


def complement(G: Multigraph, F: Sequence[int]) -> EdgeSubset:
    s = set(F)
    return tuple(e for e in range(G.n_edges) if e not in s)


def _forest_adjacency(G: Multigraph, F: Sequence[int]) -> dict[int, list[tuple[int, int]]]:
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(G.vertex_count)}
    for e in F:
        t, h = G.edges[e]
        adj[t].append((e, h))
        adj[h].append((e, t))
    return adj


def _forest_path(G: Multigraph, adj, start: int, goal: int) -> dict[int, int]:
    """Signed chain along the forest path start -> goal (boundary goal - start)."""
    prev = {start: None}
    stack = [start]
    while stack:
        v = stack.pop()
        if v == goal:
            break
        for e, w in adj[v]:
            if w not in prev:
                prev[w] = (e, v)
                stack.append(w)
    if goal not in prev:
        raise ValueError("endpoints are not joined by the forest")
    chain: dict[int, int] = {}
    v = goal
    while prev[v] is not None:
        e, u = prev[v]
        # traversing e from u to v: +1 when e is oriented u -> v
        chain[e] = 1 if G.edges[e] == (u, v) else -1
        v = u
    return chain


def circuit_basis(G: Multigraph, F: Sequence[int] | None = None) -> RatMatrix:
    """Fundamental cycles of the spanning forest F, one row per edge outside F.

    The row for edge e has +1 on e and follows the forest path from head(e)
    back to tail(e), so its boundary is zero and all entries lie in {-1, 0, 1}.
    """
    if F is None:
        F = first_spanning_forest(G)
    F = tuple(sorted(F))
    if not is_spanning_forest(G, F):
        raise ValueError(f"{F} is not a spanning forest")
    adj = _forest_adjacency(G, F)
    in_forest = set(F)
    rows = []
    for e in range(G.n_edges):
        if e in in_forest:
            continue
        row = [0] * G.n_edges
        row[e] = 1
        t, h = G.edges[e]
        if t != h:
            for f, s in _forest_path(G, adj, h, t).items():
                row[f] = s
        rows.append(row)
    return RatMatrix.from_rows(rows, G.n_edges)


def first_graph_polynomial_forests(G: Multigraph) -> Polynomial:
    n = G.n_edges
    terms = {}
    for F in spanning_forests(G):
        mono = tuple((e, 1) for e in complement(G, F))
        terms[mono] = terms.get(mono, 0) + 1
    return Polynomial(n, terms)


# momenta

def as_momentum(G: Multigraph, p: Sequence) -> tuple[Fraction, ...]:
    if len(p) != G.vertex_count:
        raise MomentumError(f"momentum has {len(p)} entries for {G.vertex_count} vertices")
    return tuple(rat(x) for x in p)


def check_conserved(G: Multigraph, p: Sequence) -> tuple[Fraction, ...]:
    p = as_momentum(G, p)
    for comp in components(G):
        total = sum((p[v] for v in comp), Fraction(0))
        if total != 0:
            names = ", ".join(G.vertex_names[v] for v in comp)
            raise MomentumError(f"momentum sums to {total} on component {{{names}}}")
    return p


def momentum_lift(G: Multigraph, p: Sequence, forest: Sequence[int] | None = None) -> tuple[Fraction, ...]:
    """An edge chain q with boundary q == p, supported on a spanning forest.

    Each forest edge carries the total momentum of the subtree it cuts off;
    the root of every tree is its smallest vertex.
    """
    p = check_conserved(G, p)
    F = tuple(sorted(forest)) if forest is not None else first_spanning_forest(G)
    if not is_spanning_forest(G, F):
        raise ValueError(f"{F} is not a spanning forest")
    adj = _forest_adjacency(G, F)
    q = [Fraction(0)] * G.n_edges
    seen = set()
    for root in range(G.vertex_count):
        if root in seen:
            continue
        order = []
        parent_edge = {root: None}
        stack = [root]
        seen.add(root)
        while stack:
            v = stack.pop()
            order.append(v)
            for e, w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    parent_edge[w] = (e, v)
                    stack.append(w)
        subtotal = {v: p[v] for v in order}
        for v in reversed(order):
            if parent_edge[v] is None:
                continue
            e, u = parent_edge[v]
            q[e] = subtotal[v] if G.edges[e] == (u, v) else -subtotal[v]
            subtotal[u] += subtotal[v]
    return tuple(q)


@dataclass(frozen=True)
class MomentumForms:
    """Both evaluations of the component momentum of a quasi-spanning forest.

    ``vertex[i]`` is the sum of p over the vertices of the i-th stranded tree;
    ``edge[i]`` is the signed sum of q over cut edges entering it.
    """
    trees: tuple
    vertex: tuple
    edge: tuple

    @property
    def consistent(self) -> bool:
        return self.vertex == self.edge and self.vertex[0] == -self.vertex[1]


def stranded_trees(G: Multigraph, F: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The two trees of a quasi-spanning forest that do not span a component."""
    if not is_quasi_spanning_forest(G, F):
        raise ValueError(f"{tuple(F)} is not a quasi-spanning forest")
    sub = Multigraph(G.vertex_count, tuple(G.edges[e] for e in F), G.vertex_names, None, G.max_edges)
    whole = set(components(G))
    split = [c for c in components(sub) if c not in whole]
    assert len(split) == 2
    return split[0], split[1]


def forest_momentum_forms(G: Multigraph, F: Sequence[int], p: Sequence, q: Sequence) -> MomentumForms:
    p = as_momentum(G, p)
    q = [rat(x) for x in q]
    trees = stranded_trees(G, F)
    C = complement(G, F)
    vertex = tuple(sum((p[v] for v in T), Fraction(0)) for T in trees)
    edge = []
    for T in trees:
        members = set(T)
        m = Fraction(0)
        for e in C:
            t, h = G.edges[e]
            if h in members:
                m += q[e]
            if t in members:
                m -= q[e]
        edge.append(m)
    return MomentumForms(trees, vertex, tuple(edge))


def forest_momentum(G: Multigraph, F: Sequence[int], p: Sequence, q: Sequence | None = None) -> Fraction:
    """s_F(p): squared momentum of a stranded tree, cross-checked against the edge form."""
    if q is None:
        q = momentum_lift(G, p)
    forms = forest_momentum_forms(G, F, p, q)
    if not forms.consistent:
        raise CheckFailure(f"vertex and edge momenta disagree for forest {tuple(F)}: {forms}")
    return forms.vertex[0] ** 2


def _vertex_form_momentum(G: Multigraph, F, p) -> Fraction:
    T1, _ = stranded_trees(G, F)
    return sum((p[v] for v in T1), Fraction(0)) ** 2


def second_graph_polynomial_cutsets(G: Multigraph, p: Sequence) -> Polynomial:
    p = check_conserved(G, p)
    if not any(p):
        raise MomentumError("the second graph polynomial needs a nonzero momentum")
    terms = {}
    for F in quasi_spanning_forests(G):
        s = _vertex_form_momentum(G, F, p)
        if s:
            terms[tuple((e, 1) for e in complement(G, F))] = s
    return Polynomial(G.n_edges, terms)
