from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from confpoly import fixtures
from confpoly.errors import EdgeCapError, MomentumError
from confpoly.exactalg import Polynomial, mat_det, mat_kernel, mat_rank
from confpoly.graphhom import (
    Multigraph,
    betti_one,
    boundary_matrix,
    circuit_basis,
    complement,
    components,
    cut_sets,
    first_graph_polynomial_forests,
    forest_momentum,
    forest_momentum_forms,
    is_forest,
    is_spanning_forest,
    momentum_lift,
    quasi_spanning_forests,
    second_graph_polynomial_cutsets,
    spanning_forests,
)
from confpoly.randomgen import random_momentum
from strategies import multigraphs

BAN2 = fixtures.banana(2)
BAN4 = fixtures.banana(4)
PATH = fixtures.path3()


def brute_force_forests(G):
    r = G.vertex_count - len(components(G))
    return [F for F in combinations(range(G.n_edges), r) if is_spanning_forest(G, F)]


def momenta(G):
    """Strategy for conserved momenta on G (possibly zero)."""
    @st.composite
    def build(draw):
        p = [Fraction(0)] * G.vertex_count
        for comp in components(G):
            vals = [Fraction(draw(st.integers(-4, 4)), draw(st.sampled_from([1, 2]))) for _ in comp[1:]]
            p[comp[0]] = -sum(vals, Fraction(0))
            for v, x in zip(comp[1:], vals):
                p[v] = x
        return tuple(p)
    return build()


@st.composite
def graphs_with_momentum(draw, max_edges=7):
    G = draw(multigraphs(max_edges=max_edges))
    return G, draw(momenta(G))


def test_components_examples():
    assert components(BAN4) == [(0, 1)]
    assert len(components(Multigraph(4, ((0, 1), (2, 3))))) == 2
    assert components(Multigraph(3, ((0, 1),)))[-1] == (2,)


def test_boundary_examples():
    assert boundary_matrix(Multigraph(2, ((0, 1),))).column(0) == (-1, 1)
    assert not any(boundary_matrix(fixtures.single_loop()).column(0))
    B = boundary_matrix(BAN2)
    assert B.column(0) == B.column(1) == (-1, 1)
    K = mat_kernel(B)
    assert K.rows == 1 and K.row(0)[0] == -K.row(0)[1]


def test_spanning_forest_examples():
    assert spanning_forests(BAN4) == [(0,), (1,), (2,), (3,)]
    assert spanning_forests(fixtures.triangle()) == [(0, 1), (0, 2), (1, 2)]
    assert spanning_forests(fixtures.single_loop()) == [()]


def test_quasi_spanning_forest_examples():
    assert quasi_spanning_forests(BAN2) == [()]
    assert cut_sets(BAN2) == [(0, 1)]
    # two vertices: the only quasi-spanning forest is empty, so all four edges form the cut
    assert cut_sets(BAN4) == [(0, 1, 2, 3)]
    assert quasi_spanning_forests(fixtures.single_loop()) == []


def test_circuit_basis_examples():
    C = circuit_basis(BAN4, (0,))
    assert C.rows == 3
    B = boundary_matrix(BAN4)
    for i in range(3):
        assert not any(B.apply(C.row(i)))
    row = circuit_basis(BAN2, (0,)).row(0)
    assert abs(row[0]) == abs(row[1]) == 1 and row[0] == -row[1]
    assert circuit_basis(PATH).rows == 0


def test_circuit_basis_rejects_non_forest():
    with pytest.raises(ValueError):
        circuit_basis(BAN4, (0, 1))


def test_loop_is_its_own_cycle():
    G = Multigraph(2, ((0, 1), (1, 1)))
    assert circuit_basis(G).tolist() == [[0, 1]]


def test_first_polynomial_examples():
    A = [Polynomial.variable(4, i) for i in range(4)]
    assert first_graph_polynomial_forests(BAN4) == (A[0] * A[1] * A[2] + A[0] * A[1] * A[3]
                                                    + A[0] * A[2] * A[3] + A[1] * A[2] * A[3])
    assert first_graph_polynomial_forests(fixtures.single_loop()).to_text() == "A1"
    assert first_graph_polynomial_forests(BAN2).to_text() == "A1 + A2"


def test_momentum_lift_examples():
    assert momentum_lift(BAN2, (0, 0)) == (0, 0)
    assert momentum_lift(BAN2, (1, -1)) == (-1, 0)
    q = momentum_lift(PATH, (1, 0, -1))
    assert boundary_matrix(PATH).apply(q) == (1, 0, -1)


def test_momentum_lift_rejects_violation():
    with pytest.raises(MomentumError):
        momentum_lift(BAN2, (1, 0))


def test_forest_momentum_examples():
    assert forest_momentum(BAN2, (), (1, -1)) == 1
    assert forest_momentum(BAN4, (), (0, 0)) == 0
    assert forest_momentum(PATH, (1,), (3, 0, -3)) == 9


def test_second_polynomial_examples():
    assert second_graph_polynomial_cutsets(BAN2, (1, -1)).to_text() == "A1*A2"
    assert second_graph_polynomial_cutsets(BAN2, (2, -2)).to_text() == "4*A1*A2"
    assert second_graph_polynomial_cutsets(PATH, (1, 0, -1)).to_text() == "A1 + A2"


def test_second_polynomial_rejects_zero_momentum():
    with pytest.raises(MomentumError):
        second_graph_polynomial_cutsets(BAN2, (0, 0))


def test_edge_cap():
    with pytest.raises(EdgeCapError):
        Multigraph(2, ((0, 1),) * 5, max_edges=4)


@given(multigraphs(max_edges=10))
def test_euler_relation(G):
    h1 = betti_one(G)
    assert h1 == G.n_edges - G.vertex_count + len(components(G))
    assert h1 == mat_kernel(boundary_matrix(G)).rows


@given(multigraphs(max_edges=9))
def test_forest_enumeration_strategies_agree(G):
    forests = spanning_forests(G)
    assert forests == brute_force_forests(G)
    assert spanning_forests(G, method="branch") == forests
    assert forests == sorted(forests)


@given(multigraphs(max_edges=8))
def test_circuit_minors_detect_forests(G):
    h1 = betti_one(G)
    r = G.n_edges - h1
    for F in spanning_forests(G):
        C = circuit_basis(G, F)
        assert mat_rank(C) == h1
        assert not any(any(boundary_matrix(G).apply(C.row(i))) for i in range(h1))
        assert all(x in (-1, 0, 1) for row in C.tolist() for x in row)
    if h1 == 0:
        return
    C = circuit_basis(G)
    for T in combinations(range(G.n_edges), r):
        minor = mat_det(C.select_columns(complement(G, T)))
        assert abs(minor) == (1 if is_spanning_forest(G, T) else 0)


@given(graphs_with_momentum())
def test_lift_has_required_boundary(Gp):
    G, p = Gp
    q = momentum_lift(G, p)
    assert boundary_matrix(G).apply(q) == p
    assert is_forest(G, [e for e, x in enumerate(q) if x])


@given(graphs_with_momentum())
def test_vertex_and_edge_momenta_agree(Gp):
    G, p = Gp
    q = momentum_lift(G, p)
    for F in quasi_spanning_forests(G):
        forms = forest_momentum_forms(G, F, p, q)
        assert forms.vertex == forms.edge
        assert forms.vertex[0] == -forms.vertex[1]


@given(graphs_with_momentum(), st.randoms(use_true_random=False))
def test_orientation_invariance(Gp, rnd):
    G, p = Gp
    flips = [e for e in range(G.n_edges) if rnd.random() < 0.5]
    H = G.flipped(flips)
    assert first_graph_polynomial_forests(H) == first_graph_polynomial_forests(G)
    if any(p):
        assert second_graph_polynomial_cutsets(H, p) == second_graph_polynomial_cutsets(G, p)


@given(multigraphs(max_edges=8), st.randoms(use_true_random=False))
def test_cut_sets_are_complements(G, rnd):
    qsf = quasi_spanning_forests(G)
    assert sorted(complement(G, F) for F in qsf) == cut_sets(G)
    assert len(set(qsf)) == len(qsf)
    p = random_momentum(rnd, G)
    if p is not None:
        assert second_graph_polynomial_cutsets(G, p).is_homogeneous()
