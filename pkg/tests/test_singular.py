from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import assume, given, strategies as st

from confpoly import fixtures
from confpoly.config import Configuration, h1_configuration, psi_det
from confpoly.errors import SamplingExhaustedError, SizeError
from confpoly.exactalg import Polynomial, mat_rank, poly_proportional
from confpoly.singular import (
    form_at,
    generic_det_pullback,
    generic_symmetric_det,
    has_coordinate_zeros,
    hyperplane_radical_containment,
    multiplicity_at,
    partials_at,
    rank_bound_check,
    sample_corank_points,
    sample_zero_points,
    singular_ideal_gens,
    tangent_cone,
    verify_theorem,
)
from strategies import configurations

BAN4 = h1_configuration(fixtures.banana(4))
CFG1 = fixtures.cfg1()


def test_form_at_examples():
    fa = form_at(BAN4, (1, 0, 0, 0))
    assert (fa.rank, fa.corank) == (1, 2)
    fa = form_at(fixtures.trivial(3), (1, 1, 1))
    assert fa.corank == 0 and fa.matrix.tolist() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    fa = form_at(CFG1, (0, 0, 1))
    assert fa.matrix.tolist() == [[0, 0], [0, 4]] and fa.rank == 1
    rad = fa.radical_vectors(CFG1)
    assert rad.rows == 1 and mat_rank(rad) == 1 and rad.row(0)[2] == 0 and rad.row(0)[0] == rad.row(0)[1]


def test_multiplicity_examples():
    assert multiplicity_at(BAN4, (1, 0, 0, 0)) == 2
    assert multiplicity_at(CFG1, (1, 1, 1)) == 0
    assert multiplicity_at(fixtures.trivial(3), (0, 0, 1)) == 2


def test_multiplicity_is_scale_invariant():
    assert multiplicity_at(BAN4, (Fraction(-7, 3), 0, 0, 0)) == 2


def test_multiplicity_rejects_zero_point():
    with pytest.raises(ValueError):
        multiplicity_at(CFG1, (0, 0, 0))


def test_partials_at_matches_direct_differentiation():
    psi = psi_det(BAN4)
    a = (2, 0, -1, 0)
    values = partials_at(psi, a, 3)
    for size in range(4):
        for F in combinations(range(4), size):
            assert values.get(F, 0) == psi.partial(F)(a)


@pytest.mark.parametrize("W, point, corank", [
    (BAN4, (1, 0, 0, 0), 2),
    (CFG1, (1, 1, 1), 0),
    (fixtures.trivial(4), (0, 0, 1, 1), 2),
])
def test_verify_theorem_examples(W, point, corank):
    rep = verify_theorem(W, point)
    assert rep.corank == rep.multiplicity == corank and rep.theorem_ok


def test_report_serialises_flat():
    rep = verify_theorem(BAN4, (1, 0, 0, 0), with_cone=True).to_dict()
    assert rep["point"] == ["1", "0", "0", "0"] and rep["chart"] == 1
    assert rep["tangent_cone"] == "A2*A3 + A2*A4 + A3*A4" and rep["cones_agree"] is True


def test_trivial_configuration_samples_have_zeros():
    for n in (3, 4, 5):
        W = fixtures.trivial(n)
        for k in range(1, n):
            for a in sample_corank_points(W, k, 5, seed=k):
                assert sum(1 for x in a if x == 0) >= k


def test_ban4_corank_two_samples():
    pts = sample_corank_points(BAN4, 2, 10, seed=3)
    assert all(form_at(BAN4, a).corank >= 2 for a in pts)
    # the locus is the four coordinate points
    assert (1, 0, 0, 0) in pts and len(pts) == 4


def test_sampler_is_deterministic_and_checks_range():
    assert sample_corank_points(BAN4, 1, 5, seed=11) == sample_corank_points(BAN4, 1, 5, seed=11)
    with pytest.raises(ValueError):
        sample_corank_points(BAN4, 3, 5, seed=1)


def test_ideal_gens_cfg1():
    gens = singular_ideal_gens(CFG1, 1)
    pair = next(p for p in gens.pairs if p.F == (0,))
    assert pair.kind == "proportional" and pair.constant == 1
    assert pair.partial.to_text() == pair.restriction.to_text() == "A2 + 4*A3"
    assert gens.consistent


def test_ideal_gens_unused_coordinate():
    W = Configuration.from_rows([[1, 1, 0, 0], [0, -1, 2, 0]])
    pair = next(p for p in singular_ideal_gens(W, 1).pairs if p.F == (3,))
    assert pair.partial.is_zero() and pair.kind == "trivial" and pair.witness == ()


def test_ideal_gens_ban4():
    gens = singular_ideal_gens(BAN4, 1)
    singles = [p for p in gens.pairs if len(p.F) == 1]
    assert len(singles) == 4
    assert all(p.kind == "proportional" and p.constant == 1 for p in singles)


def test_ideal_gens_range():
    with pytest.raises(ValueError):
        singular_ideal_gens(CFG1, 2)


def test_tangent_cone_examples():
    cone = tangent_cone(BAN4, (1, 0, 0, 0))
    assert cone.projective.to_text() == "A2*A3 + A2*A4 + A3*A4" and cone.agree
    cone = tangent_cone(fixtures.trivial(3), (0, 0, 1))
    assert cone.chart == 2 and cone.projective.to_text() == "A1*A2" and cone.agree


def test_tangent_cone_at_smooth_point_is_tangent_hyperplane():
    a = (0, 0, 1)
    psi = psi_det(CFG1)
    cone = tangent_cone(CFG1, a)
    assert cone.order == 1 and cone.agree
    n = CFG1.n
    plane = sum((Polynomial.variable(n, e).scale(psi.partial(e)(a)) for e in range(n)), Polynomial.zero(n))
    assert poly_proportional(cone.projective, plane) is not None


def test_tangent_cone_rejects_points_off_hypersurface():
    with pytest.raises(ValueError):
        tangent_cone(CFG1, (1, 1, 1))


def test_top_corank_cone_is_constant_times_product():
    # a point where the whole form vanishes: TRIV(3) restricted to two axes
    cone = tangent_cone(fixtures.trivial(3), (1, 0, 0))
    assert cone.order == 2 and cone.agree and cone.projective.to_text() == "A2*A3"


def test_line_with_full_support_has_no_coordinate_zeros():
    W = Configuration.from_rows([[1, 1]])
    assert not has_coordinate_zeros(W)
    with pytest.raises(SamplingExhaustedError):
        sample_zero_points(W, 3, seed=0)


def test_generic_three_by_three():
    f, names, _ = generic_symmetric_det(3)
    assert names == ("B1", "B2", "B3", "B12", "B13", "B23")
    assert f.to_text(names) == "B1*B2*B3 - B1*B23^2 - B2*B13^2 - B3*B12^2 + 2*B12*B13*B23"


def test_generic_pullback_ban4_chain_basis():
    W = fixtures.ban4_chain_configuration()
    g = generic_det_pullback(W)
    assert g.ok and g.pullback == psi_det(BAN4)


def test_generic_one_dimensional():
    f, names, _ = generic_symmetric_det(1)
    assert f.to_text(names) == "B1"
    W = Configuration.from_rows([[1, -2, 3]])
    assert generic_det_pullback(W).pullback.to_text() == "A1 + 4*A2 + 9*A3"


def test_generic_size_guard():
    with pytest.raises(SizeError):
        generic_symmetric_det(6)


def test_linear_section_can_raise_multiplicity():
    f, names, _ = generic_symmetric_det(3)
    nv = len(names)
    B = {name: Polynomial.variable(nv, i) for i, name in enumerate(names)}
    b = [1 if name in ("B1", "B2") else 0 for name in names]
    assert f.multiplicity(b) == 1
    # section B3 = B23 = 0
    images = [Polynomial.zero(nv) if name in ("B3", "B23") else B[name] for name in names]
    fbar = f.substitute(images)
    assert fbar.to_text(names) == "-B2*B13^2"
    assert fbar.multiplicity(b) == 2


def test_rank_bound_and_radicals_on_ban4():
    a = (1, 0, 0, 0)
    assert rank_bound_check(BAN4, a, 1) is True
    # the form is nondegenerate on W ∩ K^{e1,e4}, so the k = 2 hypothesis fails
    assert rank_bound_check(BAN4, a, 2) is None
    for _, down, up in hyperplane_radical_containment(BAN4, a):
        assert down or up


@given(configurations(max_dim=4, max_n=7), st.integers(0, 10**6))
def test_multiplicity_equals_corank_at_sampled_points(W, seed):
    assume(W.dim >= 2)
    psi = psi_det(W)
    k = seed % (W.dim - 1) + 1
    for a in sample_corank_points(W, k, 3, seed=seed):
        rep = verify_theorem(W, a, psi=psi)
        assert rep.corank >= k and rep.theorem_ok
        assert psi.multiplicity(a) == rep.multiplicity


@given(configurations(max_dim=4, max_n=7), st.integers(0, 10**6))
def test_multiplicity_equals_corank_on_coordinate_sections(W, seed):
    assume(has_coordinate_zeros(W))
    psi = psi_det(W)
    for a in sample_zero_points(W, 3, seed=seed):
        assert psi(a) == 0
        assert verify_theorem(W, a, psi=psi).theorem_ok


@given(configurations(max_dim=4, max_n=6), st.integers(0, 10**6))
def test_tangent_cones_agree(W, seed):
    assume(has_coordinate_zeros(W))
    psi = psi_det(W)
    for a in sample_zero_points(W, 2, seed=seed):
        cone = tangent_cone(W, a, psi)
        assert cone.agree
        assert cone.projective.is_homogeneous() and cone.projective.degree() == multiplicity_at(W, a, psi)
        assert cone.projective(a) == 0


@given(configurations(max_dim=4, max_n=6))
def test_generic_pullback_everywhere(W):
    assert generic_det_pullback(W).ok


@given(configurations(max_dim=4, max_n=6), st.integers(0, 10**6))
def test_radical_containment_and_rank_bound(W, seed):
    assume(W.dim >= 2)
    k = seed % (W.dim - 1) + 1
    for a in sample_corank_points(W, k, 2, seed=seed):
        assert rank_bound_check(W, a, k) is not False
        for _, down, up in hyperplane_radical_containment(W, a):
            assert down or up


@given(configurations(max_dim=3, max_n=6))
def test_ideal_gens_classify_cleanly(W):
    assume(W.dim >= 2)
    gens = singular_ideal_gens(W, W.dim - 1)
    assert gens.consistent
    assert all(c != 0 for c in gens.constants())
