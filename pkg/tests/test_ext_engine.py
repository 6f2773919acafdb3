import pytest

from tamebk.base_ring import TruncLaurent, field_create
from tamebk.errors import BadCongruence, InvalidParams
from tamebk.ext_engine import (
    _integral_part,
    coker_representatives,
    complex_build,
    count_in_class,
    ext1_dim_formula,
    ext_class_from_vector,
    height1_subspace_dim,
    hom_ext_dims_oracle,
    hom_to_u_quotient_dim,
    kext_dim,
    kext_dim_direct,
    kext_dim_maximal_formula,
    make_ext_class,
    polar_solutions,
    split_class_count,
    splits_after_inverting_u,
    trivial_kext_bound,
    truncation_level,
)
from tamebk.rank_one import AmbientParams, make_rank_one
from tamebk.types_shapes import build_pair, enumerate_shapes, make_type, maximal_refined


@pytest.fixture
def pair_f1(ps_f1, f3):
    m = make_rank_one(ps_f1, [2], [1], [1], f3)
    n = make_rank_one(ps_f1, [0], [1], [0], f3)
    return m, n


@pytest.fixture
def kext_pair():
    """p=3, f=2 principal series k0=1, J={1}: one transition with gamma* = 0."""
    tau = make_type(AmbientParams(3, 2, 1), 1, 0)
    return tau, build_pair(tau, maximal_refined(tau, {1}), field_create(3, 2))


@pytest.mark.parametrize("p,e,expected", [(3, 1, 2), (3, 2, 4), (5, 1, 2)])
def test_truncation_level(p, e, expected):
    assert truncation_level(AmbientParams(p, 1, e)) == expected


def test_count_in_class():
    assert count_in_class(0, 4, 1, 2) == 2
    assert count_in_class(2, 2, 0, 2) == 0
    assert count_in_class(0, 10, 3, 4) == 2


def test_complex_bases(pair_f1):
    pres = complex_build(*pair_f1)
    assert pres.trunc_level_N == 2
    assert pres.basis1 == ((0, 1), (0, 3))
    assert pres.basis0 == ((0, 1),)


def test_basis1_size_is_level_times_f(ps_f1, f3):
    for r, c in [(2, 1), (0, 0), (0, 1), (2, 0)]:
        for s, d in [(0, 0), (2, 1), (0, 1)]:
            m = make_rank_one(ps_f1, [r], None, [c], f3)
            n = make_rank_one(ps_f1, [s], None, [d], f3)
            assert len(complex_build(m, n).basis1) == 2


def test_bases_swap_classes(pair_f1):
    m, n = pair_f1
    forward, backward = complex_build(m, n), complex_build(n, m)
    cls = (m.c[0] - n.c[0]) % 2
    assert all(j % 2 == cls for _, j in forward.basis0)
    assert all(j % 2 == -cls % 2 for _, j in backward.basis0)


def test_oracle_generic_twist(ps_f1, f3):
    m = make_rank_one(ps_f1, [2], [1], [1], f3)
    n = make_rank_one(ps_f1, [0], [2], [0], f3)
    assert hom_ext_dims_oracle(m, n) == (0, 1)
    assert ext1_dim_formula(m, n) == 1


def test_oracle_matching_units(pair_f1):
    assert hom_ext_dims_oracle(*pair_f1) == (1, 2)
    assert ext1_dim_formula(*pair_f1) == 2


def test_oracle_shape_pair(tau_ps_f2, f9):
    m, n = build_pair(tau_ps_f2, maximal_refined(tau_ps_f2, {0}), f9)
    assert hom_ext_dims_oracle(m, n) == (0, 2)
    assert ext1_dim_formula(m, n) == 2


def test_height_one_equals_ext_with_determinant(tau_ps_f2, f9):
    m, n = build_pair(tau_ps_f2, maximal_refined(tau_ps_f2, {0}), f9)
    assert height1_subspace_dim(m, n) == ext1_dim_formula(m, n)


def test_height_one_strict(ps_f1, f3):
    m = make_rank_one(ps_f1, [2], [1], [1], f3)
    n = make_rank_one(ps_f1, [2], [1], [0], f3)
    assert ext1_dim_formula(m, n) == 1
    assert height1_subspace_dim(m, n, "formula") == 0
    assert height1_subspace_dim(m, n, "oracle") == 0


def test_height_mode_checked(pair_f1):
    with pytest.raises(InvalidParams):
        height1_subspace_dim(*pair_f1, mode="guess")


def test_kext_generic_shape(tau_ps_f2, f9):
    m, n = build_pair(tau_ps_f2, maximal_refined(tau_ps_f2, {0}), f9)
    assert kext_dim(m, n) == 0
    assert kext_dim_direct(m, n) == 0
    assert kext_dim_maximal_formula(tau_ps_f2, frozenset({0})) == 0


def test_kext_exceptional_cuspidal(tau_cusp, f9):
    m, n = build_pair(tau_cusp, maximal_refined(tau_cusp, {0}), f9)
    assert kext_dim(m, n) == 0
    assert kext_dim_direct(m, n) == 0
    assert kext_dim_maximal_formula(tau_cusp, frozenset({0})) == 0
    assert hom_to_u_quotient_dim(m, n) == 1


def test_kext_scalar():
    tau = make_type(AmbientParams(3, 1, 1), 1, 1)
    m, n = build_pair(tau, maximal_refined(tau, ()), field_create(3, 1))
    assert kext_dim_maximal_formula(tau, frozenset()) == 0
    assert hom_to_u_quotient_dim(m, n) == 0


def test_no_transition_gives_no_polar_solution(tau_ps_f2, f9):
    for shape in (frozenset(), frozenset({0, 1})):
        m, n = build_pair(tau_ps_f2, maximal_refined(tau_ps_f2, shape), f9)
        assert hom_to_u_quotient_dim(m, n) == 0


def test_kext_one_dimensional(kext_pair):
    tau, (m, n) = kext_pair
    assert kext_dim_maximal_formula(tau, frozenset({1})) == 1
    assert kext_dim(m, n) == kext_dim_direct(m, n) == 1
    # the monomial solution u^{-[d_0 - c_0]} on the component before the transition
    assert polar_solutions(m, n) == [{(0, -1): 1}]
    assert split_class_count(m, n) == 9


def test_trivial_bound_value():
    assert trivial_kext_bound(AmbientParams(3, 2, 3)) == 4
    assert trivial_kext_bound(AmbientParams(5, 1, 1)) == 1


def test_boundary_splits(pair_f1):
    m, n = pair_f1
    pres = complex_build(m, n)
    for col in pres.columns():
        assert splits_after_inverting_u(m, n, ext_class_from_vector(pres, col))


def test_kext_class_splits(kext_pair):
    _, (m, n) = kext_pair
    pres = complex_build(m, n)
    index1 = {mono: k for k, mono in enumerate(pres.basis1)}
    (tail,) = polar_solutions(m, n)
    vec = _integral_part(m, n, tail, index1, pres.top)
    assert any(vec)
    assert splits_after_inverting_u(m, n, ext_class_from_vector(pres, vec))


def test_class_outside_kext(kext_pair):
    _, (m, n) = kext_pair
    pres = complex_build(m, n)
    verdicts = []
    for k in coker_representatives(pres):
        vec = [int(t == k) for t in range(len(pres.basis1))]
        verdicts.append(splits_after_inverting_u(m, n, ext_class_from_vector(pres, vec)))
    assert not all(verdicts)


def test_split_count_matches_kext_on_shapes(tau_ps_f2, f9):
    for shape in enumerate_shapes(tau_ps_f2):
        m, n = build_pair(tau_ps_f2, maximal_refined(tau_ps_f2, shape), f9)
        assert split_class_count(m, n) == f9.q ** kext_dim(m, n)


def test_ext_class_congruence(pair_f1, f3):
    m, n = pair_f1
    # h_0 terms must have degree = r_0 + c_0 - d_0 = 1 mod 2
    make_ext_class(m, n, [TruncLaurent.monomial(f3, 1, 1)])
    with pytest.raises(BadCongruence):
        make_ext_class(m, n, [TruncLaurent.monomial(f3, 0, 1)])
    with pytest.raises(BadCongruence):
        make_ext_class(m, n, [TruncLaurent.monomial(f3, -1, 1)])


def test_trunc_extra_negative(pair_f1):
    with pytest.raises(InvalidParams):
        hom_ext_dims_oracle(*pair_f1, trunc_extra=-1)


def test_perturbation_changes_matrix(pair_f1):
    m, n = pair_f1
    clean = complex_build(m, n).del_matrix
    hurt = complex_build(m, n, perturb=(0, 0)).del_matrix
    diffs = [k for k, (x, y) in enumerate(zip(clean.entries, hurt.entries)) if x != y]
    assert diffs == [0]
