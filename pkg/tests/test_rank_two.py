import pytest

from tamebk.base_ring import TruncLaurent
from tamebk.errors import BadCongruence, InvalidParams, ScalarType
from tamebk.rank_one import AmbientParams, Kind, RankOneBK, make_rank_one
from tamebk.rank_two import (
    Empty,
    NoMap,
    base_change_x,
    build_extension,
    check_bt_type,
    dieudonne_pattern,
    divisor_membership,
    generic_cocycle,
    irred_bound_ceiling,
    irred_dim_bound,
    split_extension,
)
from tamebk.types_shapes import build_pair, enumerate_shapes, make_type, maximal_refined


def _pattern(tau, shape, fld, cbar=1):
    m, n = build_pair(tau, maximal_refined(tau, shape), fld)
    return dieudonne_pattern(build_extension(m, n, generic_cocycle(tau, m)), tau, cbar)


def test_split_extension(tau_ps_f2, f9):
    m, n = build_pair(tau_ps_f2, maximal_refined(tau_ps_f2, {0}), f9)
    ext = split_extension(m, n)
    assert all(h.is_zero() for h in ext.h.h)
    assert check_bt_type(ext, tau_ps_f2)


def test_constant_cocycle_valid(tau_ps_f2, f9):
    m, n = build_pair(tau_ps_f2, maximal_refined(tau_ps_f2, {0}), f9)
    one = TruncLaurent.monomial(f9, 0, 1)
    assert check_bt_type(build_extension(m, n, [one, one]), tau_ps_f2)


def test_wrong_residue_rejected(tau_ps_f2, f9):
    m, n = build_pair(tau_ps_f2, maximal_refined(tau_ps_f2, {0}), f9)
    bad = TruncLaurent.monomial(f9, 1, 1)
    with pytest.raises(BadCongruence):
        build_extension(m, n, [bad, bad])


def test_bt_type_needs_determinant(tau_ps_f2, f9):
    m, n = build_pair(tau_ps_f2, maximal_refined(tau_ps_f2, {0}), f9)
    n2 = RankOneBK(n.params, n.field, (n.r[0] + 8, n.r[1] + 8), n.a, n.c)
    assert not check_bt_type(split_extension(m, n2), tau_ps_f2)


def test_bt_type_scalar(f9):
    tau = make_type(AmbientParams(3, 2, 1), 3, 3)
    m, n = build_pair(tau, maximal_refined(tau, ()), f9)
    assert check_bt_type(split_extension(m, n), tau)


def test_pattern_empty_shape(tau_ps_f2, f9):
    pat = _pattern(tau_ps_f2, (), f9)
    assert pat.F_consts == (1, 1)
    assert pat.V_consts == (0, 0)


def test_pattern_full_shape(tau_ps_f2, f9):
    g = f9.primitive_element()
    pat = _pattern(tau_ps_f2, {0, 1}, f9, cbar=g)
    assert pat.F_consts == (0, 0)
    assert pat.V_consts == (f9.inv(g), f9.inv(g))


def test_pattern_mixed_shape(tau_ps_f2, f9):
    pat = _pattern(tau_ps_f2, {0}, f9)
    assert pat.F_consts == (1, 0)
    assert pat.V_consts == (0, f9.neg(1))


def test_cbar_nonzero(tau_ps_f2, f9):
    with pytest.raises(InvalidParams):
        _pattern(tau_ps_f2, {0}, f9, cbar=0)


def test_divisor_membership(tau_ps_f2):
    assert divisor_membership(tau_ps_f2, {0}) == (frozenset({1}), frozenset({0}))
    assert divisor_membership(tau_ps_f2, ()) == (frozenset(), frozenset({0, 1}))
    patterns = {divisor_membership(tau_ps_f2, s) for s in enumerate_shapes(tau_ps_f2)}
    assert len(patterns) == 4


def test_divisor_membership_scalar():
    tau = make_type(AmbientParams(3, 1, 1), 1, 1)
    with pytest.raises(ScalarType):
        divisor_membership(tau, ())


def test_base_change_exceptional(tau_cusp, f9):
    m, n = build_pair(tau_cusp, maximal_refined(tau_cusp, {0}), f9)
    assert base_change_x(m, n) == (2, 2)
    assert irred_dim_bound(m, n) == 2
    assert irred_bound_ceiling(tau_cusp.params) == 2


def test_base_change_no_map(tau_cusp, f9):
    m, n = build_pair(tau_cusp, maximal_refined(tau_cusp, {1}), f9)
    assert base_change_x(m, n) is NoMap
    assert irred_dim_bound(m, n) is NoMap


def test_base_change_needs_determinant(f9):
    params = AmbientParams(3, 1, 1, Kind.CUSPIDAL)
    m = make_rank_one(params, [2, 2], None, [1, 1], f9)
    with pytest.raises(InvalidParams):
        base_change_x(m, m)


def test_zero_x_gives_one(f9):
    # N = M^{(f)} twisted so that the map is an isomorphism: x = 0
    params = AmbientParams(3, 1, 1, Kind.CUSPIDAL, over_l=True)
    m = make_rank_one(params, [0, 8], None, [3, 1], f9)
    n = make_rank_one(params, [8, 0], None, [1, 3], f9)
    assert base_change_x(m, n) == (0, 0)
    assert irred_dim_bound(m, n) == 1


def test_empty_marker_repr():
    assert repr(Empty) == "Empty"
    assert repr(NoMap) == "NoMap"
