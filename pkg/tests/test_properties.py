"""Property tests: algebraic laws and formula/oracle agreement on random data."""

import itertools
from collections import Counter

import pytest

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from tamebk.base_ring import (
    MatrixGF,
    TruncLaurent,
    _pmod,
    field_create,
    frobenius_substitute,
    is_irreducible,
    rank_and_kernel,
)
from tamebk.ext_engine import (
    ext1_dim_formula,
    height1_subspace_dim,
    hom_ext_dims_oracle,
    hom_to_u_quotient_dim,
    kext_dim,
    kext_dim_direct,
    split_class_count,
    trivial_kext_bound,
)
from tamebk.rank_one import (
    AmbientParams,
    Kind,
    RankOneBK,
    alpha,
    chars_equal,
    galois_char,
    hom_dim,
    make_rank_one,
    unramified_twist,
)
from tamebk.rank_two import Empty, NoMap, base_change_x, irred_bound_ceiling, irred_dim_bound
from tamebk.sweep import rank_one_data

FIELDS = [field_create(3, 2), field_create(5, 2), field_create(3, 3), field_create(7, 1)]
AMBIENTS = [
    AmbientParams(p, f, e, kind)
    for p in (3, 5)
    for f in (1, 2)
    for e in (1, 2, 3)
    for kind in (Kind.PRINCIPAL_SERIES, Kind.CUSPIDAL)
    if not (p == 5 and f == 2 and kind is Kind.CUSPIDAL)
]

common = settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def field_and_elements(draw, count=3):
    fld = draw(st.sampled_from(FIELDS))
    return fld, [draw(st.integers(0, fld.q - 1)) for _ in range(count)]


@given(field_and_elements())
@common
def test_field_ring_laws(data):
    fld, (x, y, z) = data
    assert fld.add(x, fld.add(y, z)) == fld.add(fld.add(x, y), z)
    assert fld.mul(x, fld.mul(y, z)) == fld.mul(fld.mul(x, y), z)
    assert fld.mul(x, fld.add(y, z)) == fld.add(fld.mul(x, y), fld.mul(x, z))
    assert fld.add(x, fld.neg(x)) == 0
    if x:
        assert fld.mul(x, fld.inv(x)) == 1
        assert fld.div(y, x) == fld.mul(y, fld.inv(x))


@given(field_and_elements(2))
@common
def test_frobenius_is_additive_and_multiplicative(data):
    fld, (x, y) = data
    fr = lambda t: fld.pow(t, fld.p)  # noqa: E731
    assert fr(fld.add(x, y)) == fld.add(fr(x), fr(y))
    assert fr(fld.mul(x, y)) == fld.mul(fr(x), fr(y))


@st.composite
def laurent(draw, fld):
    terms = draw(st.dictionaries(st.integers(-4, 6), st.integers(1, fld.q - 1), max_size=4))
    return TruncLaurent.from_terms(fld, terms)


@given(st.data())
@common
def test_substitution_is_a_ring_map(data):
    fld = data.draw(st.sampled_from(FIELDS))
    x, y = data.draw(laurent(fld)), data.draw(laurent(fld))
    p = fld.p
    assert frobenius_substitute(x * y, p) == frobenius_substitute(x, p) * frobenius_substitute(y, p)
    assert frobenius_substitute(x + y, p) == frobenius_substitute(x, p) + frobenius_substitute(y, p)


@given(st.data())
@common
def test_rank_of_transpose(data):
    fld = data.draw(st.sampled_from(FIELDS))
    rows, cols = data.draw(st.integers(1, 6)), data.draw(st.integers(1, 6))
    entries = data.draw(st.lists(st.integers(0, fld.q - 1), min_size=rows * cols, max_size=rows * cols))
    mat = MatrixGF(fld, rows, cols, tuple(entries))
    rank, kernel = rank_and_kernel(mat)
    assert rank == rank_and_kernel(mat.transpose())[0]
    assert rank + len(kernel) == cols
    for v in kernel:
        assert not any(mat.apply(v))


def _irreducible_by_search(poly, p):
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if not any(_pmod(poly, (*tail, 1), p)):
                return False
    return True


@given(st.sampled_from([3, 5]), st.integers(2, 4), st.data())
@settings(max_examples=80, deadline=None)
def test_rabin_matches_trial_division(p, deg, data):
    coeffs = data.draw(st.lists(st.integers(0, p - 1), min_size=deg, max_size=deg))
    poly = (*coeffs, 1)
    assert is_irreducible(poly, p) == _irreducible_by_search(poly, p)


@st.composite
def module(draw, params, fld, units=True):
    per, n, p, fp = params.period, params.e_kk, params.p, params.f_prime
    c = [draw(st.integers(0, n - 1)) for _ in range(per)]
    r = []
    for i in range(per):
        cls = (p * c[i - 1] - c[i]) % n
        r.append(draw(st.sampled_from(range(cls, params.e_prime + 1, n))))
    a = [draw(st.integers(1, fld.q - 1)) if units else 1 for _ in range(per)]
    expand = lambda v: [v[i % per] for i in range(fp)]  # noqa: E731
    return make_rank_one(params, expand(r), expand(a), expand(c), fld)


@st.composite
def pair(draw, ambients=AMBIENTS):
    params = draw(st.sampled_from(ambients))
    fld = field_create(params.p, params.f_prime)
    m = draw(module(params, fld))
    n = draw(module(params, fld))
    if draw(st.booleans()):
        # copy the units so the characters can match
        n = make_rank_one(params, n.r, m.a, n.c, fld)
    return m, n


@given(pair())
@common
def test_alpha_recurrence(mn):
    m, _ = mn
    al = alpha(m)
    p = m.params.p
    for i in range(m.params.f_prime):
        assert p * al[i - 1] - al[i] == m.r[i]
        assert al[i] >= 0


@given(pair(), st.data())
@common
def test_unramified_twist_moves_unram_only(mn, data):
    m, _ = mn
    lam = data.draw(st.integers(1, m.field.q - 1))
    before, after = galois_char(m), galois_char(unramified_twist(m, lam))
    assert after.w == before.w
    assert after.unram == m.field.mul(lam, before.unram)


@given(pair())
@common
def test_mutual_maps_force_equal_data(mn):
    m, n = mn
    if hom_dim(m, n) and hom_dim(n, m):
        assert alpha(m) == alpha(n)
        assert m.r == n.r and m.c == n.c
    assert hom_dim(m, n) <= int(chars_equal(m, n))


@given(pair())
@common
def test_ext_formula_matches_oracle(mn):
    m, n = mn
    hom, ext = hom_ext_dims_oracle(m, n)
    assert hom == hom_dim(m, n)
    assert ext == ext1_dim_formula(m, n)
    assert height1_subspace_dim(m, n, "oracle") == height1_subspace_dim(m, n, "formula")


@given(pair())
@common
def test_kext_routes_agree(mn):
    m, n = mn
    k = kext_dim(m, n)
    assert k == kext_dim_direct(m, n)
    assert k <= ext1_dim_formula(m, n)
    assert hom_to_u_quotient_dim(m, n) <= trivial_kext_bound(m.params)


SMALL = [AmbientParams(3, 1, 1, Kind.PRINCIPAL_SERIES), AmbientParams(3, 1, 2, Kind.PRINCIPAL_SERIES),
         AmbientParams(3, 1, 1, Kind.CUSPIDAL), AmbientParams(5, 1, 1, Kind.PRINCIPAL_SERIES)]


@given(pair(SMALL))
@settings(max_examples=60, deadline=None)
def test_split_classes_form_kext(mn):
    m, n = mn
    assume(ext1_dim_formula(m, n) <= 3)
    assert split_class_count(m, n) == m.field.q ** kext_dim(m, n)


OVER_L = [AmbientParams(p, 1, e, Kind.CUSPIDAL, over_l=True) for p, e in [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2)]]


@pytest.mark.parametrize("params", OVER_L, ids=lambda q: f"p{q.p}e{q.e}")
def test_base_change_invariants_exhaustive(params):
    """Every pair over L with r + s = e' and matching units."""
    fld = field_create(params.p, params.f_prime)
    ones = (1,) * params.f_prime
    data = list(rank_one_data(params))
    by_s: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for s, d in data:
        by_s.setdefault(s, []).append(d)
    outcomes = Counter()
    f = params.f
    for r, c in data:
        m = RankOneBK(params, fld, r, ones, c)
        s = tuple(params.e_prime - x for x in r)
        for d in by_s.get(s, []):
            n = RankOneBK(params, fld, s, ones, d)
            x = base_change_x(m, n)
            bound = irred_dim_bound(m, n)
            if x is NoMap:
                assert bound is NoMap
                outcomes["no_map"] += 1
                continue
            assert all(v >= 0 for v in x)
            assert all(x[i] == x[i + f] for i in range(f))
            if bound is Empty:
                outcomes["empty"] += 1
            else:
                assert 1 <= bound <= irred_bound_ceiling(params)
                outcomes["bound"] += 1
    # the enumeration reaches every kind of outcome
    assert outcomes["no_map"] and outcomes["empty"] and outcomes["bound"]
