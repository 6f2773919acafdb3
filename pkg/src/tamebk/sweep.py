"""Deterministic enumerations of small instances: ambients, rank-one data,
pairs of modules, types, and random pairs."""

from __future__ import annotations

import itertools
import math
import random
from typing import Iterator

from .base_ring import FieldCtx, field_create
from .rank_one import AmbientParams, Kind, RankOneBK, make_rank_one
from .types_shapes import TameType, make_type

SWEEP_PRIMES = (3, 5)
SWEEP_MAX_F = 2
SWEEP_MAX_E = 2
MAX_E_PRIME = 50
MAX_FIELD_SIZE = 9


def ambients(
    primes: tuple[int, ...] = SWEEP_PRIMES,
    max_f: int = SWEEP_MAX_F,
    max_e: int = SWEEP_MAX_E,
    max_e_prime: int | None = None,
) -> list[AmbientParams]:
    out = []
    for p, f, e in itertools.product(primes, range(1, max_f + 1), range(1, max_e + 1)):
        for kind in (Kind.PRINCIPAL_SERIES, Kind.CUSPIDAL):
            params = AmbientParams(p, f, e, kind)
            if max_e_prime is None or params.e_prime <= max_e_prime:
                out.append(params)
    return out


def small_field(p: int, max_size: int = MAX_FIELD_SIZE) -> FieldCtx:
    """Largest GF(p^m) with at most max_size elements."""
    m = 1
    while p ** (m + 1) <= max_size:
        m += 1
    return field_create(p, m)


def rank_one_data(params: AmbientParams) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Every valid (r, c), as vectors of length f'."""
    p, n, per, fp = params.p, params.e_kk, params.period, params.f_prime
    for c in itertools.product(range(n), repeat=per):
        choices = []
        for i in range(per):
            cls = (p * c[i - 1] - c[i]) % n
            choices.append(range(cls, params.e_prime + 1, n))
        for r in itertools.product(*choices):
            yield tuple(r[i % per] for i in range(fp)), tuple(c[i % per] for i in range(fp))


def twist_representative_bound(params: AmbientParams) -> int:
    """Residues c_0 in [0, bound) represent Z/n modulo simultaneous twists.

    Shifting c and d together by t_i = p^i t_0, where (p^period - 1) t_0 = 0
    mod n, leaves every quantity attached to the pair unchanged.
    """
    n = params.e_kk
    return n // math.gcd(n, params.p**params.period - 1)


def modules(params: AmbientParams, fld: FieldCtx, units: tuple[int, ...] | None = None) -> list[RankOneBK]:
    fp = params.f_prime
    a = units or (1,) * fp
    return [make_rank_one(params, r, a, c, fld) for r, c in rank_one_data(params)]


def unit_vector(params: AmbientParams, lam: int) -> tuple[int, ...]:
    """(lam, 1, ..., 1) repeated with the period of the data."""
    per = params.period
    return tuple(lam if i % per == 0 else 1 for i in range(params.f_prime))


def exhaustive_pairs(
    params: AmbientParams, fld: FieldCtx, unit_ratios: tuple[int, ...]
) -> Iterator[tuple[RankOneBK, RankOneBK]]:
    """All pairs up to simultaneous twist and isomorphism.

    M has a = 1 and c_0 below the twist bound; N runs over all (s, d) with
    b = (beta, 1, ...) for each beta in unit_ratios.  Isomorphism classes
    of rank-one modules with fixed (r, c) are classified by prod a_i, so
    this covers every pair class with prod b / prod a in unit_ratios.
    """
    bound = twist_representative_bound(params)
    left = [m for m in modules(params, fld) if m.c[0] < bound]
    data = list(rank_one_data(params))
    for beta in unit_ratios:
        b = unit_vector(params, beta)
        rights = [RankOneBK(params, fld, s, b, d) for s, d in data]
        for m in left:
            for n in rights:
                yield m, n


def sweep_unit_ratios(fld: FieldCtx) -> tuple[int, ...]:
    """1 and a primitive element: the matching and non-matching cases."""
    g = fld.primitive_element()
    return (1,) if fld.q == 2 else (1, g)


def types_up_to_twist(params: AmbientParams) -> list[TameType]:
    """One type per twist class (both orderings of eta, eta' kept)."""
    n, p, f = params.e_kk, params.p, params.f
    out = []
    if params.kind is Kind.CUSPIDAL:
        for k0 in range(1, p**f + 1):
            out.append(make_type(params, k0, p**f * k0 % n))
    else:
        for k0 in range(n):
            out.append(make_type(params, k0, 0))
    return out


def random_pairs(count: int, seed: int, max_e_prime: int = 200) -> list[tuple[RankOneBK, RankOneBK]]:
    """Random valid pairs over GF(p^{f'}) with random units."""
    rng = random.Random(seed)
    ambs = ambients(primes=(3, 5, 7), max_f=2, max_e=3, max_e_prime=max_e_prime)
    out = []
    while len(out) < count:
        params = rng.choice(ambs)
        fld = field_create(params.p, params.f_prime)
        pair = []
        for _ in range(2):
            per, n, p = params.period, params.e_kk, params.p
            c = [rng.randrange(n) for _ in range(per)]
            r = []
            for i in range(per):
                cls = (p * c[i - 1] - c[i]) % n
                r.append(rng.choice(range(cls, params.e_prime + 1, n)))
            a = [rng.randrange(1, fld.q) for _ in range(per)]
            fp = params.f_prime
            pair.append(make_rank_one(
                params, [r[i % per] for i in range(fp)], [a[i % per] for i in range(fp)],
                [c[i % per] for i in range(fp)], fld,
            ))
        if rng.random() < 0.3:
            # make the characters likely to match, so Hom is often nonzero
            m, n_ = pair
            pair[1] = RankOneBK(params, fld, n_.r, m.a, n_.c)
        out.append(tuple(pair))
    return out
