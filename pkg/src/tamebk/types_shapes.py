"""Tame inertial types, their digits, shapes, and the distinguished pairs
M(J, r), N(J, r) of each refined shape."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .base_ring import FieldCtx
from .errors import InternalInconsistency, InvalidShape, InvalidType
from .rank_one import AmbientParams, Kind, RankOneBK, make_rank_one

Shape = frozenset


@dataclass(frozen=True)
class TameType:
    """eta + eta' with eta = sigma_i o h^{k_i}, k_i = p^i k0 (and k'_i alike)."""

    params: AmbientParams
    k0: int
    k0p: int

    @property
    def is_scalar(self) -> bool:
        return self.params.kind is Kind.SCALAR

    def k(self, i: int) -> int:
        return pow(self.params.p, i % self.params.f_prime, self.params.e_kk) * self.k0 % self.params.e_kk

    def kp(self, i: int) -> int:
        return pow(self.params.p, i % self.params.f_prime, self.params.e_kk) * self.k0p % self.params.e_kk


def make_type(params: AmbientParams, k0: int, k0p: int) -> TameType:
    """Validate a type; a principal series pair with k0 = k0p becomes scalar."""
    if params.over_l:
        raise InvalidType("types are defined over K, not over L")
    n = params.e_kk
    k0, k0p = k0 % n, k0p % n
    if params.kind is Kind.CUSPIDAL:
        if k0p != params.p**params.f * k0 % n:
            raise InvalidType("cuspidal types need k0' = p^f k0")
        if k0 == k0p:
            raise InvalidType("a cuspidal type cannot be scalar")
    elif params.kind is Kind.SCALAR:
        if k0 != k0p:
            raise InvalidType("scalar types need k0 = k0'")
    elif k0 == k0p:
        params = AmbientParams(params.p, params.f, params.e, Kind.SCALAR)
    return TameType(params, k0, k0p)


def gamma_digits(tau: TameType) -> tuple[int, ...]:
    """Digits gamma_i with [k_i - k'_i] = sum_j p^j gamma_{i-j}."""
    params = tau.params
    p, fp, n = params.p, params.f_prime, params.e_kk
    br = [params.bracket(tau.k(i) - tau.kp(i)) for i in range(fp)]
    gammas = []
    for i in range(fp):
        q, rem = divmod(p * br[i - 1] - br[i], n)
        if rem or not 0 <= q <= p - 1:
            raise InternalInconsistency(f"digit {i} of {tau} is not a base-p digit")
        gammas.append(q)
    if all(g == p - 1 for g in gammas):
        raise InternalInconsistency("all digits equal p-1")
    for i in range(fp):
        if sum(p**j * gammas[(i - j) % fp] for j in range(fp)) != br[i]:
            raise InternalInconsistency(f"digit expansion fails at {i}")
    if params.kind is Kind.CUSPIDAL:
        f = params.f
        if any(gammas[(i + f) % fp] != p - 1 - gammas[i] for i in range(fp)):
            raise InternalInconsistency("cuspidal digits are not complementary")
    return tuple(gammas)


def is_transition(params: AmbientParams, shape: Iterable[int], i: int) -> bool:
    """Exactly one of i-1, i lies in J."""
    shape = frozenset(shape)
    fp = params.f_prime
    return ((i - 1) % fp in shape) != (i % fp in shape)


def enumerate_shapes(tau: TameType) -> list[Shape]:
    """All shapes, in binary-counter order of their intersection with {0..f-1}."""
    params = tau.params
    if tau.is_scalar:
        return [Shape()]
    f = params.f
    out = []
    for mask in range(2**f):
        low = {i for i in range(f) if mask >> i & 1}
        if params.kind is Kind.CUSPIDAL:
            low |= {i + f for i in range(f) if i not in low}
        out.append(Shape(low))
    return out


def check_shape(tau: TameType, shape: Iterable[int]) -> Shape:
    shape = Shape(shape)
    if shape not in enumerate_shapes(tau):
        raise InvalidShape(f"{sorted(shape)} is not a shape for {tau}")
    return shape


def p_tau(tau: TameType) -> list[Shape]:
    params = tau.params
    if tau.is_scalar:
        return [Shape()]
    gam = gamma_digits(tau)
    p, fp = params.p, params.f_prime
    out = []
    for shape in enumerate_shapes(tau):
        ok = True
        for i in range(fp):
            prev_in, cur_in = (i - 1) % fp in shape, i in shape
            if prev_in and not cur_in and gam[i] == p - 1:
                ok = False
            if cur_in and not prev_in and gam[i] == 0:
                ok = False
        if ok:
            out.append(shape)
    return out


def shape_residues(tau: TameType, shape: Iterable[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(c, d): c_i = k_i on J and k'_i off J; d is the other choice."""
    shape = frozenset(shape)
    fp = tau.params.f_prime
    c = tuple(tau.k(i) if i in shape else tau.kp(i) for i in range(fp))
    d = tuple(tau.kp(i) if i in shape else tau.k(i) for i in range(fp))
    return c, d


@dataclass(frozen=True)
class RefinedShape:
    shape: Shape
    r: tuple[int, ...]
    y: tuple[int, ...]


def _refined(tau: TameType, shape: Shape, y: tuple[int, ...]) -> RefinedShape:
    params = tau.params
    f, fp, n, e = params.f, params.f_prime, params.e_kk, params.e
    c, d = shape_residues(tau, shape)
    r = []
    for i in range(f):
        if is_transition(params, shape, i):
            if not 1 <= y[i] <= e:
                raise InvalidShape(f"y_{i} must lie in [1, e] at a transition")
            r.append(n * y[i] - params.bracket(c[i] - d[i]))
        else:
            if not 0 <= y[i] <= e:
                raise InvalidShape(f"y_{i} must lie in [0, e]")
            r.append(n * y[i])
    return RefinedShape(shape, tuple(r[i % f] for i in range(fp)), tuple(y))


def refined_y_ranges(tau: TameType, shape: Iterable[int]) -> list[range]:
    shape = check_shape(tau, shape)
    params = tau.params
    return [
        range(1 if is_transition(params, shape, i) else 0, params.e + 1)
        for i in range(params.f)
    ]


def enumerate_refined(tau: TameType, shape: Iterable[int]) -> list[RefinedShape]:
    shape = check_shape(tau, shape)
    return [_refined(tau, shape, y) for y in itertools.product(*refined_y_ranges(tau, shape))]


def maximal_refined(tau: TameType, shape: Iterable[int]) -> RefinedShape:
    shape = check_shape(tau, shape)
    return _refined(tau, shape, (tau.params.e,) * tau.params.f)


def gamma_star(tau: TameType, shape: Iterable[int]) -> tuple[int, ...]:
    shape = frozenset(shape)
    params = tau.params
    fp = params.f_prime
    if tau.is_scalar:
        return (0,) * fp
    gam = gamma_digits(tau)
    return tuple(
        params.p - 1 - gam[i] if (i - 1) % fp in shape else gam[i] for i in range(fp)
    )


def build_pair(
    tau: TameType,
    rs: RefinedShape,
    fld: FieldCtx | None = None,
) -> tuple[RankOneBK, RankOneBK]:
    """M(J, r) = M(r, 1, c) and N(J, r) = M(s, 1, d) with s_i = e' - r_i."""
    params = tau.params
    c, d = shape_residues(tau, rs.shape)
    s = tuple(params.e_prime - x for x in rs.r)
    m = make_rank_one(params, rs.r, None, c, fld)
    n = make_rank_one(params, s, None, d, m.field)
    if not pair_has_type(m, n, tau):
        raise InternalInconsistency("constructed pair does not have the type")
    return m, n


def pair_has_type(m: RankOneBK, n: RankOneBK, tau: TameType) -> bool:
    params = tau.params
    if m.params.f_prime != params.f_prime or m.params.e_kk != params.e_kk:
        return False
    for i in range(params.f_prime):
        if sorted((m.c[i], n.c[i])) != sorted((tau.k(i), tau.kp(i))):
            return False
        if m.r[i] + n.r[i] != params.e_prime:
            return False
    return True


def shape_of_pair(m: RankOneBK, tau: TameType) -> Shape:
    """J = {i : c_i = k_i}; scalar types always have shape {} ."""
    if tau.is_scalar:
        return Shape()
    return Shape(i for i in range(tau.params.f_prime) if m.c[i] == tau.k(i))
