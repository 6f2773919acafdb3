"""Rank-two extensions P(h) of N by M, their Dieudonne F/V lines, and the
base-change invariants that bound the irreducible locus."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence, Union

from .base_ring import TruncLaurent
from .errors import InternalInconsistency, InvalidParams, ScalarType
from .ext_engine import ExtClass, make_ext_class
from .rank_one import AmbientParams, RankOneBK, alpha, frobenius_twist, hom_dim
from .types_shapes import Shape, TameType, enumerate_shapes, is_transition, pair_has_type, shape_of_pair


@dataclass(frozen=True)
class RankTwoExt:
    """Phi(n_{i-1}) = b_i u^{s_i} n_i, Phi(m_{i-1}) = a_i u^{r_i} m_i + h_i n_i."""

    M: RankOneBK
    N: RankOneBK
    h: ExtClass


def build_extension(m: RankOneBK, n: RankOneBK, h: Sequence[TruncLaurent] | ExtClass) -> RankTwoExt:
    if isinstance(h, ExtClass):
        h = h.h
    return RankTwoExt(m, n, make_ext_class(m, n, h))


def split_extension(m: RankOneBK, n: RankOneBK) -> RankTwoExt:
    zero = TruncLaurent(m.field, 0, ())
    return build_extension(m, n, [zero] * m.params.period)


def generic_cocycle(tau: TameType, m: RankOneBK) -> list[TruncLaurent]:
    """h_i = 1 at every transition of the shape of m, 0 elsewhere."""
    params = m.params
    shape = shape_of_pair(m, tau)
    return [
        TruncLaurent.monomial(m.field, 0, 1 if is_transition(params, shape, i) else 0)
        for i in range(params.period)
    ]


def has_height_at_most_one(ext: RankTwoExt) -> bool:
    """u^{r_i + s_i - e'} divides every h_i."""
    m, n = ext.M, ext.N
    for i, h in enumerate(ext.h.h):
        need = m.r[i] + n.r[i] - m.params.e_prime
        if h.coeffs and h.lo < need:
            return False
    return True


def check_bt_type(ext: RankTwoExt, tau: TameType) -> bool:
    return pair_has_type(ext.M, ext.N, tau) and has_height_at_most_one(ext)


@dataclass(frozen=True)
class DieudonnePattern:
    """F: D_j -> D_{j+1} and V: D_{j+1} -> D_j as scalars, j in Z/f'Z."""

    F_consts: tuple[int, ...]
    V_consts: tuple[int, ...]
    cbar: int

    def __post_init__(self) -> None:
        for j, (x, y) in enumerate(zip(self.F_consts, self.V_consts)):
            if x and y:
                raise InternalInconsistency(f"F and V are both nonzero at {j}")

    def zero_sets(self, count: int | None = None) -> tuple[frozenset[int], frozenset[int]]:
        """({j : F_j = 0}, {j : V_j = 0}) over the first ``count`` indices."""
        count = len(self.F_consts) if count is None else count
        return (
            frozenset(j for j in range(count) if self.F_consts[j] == 0),
            frozenset(j for j in range(count) if self.V_consts[j] == 0),
        )


def dieudonne_pattern(ext: RankTwoExt, tau: TameType, cbar: int = 1) -> DieudonnePattern:
    """Apply the four-case table at i = j + 1 for every j in Z/f'Z."""
    m, n = ext.M, ext.N
    fld = m.field
    if fld.validate(cbar) == 0:
        raise InvalidParams("cbar must be nonzero")
    if not pair_has_type(m, n, tau):
        raise InvalidParams("the extension does not have the given type")
    shape = shape_of_pair(m, tau)
    params = m.params
    fp, per = params.f_prime, params.period
    cinv = fld.inv(cbar)
    F, V = [], []
    for j in range(fp):
        i = (j + 1) % fp
        a_i, b_i = m.a[i], n.a[i]
        h0 = ext.h.h[i % per].coeff(0)
        prev_in, cur_in = j in shape, i in shape
        if prev_in and cur_in:
            F.append(0)
            V.append(fld.mul(cinv, fld.inv(a_i)))
        elif not prev_in and not cur_in:
            F.append(b_i)
            V.append(0)
        elif prev_in:
            F.append(h0)
            V.append(0)
        else:
            F.append(0)
            V.append(fld.neg(fld.mul(fld.mul(cinv, fld.inv(a_i)), fld.mul(fld.inv(b_i), h0))))
    return DieudonnePattern(tuple(F), tuple(V), cbar)


def divisor_membership(tau: TameType, shape: Iterable[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Generic vanishing of X_j (F) and Y_j (V) for 0 <= j < f."""
    if tau.is_scalar:
        raise ScalarType("divisor patterns need a non-scalar type")
    shape = Shape(shape)
    if shape not in enumerate_shapes(tau):
        raise InvalidParams(f"{sorted(shape)} is not a shape")
    f, fp = tau.params.f, tau.params.f_prime
    x_zero = frozenset(j for j in range(f) if (j + 1) % fp in shape)
    return x_zero, frozenset(range(f)) - x_zero


class _NoMap(Enum):
    NO_MAP = "NoMap"

    def __repr__(self) -> str:
        return "NoMap"


class _Empty(Enum):
    EMPTY = "Empty"

    def __repr__(self) -> str:
        return "Empty"


NoMap = _NoMap.NO_MAP
Empty = _Empty.EMPTY


def base_change_x(m: RankOneBK, n: RankOneBK) -> Union[tuple[int, ...], _NoMap]:
    """x_i = alpha_i(N) - alpha_{i+f}(M) when N maps nontrivially to M^{(f)}.

    The pair must satisfy the determinant condition r_i + s_i = e'; data may
    be periodic modulo f or (``over_l``) only modulo f'.
    """
    params = m.params
    if any(x + y != params.e_prime for x, y in zip(m.r, n.r)):
        raise InvalidParams("base change invariants need r_i + s_i = e'")
    twisted = frobenius_twist(m)
    if hom_dim(n, twisted) == 0:
        return NoMap
    f, fp, mod = params.f, params.f_prime, params.e_kk
    am, an = alpha(m), alpha(n)
    x = tuple(an[i] - am[(i + f) % fp] for i in range(fp))
    for i in range(fp):
        if x[i] < 0:
            raise InternalInconsistency(f"x_{i} = {x[i]} is negative despite a map")
        if x[i] != x[(i + f) % fp]:
            raise InternalInconsistency(f"x_{i} != x_{i + f}")
        if (x[i] - n.c[i] + m.c[(i + f) % fp]) % mod:
            raise InternalInconsistency(f"x_{i} is not d_i - c_(i+f) mod {mod}")
    return x


def irred_dim_bound(m: RankOneBK, n: RankOneBK) -> Union[int, _Empty, _NoMap]:
    """1 + sum_{i<f} ceil(x_i/(p^{f'}-1)), or Empty when some x_i is unusable."""
    x = base_change_x(m, n)
    if x is NoMap:
        return NoMap
    params = m.params
    mod = params.e_kk
    for i in range(params.f):
        if x[i] > 0 and (x[i] + m.c[i] - n.c[i]) % mod:
            return Empty
    return 1 + sum(-(-x[i] // mod) for i in range(params.f))


def irred_bound_ceiling(params: AmbientParams) -> int:
    """1 + ceil(e/(p-1)) f, the a priori ceiling for irred_dim_bound."""
    return 1 + -(-params.e // (params.p - 1)) * params.f

