"""Rank-one Breuil-Kisin modules with tame descent data.

A module M(r, a, c) has one basis vector m_i per embedding index i in
Z/f'Z, Frobenius Phi(m_{i-1}) = a_i u^{r_i} m_i, and descent data encoded
by the residues c_i mod p^{f'}-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Sequence

from .base_ring import FieldCtx, field_create, is_prime
from .errors import (
    BadCongruence,
    InternalInconsistency,
    InvalidParams,
    NotCuspidal,
    NotPeriodic,
    OutOfRange,
)


class Kind(str, Enum):
    PRINCIPAL_SERIES = "principal_series"
    CUSPIDAL = "cuspidal"
    SCALAR = "scalar_ps"

    @classmethod
    def parse(cls, value: str | Kind) -> Kind:
        if isinstance(value, Kind):
            return value
        aliases = {"ps": cls.PRINCIPAL_SERIES, "scalar": cls.SCALAR}
        try:
            return aliases.get(value) or cls(value)
        except ValueError:
            raise InvalidParams(f"unknown kind {value!r}") from None


@dataclass(frozen=True)
class AmbientParams:
    """Arithmetic context: p, the inertial degree f and ramification e of K.

    ``over_l`` marks cuspidal-ambient data viewed over the quadratic
    unramified extension L, whose period is f' instead of f.  It is only
    needed to exercise Frobenius twists on data that are not already
    invariant under them.
    """

    p: int
    f: int
    e: int
    kind: Kind = Kind.PRINCIPAL_SERIES
    over_l: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", Kind.parse(self.kind))
        if not is_prime(self.p) or self.p == 2:
            raise InvalidParams("p must be odd")
        if self.f < 1 or self.e < 1:
            raise InvalidParams("f and e must be positive")
        if self.over_l and self.kind is not Kind.CUSPIDAL:
            raise InvalidParams("over_l data only exist in the cuspidal ambient")

    @cached_property
    def f_prime(self) -> int:
        return 2 * self.f if self.kind is Kind.CUSPIDAL else self.f

    @cached_property
    def e_kk(self) -> int:
        """Tame ramification index of K'/K, p^{f'} - 1."""
        return self.p**self.f_prime - 1

    @cached_property
    def e_prime(self) -> int:
        return self.e * self.e_kk

    @property
    def degree(self) -> int:
        """[K:Q_p]."""
        return self.e * self.f

    @property
    def period(self) -> int:
        return self.f_prime if self.over_l else self.f

    def bracket(self, n: int) -> int:
        """Least non-negative residue of n mod p^{f'} - 1."""
        return n % self.e_kk

    def default_field(self) -> FieldCtx:
        return field_create(self.p, self.f_prime)


def _expand(values: Sequence[int], params: AmbientParams, name: str) -> tuple[int, ...]:
    vals = tuple(values)
    if len(vals) == params.f_prime:
        return vals
    if len(vals) == params.period:
        return vals * (params.f_prime // params.period)
    raise InvalidParams(
        f"{name} must have length f'={params.f_prime} (or the period {params.period})"
    )


@dataclass(frozen=True)
class RankOneBK:
    params: AmbientParams
    field: FieldCtx
    r: tuple[int, ...]
    a: tuple[int, ...]
    c: tuple[int, ...]

    def __repr__(self) -> str:
        return f"M(r={list(self.r)}, a={list(self.a)}, c={list(self.c)})"

    @cached_property
    def alphas(self) -> tuple[int, ...]:
        return _compute_alpha(self)


def make_rank_one(
    params: AmbientParams,
    r: Sequence[int],
    a: Sequence[int] | None,
    c: Sequence[int],
    fld: FieldCtx | None = None,
) -> RankOneBK:
    """Validate and build M(r, a, c); ``a`` defaults to all ones."""
    fld = fld or params.default_field()
    if fld.p != params.p:
        raise InvalidParams("coefficient field has the wrong characteristic")
    fp = params.f_prime
    r = _expand(r, params, "r")
    a = _expand(a if a is not None else [1] * fp, params, "a")
    n = params.e_kk
    c = tuple(x % n for x in _expand(c, params, "c"))
    per = params.period
    for name, vec in (("r", r), ("a", a), ("c", c)):
        if any(vec[i] != vec[(i + per) % fp] for i in range(fp)):
            raise NotPeriodic(f"{name} is not periodic with period {per}")
    for x in a:
        if fld.validate(x) == 0:
            raise InvalidParams("the a_i must be nonzero")
    for i, ri in enumerate(r):
        if not 0 <= ri <= params.e_prime:
            raise OutOfRange(f"r_{i}={ri} outside [0, {params.e_prime}]")
    p = params.p
    for i in range(fp):
        if (p * c[i - 1] - c[i] - r[i]) % n:
            raise BadCongruence(
                f"p*c_{(i - 1) % fp} = {p * c[i - 1]} is not c_{i} + r_{i} = "
                f"{c[i] + r[i]} mod {n}"
            )
    return RankOneBK(params, fld, r, a, c)


def alpha(m: RankOneBK) -> tuple[int, ...]:
    """Integers alpha_i with p*alpha_{i-1} - alpha_i = r_i."""
    return m.alphas


def _compute_alpha(m: RankOneBK) -> tuple[int, ...]:
    params = m.params
    p, fp, n = params.p, params.f_prime, params.e_kk
    out = []
    for i in range(fp):
        num = sum(p**j * m.r[(i - j) % fp] for j in range(fp))
        q, rem = divmod(num, n)
        if rem:
            raise InternalInconsistency(f"alpha_{i} is not integral for {m}")
        out.append(q)
    for i in range(fp):
        if p * out[i - 1] - out[i] != m.r[i]:
            raise InternalInconsistency(f"alpha recurrence fails at {i} for {m}")
    return tuple(out)


@dataclass(frozen=True)
class InertialCharacter:
    """sigma_0 o h^w on inertia, times the unramified character ur_unram."""

    w: int
    unram: int


def unram_product(params: AmbientParams, fld: FieldCtx, a: Sequence[int]) -> int:
    prod = 1
    for x in a[: params.period]:
        prod = fld.mul(prod, x)
    return prod


def galois_char(m: RankOneBK) -> InertialCharacter:
    params = m.params
    p, fp, n = params.p, params.f_prime, params.e_kk
    al = alpha(m)
    ws = {(p ** (fp - i) * (m.c[i] - al[i])) % n for i in range(fp)}
    if len(ws) != 1:
        raise InternalInconsistency(f"character exponent depends on the index for {m}")
    return InertialCharacter(ws.pop(), unram_product(params, m.field, m.a))


def _check_same(m: RankOneBK, n: RankOneBK) -> None:
    if m.params != n.params or m.field != n.field:
        raise InvalidParams("modules live over different ambients or fields")


def chars_equal(m: RankOneBK, n: RankOneBK) -> bool:
    _check_same(m, n)
    mod = m.params.e_kk
    am, an = alpha(m), alpha(n)
    diffs = {(m.c[i] - am[i] - n.c[i] + an[i]) % mod for i in range(m.params.f_prime)}
    if len(diffs) != 1 and 0 in diffs:
        raise InternalInconsistency("character comparison depends on the index")
    return diffs == {0} and (
        unram_product(m.params, m.field, m.a) == unram_product(n.params, n.field, n.a)
    )


def hom_dim(m: RankOneBK, n: RankOneBK) -> int:
    if not chars_equal(m, n):
        return 0
    return int(all(x >= y for x, y in zip(alpha(m), alpha(n))))


def unramified_twist(m: RankOneBK, lam: int) -> RankOneBK:
    """Scale Phi_0 by lam.

    Data are stored over Z/f'Z with period f, so every index congruent to 0
    modulo the period is scaled, keeping the stored vector periodic.
    """
    if m.field.validate(lam) == 0:
        raise InvalidParams("twisting scalar must be nonzero")
    per = m.params.period
    a = tuple(
        m.field.mul(lam, x) if i % per == 0 else x for i, x in enumerate(m.a)
    )
    return RankOneBK(m.params, m.field, m.r, a, m.c)


def frobenius_twist(m: RankOneBK) -> RankOneBK:
    """M^{(f)}: shift every index by f."""
    params = m.params
    if params.kind is not Kind.CUSPIDAL:
        raise NotCuspidal("the Frobenius twist is defined for cuspidal data")
    f, fp = params.f, params.f_prime

    def shift(v: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(v[(i + f) % fp] for i in range(fp))

    return RankOneBK(params, m.field, shift(m.r), shift(m.a), shift(m.c))
