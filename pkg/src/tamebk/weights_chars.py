"""Jordan-Hoelder weight parameters of a tame type, the closed form of
T(N(J)), and the exponent identities relating them.

Characters of inertia are exponents w in the sigma_0-normalization
(sigma_0 o h^w), so sigma_i o h = sigma_0 o h^{p^{f'-i}}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import CuspidalFactorizationFailure, InternalInconsistency, NotInPTau
from .rank_one import InertialCharacter, Kind
from .types_shapes import Shape, TameType, gamma_digits, p_tau


@dataclass(frozen=True)
class SerreWeight:
    """sigma_{t,s} twisted by ``twist`` o det.

    For cuspidal types ``twist`` is theta o N_{l/k} written as a character of
    l^x (so its exponent is divisible by p^f + 1) and ``theta`` holds the
    exponent of theta itself modulo p^f - 1.
    """

    t: tuple[int, ...]
    s: tuple[int, ...]
    twist: InertialCharacter
    theta: int | None = None
    t_full: tuple[int, ...] = field(default=(), compare=False)


def _delta(shape: Shape, i: int) -> int:
    return 1 if i in shape else 0


def weight_parameters(tau: TameType, shape: Iterable[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(s_{J,i}, t_{J,i}) for every i in Z/f'Z."""
    shape = Shape(shape)
    params = tau.params
    p, fp = params.p, params.f_prime
    gam = gamma_digits(tau)
    s, t = [], []
    for i in range(fp):
        if (i - 1) % fp in shape:
            s.append(p - 1 - gam[i] - (1 - _delta(shape, i)))
            t.append(gam[i] + (1 - _delta(shape, i)))
        else:
            s.append(gam[i] - _delta(shape, i))
            t.append(0)
    return tuple(s), tuple(t)


def _p_power(params, i: int) -> int:
    """sigma_0-exponent of sigma_i o h."""
    fp = params.f_prime
    return pow(params.p, (fp - i) % fp, params.e_kk)


def jh_factor(tau: TameType, shape: Iterable[int]) -> SerreWeight:
    shape = Shape(shape)
    if shape not in p_tau(tau):
        raise NotInPTau(f"{sorted(shape)} is not in P_tau")
    params = tau.params
    p, f, fp, n = params.p, params.f, params.f_prime, params.e_kk
    s, t = weight_parameters(tau, shape)
    if any(not 0 <= x <= p - 1 for x in s + t):
        raise InternalInconsistency(f"weight parameters out of range: s={s}, t={t}")
    if params.kind is not Kind.CUSPIDAL:
        if all(x == p - 1 for x in t[:f]):
            raise InternalInconsistency("all t_j equal p-1")
        return SerreWeight(t[:f], s[:f], InertialCharacter(tau.k0p, 1), None, t)
    if any(s[i] != s[i + f] for i in range(f)):
        raise CuspidalFactorizationFailure(f"s is not f-periodic: {s}")
    exponent = (tau.k0p + sum(_p_power(params, i) * t[i] for i in range(fp))) % n
    norm = p**f + 1
    if exponent % norm:
        raise CuspidalFactorizationFailure(
            f"eta' * prod sigma'_i^t_i (exponent {exponent}) is not a norm"
        )
    theta = exponent // norm % (p**f - 1)
    return SerreWeight((0,) * f, s[:f], InertialCharacter(exponent, 1), theta, t)


def character_exponents_t(tau: TameType, shape: Iterable[int]) -> tuple[int, ...]:
    """t_i = gamma_i + delta_{J^c}(i) if i-1 in J, else 0."""
    return weight_parameters(tau, shape)[1]


def char_of_NJ_formula(tau: TameType, shape: Iterable[int]) -> InertialCharacter:
    """eta * (prod_i (sigma_i o h)^{t_i})^{-1}."""
    params = tau.params
    t = character_exponents_t(tau, shape)
    w = (tau.k0 - sum(_p_power(params, i) * ti for i, ti in enumerate(t))) % params.e_kk
    return InertialCharacter(w, 1)


def injectivity_check(tau: TameType) -> bool:
    params = tau.params
    p = params.p
    seen = set()
    for shape in p_tau(tau):
        t = character_exponents_t(tau, shape)
        if any(not 0 <= x <= p - 1 for x in t) or all(x == p - 1 for x in t):
            return False
        seen.add(char_of_NJ_formula(tau, shape))
    return len(seen) == len(p_tau(tau))


def central_char_check(tau: TameType, shape: Iterable[int]) -> bool:
    """Exponent form of the central character identity for sigma(tau)_J."""
    shape = Shape(shape)
    if shape not in p_tau(tau):
        raise NotInPTau(f"{sorted(shape)} is not in P_tau")
    params = tau.params
    p, f, fp = params.p, params.f, params.f_prime
    s, t = weight_parameters(tau, shape)
    if params.kind is not Kind.CUSPIDAL:
        mod = p**f - 1
        rhs = tau.k0p + sum(p ** ((f - i) % f) * (s[i] + 2 * t[i]) for i in range(f))
        return (tau.k0 - rhs) % mod == 0
    mod = p**fp - 1
    theta_tilde = tau.k0p + sum(_p_power(params, i) * t[i] for i in range(fp))
    omega = sum((1 + p**f) * _p_power(params, i) * s[i] for i in range(f))
    return (tau.k0 + tau.k0p - 2 * theta_tilde - omega) % mod == 0
