"""Consistency checks over tame types: every closed formula against its
independent computation.  Failures come back as plain records, so a
driver can print them or count them."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Iterable

from .base_ring import FieldCtx, field_create
from .ext_engine import (
    ext1_dim_formula,
    height1_subspace_dim,
    hom_to_u_quotient_dim,
    kext_dim,
    kext_dim_direct,
    kext_dim_maximal_formula,
    oracle_dims,
    trivial_kext_bound,
)
from .rank_one import Kind, RankOneBK, galois_char, hom_dim, unramified_twist
from .rank_two import (
    NoMap,
    base_change_x,
    build_extension,
    dieudonne_pattern,
    divisor_membership,
    generic_cocycle,
    irred_bound_ceiling,
    irred_dim_bound,
)
from .sweep import ambients, random_pairs, types_up_to_twist
from .types_shapes import (
    TameType,
    build_pair,
    enumerate_refined,
    enumerate_shapes,
    gamma_digits,
    gamma_star,
    is_transition,
    maximal_refined,
    p_tau,
    shape_residues,
)
from .weights_chars import central_char_check, char_of_NJ_formula, character_exponents_t, injectivity_check

log = logging.getLogger(__name__)

# where --inject-fault corrupts each truncated complex
FAULT_ENTRY = (0, 0)


@dataclass
class Report:
    checks: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def type_label(tau: TameType) -> dict[str, Any]:
    params = tau.params
    return {
        "p": params.p, "f": params.f, "e": params.e, "kind": params.kind.value,
        "k0": tau.k0, "k0p": tau.k0p,
    }


class Checker:
    def __init__(self, trunc_extra: int = 0, fault: bool = False):
        self.trunc_extra = trunc_extra
        self.perturb = FAULT_ENTRY if fault else None
        self.report = Report()

    def expect(self, check: str, where: dict[str, Any], expected: Any, got: Any) -> bool:
        self.report.checks += 1
        if expected == got:
            return True
        rec = {"check": check, **where, "expected": expected, "got": got}
        log.debug("check failed: %s", rec)
        self.report.failures.append(rec)
        return False

    def dims(self, m: RankOneBK, n: RankOneBK) -> dict[str, int]:
        return oracle_dims(m, n, self.trunc_extra, self.perturb)

    def pair(self, m: RankOneBK, n: RankOneBK, where: dict[str, Any]) -> dict[str, int]:
        """Formula against oracle for Hom, Ext^1 and the height-one subspace."""
        got = self.dims(m, n)
        self.expect("hom_dim", where, hom_dim(m, n), got["hom"])
        self.expect("ext1_dim_formula", where, ext1_dim_formula(m, n), got["ext1"])
        self.expect("height1_subspace_dim", where, height1_subspace_dim(m, n), got["height1"])
        if self.trunc_extra and self.perturb is None:
            self.expect("truncation_stability", where, oracle_dims(m, n), got)
        return got


def gamma_star_identity(tau: TameType, shape) -> list[int]:
    """Indices i at a transition where p[d-c]_{i-1} - [c-d]_i != gamma*_i (p^{f'}-1)."""
    params = tau.params
    p, fp, n = params.p, params.f_prime, params.e_kk
    c, d = shape_residues(tau, shape)
    gs = gamma_star(tau, shape)
    bad = []
    for i in range(fp):
        if not is_transition(params, shape, i):
            continue
        lhs = p * ((d[i - 1] - c[i - 1]) % n) - (c[i] - d[i]) % n
        if lhs != gs[i] * n:
            bad.append(i)
    return bad


def check_type(chk: Checker, tau: TameType, fld: FieldCtx, cbar: int = 1) -> None:
    params = tau.params
    label = type_label(tau)
    lam = fld.primitive_element()
    ptau = p_tau(tau)
    gam = gamma_digits(tau)

    if tau.is_scalar:
        chk.expect("p_tau_scalar", {"type": label}, [[]], [sorted(s) for s in ptau])
    elif all(g not in (0, params.p - 1) for g in gam[: params.f_prime]):
        chk.expect("p_tau_cardinality", {"type": label}, 2**params.f, len(ptau))
    chk.expect("injectivity_check", {"type": label}, True, injectivity_check(tau))

    x_patterns = set()
    for shape in enumerate_shapes(tau):
        where = {"type": label, "shape": sorted(shape)}
        if not tau.is_scalar:
            chk.expect("gamma_star_identity", where, [], gamma_star_identity(tau, shape))
        for rs in enumerate_refined(tau, shape):
            m, n = build_pair(tau, rs, fld)
            w = {**where, "y": list(rs.y)}
            chk.pair(m, n, w)
            mt = unramified_twist(m, lam)
            got = chk.pair(mt, n, {**w, "twist": lam})
            if rs == maximal_refined(tau, shape):
                chk.expect("maximal_shape_dim", {**w, "twist": lam}, params.e * params.f, got["ext1"])
                chk.expect("maximal_shape_dim_sum_y", {**w, "twist": lam}, sum(rs.y), got["ext1"])

        m, n = build_pair(tau, maximal_refined(tau, shape), fld)
        k = kext_dim(m, n)
        chk.expect("kext_dim_maximal_formula", where, kext_dim_maximal_formula(tau, shape), k)
        chk.expect("kext_dim_direct", where, k, kext_dim_direct(m, n, chk.trunc_extra))
        homu = hom_to_u_quotient_dim(m, n)
        chk.expect("trivial_kext_bound", where, True, homu <= trivial_kext_bound(params))
        chk.expect("char_of_NJ_formula", where, galois_char(n), char_of_NJ_formula(tau, shape))
        if shape in ptau:
            t = character_exponents_t(tau, shape)
            chk.expect("t_range", where, True, all(0 <= x <= params.p - 1 for x in t))
            chk.expect("central_char_check", where, True, central_char_check(tau, shape))

        if not tau.is_scalar:
            pat = dieudonne_pattern(build_extension(m, n, generic_cocycle(tau, m)), tau, cbar)
            fz, vz = pat.zero_sets(params.f)
            xz, yz = divisor_membership(tau, shape)
            chk.expect("divisor_membership_F", where, sorted(xz), sorted(fz))
            chk.expect("divisor_membership_V", where, sorted(yz), sorted(vz))
            one_zero = all((x == 0) != (y == 0) for x, y in zip(pat.F_consts, pat.V_consts))
            chk.expect("dieudonne_exactly_one_zero", where, True, one_zero)
            x_patterns.add(xz)

        if params.kind is Kind.CUSPIDAL:
            x = base_change_x(m, n)
            if x is not NoMap:
                d = irred_dim_bound(m, n)
                ok = isinstance(d, int) and d <= irred_bound_ceiling(params)
                chk.expect("irred_dim_bound_ceiling", where, True, ok)

    if not tau.is_scalar:
        chk.expect("divisor_pattern_injective", {"type": label}, len(enumerate_shapes(tau)), len(x_patterns))


def default_types() -> Iterable[tuple[TameType, FieldCtx]]:
    for params in ambients():
        fld = field_create(params.p, params.f_prime)
        for tau in types_up_to_twist(params):
            yield tau, fld


def run_sweep(
    types: Iterable[tuple[TameType, FieldCtx]] | None = None,
    trunc_extra: int = 0,
    fault: bool = False,
    random_count: int = 0,
    seed: int = 0,
    cbar: int = 1,
) -> Report:
    chk = Checker(trunc_extra, fault)
    for tau, fld in types if types is not None else default_types():
        log.info("checking %s", type_label(tau))
        check_type(chk, tau, fld, cbar)
    for idx, (m, n) in enumerate(random_pairs(random_count, seed) if random_count else []):
        chk.pair(m, n, {"random_pair": idx, "seed": seed, "M": repr(m), "N": repr(n)})
    return chk.report

