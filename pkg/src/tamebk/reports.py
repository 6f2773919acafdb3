"""Machine-readable documents for one tame type.

Every numeric field is keyed by the name of the function that produced it,
so a reader can trace each number back to one computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .base_ring import FieldCtx, field_create
from .errors import InvalidParams
from .ext_engine import (
    ext1_dim_formula,
    height1_subspace_dim,
    hom_ext_dims_oracle,
    hom_to_u_quotient_dim,
    kext_dim,
    kext_dim_direct,
    kext_dim_maximal_formula,
    trivial_kext_bound,
)
from .rank_one import (
    AmbientParams,
    InertialCharacter,
    Kind,
    RankOneBK,
    chars_equal,
    galois_char,
    hom_dim,
    unramified_twist,
)
from .rank_two import (
    base_change_x,
    build_extension,
    dieudonne_pattern,
    divisor_membership,
    generic_cocycle,
    irred_bound_ceiling,
    irred_dim_bound,
)
from .types_shapes import (
    RefinedShape,
    Shape,
    TameType,
    build_pair,
    enumerate_refined,
    enumerate_shapes,
    gamma_digits,
    gamma_star,
    make_type,
    maximal_refined,
    p_tau,
)
from .weights_chars import central_char_check, char_of_NJ_formula, injectivity_check, jh_factor


@dataclass(frozen=True)
class InstanceSpec:
    p: int
    f: int
    e: int
    kind: str
    k0: int
    k0p: int
    field_degree: int | None = None
    cbar: int = 1
    trunc_extra: int = 0
    seed: int = 0

    def params(self) -> AmbientParams:
        return AmbientParams(self.p, self.f, self.e, Kind.parse(self.kind))

    def tau(self) -> TameType:
        return make_type(self.params(), self.k0, self.k0p)

    def field(self) -> FieldCtx:
        params = self.params()
        m = self.field_degree or params.f_prime
        if m % params.f_prime:
            raise InvalidParams("the field degree must be divisible by f'")
        return field_create(self.p, m)


def shape_list(shape: Shape) -> list[int]:
    return sorted(shape)


def char_doc(chi: InertialCharacter) -> dict[str, int]:
    return {"w": chi.w, "unram": chi.unram}


def module_doc(m: RankOneBK) -> dict[str, list[int]]:
    return {"r": list(m.r), "a": list(m.a), "c": list(m.c)}


def instance_doc(spec: InstanceSpec) -> dict[str, Any]:
    tau = spec.tau()
    params = tau.params
    fld = spec.field()
    return {
        "p": params.p,
        "f": params.f,
        "e": params.e,
        "kind": params.kind.value,
        "k0": tau.k0,
        "k0p": tau.k0p,
        "f_prime": params.f_prime,
        "e_kk": params.e_kk,
        "e_prime": params.e_prime,
        "field": {"p": fld.p, "m": fld.m, "modulus": list(fld.modulus)},
    }


def generic_twist_scalar(fld: FieldCtx) -> int:
    """A unit other than 1, used to make the unramified parts differ."""
    return fld.primitive_element()


def refined_doc(rs: RefinedShape) -> dict[str, Any]:
    return {"shape": shape_list(rs.shape), "r": list(rs.r), "y": list(rs.y)}


def ext_rows(tau: TameType, fld: FieldCtx, trunc_extra: int = 0, maximal_only: bool = False) -> list[dict[str, Any]]:
    rows = []
    lam = generic_twist_scalar(fld)
    for shape in enumerate_shapes(tau):
        refined = [maximal_refined(tau, shape)] if maximal_only else enumerate_refined(tau, shape)
        for rs in refined:
            m, n = build_pair(tau, rs, fld)
            mt = unramified_twist(m, lam)
            hom, ext = hom_ext_dims_oracle(m, n, trunc_extra)
            hom_t, ext_t = hom_ext_dims_oracle(mt, n, trunc_extra)
            rows.append({
                "shape": shape_list(shape),
                "maximal_refined": rs == maximal_refined(tau, shape),
                "refined_shape": refined_doc(rs),
                "M": module_doc(m),
                "N": module_doc(n),
                "hom_dim": hom_dim(m, n),
                "ext1_dim_formula": ext1_dim_formula(m, n),
                "hom_ext_dims_oracle": {"dim_hom": hom, "dim_ext1": ext},
                "height1_subspace_dim": {
                    "formula": height1_subspace_dim(m, n, "formula"),
                    "oracle": height1_subspace_dim(m, n, "oracle", trunc_extra),
                },
                "unramified_twist": {
                    "lambda": lam,
                    "ext1_dim_formula": ext1_dim_formula(mt, n),
                    "hom_ext_dims_oracle": {"dim_hom": hom_t, "dim_ext1": ext_t},
                },
                "sum_y": sum(rs.y),
            })
    return rows


def kext_rows(tau: TameType, fld: FieldCtx, trunc_extra: int = 0) -> list[dict[str, Any]]:
    rows = []
    for shape in enumerate_shapes(tau):
        m, n = build_pair(tau, maximal_refined(tau, shape), fld)
        rows.append({
            "shape": shape_list(shape),
            "gamma_star": list(gamma_star(tau, shape)),
            "chars_equal": chars_equal(m, n),
            "hom_dim": hom_dim(m, n),
            "hom_to_u_quotient_dim": hom_to_u_quotient_dim(m, n),
            "kext_dim": kext_dim(m, n),
            "kext_dim_direct": kext_dim_direct(m, n, trunc_extra),
            "kext_dim_maximal_formula": kext_dim_maximal_formula(tau, shape),
            "trivial_kext_bound": trivial_kext_bound(tau.params),
        })
    return rows


def weight_rows(tau: TameType) -> list[dict[str, Any]]:
    rows = []
    for shape in p_tau(tau):
        wt = jh_factor(tau, shape)
        rows.append({
            "shape": shape_list(shape),
            "jh_factor": {
                "s": list(wt.s),
                "t": list(wt.t),
                "twist": char_doc(wt.twist),
                "theta": wt.theta,
                "t_full": list(wt.t_full),
            },
            "central_char_check": central_char_check(tau, shape),
        })
    return rows


def char_rows(tau: TameType, fld: FieldCtx) -> list[dict[str, Any]]:
    rows = []
    ptau = p_tau(tau)
    for shape in enumerate_shapes(tau):
        _, n = build_pair(tau, maximal_refined(tau, shape), fld)
        rows.append({
            "shape": shape_list(shape),
            "in_p_tau": shape in ptau,
            "char_of_NJ_formula": char_doc(char_of_NJ_formula(tau, shape)),
            "galois_char": char_doc(galois_char(n)),
        })
    return rows


def dieudonne_rows(tau: TameType, fld: FieldCtx, cbar: int = 1) -> list[dict[str, Any]]:
    if tau.is_scalar:
        return []
    rows = []
    f = tau.params.f
    for shape in enumerate_shapes(tau):
        m, n = build_pair(tau, maximal_refined(tau, shape), fld)
        ext = build_extension(m, n, generic_cocycle(tau, m))
        pat = dieudonne_pattern(ext, tau, cbar)
        f_zero, v_zero = pat.zero_sets(f)
        x_zero, y_zero = divisor_membership(tau, shape)
        rows.append({
            "shape": shape_list(shape),
            "dieudonne_pattern": {
                "F_consts": list(pat.F_consts),
                "V_consts": list(pat.V_consts),
                "F_zero": sorted(f_zero),
                "V_zero": sorted(v_zero),
            },
            "divisor_membership": {"X_zero": sorted(x_zero), "Y_zero": sorted(y_zero)},
        })
    return rows


def irred_rows(tau: TameType, fld: FieldCtx) -> list[dict[str, Any]]:
    if tau.params.kind is not Kind.CUSPIDAL:
        return []
    rows = []
    for shape in enumerate_shapes(tau):
        m, n = build_pair(tau, maximal_refined(tau, shape), fld)
        x = base_change_x(m, n)
        bound = irred_dim_bound(m, n)
        rows.append({
            "shape": shape_list(shape),
            "base_change_x": list(x) if isinstance(x, tuple) else repr(x),
            "irred_dim_bound": bound if isinstance(bound, int) else repr(bound),
            "irred_bound_ceiling": irred_bound_ceiling(tau.params),
        })
    return rows


def shapes_doc(tau: TameType) -> dict[str, Any]:
    return {
        "gamma_digits": list(gamma_digits(tau)),
        "enumerate_shapes": [shape_list(s) for s in enumerate_shapes(tau)],
        "p_tau": [shape_list(s) for s in p_tau(tau)],
        "maximal_refined": [refined_doc(maximal_refined(tau, s)) for s in enumerate_shapes(tau)],
    }


def full_report(spec: InstanceSpec) -> dict[str, Any]:
    tau = spec.tau()
    fld = spec.field()
    doc: dict[str, Any] = {"instance": instance_doc(spec)}
    doc.update(shapes_doc(tau))
    doc["ext"] = ext_rows(tau, fld, spec.trunc_extra, maximal_only=True)
    doc["kext"] = kext_rows(tau, fld, spec.trunc_extra)
    doc["weights"] = weight_rows(tau)
    doc["chars"] = char_rows(tau, fld)
    doc["injectivity_check"] = injectivity_check(tau)
    doc["dieudonne"] = dieudonne_rows(tau, fld, spec.cbar)
    doc["irred"] = irred_rows(tau, fld)
    return doc
