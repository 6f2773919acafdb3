"""Command-line front end: reports for one tame type and the verification sweep.

Documents go to stdout as JSON (or CSV tables); logs go to stderr.
Exit status: 0 success, 1 verification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Any, Callable, Sequence

from . import reports
from .errors import InternalInconsistency, InvalidSpec, TameBKError
from .reports import InstanceSpec
from .verify import run_sweep, type_label

log = logging.getLogger("tamebk")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

KIND_CHOICES = ("ps", "cuspidal", "scalar")
INSTANCE_FIELDS = ("p", "f", "e", "k0", "k0p")


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int)
    parser.add_argument("--f", type=int)
    parser.add_argument("--e", type=int)
    parser.add_argument("--kind", choices=KIND_CHOICES, default="ps")
    parser.add_argument("--k0", type=int)
    parser.add_argument("--k0p", type=int)
    parser.add_argument("--field-degree", type=int, default=None,
                        help="degree m of the coefficient field GF(p^m); default f'")
    parser.add_argument("--cbar", type=int, default=1)
    parser.add_argument("--trunc-extra", type=int, default=0)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tamebk",
        description="Rank-one Breuil-Kisin modules with tame descent data: reports and checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("report", "full document for one tame type"),
        ("shapes", "gamma digits, shapes, P_tau and maximal refined shapes"),
        ("ext", "Hom/Ext^1 dimensions for every refined shape"),
        ("kext", "ker-Ext dimensions for every maximal refined shape"),
        ("weights", "Jordan-Hoelder weight parameters for J in P_tau"),
        ("chars", "characters of N(J), computed two ways"),
        ("dieudonne", "F/V patterns against divisor membership"),
        ("irred", "base-change invariants and irreducible-locus bounds (cuspidal)"),
    ):
        _common(sub.add_parser(name, help=help_))
    ver = sub.add_parser("verify", help="run the consistency checks (default: the full small sweep)")
    _common(ver)
    ver.add_argument("--random-pairs", type=int, default=0,
                     help="also check this many seeded random pairs")
    ver.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return parser


def spec_from_args(args: argparse.Namespace) -> InstanceSpec:
    missing = [f"--{k}" for k in INSTANCE_FIELDS if getattr(args, k) is None]
    if missing:
        raise InvalidSpec(f"missing {' '.join(missing)}")
    spec = InstanceSpec(
        p=args.p, f=args.f, e=args.e, kind=args.kind, k0=args.k0, k0p=args.k0p,
        field_degree=args.field_degree, cbar=args.cbar, trunc_extra=args.trunc_extra,
        seed=args.seed,
    )
    if spec.trunc_extra < 0:
        raise InvalidSpec("--trunc-extra must be non-negative")
    return spec


def _flatten(row: dict[str, Any], prefix: str = "") -> dict[str, Any]:
    out: dict[str, Any] = {}
    for key, value in row.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(_flatten(value, name + "."))
        elif isinstance(value, (list, tuple)):
            out[name] = json.dumps(value, separators=(",", ":"))
        else:
            out[name] = value
    return out


def to_csv(rows: Sequence[dict[str, Any]]) -> str:
    flat = [_flatten(r) for r in rows]
    header: list[str] = []
    for r in flat:
        header.extend(k for k in r if k not in header)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    writer.writerows(flat)
    return buf.getvalue()


def to_json(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _merge_by_shape(*sections: list[dict[str, Any]]) -> list[dict[str, Any]]:
    merged: dict[tuple[int, ...], dict[str, Any]] = {}
    for section in sections:
        for row in section:
            key = tuple(row["shape"])
            target = merged.setdefault(key, {"shape": row["shape"]})
            target.update({k: v for k, v in row.items() if k != "shape"})
    return [merged[k] for k in sorted(merged, key=lambda s: (len(s), s))]


def _shape_rows(doc: dict[str, Any]) -> list[dict[str, Any]]:
    ptau = doc["p_tau"]
    return [
        {"shape": sh, "in_p_tau": sh in ptau, "maximal_refined": mr}
        for sh, mr in zip(doc["enumerate_shapes"], doc["maximal_refined"])
    ]


def _instance_command(
    build: Callable[[InstanceSpec], dict[str, Any]], rows_key: str | None
) -> Callable[[InstanceSpec, str], str]:
    def run(spec: InstanceSpec, fmt: str) -> str:
        doc = build(spec)
        if fmt == "json":
            return to_json(doc)
        rows = doc[rows_key] if rows_key else _shape_rows(doc)
        return to_csv(rows)

    return run


def _section(key: str, fn: Callable[[InstanceSpec], Any]) -> Callable[[InstanceSpec], dict[str, Any]]:
    def build(spec: InstanceSpec) -> dict[str, Any]:
        return {"instance": reports.instance_doc(spec), key: fn(spec)}

    return build


def _shapes(spec: InstanceSpec) -> dict[str, Any]:
    return {"instance": reports.instance_doc(spec), **reports.shapes_doc(spec.tau())}


def _chars(spec: InstanceSpec) -> dict[str, Any]:
    tau = spec.tau()
    return {
        "instance": reports.instance_doc(spec),
        "chars": reports.char_rows(tau, spec.field()),
        "injectivity_check": reports.injectivity_check(tau),
    }


def cmd_report(spec: InstanceSpec, fmt: str = "json") -> str:
    doc = reports.full_report(spec)
    if fmt == "json":
        return to_json(doc)
    return to_csv(_merge_by_shape(
        _shape_rows(doc), doc["ext"], doc["kext"], doc["chars"], doc["weights"],
        doc["dieudonne"], doc["irred"],
    ))


COMMANDS: dict[str, Callable[[InstanceSpec, str], str]] = {
    "report": cmd_report,
    "shapes": _instance_command(_shapes, None),
    "ext": _instance_command(
        _section("ext", lambda s: reports.ext_rows(s.tau(), s.field(), s.trunc_extra)), "ext"),
    "kext": _instance_command(
        _section("kext", lambda s: reports.kext_rows(s.tau(), s.field(), s.trunc_extra)), "kext"),
    "weights": _instance_command(_section("weights", lambda s: reports.weight_rows(s.tau())), "weights"),
    "chars": _instance_command(_chars, "chars"),
    "dieudonne": _instance_command(
        _section("dieudonne", lambda s: reports.dieudonne_rows(s.tau(), s.field(), s.cbar)), "dieudonne"),
    "irred": _instance_command(
        _section("irred", lambda s: reports.irred_rows(s.tau(), s.field())), "irred"),
}


def cmd_verify(args: argparse.Namespace) -> tuple[int, str]:
    if args.trunc_extra < 0:
        raise InvalidSpec("--trunc-extra must be non-negative")
    if args.random_pairs < 0:
        raise InvalidSpec("--random-pairs must be non-negative")
    if any(getattr(args, k) is not None for k in INSTANCE_FIELDS):
        spec = spec_from_args(args)
        types = [(spec.tau(), spec.field())]
        scope: Any = {"instance": type_label(spec.tau())}
    else:
        types = None
        scope = "default_sweep"
    report = run_sweep(
        types, trunc_extra=args.trunc_extra, fault=args.inject_fault,
        random_count=args.random_pairs, seed=args.seed, cbar=args.cbar,
    )
    log.info("%d checks, %d failures", report.checks, len(report.failures))
    if args.format == "csv":
        out = to_csv(report.failures) if report.failures else ""
    else:
        out = to_json({
            "scope": scope,
            "trunc_extra": args.trunc_extra,
            "random_pairs": args.random_pairs,
            "seed": args.seed,
            "checks": report.checks,
            "status": "ok" if report.ok else "fail",
            "failures": report.failures,
        })
    return (EXIT_OK if report.ok else EXIT_FAIL), out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "verify":
            status, out = cmd_verify(args)
        else:
            status, out = EXIT_OK, COMMANDS[args.command](spec_from_args(args), args.format)
    except InternalInconsistency as exc:
        log.error("internal inconsistency: %s", exc)
        return EXIT_FAIL
    except TameBKError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
