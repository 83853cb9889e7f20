"""Command-line front end and report serialization.

Subcommands:

    invariants  closed-form structure of V(Z_{p^e}G), no enumeration
    verify      run verification checks on one instance
    suite       run a catalog of instances, write a JSON summary
    order       order of a normalized unit given by its coefficients
    reduce      coefficientwise reduction of an element to a smaller e
    dimsub      dimension subgroup G ∩ (1 + w^n), formula and oracle

Exit codes: 0 success / all checks pass, 1 at least one check failed,
2 usage, budget or validation error.

JSON is the machine contract: reports are emitted with sorted keys, no
wall-clock data, and orders as (base, exponent) pairs, so identical
invocations (same seed, any worker count) are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from typing import Optional, Sequence

from . import oracle, theory
from .oracle import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    VerificationReport,
    plan_checks,
    verify_check,
)
from .pgroup import GroupSpec
from .ring import RingElement, RingSpec, is_normalized_unit, reduce_mod, unit_order
from .theory import AbelianInvariants, structure_report

_CHECK_SEQUENCE = (
    "theorem1",
    "theorem2",
    "lemma2",
    "lemma3",
    "lemma4",
    "lemma5",
    "lemma6",
    "lemma9",
)


@dataclass(frozen=True)
class InstanceReport:
    """One (G, e) instance: closed-form structure plus check outcomes."""

    group: GroupSpec
    e: int
    v_order_exp: int
    invariants: AbelianInvariants
    checks: tuple[VerificationReport, ...] = ()

    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)


@dataclass(frozen=True)
class SuiteInstance:
    group: GroupSpec
    e: int
    formula_only: bool = False


@dataclass(frozen=True)
class SuiteConfig:
    instances: tuple[SuiteInstance, ...]
    checks: tuple[str, ...] = _CHECK_SEQUENCE
    budget: int = DEFAULT_BUDGET
    workers: int = 1
    seed: int = 0
    out: Optional[str] = None


# ---------------------------------------------------------------------------
# Serialization.


def _instance_to_json(r: InstanceReport) -> dict:
    return {
        "group": {"p": r.group.p, "lambda": list(r.group.lambdas)},
        "e": r.e,
        "v_order": {"base": r.group.p, "exp": r.v_order_exp},
        "invariants": r.invariants.to_pairs(),
        "checks": [
            {
                "id": c.check_id,
                "verdict": c.verdict,
                "predicted": c.predicted,
                "observed": c.observed,
                "seed": c.seed,
            }
            for c in r.checks
        ],
    }


def _instance_from_json(d: dict) -> InstanceReport:
    group = GroupSpec(d["group"]["p"], tuple(d["group"]["lambda"]))
    checks = tuple(
        VerificationReport(
            check_id=c["id"],
            group=group,
            e=d["e"],
            predicted=c["predicted"],
            observed=c["observed"],
            verdict=c["verdict"],
            seed=c["seed"],
        )
        for c in d["checks"]
    )
    return InstanceReport(
        group=group,
        e=d["e"],
        v_order_exp=d["v_order"]["exp"],
        invariants=AbelianInvariants.from_pairs(d["invariants"]),
        checks=checks,
    )


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def emit_report(reports: Sequence[InstanceReport], fmt: str = "json") -> str:
    """Serialize instance reports; JSON is byte-stable, text is for humans."""
    if fmt == "json":
        total = sum(len(r.checks) for r in reports)
        failures = sum(
            1 for r in reports for c in r.checks if not c.passed
        )
        payload = {
            "instances": [_instance_to_json(r) for r in reports],
            "summary": {
                "total_checks": total,
                "failures": failures,
                "all_pass": failures == 0,
            },
        }
        return _dump_json(payload)
    if fmt == "text":
        lines = []
        for r in reports:
            p = r.group.p
            lines.append(f"{r.group.to_text()};e={r.e}")
            lines.append(f"  |V| = {p}^{r.v_order_exp}")
            lines.append(f"  V ≅ {r.invariants.describe(p)}")
            for c in r.checks:
                lines.append(f"  {c.check_id}: {c.verdict}  ({c.wall_time:.3f}s)")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def parse_report_json(text: str) -> list[InstanceReport]:
    """Inverse of emit_report(..., 'json'), up to wall-clock data."""
    payload = json.loads(text)
    return [_instance_from_json(d) for d in payload["instances"]]


def _write_atomic(path: str, data: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".punits-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# Suite catalog and runner.

_CATALOG = (
    # (p, lambdas, max size exponent of |V| = p^{e(|G|-1)})
    (2, ((1,), (2,), (3,), (1, 1), (1, 2), (1, 1, 1), (2, 2)), 20),
    (3, ((1,), (2,), (1, 1)), 13),
    (5, ((1,),), 12),
)


def default_suite_config(
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    seed: int = 0,
    out: Optional[str] = None,
) -> SuiteConfig:
    """The built-in catalog: every desk-scale (p, lambda, e) instance.

    Instances whose |V| exceeds the enumeration budget still appear (their
    closed forms and the non-enumerative checks run); the enumeration
    checks are skipped for them by the planner.
    """
    instances = []
    for p, lambda_lists, cap_exp in _CATALOG:
        for lams in lambda_lists:
            group = GroupSpec(p, lams)
            per_e = group.order() - 1
            for e in range(1, cap_exp // per_e + 1):
                instances.append(SuiteInstance(group=group, e=e))
    return SuiteConfig(
        instances=tuple(instances),
        budget=budget,
        workers=workers,
        seed=seed,
        out=out,
    )


def load_suite_config(path: str) -> SuiteConfig:
    with open(path) as handle:
        raw = json.load(handle)
    instances = []
    for item in raw.get("instances", []):
        if "group" in item:
            group = GroupSpec.from_text(item["group"])
        else:
            group = GroupSpec(item["p"], tuple(item["lambda"]))
        instances.append(
            SuiteInstance(
                group=group,
                e=int(item["e"]),
                formula_only=bool(item.get("formula_only", False)),
            )
        )
    if not instances:
        raise ValueError(f"suite config {path!r} lists no instances")
    return SuiteConfig(
        instances=tuple(instances),
        checks=tuple(raw.get("checks", _CHECK_SEQUENCE)),
        budget=int(raw.get("budget", DEFAULT_BUDGET)),
        workers=int(raw.get("workers", 1)),
        seed=int(raw.get("seed", 0)),
        out=raw.get("out"),
    )


def run_suite(config: SuiteConfig) -> list[InstanceReport]:
    reports = []
    enabled = set(config.checks)
    for inst in config.instances:
        rep = structure_report(inst.group, inst.e)
        checks = []
        if not inst.formula_only:
            rs = RingSpec(inst.group, inst.e)
            for check, params in plan_checks(rs, enabled, config.budget):
                checks.append(
                    verify_check(
                        check,
                        rs,
                        params,
                        budget=config.budget,
                        seed=config.seed,
                        workers=config.workers,
                    )
                )
        reports.append(
            InstanceReport(
                group=inst.group,
                e=inst.e,
                v_order_exp=rep.v_order_exp,
                invariants=rep.v_invariants,
                checks=tuple(checks),
            )
        )
    return reports


# ---------------------------------------------------------------------------
# Argument parsing and subcommands.


def _add_instance_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--p", type=int, required=True, help="prime p")
    sub.add_argument(
        "--lambda",
        dest="lambdas",
        required=True,
        help="comma-separated cyclic factor exponents, e.g. 1,2",
    )
    sub.add_argument("--e", type=int, required=True, help="coefficient ring is Z_{p^e}")


def _parse_group(args) -> GroupSpec:
    return GroupSpec(args.p, tuple(int(x) for x in args.lambdas.split(",")))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="punits",
        description="Structure of the normalized unit group V(Z_{p^e}G) "
        "of a finite abelian p-group, with exhaustive verification.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("invariants", help="closed-form invariants of V")
    _add_instance_args(sub)
    sub.add_argument("--format", choices=("text", "json"), default="text")

    sub = subs.add_parser("verify", help="run verification checks")
    _add_instance_args(sub)
    sub.add_argument("--checks", help="comma-separated check ids (default: all applicable)")
    sub.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sub.add_argument("--workers", type=int, default=1)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--out", help="write the JSON report to this file (atomic)")
    sub.add_argument("--format", choices=("text", "json"), default="text")

    sub = subs.add_parser("suite", help="run the default or a configured catalog")
    sub.add_argument("--config", help="JSON suite configuration file")
    sub.add_argument("--budget", type=int)
    sub.add_argument("--workers", type=int)
    sub.add_argument("--seed", type=int)
    sub.add_argument("--out", help="write the JSON summary to this file (atomic)")

    sub = subs.add_parser("order", help="order of a normalized unit")
    _add_instance_args(sub)
    sub.add_argument("--coeffs", required=True, help="comma-separated residues")
    sub.add_argument("--format", choices=("text", "json"), default="text")

    sub = subs.add_parser("reduce", help="reduce an element mod p^e_target")
    _add_instance_args(sub)
    sub.add_argument("--coeffs", required=True, help="comma-separated residues")
    sub.add_argument("--to", type=int, required=True, help="target exponent e")

    sub = subs.add_parser("dimsub", help="dimension subgroup G ∩ (1 + w^n)")
    _add_instance_args(sub)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--oracle", action="store_true", help="cross-check by Howell membership")

    return parser


def _cmd_invariants(args) -> int:
    group = _parse_group(args)
    rep = structure_report(group, args.e)
    instance = InstanceReport(
        group=group,
        e=args.e,
        v_order_exp=rep.v_order_exp,
        invariants=rep.v_invariants,
    )
    if args.format == "json":
        sys.stdout.write(emit_report([instance], "json"))
    else:
        p = group.p
        print(f"{group.to_text()};e={args.e}")
        print(f"|V| = {p}^{rep.v_order_exp}")
        print(f"V ≅ {rep.v_invariants.describe(p)}")
        print(f"s = {list(rep.s)}, l = {rep.l}, p-rank of V(Z_pG) = {rep.p_rank}")
        print(f"|V[{p}]| = {p}^{rep.v_p_torsion_exp}")
    return 0


def _cmd_verify(args) -> int:
    group = _parse_group(args)
    rs = RingSpec(group, args.e)
    enabled = None
    if args.checks:
        enabled = set(args.checks.split(","))
        unknown = enabled - set(oracle.CHECK_IDS)
        if unknown:
            raise ValueError(f"unknown check ids: {', '.join(sorted(unknown))}")
    plans = plan_checks(rs, enabled, args.budget)
    if enabled:
        planned = {c for c, _ in plans}
        missing = enabled - planned
        if missing:
            raise ValueError(
                f"checks not applicable to this instance (or over budget): "
                f"{', '.join(sorted(missing))}"
            )
    rep = structure_report(group, args.e)
    checks = tuple(
        verify_check(
            check, rs, params, budget=args.budget, seed=args.seed, workers=args.workers
        )
        for check, params in plans
    )
    instance = InstanceReport(
        group=group,
        e=args.e,
        v_order_exp=rep.v_order_exp,
        invariants=rep.v_invariants,
        checks=checks,
    )
    payload = emit_report([instance], "json")
    if args.out:
        _write_atomic(args.out, payload)
    if args.format == "json":
        sys.stdout.write(payload)
    else:
        sys.stdout.write(emit_report([instance], "text"))
    return 0 if instance.all_pass() else 1


def _cmd_suite(args) -> int:
    if args.config:
        config = load_suite_config(args.config)
    else:
        config = default_suite_config()
    overrides = {}
    for name in ("budget", "workers", "seed", "out"):
        value = getattr(args, name)
        if value is not None:
            overrides[name] = value
    if overrides:
        config = SuiteConfig(
            instances=config.instances,
            checks=config.checks,
            budget=overrides.get("budget", config.budget),
            workers=overrides.get("workers", config.workers),
            seed=overrides.get("seed", config.seed),
            out=overrides.get("out", config.out),
        )
    reports = run_suite(config)
    payload = emit_report(reports, "json")
    if config.out:
        _write_atomic(config.out, payload)
        failures = sum(1 for r in reports for c in r.checks if not c.passed)
        total = sum(len(r.checks) for r in reports)
        print(
            f"{len(reports)} instances, {total} checks, {failures} failures "
            f"-> {config.out}"
        )
    else:
        sys.stdout.write(payload)
    return 0 if all(r.all_pass() for r in reports) else 1


def _cmd_order(args) -> int:
    group = _parse_group(args)
    rs = RingSpec(group, args.e)
    coeffs = tuple(int(x) for x in args.coeffs.split(","))
    element = RingElement(rs, coeffs)
    if not is_normalized_unit(element):
        raise ValueError("element is not a normalized unit (augmentation != 1)")
    order = unit_order(element)
    if args.format == "json":
        exp = 0
        while group.p ** exp != order:
            exp += 1
        sys.stdout.write(_dump_json({"order": {"base": group.p, "exp": exp}}))
    else:
        print(order)
    return 0


def _cmd_reduce(args) -> int:
    group = _parse_group(args)
    rs = RingSpec(group, args.e)
    coeffs = tuple(int(x) for x in args.coeffs.split(","))
    element = RingElement(rs, coeffs)
    print(reduce_mod(element, args.to).to_text())
    return 0


def _cmd_dimsub(args) -> int:
    group = _parse_group(args)
    index = theory.dimension_subgroup(group, args.e, args.n)
    p = group.p
    if index == 0:
        print(f"D_{args.n} = G")
    else:
        print(f"D_{args.n} = G^{p ** index}")
    if not args.oracle:
        return 0
    rs = RingSpec(group, args.e)
    report = verify_check("lemma3", rs, {"n": args.n})
    print(f"oracle agreement: {report.verdict}")
    return 0 if report.passed else 1


_COMMANDS = {
    "invariants": _cmd_invariants,
    "verify": _cmd_verify,
    "suite": _cmd_suite,
    "order": _cmd_order,
    "reduce": _cmd_reduce,
    "dimsub": _cmd_dimsub,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return _COMMANDS[args.command](args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
