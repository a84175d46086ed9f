"""Per-group profiling and theorem-rule evaluation over a catalog.

Each catalog group gets a GroupProfile (order, flags, exponent data, Schur
multiplier, exterior-square exponent) and a report stating, for every rule
R1..R14, whether its hypothesis applies and whether its divisibility
conclusion holds.  A violated rule is a finding to surface, not an internal
error.  Runs are deterministic: output is ordered by group name regardless of
worker count.
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .bounds import ceil_log_ratio, thm61_bound, thm65_bound
from .catalog import CatalogEntry, import_file, load_bundled
from .multiplier import (
    DEFAULT_ORACLE_CAP,
    AbelianInvariants,
    exterior_exponent,
    schur_multiplier,
)
from .pcgroup import EnumerationCapExceeded, GroupFlags, PcPresentation, group_of
from .suites import SuiteReport, run_suites

RULE_IDS = (
    "R1", "R2", "R3", "R4", "R5", "R6", "R7",
    "R8", "R9", "R10", "R11", "R12", "R13", "R14",
)


@dataclass(frozen=True)
class RuleResult:
    status: str  # holds | violated | not_applicable | skipped(...) | observed
    witness: Optional[str] = None


@dataclass(frozen=True)
class GroupProfile:
    name: str
    order: int
    prime: Optional[int]
    flags: GroupFlags
    exponent: int
    nilpotency_class: int
    derived_length: int
    central_quotient_exponent: int
    gamma2_exponent: int
    multiplier: AbelianInvariants
    multiplier_crosscheck: str  # "bar" once cross-checked, else "skipped(...)"
    exterior_exponent: Optional[int]
    exterior_skip_reason: Optional[str]
    r8_m: Optional[int]
    r8_gamma_exponent: Optional[int]
    r8_quotient_exponent: Optional[int]
    suites: tuple[SuiteReport, ...] = field(default_factory=tuple)


def profile(
    pres: PcPresentation,
    oracle_cap: int = DEFAULT_ORACLE_CAP,
    with_suites: bool = True,
) -> GroupProfile:
    group = group_of(pres)
    flags = group.classify()
    p = pres.prime
    lcs = group.lower_central_series()
    gamma2 = lcs[1] if len(lcs) > 1 else group.trivial_subgroup()
    gamma2_exp = gamma2.exponent()
    central_quot_exp = group.exponent(modulo=group.center())

    if group.order <= oracle_cap:
        mult = schur_multiplier(pres, method="both", oracle_cap=oracle_cap)
        crosscheck = "bar"
    else:
        mult = schur_multiplier(pres, method="tails")
        crosscheck = f"skipped(order {group.order} exceeds oracle cap {oracle_cap})"

    ext: Optional[int]
    ext_skip: Optional[str]
    try:
        ext = exterior_exponent(pres)
        ext_skip = None
    except EnumerationCapExceeded as exc:
        ext = None
        ext_skip = f"cover enumeration cap: {exc}"

    c = flags.nilpotency_class
    r8_m = r8_gamma = r8_quot = None
    if p is not None and p % 2 == 1 and c >= 3:
        m = -((c + 1) // -3)
        if 2 <= m <= p + 1:
            gamma_m = lcs[m - 1] if m - 1 < len(lcs) else group.trivial_subgroup()
            r8_m = m
            r8_gamma = gamma_m.exponent()
            r8_quot = group.exponent(modulo=gamma_m)

    suites = tuple(run_suites(group, flags)) if with_suites else ()

    prof = GroupProfile(
        name=pres.name,
        order=group.order,
        prime=p,
        flags=flags,
        exponent=flags.exponent,
        nilpotency_class=c,
        derived_length=flags.derived_length,
        central_quotient_exponent=central_quot_exp,
        gamma2_exponent=gamma2_exp,
        multiplier=mult,
        multiplier_crosscheck=crosscheck,
        exterior_exponent=ext,
        exterior_skip_reason=ext_skip,
        r8_m=r8_m,
        r8_gamma_exponent=r8_gamma,
        r8_quotient_exponent=r8_quot,
        suites=suites,
    )
    if ext is not None:
        if ext % mult.exponent or ext % gamma2_exp:
            raise AssertionError(
                f"{pres.name}: exterior exponent {ext} not divisible by "
                f"exp(M)={mult.exponent} and exp(gamma2)={gamma2_exp}"
            )
    return prof


def _divides(a: int, b: int) -> bool:
    return b % a == 0


def _ext_conclusion(prof: GroupProfile, bound: int, bound_desc: str) -> RuleResult:
    if prof.exterior_exponent is None:
        return RuleResult(f"skipped({prof.exterior_skip_reason})")
    ok = _divides(prof.exterior_exponent, bound)
    witness = f"e(G∧G)={prof.exterior_exponent} vs {bound_desc}={bound}"
    return RuleResult("holds" if ok else "violated", witness)


def _mult_conclusion(prof: GroupProfile, bound: int, bound_desc: str) -> RuleResult:
    em = prof.multiplier.exponent
    ok = _divides(em, bound)
    witness = f"e(M)={em} vs {bound_desc}={bound}"
    return RuleResult("holds" if ok else "violated", witness)


def evaluate_rules(
    prof: GroupProfile, selection: Optional[list[str]] = None
) -> dict[str, RuleResult]:
    p = prof.prime
    c = prof.nilpotency_class
    e = prof.exponent
    odd_p = p is not None and p % 2 == 1
    results: dict[str, RuleResult] = {}

    def na(why: str) -> RuleResult:
        return RuleResult("not_applicable", why)

    # R1: class exactly p -> e(gamma2) | e(G/Z)
    if p is not None and c == p:
        ok = _divides(prof.gamma2_exponent, prof.central_quotient_exponent)
        results["R1"] = RuleResult(
            "holds" if ok else "violated",
            f"e(γ₂)={prof.gamma2_exponent} vs e(G/Z)={prof.central_quotient_exponent}",
        )
    else:
        results["R1"] = na(f"class {c} != p")

    # R2: p odd, class <= p+1 (deliberately widened from exactly p+1),
    # p^n-central -> e(gamma2) | p^n
    if odd_p and c <= p + 1:
        bound = p**prof.flags.central_pn
        ok = _divides(prof.gamma2_exponent, bound)
        results["R2"] = RuleResult(
            "holds" if ok else "violated",
            f"e(γ₂)={prof.gamma2_exponent} vs p^{prof.flags.central_pn}={bound}",
        )
    else:
        results["R2"] = na("needs odd p and class <= p+1")

    # R3: p odd, class <= p -> e(G∧G) | e(G)
    if odd_p and c <= p:
        results["R3"] = _ext_conclusion(prof, e, "e(G)")
    else:
        results["R3"] = na("needs odd p and class <= p")

    # R4: p odd, class exactly 5 -> e(G∧G) | e(G)
    if odd_p and c == 5:
        results["R4"] = _ext_conclusion(prof, e, "e(G)")
    else:
        results["R4"] = na("needs odd p and class exactly 5")

    # R5: p odd, powerful -> e(G∧G) | e(G)
    if odd_p and prof.flags.is_powerful:
        results["R5"] = _ext_conclusion(prof, e, "e(G)")
    else:
        results["R5"] = na("needs odd p and powerful")

    # R6: p odd, condition (1) or condition (2) -> e(G∧G) | e(G)
    if odd_p and (prof.flags.condition1_m is not None or prof.flags.condition2):
        results["R6"] = _ext_conclusion(prof, e, "e(G)")
    else:
        results["R6"] = na("needs odd p and condition (1) or (2)")

    # R7: e(G) odd, class > 1 -> e(G∧G) | e(G)^ceil(log3((c+1)/2))
    if e % 2 == 1 and c > 1:
        n = thm61_bound(c)
        results["R7"] = _ext_conclusion(prof, e**n, f"e(G)^{n}")
    else:
        results["R7"] = na("needs odd exponent and class > 1")

    # R8: p odd, m = ceil((c+1)/3) in [2, p+1] -> e(G∧G) | e(γ_m) e(G/γ_m)
    if prof.r8_m is not None:
        bound = prof.r8_gamma_exponent * prof.r8_quotient_exponent
        results["R8"] = _ext_conclusion(
            prof, bound,
            f"e(γ_{prof.r8_m})·e(G/γ_{prof.r8_m})"
            f"={prof.r8_gamma_exponent}·{prof.r8_quotient_exponent}",
        )
    else:
        results["R8"] = na("needs odd p and 2 <= ceil((c+1)/3) <= p+1")

    # R9: p odd -> e(G∧G) | e(G)^ceil(log_{p-1}(c+1))
    if odd_p:
        n = ceil_log_ratio(p - 1, c + 1, 1)
        results["R9"] = _ext_conclusion(prof, e**n, f"e(G)^{n}")
    else:
        results["R9"] = na("needs odd p")

    # R10: p odd, class >= p -> e(G∧G) | e(G)^(1+ceil(log_{p-1}((c+1)/(p+1))))
    if odd_p and c >= p:
        n = thm65_bound(c, p)
        results["R10"] = _ext_conclusion(prof, e**n, f"e(G)^{n}")
    else:
        results["R10"] = na("needs odd p and class >= p")

    # R11: p-central metabelian -> e(M) | e(G)
    if prof.flags.central_pn <= 1 and prof.flags.is_metabelian:
        results["R11"] = _mult_conclusion(prof, e, "e(G)")
    else:
        results["R11"] = na("needs p-central and metabelian")

    # R12: derived length d -> e(M) | e(G)^d (odd e) or 2^{d-1} e(G)^d (even e)
    d = max(prof.derived_length, 1)
    if e % 2 == 1:
        results["R12"] = _mult_conclusion(prof, e**d, f"e(G)^{d}")
    else:
        bound = 2 ** (d - 1) * e**d
        results["R12"] = _mult_conclusion(prof, bound, f"2^{d - 1}·e(G)^{d}")

    # R13: conjecture, all p-groups -> e(M) | p e(G)
    if p is not None:
        results["R13"] = _mult_conclusion(prof, p * e, "p·e(G)")
    else:
        results["R13"] = na("needs a p-group")

    # R14: structural suites
    applicable = [s for s in prof.suites if s.applicable]
    if not prof.suites:
        results["R14"] = RuleResult("skipped(suites not run)")
    elif not applicable:
        results["R14"] = na("no suite hypothesis satisfied")
    else:
        failed = [s for s in applicable if not s.passed]
        if failed:
            results["R14"] = RuleResult(
                "violated",
                "; ".join(f"{s.suite_id}: {s.counterexample}" for s in failed),
            )
        else:
            results["R14"] = RuleResult(
                "holds", "passed: " + ", ".join(s.suite_id for s in applicable)
            )

    # Non-failing observation on regular groups: does e(G∧G) | e(G)?
    if prof.flags.is_regular is True:
        if prof.exterior_exponent is None:
            results["OBS"] = RuleResult("observed", "exterior exponent unavailable")
        else:
            verdict = "yes" if _divides(prof.exterior_exponent, e) else "no"
            results["OBS"] = RuleResult(
                "observed",
                f"e(G∧G)={prof.exterior_exponent} divides e(G)={e}: {verdict}",
            )

    if selection is not None:
        keep = set(selection) | {"OBS"}
        results = {k: v for k, v in results.items() if k in keep}
    return results


# -- catalog runs -------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    catalog_paths: tuple[str, ...] = ()
    rules: Optional[tuple[str, ...]] = None  # None = all
    max_order: Optional[int] = None
    oracle_cap: int = DEFAULT_ORACLE_CAP
    strict: bool = False
    fmt: str = "text"  # text | json | csv
    jobs: int = 1
    include_bundled: bool = True


def record_for(
    pres: PcPresentation,
    oracle_cap: int = DEFAULT_ORACLE_CAP,
    rules: Optional[tuple[str, ...]] = None,
) -> dict:
    """JSON-ready report for one group."""
    prof = profile(pres, oracle_cap=oracle_cap)
    evaluated = evaluate_rules(prof, list(rules) if rules is not None else None)
    flags = prof.flags
    return {
        "name": prof.name,
        "order": prof.order,
        "prime": prof.prime,
        "class": prof.nilpotency_class,
        "derived_length": prof.derived_length,
        "exponent": prof.exponent,
        "flags": {
            "is_regular": flags.is_regular,
            "is_powerful": flags.is_powerful,
            "condition1_m": flags.condition1_m,
            "condition2": flags.condition2,
            "central_pn": flags.central_pn,
            "is_metabelian": flags.is_metabelian,
        },
        "multiplier": list(prof.multiplier.torsion),
        "multiplier_crosscheck": prof.multiplier_crosscheck,
        "exterior_exponent": (
            prof.exterior_exponent
            if prof.exterior_exponent is not None
            else f"skipped({prof.exterior_skip_reason})"
        ),
        "rules": {
            rule: {"status": res.status, "witness": res.witness}
            for rule, res in evaluated.items()
        },
    }


def _worker(args: tuple) -> dict:
    pres, oracle_cap, rules = args
    return record_for(pres, oracle_cap=oracle_cap, rules=rules)


def gather_entries(config: RunConfig) -> list[CatalogEntry]:
    entries: list[CatalogEntry] = []
    if config.include_bundled:
        entries.extend(load_bundled())
    for path in config.catalog_paths:
        entries.extend(import_file(path))
    seen: set[str] = set()
    for entry in entries:
        if entry.name in seen:
            raise ValueError(f"duplicate group name across catalogs: {entry.name}")
        seen.add(entry.name)
    if config.max_order is not None:
        entries = [e for e in entries if e.order <= config.max_order]
    return sorted(entries, key=lambda e: e.name)


@dataclass
class RunResult:
    records: list[dict]
    summary: dict[str, dict[str, int]]
    exit_code: int

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(
                {"groups": self.records, "summary": self.summary}, indent=2
            )
        if fmt == "csv":
            lines = ["group,order,rule,status,witness"]
            for rec in self.records:
                for rule, res in rec["rules"].items():
                    witness = (res["witness"] or "").replace(",", ";")
                    lines.append(
                        f"{rec['name']},{rec['order']},{rule},{res['status']},{witness}"
                    )
            return "\n".join(lines)
        lines = []
        for rec in self.records:
            mult = rec["multiplier"]
            lines.append(
                f"{rec['name']} (order {rec['order']}, class {rec['class']}, "
                f"e(G)={rec['exponent']}): M={mult or '[]'}, "
                f"e(G∧G)={rec['exterior_exponent']}"
            )
            for rule, res in rec["rules"].items():
                if res["status"] == "not_applicable":
                    continue
                suffix = f" [{res['witness']}]" if res["witness"] else ""
                lines.append(f"  {rule}: {res['status']}{suffix}")
        lines.append("")
        lines.append("summary (rule: holds/violated/not_applicable/skipped):")
        for rule, counts in self.summary.items():
            line = (
                f"  {rule}: {counts['holds']}/{counts['violated']}"
                f"/{counts['not_applicable']}/{counts['skipped']}"
            )
            if counts.get("vacuous"):
                line += "  (vacuous on this catalog: hypothesis never satisfied)"
            lines.append(line)
        return "\n".join(lines)


def run(config: RunConfig) -> RunResult:
    entries = gather_entries(config)
    tasks = [(e.presentation, config.oracle_cap, config.rules) for e in entries]
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            records = list(pool.map(_worker, tasks))
    else:
        records = [_worker(t) for t in tasks]
    records.sort(key=lambda r: r["name"])

    summary: dict[str, dict[str, int]] = {}
    any_violated = False
    any_skipped = False
    for rec in records:
        if rec["multiplier_crosscheck"].startswith("skipped"):
            any_skipped = True
        if isinstance(rec["exterior_exponent"], str):
            any_skipped = True
        for rule, res in rec["rules"].items():
            if rule == "OBS":
                continue
            counts = summary.setdefault(
                rule, {"holds": 0, "violated": 0, "not_applicable": 0, "skipped": 0}
            )
            status = res["status"]
            if status == "holds":
                counts["holds"] += 1
            elif status == "violated":
                counts["violated"] += 1
                any_violated = True
            elif status == "not_applicable":
                counts["not_applicable"] += 1
            elif status.startswith("skipped"):
                counts["skipped"] += 1
                any_skipped = True
    for rule, counts in summary.items():
        counts["vacuous"] = int(
            rule != "OBS"
            and counts["holds"] + counts["violated"] + counts["skipped"] == 0
        )
    exit_code = 0
    if any_violated:
        exit_code = 1
    elif config.strict and any_skipped:
        exit_code = 3
    return RunResult(records=records, summary=summary, exit_code=exit_code)
