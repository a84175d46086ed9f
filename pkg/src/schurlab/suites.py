"""Structural law suites checked exhaustively on small catalog groups.

Each suite tests a group-theoretic law (regular-group power laws, class-p
commutator-order bounds, the p = 3 congruence for two-generator subgroups,
and the p-th-power set property) on groups whose flags satisfy the law's
hypothesis.  Suites are exhaustive over the stated element ranges; a failure
carries an explicit counterexample.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .pcgroup import GroupFlags, NormalWord, PcGroup

SUITE_IDS = ("L2.15", "L3.1", "L3.2", "L3.5", "L3.6", "T5.4")

# Exhaustive pair sweeps stay affordable up to this order.
SUITE_ORDER_CAP = 81


@dataclass(frozen=True)
class SuiteReport:
    suite_id: str
    applicable: bool
    passed: Optional[bool]  # None when not applicable
    detail: str
    counterexample: Optional[str] = None


def _not_applicable(suite_id: str, why: str) -> SuiteReport:
    return SuiteReport(suite_id, False, None, why)


def _pn_range(group: PcGroup) -> list[int]:
    """Exponents n with p^n <= e(G); larger n repeat the p^e(G) case."""
    p = group.pres.prime
    e = group.exponent()
    ns = []
    q = p
    n = 1
    while q <= e:
        ns.append(n)
        q *= p
        n += 1
    return ns


def check_regular_power_laws(group: PcGroup, flags: GroupFlags) -> SuiteReport:
    """Power laws of regular p-groups, exhaustive over element pairs.

    (i)   [b,a]^{p^n} = 1, [b,a^{p^n}] = 1 and [b^{p^n},a] = 1 are equivalent;
    (iii) order(ab) <= max(order(a), order(b));
    (iv)  a^{p^n} = b^{p^n} iff (a b^{-1})^{p^n} = 1.
    """
    sid = "L2.15"
    if flags.is_regular is not True:
        return _not_applicable(sid, "group is not regular")
    if group.order > SUITE_ORDER_CAP:
        return _not_applicable(sid, f"order {group.order} above suite cap")
    p = group.pres.prime
    one = group.normalize([])
    elems = group.elements()
    ns = _pn_range(group)
    checked = 0
    for a in elems:
        ord_a = group.element_order(a)
        a_pows = {n: group.power(a, p**n) for n in ns}
        for b in elems:
            comm = group.commutator(b, a)
            for n in ns:
                q = p**n
                c1 = group.power(comm, q) == one
                c2 = group.commutator(b, a_pows[n]) == one
                c3 = group.commutator(group.power(b, q), a) == one
                if not (c1 == c2 == c3):
                    return SuiteReport(
                        sid, True, False, "part (i) equivalence failed",
                        f"a={a}, b={b}, n={n}: ({c1},{c2},{c3})",
                    )
                if (a_pows[n] == group.power(b, q)) != (
                    group.power(group.multiply(a, group.inverse(b)), q) == one
                ):
                    return SuiteReport(
                        sid, True, False, "part (iv) equivalence failed",
                        f"a={a}, b={b}, n={n}",
                    )
                checked += 3
            prod_ord = group.element_order(group.multiply(a, b))
            if prod_ord > max(ord_a, group.element_order(b)):
                return SuiteReport(
                    sid, True, False, "part (iii) order bound failed",
                    f"a={a}, b={b}: order(ab)={prod_ord}",
                )
            checked += 1
    return SuiteReport(sid, True, True, f"{checked} instances over {len(elems)}^2 pairs")


def check_central_power_abelian(group: PcGroup, flags: GroupFlags) -> SuiteReport:
    """On regular groups: [b, a^{p^n}] = 1 implies (ab)^{p^n} = a^{p^n} b^{p^n}."""
    sid = "L3.1"
    if flags.is_regular is not True:
        return _not_applicable(sid, "group is not regular")
    if group.order > SUITE_ORDER_CAP:
        return _not_applicable(sid, f"order {group.order} above suite cap")
    p = group.pres.prime
    one = group.normalize([])
    elems = group.elements()
    checked = 0
    for a in elems:
        for n in _pn_range(group):
            q = p**n
            aq = group.power(a, q)
            for b in elems:
                if group.commutator(b, aq) != one:
                    continue
                lhs = group.power(group.multiply(a, b), q)
                rhs = group.multiply(aq, group.power(b, q))
                if lhs != rhs:
                    return SuiteReport(
                        sid, True, False, "power-abelian conclusion failed",
                        f"a={a}, b={b}, n={n}",
                    )
                checked += 1
    return SuiteReport(sid, True, True, f"{checked} hypothesis instances")


def check_class_p_commutator_equivalence(
    group: PcGroup, flags: GroupFlags
) -> SuiteReport:
    """On groups of class exactly p: the three vanishing conditions
    [b,a]^{p^n} = 1, [b,a^{p^n}] = 1, [b^{p^n},a] = 1 are pairwise equivalent.
    """
    sid = "L3.2"
    p = group.pres.prime
    if flags.nilpotency_class != p:
        return _not_applicable(sid, f"class {flags.nilpotency_class} != p = {p}")
    if group.order > SUITE_ORDER_CAP:
        return _not_applicable(sid, f"order {group.order} above suite cap")
    one = group.normalize([])
    elems = group.elements()
    checked = 0
    for a in elems:
        for b in elems:
            comm = group.commutator(b, a)
            for n in _pn_range(group):
                q = p**n
                c1 = group.power(comm, q) == one
                c2 = group.commutator(b, group.power(a, q)) == one
                c3 = group.commutator(group.power(b, q), a) == one
                if not (c1 == c2 == c3):
                    return SuiteReport(
                        sid, True, False, "equivalence failed",
                        f"a={a}, b={b}, n={n}: ({c1},{c2},{c3})",
                    )
                checked += 1
    return SuiteReport(sid, True, True, f"{checked} instances")


def _order_mod_center(group: PcGroup, a: NormalWord) -> int:
    center = group.center()
    p = group.pres.prime
    q = 1
    while group.power(a, q) not in center:
        q *= p
    return q


def check_commutator_order_bound(group: PcGroup, flags: GroupFlags) -> SuiteReport:
    """On groups of class exactly p: every right-normed commutator of weight
    <= 3 with at least one slot equal to a (other slots over the generators)
    has order at most the order of a modulo the center.
    """
    sid = "L3.5"
    p = group.pres.prime
    if flags.nilpotency_class != p:
        return _not_applicable(sid, f"class {flags.nilpotency_class} != p = {p}")
    if group.order > SUITE_ORDER_CAP:
        return _not_applicable(sid, f"order {group.order} above suite cap")
    gens = group.generators()
    checked = 0
    for a in group.elements():
        bound = _order_mod_center(group, a)
        slots2 = [(a, g) for g in gens] + [(g, a) for g in gens] + [(a, a)]
        pool = gens + [a]
        slots3 = [
            (x, y, z)
            for x in pool
            for y in pool
            for z in pool
            if a in (x, y, z)
        ]
        for seq in slots2 + slots3:
            c = group.iterated_commutator(list(seq))
            if group.element_order(c) > bound:
                return SuiteReport(
                    sid, True, False, "commutator order exceeds bound",
                    f"a={a}, slots={seq}, bound={bound}",
                )
            checked += 1
    return SuiteReport(sid, True, True, f"{checked} commutators")


def check_three_group_congruence(group: PcGroup, flags: GroupFlags) -> SuiteReport:
    """On 3-groups of class <= 4: whenever [b, a^{3^n}] = 1 in H = <a,b>,
    [a,a,[h,a]]^{C(3^n,3)} [h,a]^{3^n} = 1 for all h in H.
    """
    sid = "L3.6"
    if group.pres.prime != 3:
        return _not_applicable(sid, "not a 3-group")
    if flags.nilpotency_class > 4:
        return _not_applicable(sid, f"class {flags.nilpotency_class} > 4")
    if group.order > SUITE_ORDER_CAP:
        return _not_applicable(sid, f"order {group.order} above suite cap")
    if flags.nilpotency_class <= 1:
        return SuiteReport(sid, True, True, "abelian: both sides trivial")
    one = group.normalize([])
    elems = group.elements()
    ns = _pn_range(group)

    def conclusion_holds(a: NormalWord, subgroup: frozenset, n: int) -> Optional[str]:
        q = 3**n
        coeff = math.comb(q, 3)
        for h in subgroup:
            c = group.commutator(h, a)
            t = group.commutator(a, group.commutator(a, c))
            lhs = group.multiply(group.power(t, coeff), group.power(c, q))
            if lhs != one:
                return f"a={a}, h={h}, n={n}"
        return None

    closures: dict[frozenset, frozenset] = {}
    verdicts: dict[tuple, Optional[str]] = {}
    checked = 0
    for a in elems:
        a_pows = {n: group.power(a, 3**n) for n in ns}
        for b in elems:
            pair = frozenset((a, b))
            sub = closures.get(pair)
            if sub is None:
                sub = group.closure([a, b])
                closures[pair] = sub
            for n in ns:
                if group.commutator(b, a_pows[n]) != one:
                    continue
                key = (a, sub, n)
                if key not in verdicts:
                    verdicts[key] = conclusion_holds(a, sub, n)
                    checked += len(sub)
                bad = verdicts[key]
                if bad is not None:
                    return SuiteReport(
                        sid, True, False, "congruence failed", bad
                    )
    return SuiteReport(sid, True, True, f"{checked} congruence instances")


def check_power_set_property(group: PcGroup, flags: GroupFlags) -> SuiteReport:
    """On regular / condition (1) / condition (2) groups: the set of p-th
    powers {x^p : x in G} equals the subgroup G^p.
    """
    sid = "T5.4"
    hyp = []
    if flags.is_regular is True:
        hyp.append("regular")
    if flags.condition1_m is not None:
        hyp.append(f"condition(1) at m={flags.condition1_m}")
    if flags.condition2:
        hyp.append("condition(2)")
    if not hyp:
        return _not_applicable(sid, "neither regular nor condition (1)/(2)")
    p = group.pres.prime
    power_set = group.power_set(p)
    subgroup = group.power_subgroup(p).elements
    if power_set != subgroup:
        extra = next(iter(subgroup - power_set))
        return SuiteReport(
            sid, True, False,
            f"G^p has {len(subgroup)} elements, only {len(power_set)} are p-th powers",
            f"{extra} is not a p-th power",
        )
    return SuiteReport(
        sid, True, True, f"{'; '.join(hyp)}: {len(power_set)} elements match"
    )


_SUITES = (
    check_regular_power_laws,
    check_central_power_abelian,
    check_class_p_commutator_equivalence,
    check_commutator_order_bound,
    check_three_group_congruence,
    check_power_set_property,
)


def run_suites(group: PcGroup, flags: Optional[GroupFlags] = None) -> list[SuiteReport]:
    if flags is None:
        flags = group.classify()
    return [suite(group, flags) for suite in _SUITES]
