import dataclasses

import pytest

from schurlab.verifier import (
    RULE_IDS,
    RunConfig,
    evaluate_rules,
    gather_entries,
    profile,
    record_for,
)


@pytest.fixture(scope="module")
def heis_profile(bundled):
    return profile(bundled["heisenberg_3"].presentation)


def test_profile_examples(bundled, heis_profile):
    prof = heis_profile
    assert prof.order == 27 and prof.nilpotency_class == 2
    assert prof.exponent == 3
    assert prof.multiplier.torsion == (3, 3)
    assert prof.exterior_exponent == 3
    assert prof.gamma2_exponent == 3
    assert prof.central_quotient_exponent == 3

    c9 = profile(bundled["cyclic_9"].presentation)
    assert c9.nilpotency_class == 1
    assert c9.multiplier.torsion == ()
    assert c9.exterior_exponent == 1

    d8 = profile(bundled["dihedral_8"].presentation)
    assert d8.multiplier.torsion == (2,)
    assert d8.exterior_exponent == 4


def test_profile_invariants(bundled):
    for name in ("dihedral_16", "modular_27", "wreath_c3_c3", "abelian_9_3"):
        prof = profile(bundled[name].presentation)
        assert prof.exterior_exponent % prof.multiplier.exponent == 0
        assert prof.exterior_exponent % prof.gamma2_exponent == 0


def test_oracle_crosscheck_marking(bundled):
    small = profile(bundled["cyclic_8"].presentation)
    assert small.multiplier_crosscheck == "bar"
    big = profile(bundled["cyclic_64"].presentation)
    assert big.multiplier_crosscheck.startswith("skipped")


def test_rule_examples(bundled, heis_profile):
    rules = evaluate_rules(heis_profile)
    assert rules["R3"].status == "holds"  # class 2 <= 3
    assert rules["R13"].status == "holds"
    assert rules["R4"].status == "not_applicable"
    assert rules["R14"].status == "holds"
    assert rules["OBS"].status == "observed"
    assert "yes" in rules["OBS"].witness

    d8_rules = evaluate_rules(profile(bundled["dihedral_8"].presentation))
    assert d8_rules["R4"].status == "not_applicable"  # p = 2
    assert d8_rules["R1"].status == "holds"  # class 2 = p
    assert d8_rules["R12"].status == "holds"  # e(M)=2 | 2^1 * 4^2
    assert d8_rules["R13"].status == "holds"  # 2 | 2*4

    v4_rules = evaluate_rules(profile(bundled["abelian_2_2"].presentation))
    assert v4_rules["R13"].status == "holds"  # e(M)=2 divides 2*2


def test_rule_evaluation_is_pure(heis_profile):
    first = evaluate_rules(heis_profile)
    second = evaluate_rules(heis_profile)
    assert first == second


def test_rule_selection(heis_profile):
    selected = evaluate_rules(heis_profile, ["R3", "R13"])
    assert set(selected) == {"R3", "R13", "OBS"}


def test_violation_detected_on_forged_profile(heis_profile):
    forged = dataclasses.replace(heis_profile, exterior_exponent=9)
    rules = evaluate_rules(forged)
    assert rules["R3"].status == "violated"
    assert rules["R3"].witness is not None


def test_wreath_triggers_deep_rules(bundled):
    prof = profile(bundled["wreath_c3_c3"].presentation)
    rules = evaluate_rules(prof)
    assert rules["R1"].status == "holds"  # class 3 = p
    assert rules["R8"].status == "holds"  # m = ceil(4/3) = 2 <= 4
    assert rules["R10"].status == "holds"  # class 3 >= p = 3
    assert rules["R3"].status == "holds"  # class 3 <= p = 3
    assert rules["R14"].status == "holds"


def test_record_shape(bundled):
    rec = record_for(bundled["heisenberg_3"].presentation)
    assert rec["name"] == "heisenberg_3"
    assert rec["multiplier"] == [3, 3]
    assert rec["exterior_exponent"] == 3
    assert set(rec["rules"]) >= set(RULE_IDS)
    for res in rec["rules"].values():
        assert "status" in res and "witness" in res


def test_gather_entries_sorted_and_filtered():
    entries = gather_entries(RunConfig(max_order=27))
    names = [e.name for e in entries]
    assert names == sorted(names)
    assert all(e.order <= 27 for e in entries)


def test_full_run_exit_zero(catalog_run):
    result = catalog_run(1)
    assert result.exit_code == 0
    assert len(result.records) == 49
    for rule, counts in result.summary.items():
        assert counts["violated"] == 0


def test_r4_vacuous_with_message(catalog_run):
    result = catalog_run(1)
    assert result.summary["R4"]["vacuous"] == 1
    text = result.render("text")
    assert "R4" in text and "vacuous" in text


def test_non_vacuity(catalog_run):
    result = catalog_run(1)
    for rule in RULE_IDS:
        if rule == "R4":
            continue
        assert result.summary[rule]["holds"] >= 1, rule


def test_parallel_serial_equivalence(catalog_run):
    serial = catalog_run(1)
    parallel = catalog_run(8)
    assert serial.render("json") == parallel.render("json")


def test_render_formats(catalog_run):
    result = catalog_run(1)
    csv = result.render("csv")
    assert csv.splitlines()[0] == "group,order,rule,status,witness"
    js = result.render("json")
    assert '"groups"' in js and '"summary"' in js
