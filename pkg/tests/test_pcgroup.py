import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schurlab.pcgroup import (
    CatalogSyntaxError,
    InconsistentPresentation,
    PcGroup,
    check_consistency,
    group_of,
    make_presentation,
    parse_catalog,
    word_of,
)


def heisenberg():
    return make_presentation(
        "heis", [3, 3, 3], comm_words={(1, 0): ((2, 1),)}
    )


def dihedral8():
    return make_presentation(
        "d8", [2, 2, 2], power_words={1: ((2, 1),)}, comm_words={(1, 0): ((2, 1),)}
    )


def test_consistency_and_order(bundled):
    for entry in bundled.values():
        assert check_consistency(entry.presentation) == []
        group = group_of(entry.presentation)
        assert len(group.elements()) == entry.order


def test_inconsistent_presentation_rejected():
    bad = make_presentation("bad", [2, 2, 3], comm_words={(1, 0): ((2, 1),)}, prime=None)
    violations = check_consistency(bad)
    assert violations
    with pytest.raises(InconsistentPresentation):
        PcGroup(bad)


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(-5, 5)), max_size=8))
@settings(max_examples=200, deadline=None)
def test_normalize_idempotent(letters):
    group = group_of(heisenberg())
    w = group.normalize(letters)
    assert group.normalize([(g, e) for g, e in enumerate(w)]) == w


def test_associativity_sampled(groups):
    rng = random.Random(0)
    for name in ("heisenberg_3", "dihedral_16", "wreath_c3_c3", "modular_81"):
        group = groups(name)
        elems = group.elements()
        triples = (
            [(u, v, w) for u in elems for v in elems for w in elems]
            if len(elems) <= 27
            else [
                (rng.choice(elems), rng.choice(elems), rng.choice(elems))
                for _ in range(10_000)
            ]
        )
        for u, v, w in triples:
            assert group.multiply(group.multiply(u, v), w) == group.multiply(
                u, group.multiply(v, w)
            )


def test_heisenberg_structure(groups):
    group = groups("heisenberg_3")
    lcs = group.lower_central_series()
    gamma2 = lcs[1]
    assert gamma2.order == 3
    assert gamma2.elements == group.center().elements
    assert len(lcs) == 3 and lcs[2].is_trivial()
    assert group.power_subgroup(3).is_trivial()
    assert group.exponent() == 3


def test_element_orders_and_powers(groups):
    q8 = groups("quaternion_8")
    orders = sorted(q8.element_order(x) for x in q8.elements())
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]
    d8 = groups("dihedral_8")
    assert d8.exponent() == 4
    assert d8.power_set(2) == d8.power_subgroup(2).elements


def test_series_and_abelianization(groups):
    for name, invs in [
        ("dihedral_8", (2, 2)),
        ("quaternion_8", (2, 2)),
        ("heisenberg_3", (3, 3)),
        ("wreath_c3_c3", (3, 3)),
        ("cyclic_27", (27,)),
    ]:
        group = groups(name)
        assert group.abelianization_invariants() == invs
        lcs = group.lower_central_series()
        ds = group.derived_series()
        # gamma_2 = G' always
        assert lcs[1].elements == ds[1].elements


def test_maximal_class_families(groups):
    for m in (3, 4, 5, 6, 7):
        group = groups(f"dihedral_{2**m}")
        assert group.nilpotency_class() == m - 1
        assert group.exponent() == 2 ** (m - 1)
        sd = groups(f"semidihedral_{2**m}") if m >= 4 else None
        if sd is not None:
            assert sd.nilpotency_class() == m - 1
        q = groups(f"quaternion_{2**m}")
        assert q.nilpotency_class() == m - 1


def test_classify_flags(groups):
    heis = groups("heisenberg_3").classify()
    assert heis.nilpotency_class == 2
    assert heis.is_regular is True
    assert heis.is_metabelian
    assert heis.central_pn == 1
    assert not heis.is_powerful
    assert heis.condition1_m is None  # γ₂ = Z not inside G^3 = 1
    assert heis.condition2  # γ₃ = 1 ⊆ G^9 vacuously

    d8 = groups("dihedral_8").classify()
    assert d8.nilpotency_class == 2
    assert not d8.is_powerful  # γ₂ = <g3> not inside G^4 = 1
    assert d8.is_regular is False

    c33 = groups("abelian_3_3").classify()
    assert c33.is_regular is True and c33.is_powerful

    wreath = groups("wreath_c3_c3").classify()
    assert wreath.nilpotency_class == 3
    assert wreath.is_regular is False
    assert wreath.exponent == 9
    assert wreath.derived_length == 2


def test_center_contains_last_gamma(groups):
    for name in ("dihedral_32", "wreath_c3_c3", "modular_81"):
        group = groups(name)
        lcs = group.lower_central_series()
        last = lcs[-2]  # γ_c, the last nontrivial term
        assert last.elements <= group.center().elements


def test_quotient_exponent(groups):
    group = groups("dihedral_16")
    z = group.center()
    assert group.exponent(modulo=z) == 4
    assert group.exponent(modulo=group.full_subgroup()) == 1


def test_parse_catalog_roundtrip(bundled):
    pres = bundled["modular_27"].presentation
    reparsed = parse_catalog(pres.to_catalog_text())
    assert len(reparsed) == 1
    assert reparsed[0] == pres


def test_parse_catalog_errors():
    with pytest.raises(CatalogSyntaxError):
        parse_catalog("[group]\nname = x\nngens = 2\norders = 2 2\npow 5 : g1\n")
    with pytest.raises(CatalogSyntaxError):
        parse_catalog(
            "[group]\nname = x\nngens = 1\norders = 2\n"
            "[group]\nname = x\nngens = 1\norders = 2\n"
        )
    with pytest.raises(CatalogSyntaxError):
        parse_catalog("[group]\nname = y\norders = 4\nngens = 1\n")  # composite order


def test_word_of():
    assert word_of([0, 2, 1]) == ((1, 2), (2, 1))
