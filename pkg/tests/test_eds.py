import itertools
import random

import pytest

from omegarb.eds import (
    AXIOMS,
    OmegaStructure,
    StructureError,
    all_structures,
    check_eds,
    check_semigroup,
    family_structure,
    matching_structure,
    trivial_structure,
)
from oracles import is_associative, oracle_violations

AB = ("a", "b")
NON_ASSOC = (("b", "a"), ("b", "b"))  # a·a = b, a·b = a, b·_ = b


def all_tables(carrier):
    n = len(carrier)
    for flat in itertools.product(carrier, repeat=n * n):
        yield tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))


def test_fifteen_axioms_stored():
    assert len(AXIOMS) == 15


def test_trivial_structure_passes():
    assert check_eds(trivial_structure()).passed


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_matching_structures_pass(n):
    assert check_eds(matching_structure("abcd"[:n])).passed


def test_matching_needs_elements():
    with pytest.raises(StructureError):
        matching_structure([])


def test_z2_family_passes():
    z2 = (("0", "1"), ("1", "0"))
    assert check_semigroup(z2, ("0", "1")) == (True, None)
    assert check_eds(family_structure(z2, ("0", "1"))).passed


def test_non_associative_family_fails_axiom_one():
    ok, witness = check_semigroup(NON_ASSOC, AB)
    assert not ok and witness == ("a", "a", "a")
    report = check_eds(family_structure(NON_ASSOC, AB))
    assert not report.passed
    first = report.violations[0]
    assert first.axiom == 1 and first.triple == ("a", "a", "a")


def test_constant_table_is_associative():
    assert check_semigroup((("a", "a"), ("a", "a")), AB)[0]


@pytest.mark.parametrize("carrier", [AB, ("a", "b", "c")])
def test_semigroup_check_matches_oracle(carrier):
    tables = list(all_tables(carrier))
    if len(tables) > 4000:
        tables = random.Random(3).sample(tables, 4000)
    for t in tables:
        ok, witness = check_semigroup(t, carrier)
        assert ok == is_associative(t, carrier)
        if ok:
            assert check_eds(family_structure(t, carrier)).passed


def test_structure_validation():
    with pytest.raises(StructureError):
        OmegaStructure(("a", "a"))
    with pytest.raises(StructureError):
        OmegaStructure(AB, left=(("a", "c"), ("a", "a")))
    with pytest.raises(StructureError):
        OmegaStructure(AB, left=(("a",), ("a",)))
    with pytest.raises(StructureError):
        OmegaStructure(())


def test_dot_table_is_ignored_by_the_checker():
    m = matching_structure(AB)
    with_dot = OmegaStructure(AB, m.left, m.right, m.ltri, m.rtri, dot=NON_ASSOC)
    assert check_eds(with_dot).passed


def test_violations_match_independent_oracle():
    structures = list(all_structures(AB))
    sample = random.Random(11).sample(structures, 3000)
    for st in sample:
        report = check_eds(st)
        got = {(v.axiom, tuple(v.triple)) for v in report.violations}
        assert got == oracle_violations(st.carrier, st.left, st.right, st.ltri, st.rtri)
        assert report.passed == (not got)


def test_first_only_stops_early():
    report = check_eds(family_structure(NON_ASSOC, AB), first_only=True)
    assert len(report.violations) == 1


def test_violations_are_sorted():
    st = family_structure(NON_ASSOC, AB)
    vs = check_eds(st).violations
    keys = [(v.axiom, tuple(AB.index(t) for t in v.triple)) for v in vs]
    assert keys == sorted(keys)


def test_all_structures_count():
    assert sum(1 for _ in all_structures(["e"])) == 1
    assert sum(1 for _ in all_structures(AB)) == 65536
