import random

import pytest

from omegarb.eds import OmegaStructure, all_structures, check_eds, family_structure, matching_structure
from omegarb.gsb import (
    CompositionError,
    check_gsb,
    compose_including,
    compose_intersection,
    composition,
    default_contexts,
    fresh_generators,
    including_ambiguities,
    intersection_ambiguities,
)
from omegarb.order import leading_monomial
from omegarb.rewrite import normalize
from omegarb.syntax import parse_polynomial, parse_star_word
from omegarb.systems import build_system
from omegarb.terms import STAR, Word, concat, gen, plug, wrap

AB = ("a", "b")
NON_ASSOC = (("b", "a"), ("b", "b"))
x1, x2, x3 = gen("x1"), gen("x2"), gen("x3")


GENS = ("x1", "x2", "x3", "x4")


def work(sys):
    return sys.with_alphabet(sys.alphabet + GENS)


def test_fresh_generators_avoid_alphabet():
    assert fresh_generators(["x", "x1"], 2) == ("x1'", "x2")


def test_intersection_counts():
    assert len(intersection_ambiguities(work(build_system("RBS")), GENS)) == 2
    assert len(intersection_ambiguities(work(build_system("ORBS", matching_structure(AB))), GENS)) == 16
    orba = build_system("ORBA0", family_structure((("e",),), ("e",)))
    assert len(intersection_ambiguities(work(orba), GENS)) == 1


def test_w1_composition_shape():
    sys = work(build_system("ORBS", matching_structure(AB)))
    amb = intersection_ambiguities(sys, GENS)[0]
    assert amb.family == "w1"
    comp = composition(amb, sys)
    f = sys.instantiate("a", "a", "R", x1, x2)
    g = sys.instantiate("a", "a", "R", x2, x3)
    assert comp == f * amb.right - amb.left * g
    assert len(comp) == 4  # the shared monomial cancels
    for w in comp.words():
        assert sys.order.lt(w, amb.w)


def test_rbs_w2_composition_reduces_to_zero():
    sys = work(build_system("RBS"))
    w2 = [a for a in intersection_ambiguities(sys, GENS) if a.family == "w2"]
    assert len(w2) == 1
    assert not normalize(composition(w2[0], sys), sys)


def test_compose_intersection_checks_preconditions():
    sys = work(build_system("RBS"))
    amb = intersection_ambiguities(sys, GENS)[0]
    f = sys.instantiate(*amb.f)
    g = sys.instantiate(*amb.g)
    with pytest.raises(CompositionError):
        compose_intersection(f.scale(2), g, amb.right, amb.left, amb.w, sys.order)
    with pytest.raises(CompositionError):
        compose_intersection(f, g, amb.left, amb.right, amb.w, sys.order)
    # f = g on the symmetric overlap ⌊x⌋⌊x⌋⌊x⌋: leading parts still cancel
    e = "e"
    f = sys.instantiate(e, e, "R", x1, x1)
    r1 = wrap("R", e, x1)
    w = concat(r1, r1, r1)
    comp = compose_intersection(f, f, r1, r1, w, sys.order)
    assert all(sys.order.lt(m, w) for m in comp.words())


def test_compose_including_checks_preconditions():
    sys = work(build_system("ORBS", matching_structure(AB)))
    g = sys.instantiate("a", "b", "R", x1, x2)
    star = Word((STAR,))
    with pytest.raises(CompositionError):
        compose_including(g, g, star, leading_monomial(g, sys.order)[0], sys.order)
    with pytest.raises(CompositionError):
        compose_including(g, g, parse_star_word("R_a[@]"), leading_monomial(g, sys.order)[0], sys.order)


def test_w3_including_composition_reduces_to_zero():
    sys = work(build_system("ORBS", matching_structure(AB)))
    q = parse_star_word("x4 @")
    inner = concat(wrap("R", "a", x1), wrap("R", "b", x2))
    u = plug(q, inner)
    f = sys.instantiate("b", "a", "R", u, gen("x4"))
    g = sys.instantiate("a", "b", "R", x1, x2)
    ctx = concat(wrap("R", "b", q), wrap("R", "a", gen("x4")))
    comp = compose_including(f, g, ctx, leading_monomial(f, sys.order)[0], sys.order)
    assert all(sys.order.lt(m, leading_monomial(f, sys.order)[0]) for m in comp.words())
    assert not normalize(comp, sys)


def test_including_families_and_counts():
    sys = work(build_system("ORBS", matching_structure(AB)))
    ctxs = default_contexts(sys, "x4")
    assert len(ctxs) == 3 + 2 * 3
    ambs = including_ambiguities(sys, ctxs, GENS)
    fams = {}
    for a in ambs:
        fams[a.family] = fams.get(a.family, 0) + 1
        assert plug(a.context, leading_monomial(sys.instantiate(*a.g), sys.order)[0]) == a.w
    assert sorted(fams, key=lambda f: int(f[1:])) == [f"w{i}" for i in range(3, 11)]
    assert set(fams.values()) == {16 * len(ctxs)}


def test_check_gsb_on_eds_examples():
    assert check_gsb(build_system("RBS")).consistent
    v = check_gsb(build_system("ORBS", matching_structure(AB)))
    assert v.consistent and v.families["w5"] == [144, 0]
    assert "sampled contexts" in v.coverage
    assert check_gsb(build_system("MRBA", OmegaStructure(AB), weights=(1, 0))).consistent
    rbf = build_system("RBF", OmegaStructure(("0", "1"), dot=(("0", "1"), ("1", "0"))), weights=2)
    assert check_gsb(rbf).consistent


def test_check_gsb_finds_axiom_one_failure():
    st = family_structure(NON_ASSOC, AB)
    v = check_gsb(build_system("ORBS", st), intersections_only=True)
    assert not v.consistent
    amb, nf = v.counterexamples[0]
    assert amb.family == "w1" and amb.indices[:2] == ("a", "a")
    assert nf
    # the leftover terms carry the two sides of the violated identity as indices
    assert {b.omega for w in nf.words() for b in w.primes} == {"a", "b"}


def test_counterexamples_sorted_and_counted():
    st = family_structure(NON_ASSOC, AB)
    v = check_gsb(build_system("ORBS", st), intersections_only=True)
    fams = [int(a.family[1:]) for a, _ in v.counterexamples]
    assert fams == sorted(fams)
    assert sum(f[1] for f in v.families.values()) == len(v.counterexamples)


def test_parallel_verdict_matches_serial():
    st = family_structure(NON_ASSOC, AB)
    sys = build_system("ORBS", st)
    serial = check_gsb(sys, intersections_only=True)
    par = check_gsb(sys, intersections_only=True, jobs=2)
    assert [(a.w, nf) for a, nf in serial.counterexamples] == [(a.w, nf) for a, nf in par.counterexamples]


def test_deeper_contexts_stay_consistent_for_eds():
    sys = build_system("MRBS", OmegaStructure(AB))
    assert check_gsb(sys, contexts_depth=2).consistent


def test_custom_contexts_must_be_star_words():
    sys = build_system("RBS")
    with pytest.raises(CompositionError):
        check_gsb(sys, [Word(("x",))])


def test_intersection_verdict_matches_eds_on_sample():
    rng = random.Random(1)
    structures = rng.sample(list(all_structures(AB)), 300)
    for st in structures:
        assert check_eds(st).passed == check_gsb(build_system("ORBS", st), intersections_only=True).consistent


def test_eds_structures_are_consistent_with_inclusions():
    rng = random.Random(8)
    eds = [st for st in all_structures(AB) if check_eds(st, first_only=True).passed]
    for st in rng.sample(eds, 5):
        assert check_gsb(build_system("ORBS", st)).consistent


def test_ambiguity_word_factorizations():
    sys = work(build_system("ORBS", matching_structure(AB)))
    for amb in intersection_ambiguities(sys, GENS):
        f_lead = leading_monomial(sys.instantiate(*amb.f), sys.order)[0]
        g_lead = leading_monomial(sys.instantiate(*amb.g), sys.order)[0]
        assert concat(f_lead, amb.right) == amb.w == concat(amb.left, g_lead)
        assert max(f_lead.breadth, g_lead.breadth) < amb.w.breadth < f_lead.breadth + g_lead.breadth


def test_rendered_counterexample_polynomial_parses():
    st = family_structure(NON_ASSOC, AB)
    sys = build_system("ORBS", st)
    v = check_gsb(sys, intersections_only=True)
    from omegarb.syntax import render_polynomial

    for _, nf in v.counterexamples:
        text = render_polynomial(nf, v.system.order)
        assert parse_polynomial(text) == nf
