from fractions import Fraction

import pytest
from strategies import contexts, polynomials, words
from hypothesis import given

from omegarb.order import OrderContext
from omegarb.terms import (
    ONE,
    STAR,
    Bracket,
    EnumerationOverflow,
    Polynomial,
    StarWordError,
    Word,
    compose_contexts,
    concat,
    enumerate_words,
    gen,
    plug,
    star_count,
    substitute,
    wrap,
)
from oracles import count_words_brute

x, y, z, u = gen("x"), gen("y"), gen("z"), gen("u")


def test_concat_identity_and_breadth():
    assert concat(ONE, x) == x
    assert concat(x, ONE) == x
    xy = concat(x, y)
    assert xy.breadth == 2 and xy.deg == 2 and str(xy) == "x y"


def test_concat_of_brackets():
    w = concat(wrap("R", "a", x), wrap("R", "b", y))
    assert w.deg == 4
    assert w.breadth == 2
    assert str(w) == "R_a[x] R_b[y]"


def test_wrap_measures():
    w = wrap("R", "a", ONE)
    assert (w.deg, w.breadth, w.depth) == (1, 1, 1)
    w = wrap("S", "b", x)
    assert (w.deg, w.depth) == (2, 1)
    nested = wrap("R", "w2", concat(x, wrap("R", "w1", y)))
    assert nested.depth == 2


def test_wrap_rejects_unknown_omega():
    with pytest.raises(ValueError, match="'c'"):
        wrap("R", "c", x, carrier=("a", "b"))
    with pytest.raises(ValueError):
        wrap("T", "a", x)


def test_substitute_nested_context():
    q = Word((Bracket("R", "w2", Word(("x", Bracket("R", "w1", Word(("y", STAR, "z")))))),))
    got = plug(q, u)
    want = wrap("R", "w2", concat(x, wrap("R", "w1", concat(y, u, z))))
    assert got == want


def test_substitute_identity_context_and_linearity():
    p = Polynomial({x: 2, wrap("R", "a", y): Fraction(-1, 3)})
    assert substitute(Word((STAR,)), p) == p
    q = Word(("x", STAR))
    s = Polynomial({y: 2, z: -1})
    assert substitute(q, s) == Polynomial({concat(x, y): 2, concat(x, z): -1})


def test_star_count_errors():
    with pytest.raises(StarWordError):
        plug(x, y)
    with pytest.raises(StarWordError):
        plug(Word((STAR, STAR)), y)


def test_polynomial_has_no_zero_coefficients():
    p = Polynomial([(x, 1), (x, -1), (y, 0)])
    assert not p and len(p) == 0
    assert (Polynomial(x) - x) == Polynomial()
    assert Polynomial({x: Fraction(4, 2)}).coefficient(x) == 2


def test_enumerate_small_degrees():
    assert enumerate_words(["x"], ["e"], 0) == [ONE]
    ws1 = enumerate_words(["x"], ["e"], 1)
    assert len(ws1) == 4
    assert set(ws1) == {ONE, x, wrap("R", "e", ONE), wrap("S", "e", ONE)}
    ws2 = [w for w in enumerate_words(["x"], ["e"], 2) if w.deg == 2]
    assert len(ws2) == 15
    assert sum(w.breadth == 2 for w in ws2) == 9
    assert sum(w.breadth == 1 for w in ws2) == 6


@pytest.mark.parametrize("n_gen,n_omega,n_tags,max_deg", [(1, 1, 2, 5), (2, 2, 2, 3), (2, 1, 1, 5)])
def test_enumerate_counts_match_recursion(n_gen, n_omega, n_tags, max_deg):
    alphabet = ["x", "y"][:n_gen]
    carrier = ["a", "b"][:n_omega]
    tags = ("R", "S")[:n_tags]
    ws = enumerate_words(alphabet, carrier, max_deg, tags)
    assert len(ws) == len(set(ws))
    for d in range(max_deg + 1):
        assert sum(w.deg == d for w in ws) == count_words_brute(n_gen, n_omega, n_tags, d)


def test_enumerate_is_closed_and_sorted():
    ws = enumerate_words(["x"], ["e"], 3)
    listed = set(ws)
    order = OrderContext(["x"], ["e"])
    assert ws == sorted(ws, key=order.key)
    for a in ws:
        for t in ("R", "S"):
            if a.deg + 1 <= 3:
                assert wrap(t, "e", a) in listed
        for b in ws:
            if a.deg + b.deg <= 3:
                assert concat(a, b) in listed


def test_enumerate_overflow_names_degree():
    with pytest.raises(EnumerationOverflow) as e:
        enumerate_words(["x", "y"], ["a", "b"], 6, limit=1000)
    assert e.value.degree <= 6
    assert "degree" in str(e.value)


@given(words(), words())
def test_measure_laws(a, b):
    ab = concat(a, b)
    assert ab.deg == a.deg + b.deg
    assert ab.breadth == a.breadth + b.breadth
    assert ab.depth == max(a.depth, b.depth)
    w = wrap("S", "a", a)
    assert (w.deg, w.breadth, w.depth) == (a.deg + 1, 1, a.depth + 1)
    assert (a.depth == 0) == all(not isinstance(p, Bracket) for p in a.primes)


@given(contexts(), contexts(), polynomials())
def test_context_composition(q, q2, s):
    assert star_count(q) == 1
    assert substitute(q, substitute(q2, s)) == substitute(compose_contexts(q, q2), s)
