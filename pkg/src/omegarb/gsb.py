"""Compositions of rule pairs and the Gröbner-Shirshov check.

Rule schemas are instantiated on fresh generators, so one composition per
index tuple stands for the whole family.  A composition counts as trivial
when its normal form is zero.  For structures where the rules are confluent
this is exact; otherwise a nonzero normal form is a counterexample candidate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .order import leading_monomial
from .rewrite import DEFAULT_BUDGET, normalize
from .terms import STAR, Bracket, Polynomial, Word, concat, plug, star_count, substitute

__all__ = [
    "Ambiguity",
    "GsbVerdict",
    "CompositionError",
    "fresh_generators",
    "default_contexts",
    "intersection_ambiguities",
    "including_ambiguities",
    "compose_intersection",
    "compose_including",
    "composition",
    "check_gsb",
]


class CompositionError(ValueError):
    pass


@dataclass(frozen=True)
class Ambiguity:
    """An overlap or inclusion of two rule leading monomials on the word ``w``.

    ``f`` and ``g`` are parameter tuples ``(α, β, Q, u, v)`` of the two rules.
    Intersections carry ``right``/``left`` with ``w = f̄·right = left·ḡ``;
    inclusions carry ``context`` with ``w = f̄ = context|_ḡ``.
    """

    kind: str
    family: str
    w: Word
    f: tuple
    g: tuple
    right: Word | None = None
    left: Word | None = None
    context: Word | None = None

    @property
    def indices(self) -> tuple:
        return (self.f[0], self.f[1], self.f[2], self.g[0], self.g[1], self.g[2])


@dataclass
class GsbVerdict:
    counterexamples: list = field(default_factory=list)
    families: dict = field(default_factory=dict)  # family -> [checked, failed]
    coverage: str = ""
    system: object = None  # the system extended by the fresh generators

    @property
    def consistent(self) -> bool:
        return not self.counterexamples

    def __bool__(self):
        return self.consistent


def fresh_generators(alphabet, n=4, stem="x") -> tuple[str, ...]:
    taken = set(alphabet)
    out = []
    i = 1
    while len(out) < n:
        name = f"{stem}{i}"
        while name in taken:
            name += "'"
        out.append(name)
        taken.add(name)
        i += 1
    return tuple(out)


def _b(tag, om, *primes_or_words) -> Bracket:
    ps = []
    for x in primes_or_words:
        ps.extend(x.primes if isinstance(x, Word) else (x,))
    return Bracket(tag, om, Word(ps))


def default_contexts(sys, x: str, depth: int = 1) -> list[Word]:
    """Small one-hole contexts: ``★, x★, ★x`` and, per level, bracketed versions."""
    star = Word((STAR,))
    level0 = [star, Word((x, STAR)), Word((STAR, x))]
    out = list(level0)
    if depth < 1:
        return out
    carrier = sys.omega.carrier
    level = []
    for om in carrier:
        for t in sys.tags:
            level.append(Word((_b(t, om, STAR),)))
        level.append(Word((_b("R", om, x, STAR),)))
    out += level
    for _ in range(depth - 1):
        nxt = []
        for q in level:
            for om in carrier:
                for t in sys.tags:
                    nxt.append(Word((Bracket(t, om, q),)))
        out += nxt
        level = nxt
    return out


def intersection_ambiguities(sys, gens=None) -> list[Ambiguity]:
    """``⌊x1⌋_α^Q⌊x2⌋_β^Q⌊x3⌋_γ^Q`` for every tag and every triple of Ω."""
    if gens is None:
        gens = fresh_generators(sys.alphabet)
    x1, x2, x3 = (Word((g,)) for g in gens[:3])
    out = []
    for fam, tag in zip(("w1", "w2"), sys.tags):
        for a, b, c in itertools.product(sys.omega.carrier, repeat=3):
            left = Word((Bracket(tag, a, x1),))
            mid = Word((Bracket(tag, b, x2),))
            right = Word((Bracket(tag, c, x3),))
            out.append(
                Ambiguity(
                    "intersection", fam, concat(left, mid, right),
                    (a, b, tag, x1, x2), (b, c, tag, x2, x3),
                    right=right, left=left,
                )
            )
    return out


_INCLUDING_FAMILIES = {
    ("R", "R"): ("w3", "w4"),
    ("R", "S"): ("w5", "w6"),
    ("S", "R"): ("w7", "w8"),
    ("S", "S"): ("w9", "w10"),
}


def including_ambiguities(sys, contexts=None, gens=None) -> list[Ambiguity]:
    """A rule's leading monomial sitting inside a bracket of another's.

    For outer tag Q, inner tag T, indices (α, β, γ, δ) and context q:
    the inner pair either fills the left bracket (``⌊q|_{⌊x1⌋_α^T⌊x2⌋_β^T}⌋_γ^Q⌊x3⌋_δ^Q``)
    or the right one (``⌊x1⌋_α^Q⌊q|_{⌊x2⌋_β^T⌊x3⌋_γ^T}⌋_δ^Q``).
    """
    if gens is None:
        gens = fresh_generators(sys.alphabet)
    x1, x2, x3 = (Word((g,)) for g in gens[:3])
    if contexts is None:
        contexts = default_contexts(sys, gens[3])
    for q in contexts:
        if star_count(q) != 1:
            raise CompositionError(f"context {q} must contain exactly one {STAR}")
    out = []
    carrier = sys.omega.carrier
    for outer, inner in itertools.product(sys.tags, repeat=2):
        fam_left, fam_right = _INCLUDING_FAMILIES[outer, inner]
        for a, b, c, d in itertools.product(carrier, repeat=4):
            for q in contexts:
                # inner leading monomial inside the left bracket
                lead = Word((Bracket(inner, a, x1), Bracket(inner, b, x2)))
                u = plug(q, lead)
                w = Word((Bracket(outer, c, u), Bracket(outer, d, x3)))
                ctx = Word((Bracket(outer, c, q), Bracket(outer, d, x3)))
                out.append(
                    Ambiguity("including", fam_left, w, (c, d, outer, u, x3),
                              (a, b, inner, x1, x2), context=ctx)
                )
                # inner leading monomial inside the right bracket
                lead = Word((Bracket(inner, b, x2), Bracket(inner, c, x3)))
                v = plug(q, lead)
                w = Word((Bracket(outer, a, x1), Bracket(outer, d, v)))
                ctx = Word((Bracket(outer, a, x1), Bracket(outer, d, q)))
                out.append(
                    Ambiguity("including", fam_right, w, (a, d, outer, x1, v),
                              (b, c, inner, x2, x3), context=ctx)
                )
    return out


def compose_intersection(f: Polynomial, g: Polynomial, right: Word, left: Word, w: Word, order) -> Polynomial:
    """``f·right − left·g`` for ``w = f̄·right = left·ḡ``."""
    fl, fc = leading_monomial(f, order)
    gl, gc = leading_monomial(g, order)
    if fc != 1 or gc != 1:
        raise CompositionError("compositions need monic polynomials")
    if concat(fl, right) != w or concat(left, gl) != w:
        raise CompositionError(f"{w} does not factor as f̄·u = v·ḡ")
    if not max(len(fl), len(gl)) < len(w) < len(fl) + len(gl):
        raise CompositionError("not a proper overlap: breadth condition fails")
    return f * right - left * g


def compose_including(f: Polynomial, g: Polynomial, context: Word, w: Word, order) -> Polynomial:
    """``f − q|_g`` for ``w = f̄ = q|_ḡ``."""
    if context == Word((STAR,)) and f == g:
        raise CompositionError("an inclusion needs two distinct polynomials")
    fl, fc = leading_monomial(f, order)
    gl, gc = leading_monomial(g, order)
    if fc != 1 or gc != 1:
        raise CompositionError("compositions need monic polynomials")
    if fl != w or plug(context, gl) != w:
        raise CompositionError(f"{w} is not f̄ = q|_ḡ")
    return f - substitute(context, g)


def composition(amb: Ambiguity, sys) -> Polynomial:
    f = sys.instantiate(*amb.f)
    g = sys.instantiate(*amb.g)
    if amb.kind == "intersection":
        return compose_intersection(f, g, amb.right, amb.left, amb.w, sys.order)
    return compose_including(f, g, amb.context, amb.w, sys.order)


def _reduce_chunk(args):
    work, ambs, strategy, budget = args
    return [normalize(composition(a, work), work, strategy, budget) for a in ambs]


def check_gsb(sys, context_samples=None, *, intersections_only=False,
              strategy="max-monomial", budget=DEFAULT_BUDGET, contexts_depth=1,
              jobs=1) -> GsbVerdict:
    """Reduce every composition of ``sys`` and collect the nonzero ones.

    Counterexamples are ``(Ambiguity, normal_form)`` pairs, sorted by family
    and index tuple.  ``jobs > 1`` spreads the reductions over processes.
    """
    gens = fresh_generators(sys.alphabet)
    work = sys.with_alphabet(sys.alphabet + gens)
    ambs = intersection_ambiguities(work, gens)
    if intersections_only:
        coverage = "intersection ambiguities only"
    else:
        if context_samples is None:
            context_samples = default_contexts(work, gens[3], contexts_depth)
        ambs += including_ambiguities(work, context_samples, gens)
        coverage = f"intersections + inclusions over {len(context_samples)} sampled contexts"
    verdict = GsbVerdict(coverage=coverage, system=work)

    if jobs > 1 and len(ambs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        n = min(jobs, len(ambs))
        chunks = [ambs[i::n] for i in range(n)]
        with ProcessPoolExecutor(n) as ex:
            parts = list(ex.map(_reduce_chunk, [(work, c, strategy, budget) for c in chunks]))
        nfs = [None] * len(ambs)
        for i, part in enumerate(parts):
            nfs[i::n] = part
    else:
        nfs = (normalize(composition(a, work), work, strategy, budget) for a in ambs)

    idx = work.omega.index
    found = []
    for pos, (amb, nf) in enumerate(zip(ambs, nfs)):
        counts = verdict.families.setdefault(amb.family, [0, 0])
        counts[0] += 1
        if nf:
            counts[1] += 1
            key = tuple(idx(x) if k not in (2, 5) else x for k, x in enumerate(amb.indices))
            found.append(((int(amb.family[1:]), key, pos), amb, nf))
    found.sort(key=lambda t: t[0])
    verdict.counterexamples = [(a, nf) for _, a, nf in found]
    return verdict
