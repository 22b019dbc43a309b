"""Reduction of bracketed polynomials modulo a rule system.

Every rule has a leading monomial made of two adjacent brackets with the
same tag, so a redex is just such an adjacent pair at some depth.

Two engines share the step function:

* :func:`normal_form` rewrites at the polynomial level and records a
  :class:`ReductionTrace`;
* :func:`normalize` computes normal forms word by word with a per-system
  cache.  For the deterministic strategies the redex choice depends only
  on the word, so both engines return the same polynomial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .terms import STAR, Bracket, EnumerationOverflow, Polynomial, Word, enumerate_words

__all__ = [
    "STRATEGIES",
    "Redex",
    "TraceStep",
    "ReductionTrace",
    "ReductionBudgetExceeded",
    "find_redexes",
    "reduce_once",
    "normal_form",
    "normalize",
    "is_irreducible",
    "product",
    "basis_census",
    "count_irreducible",
]

STRATEGIES = ("max-monomial", "leftmost-innermost", "seeded-random")
DEFAULT_BUDGET = 10**6


class ReductionBudgetExceeded(RuntimeError):
    def __init__(self, budget, trace=None):
        super().__init__(f"reduction exceeded the budget of {budget} steps")
        self.budget = budget
        self.trace = trace


@dataclass(frozen=True)
class Redex:
    """Adjacent same-tag brackets ``⌊u⌋_α^Q⌊v⌋_β^Q`` inside a word.

    ``path`` lists the prime indices of the enclosing brackets, outermost
    first; ``index`` is the position of ``⌊u⌋_α^Q`` inside the innermost one.
    """

    path: tuple
    index: int
    tag: str
    alpha: object
    beta: object
    u: Word
    v: Word

    @property
    def depth(self) -> int:
        return len(self.path)

    def context(self, w: Word) -> Word:
        return _splice(w, self.path, self.index, (STAR,))


def _splice(w: Word, path: tuple, i: int, repl: tuple) -> Word:
    ps = w.primes
    if not path:
        return Word(ps[:i] + repl + ps[i + 2 :])
    j = path[0]
    b = ps[j]
    inner = _splice(b.inner, path[1:], i, repl)
    return Word(ps[:j] + (Bracket(b.tag, b.omega, inner),) + ps[j + 1 :])


def _scan(w: Word, tags, path, out):
    ps = w.primes
    n = len(ps)
    for i, p in enumerate(ps):
        if isinstance(p, Bracket):
            if i + 1 < n:
                q = ps[i + 1]
                if isinstance(q, Bracket) and q.tag == p.tag and p.tag in tags:
                    out.append(Redex(path, i, p.tag, p.omega, q.omega, p.inner, q.inner))
            _scan(p.inner, tags, path + (i,), out)


def find_redexes(w: Word, sys) -> list[Redex]:
    """All redexes of ``w``, outermost first, then left to right."""
    out: list[Redex] = []
    _scan(w, sys.tags, (), out)
    out.sort(key=lambda r: (len(r.path), r.path, r.index))
    return out


def _has_redex(w: Word, tags) -> bool:
    ps = w.primes
    prev = None
    for p in ps:
        if isinstance(p, Bracket):
            if prev is not None and prev.tag == p.tag and p.tag in tags:
                return True
            if _has_redex(p.inner, tags):
                return True
            prev = p
        else:
            prev = None
    return False


def is_irreducible(w: Word, sys) -> bool:
    return not _has_redex(w, sys.tags)


def _pick_outer(w: Word, sys):
    rs = find_redexes(w, sys)
    return rs[0] if rs else None


def _pick_inner(w: Word, sys):
    out: list[Redex] = []
    _scan(w, sys.tags, (), out)
    if not out:
        return None
    return min(out, key=lambda r: (-len(r.path), r.path, r.index))


def _rewrite(w: Word, r: Redex, sys) -> list:
    """``w = q|_{lead}`` becomes ``Σ c·q|_{t}`` over the rule's lower terms."""
    return [
        (c, _splice(w, r.path, r.index, t.primes))
        for c, t in sys.tail(r.alpha, r.beta, r.tag, r.u, r.v)
    ]


@dataclass(frozen=True)
class TraceStep:
    monomial: Word
    coefficient: Fraction
    redex: Redex
    rule_id: str

    def context(self) -> Word:
        return self.redex.context(self.monomial)

    def rule(self, sys) -> Polynomial:
        r = self.redex
        return sys.instantiate(r.alpha, r.beta, r.tag, r.u, r.v)

    def term(self, sys) -> Polynomial:
        """``c·q|_s``: the multiple of a rule this step subtracted."""
        from .terms import substitute

        return substitute(self.context(), self.rule(sys)).scale(self.coefficient)


@dataclass
class ReductionTrace:
    start: Polynomial
    steps: list = field(default_factory=list)
    result: Polynomial | None = None

    def __len__(self):
        return len(self.steps)

    def replay(self, sys) -> Polynomial:
        p = self.start
        for s in self.steps:
            p = p - s.term(sys)
        return p


def _choose(reducible, p_terms, strategy, order, rng):
    if strategy == "max-monomial":
        return max(reducible, key=order.key)
    if strategy == "leftmost-innermost":
        for w in p_terms:
            if w in reducible:
                return w
    return rng.choice(sorted(reducible, key=order.key))


def _pick(w, sys, strategy, rng):
    if strategy == "max-monomial":
        return _pick_outer(w, sys)
    if strategy == "leftmost-innermost":
        return _pick_inner(w, sys)
    rs = find_redexes(w, sys)
    return rng.choice(rs) if rs else None


def _check_strategy(strategy):
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {', '.join(STRATEGIES)}")


def reduce_once(p, sys, strategy="max-monomial", seed=None, rng=None):
    """One rewriting step, or ``None`` when ``p`` is already normal.

    Returns ``(new_polynomial, TraceStep)``.
    """
    _check_strategy(strategy)
    p = Polynomial.coerce(p)
    if rng is None:
        rng = random.Random(seed)
    reducible = {w for w in p.terms if _has_redex(w, sys.tags)}
    if not reducible:
        return None
    w = _choose(reducible, p.terms, strategy, sys.order, rng)
    r = _pick(w, sys, strategy, rng)
    c = p.terms[w]
    d = dict(p.terms)
    del d[w]
    for k, t in _rewrite(w, r, sys):
        s = d.get(t, 0) + c * k
        if s:
            d[t] = s
        else:
            d.pop(t, None)
    step = TraceStep(w, c, r, sys.rule_id(r.alpha, r.beta, r.tag, r.u, r.v))
    return Polynomial._raw(d), step


def normal_form(p, sys, strategy="max-monomial", budget=DEFAULT_BUDGET, seed=None):
    """Rewrite until no redex is left; returns ``(normal_form, trace)``."""
    _check_strategy(strategy)
    p = Polynomial.coerce(p)
    rng = random.Random(seed)
    trace = ReductionTrace(start=p)
    d = dict(p.terms)
    tags = sys.tags
    reducible = {w for w in d if _has_redex(w, tags)}
    order = sys.order
    while reducible:
        if len(trace.steps) >= budget:
            trace.result = Polynomial._raw(dict(d))
            raise ReductionBudgetExceeded(budget, trace)
        w = _choose(reducible, d, strategy, order, rng)
        r = _pick(w, sys, strategy, rng)
        c = d.pop(w)
        reducible.discard(w)
        for k, t in _rewrite(w, r, sys):
            s = d.get(t, 0) + c * k
            if s:
                d[t] = s
                if _has_redex(t, tags):
                    reducible.add(t)
            else:
                d.pop(t, None)
                reducible.discard(t)
        trace.steps.append(TraceStep(w, c, r, sys.rule_id(r.alpha, r.beta, r.tag, r.u, r.v)))
    trace.result = Polynomial._raw(d)
    return trace.result, trace


_ONE = 1


def _word_nf(w: Word, sys, pick, cache: dict, counter: list, budget: int) -> dict:
    if w in cache:
        return cache[w]
    stack = [w]
    pending: dict = {}
    while stack:
        m = stack[-1]
        if m in cache:
            stack.pop()
            continue
        kids = pending.get(m)
        if kids is None:
            r = pick(m, sys)
            if r is None:
                cache[m] = {m: _ONE}
                stack.pop()
                continue
            counter[0] += 1
            if counter[0] > budget:
                raise ReductionBudgetExceeded(budget)
            kids = _rewrite(m, r, sys)
            pending[m] = kids
        missing = [t for _, t in kids if t not in cache]
        if missing:
            stack.extend(missing)
            continue
        acc: dict = {}
        for k, t in kids:
            for t2, c2 in cache[t].items():
                s = acc.get(t2, 0) + k * c2
                if s:
                    acc[t2] = s
                else:
                    del acc[t2]
        cache[m] = acc
        del pending[m]
        stack.pop()
    return cache[w]


def normalize(p, sys, strategy="max-monomial", budget=DEFAULT_BUDGET, seed=None) -> Polynomial:
    """Normal form without a trace; cached per word for deterministic strategies."""
    _check_strategy(strategy)
    if strategy == "seeded-random":
        return normal_form(p, sys, strategy, budget, seed)[0]
    p = Polynomial.coerce(p)
    pick = _pick_outer if strategy == "max-monomial" else _pick_inner
    cache = sys._nf_cache.setdefault(strategy, {})
    counter = [0]
    out: dict = {}
    for w, c in p.terms.items():
        for t, k in _word_nf(w, sys, pick, cache, counter, budget).items():
            s = out.get(t, 0) + c * k
            if s:
                out[t] = s
            else:
                del out[t]
    return Polynomial._raw(out)


def product(p, q, sys, strategy="max-monomial") -> Polynomial:
    return normalize(Polynomial.coerce(p) * Polynomial.coerce(q), sys, strategy)


def count_irreducible(n_generators: int, n_omega: int, tags, blocked_tags, max_deg: int) -> list[int]:
    """Irreducible words per degree, counted by dynamic programming.

    A word is irreducible when all its brackets have irreducible contents
    and no two adjacent brackets share a tag from ``blocked_tags``.
    """
    kinds = [None] + list(tags)  # None: generator (or nothing) last
    # ends[d][k]: irreducible words of degree d whose last prime has kind k
    ends = [[0] * len(kinds) for _ in range(max_deg + 1)]
    total = [0] * (max_deg + 1)
    total[0] = 1
    for d in range(1, max_deg + 1):
        # irreducible primes of degree k: generators, or brackets over irreducible words
        for k in range(1, d + 1):
            for ki, kind in enumerate(kinds):
                if kind is None:
                    n_primes = n_generators if k == 1 else 0
                else:
                    n_primes = n_omega * total[k - 1]
                if not n_primes:
                    continue
                rest = d - k
                if rest == 0:
                    prefixes = 1
                else:
                    prefixes = sum(
                        ends[rest][kj]
                        for kj, kind2 in enumerate(kinds)
                        if not (kind is not None and kind2 == kind and kind in blocked_tags)
                    )
                ends[d][ki] += n_primes * prefixes
        total[d] = sum(ends[d])
    return total


def basis_census(alphabet, sys, max_deg: int, cross_check: bool = False, limit: int = 2_000_000):
    """Number of irreducible words of each degree ``0..max_deg``.

    With ``cross_check`` the counts are recomputed by filtering the full
    enumeration and compared; returns ``(counts, enumerated_counts_or_None)``.
    """
    counts = count_irreducible(len(alphabet), sys.omega.size, sys.tags, sys.tags, max_deg)
    if not cross_check:
        return counts, None
    order = sys.order if tuple(alphabet) == sys.alphabet else sys.with_alphabet(alphabet).order
    words = enumerate_words(alphabet, sys.omega.carrier, max_deg, sys.tags, order, limit)
    enum_counts = [0] * (max_deg + 1)
    for w in words:
        if is_irreducible(w, sys):
            enum_counts[w.deg] += 1
    return counts, enum_counts


__all__ += ["EnumerationOverflow"]
