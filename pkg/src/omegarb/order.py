"""The degree-breadth order ≤_db on bracketed words.

Words are compared by ``(deg, breadth, primes...)`` lexicographically.
Generators precede brackets; generators compare by declaration order;
brackets compare by operator symbol first, then by their contents.
Operator symbols are ordered by Ω declaration order, then ``R < S``.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Callable, Hashable, Sequence

from .terms import STAR, TAGS, Bracket, Polynomial, Word

__all__ = ["Ordering", "OrderContext", "leading_monomial", "make_monic"]


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


class OrderContext:
    """Well orders on generators and operator symbols, extended to words."""

    def __init__(
        self,
        alphabet: Sequence[str],
        omega: Sequence[Hashable] = (),
        omega_key: Callable[[Hashable], object] | None = None,
    ):
        self.alphabet = tuple(alphabet)
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("generator names must be unique")
        self.omega = tuple(omega)
        self._gen_rank = {g: i for i, g in enumerate(self.alphabet)}
        # the placeholder sorts below every generator so star-words stay comparable
        self._gen_rank[STAR] = -1
        if omega_key is None:
            rank = {w: i for i, w in enumerate(self.omega)}
            omega_key = rank.__getitem__
        self._omega_key = omega_key
        self._tag_rank = {t: i for i, t in enumerate(TAGS)}

    def extended(self, extra: Sequence[str]) -> "OrderContext":
        """Same order with ``extra`` generators appended after the alphabet."""
        return OrderContext(self.alphabet + tuple(extra), self.omega, self._omega_key)

    def _prime_key(self, p):
        if isinstance(p, Bracket):
            try:
                ok = self._omega_key(p.omega)
            except KeyError:
                raise ValueError(f"unknown Ω element {p.omega!r}") from None
            return (1, ok, self._tag_rank[p.tag], self.key(p.inner))
        try:
            return (0, self._gen_rank[p])
        except KeyError:
            raise ValueError(f"unknown generator {p!r}") from None

    def key(self, w: Word):
        """Sort key realizing ≤_db; cached on the word per context."""
        if w._key_owner is self:
            return w._key
        k = (w.deg, len(w.primes), tuple(self._prime_key(p) for p in w.primes))
        w._key_owner = self
        w._key = k
        return k

    def compare(self, u: Word, v: Word) -> Ordering:
        ku, kv = self.key(u), self.key(v)
        if ku < kv:
            return Ordering.LT
        if ku > kv:
            return Ordering.GT
        return Ordering.EQ

    def lt(self, u: Word, v: Word) -> bool:
        return self.key(u) < self.key(v)

    def sorted(self, words, reverse=False):
        return sorted(words, key=self.key, reverse=reverse)


def leading_monomial(p: Polynomial, order: OrderContext) -> tuple[Word, Fraction]:
    if not p:
        raise ValueError("the zero polynomial has no leading monomial")
    w = max(p.terms, key=order.key)
    return w, p.terms[w]


def make_monic(p: Polynomial, order: OrderContext) -> Polynomial:
    _, c = leading_monomial(p, order)
    if c == 1:
        return p
    return p.scale(Fraction(1) / c)
