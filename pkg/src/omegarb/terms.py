"""Bracketed words over two tagged families of Ω-indexed operators.

A word is a finite sequence of primes.  A prime is either a generator
(a plain ``str``) or a :class:`Bracket` wrapping a word.  The empty word
is the identity ``1``.  A :class:`Polynomial` is a finite formal sum of
words with exact rational coefficients.

Star-words (one-hole contexts) are ordinary words that contain the
placeholder generator :data:`STAR` exactly once.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Mapping, Sequence, Union

__all__ = [
    "STAR",
    "TAGS",
    "Bracket",
    "Word",
    "Polynomial",
    "ONE",
    "number",
    "EnumerationOverflow",
    "StarWordError",
    "word",
    "gen",
    "wrap",
    "concat",
    "star_count",
    "plug",
    "compose_contexts",
    "substitute",
    "enumerate_words",
]

STAR = "@"
TAGS = ("R", "S")

Prime = Union[str, "Bracket"]


class StarWordError(ValueError):
    """A context does not contain exactly one placeholder."""


class EnumerationOverflow(RuntimeError):
    def __init__(self, degree: int, limit: int):
        super().__init__(f"word enumeration exceeded {limit} words at degree {degree}")
        self.degree = degree
        self.limit = limit


class Bracket:
    """The prime ``⌊inner⌋_omega^tag``."""

    __slots__ = ("tag", "omega", "inner", "deg", "_hash")

    def __init__(self, tag: str, omega: Hashable, inner: "Word"):
        self.tag = tag
        self.omega = omega
        self.inner = inner
        self.deg = inner.deg + 1
        self._hash = hash((tag, omega, inner._hash))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Bracket) or self._hash != other._hash:
            return False
        return (
            self.tag == other.tag
            and self.omega == other.omega
            and self.inner == other.inner
        )

    def __repr__(self):
        return f"Bracket({self.tag!r}, {self.omega!r}, {self.inner!r})"

    def __str__(self):
        return f"{self.tag}_{self.omega}[{self.inner}]"


def _prime_deg(p) -> int:
    if isinstance(p, Bracket):
        return p.deg
    return 0 if p == STAR else 1


class Word:
    """Immutable sequence of primes with cached degree and hash."""

    __slots__ = ("primes", "deg", "_hash", "_key_owner", "_key")

    def __init__(self, primes: Iterable[Prime] = ()):
        primes = tuple(primes)
        self.primes = primes
        self.deg = sum(_prime_deg(p) for p in primes)
        self._hash = hash(primes)
        self._key_owner = None
        self._key = None

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Word) or self._hash != other._hash:
            return False
        return self.primes == other.primes

    def __len__(self):
        return len(self.primes)

    def __iter__(self) -> Iterator[Prime]:
        return iter(self.primes)

    def __getitem__(self, i):
        return self.primes[i]

    def __mul__(self, other):
        if isinstance(other, Word):
            return concat(self, other)
        return NotImplemented

    @property
    def breadth(self) -> int:
        return len(self.primes)

    @property
    def depth(self) -> int:
        d = 0
        for p in self.primes:
            if isinstance(p, Bracket):
                d = max(d, p.inner.depth + 1)
        return d

    def is_one(self) -> bool:
        return not self.primes

    def generators(self) -> set[str]:
        out = set()
        for p in self.primes:
            if isinstance(p, Bracket):
                out |= p.inner.generators()
            else:
                out.add(p)
        return out

    def __repr__(self):
        return f"Word({list(self.primes)!r})"

    def __str__(self):
        if not self.primes:
            return "1"
        return " ".join(str(p) for p in self.primes)


ONE = Word()


def word(*primes: Prime) -> Word:
    return Word(primes)


def gen(name: str) -> Word:
    return Word((name,))


def wrap(tag: str, omega: Hashable, u: Word, carrier: Sequence | None = None) -> Word:
    """Single-prime word ``⌊u⌋_omega^tag``."""
    if tag not in TAGS:
        raise ValueError(f"unknown operator tag {tag!r}")
    if carrier is not None and omega not in carrier:
        raise ValueError(f"unknown Ω element {omega!r}")
    return Word((Bracket(tag, omega, u),))


def concat(*words: Word) -> Word:
    if len(words) == 1:
        return words[0]
    primes: list = []
    for w in words:
        primes.extend(w.primes)
    return Word(primes)


def star_count(w: Word) -> int:
    n = 0
    for p in w.primes:
        if isinstance(p, Bracket):
            n += star_count(p.inner)
        elif p == STAR:
            n += 1
    return n


def _plug(q: Word, u: Word) -> Word:
    out = []
    for p in q.primes:
        if isinstance(p, Bracket):
            out.append(Bracket(p.tag, p.omega, _plug(p.inner, u)))
        elif p == STAR:
            out.extend(u.primes)
        else:
            out.append(p)
    return Word(out)


def _check_star(q: Word) -> None:
    n = star_count(q)
    if n != 1:
        raise StarWordError(f"star-word must contain exactly one {STAR}, found {n}")


def plug(q: Word, u: Word) -> Word:
    """The word ``q|_u``."""
    _check_star(q)
    return _plug(q, u)


def compose_contexts(q: Word, q2: Word) -> Word:
    """The context ``q|_{q2}``; a star-word again."""
    _check_star(q)
    _check_star(q2)
    return _plug(q, q2)


def number(c):
    """Exact rational; integral values are kept as ``int`` for speed."""
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class Polynomial:
    """Finite linear combination of words with rational coefficients.

    Zero coefficients are never stored, so the zero polynomial has no terms.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, object] | Iterable = ()):
        d: dict[Word, Fraction] = {}
        if isinstance(terms, Word):
            terms = {terms: 1}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            c = number(c)
            if c:
                s = d.get(w, 0) + c
                if s:
                    d[w] = s
                else:
                    d.pop(w, None)
        self.terms = d

    @classmethod
    def _raw(cls, d: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.terms = d
        return p

    @classmethod
    def from_word(cls, w: Word, c=1) -> "Polynomial":
        return cls({w: c})

    @classmethod
    def coerce(cls, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, Word):
            return cls({x: 1})
        if isinstance(x, (int, Fraction)):
            return cls({ONE: x})
        raise TypeError(f"cannot interpret {x!r} as a polynomial")

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __contains__(self, w):
        return w in self.terms

    def coefficient(self, w: Word) -> Fraction:
        return Fraction(self.terms.get(w, 0))

    def words(self):
        return list(self.terms)

    def __eq__(self, other):
        if isinstance(other, (Word, int, Fraction)):
            other = Polynomial.coerce(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = Polynomial.coerce(other)
        d = dict(self.terms)
        for w, c in other.terms.items():
            s = d.get(w, 0) + c
            if s:
                d[w] = s
            else:
                del d[w]
        return Polynomial._raw(d)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Polynomial.coerce(other))

    def __rsub__(self, other):
        return Polynomial.coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = number(c)
        if not c:
            return Polynomial()
        return Polynomial._raw({w: c * k for w, k in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = Polynomial.coerce(other)
        d: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = concat(w1, w2)
                s = d.get(w, 0) + c1 * c2
                if s:
                    d[w] = s
                else:
                    d.pop(w, None)
        return Polynomial._raw(d)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return Polynomial.coerce(other) * self

    def wrap(self, tag: str, omega) -> "Polynomial":
        return Polynomial._raw({wrap(tag, omega, w): c for w, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "Polynomial(0)"
        return "Polynomial(" + " + ".join(f"{c}*{w}" for w, c in self.terms.items()) + ")"


def substitute(q: Word, s) -> Polynomial:
    """``q|_s``: plug every monomial of ``s`` into the hole of ``q``."""
    _check_star(q)
    s = Polynomial.coerce(s)
    return Polynomial._raw({_plug(q, u): c for u, c in s.terms.items()})


def enumerate_words(
    alphabet: Sequence[str],
    omega: Sequence,
    max_deg: int,
    tags: Sequence[str] = TAGS,
    order=None,
    limit: int = 2_000_000,
) -> list[Word]:
    """All words of degree at most ``max_deg``, sorted ascending by ``order``.

    ``order`` defaults to the ≤_db order built from ``alphabet`` and ``omega``.
    """
    if max_deg < 0:
        raise ValueError("max_deg must be non-negative")
    if order is None:
        from .order import OrderContext

        order = OrderContext(alphabet, omega)

    words_by_deg: list[list[Word]] = [[ONE]]
    primes_by_deg: list[list] = [[]]
    total = 1
    for d in range(1, max_deg + 1):
        primes = list(alphabet) if d == 1 else []
        for w in words_by_deg[d - 1]:
            for om in omega:
                for t in tags:
                    primes.append(Bracket(t, om, w))
        primes_by_deg.append(primes)
        # a word of degree d is a first prime of degree k followed by a word of degree d-k
        ws: list[Word] = []
        for k in range(1, d + 1):
            rest_words = words_by_deg[d - k]
            for p in primes_by_deg[k]:
                for rest in rest_words:
                    ws.append(Word((p,) + rest.primes))
            if total + len(ws) > limit:
                raise EnumerationOverflow(d, limit)
        total += len(ws)
        words_by_deg.append(ws)
    out = [w for ws in words_by_deg for w in ws]
    out.sort(key=order.key)
    return out
