"""Concrete syntax for bracketed polynomials and star-words.

Grammar::

    poly     := [sign] term { sign term }
    term     := rational ["*"] [word] | word
    rational := integer [ "/" positive-integer ]
    word     := "1" | prime { ["*"] prime }
    prime    := ident | ("R" | "S") "_" name "[" word "]" | "@"
    ident    := letter { letter | digit | "'" }
    name     := ident | integer

``@`` marks the hole of a star-word and is only accepted in star-word mode.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .terms import STAR, Bracket, Polynomial, Word, number, star_count

__all__ = [
    "ParseError",
    "parse_expression",
    "parse_polynomial",
    "parse_word",
    "parse_star_word",
    "render",
    "render_word",
    "render_polynomial",
    "render_trace",
    "render_verdict",
    "render_axiom_report",
]


class ParseError(ValueError):
    def __init__(self, message, text="", pos=0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.column = col


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<num>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9']*)|(?P<sym>[-+*/\[\]_@])"
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(_Tok(kind if kind != "sym" else m.group(), m.group(), pos))
        pos = m.end()
    out.append(_Tok("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, alphabet=None, omega=None, tags=("R", "S"), allow_star=False):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.alphabet = None if alphabet is None else set(alphabet)
        self.omega = None if omega is None else {str(x): x for x in omega}
        self.tags = tuple(tags)
        self.allow_star = allow_star

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, self.text, tok.pos)

    def expect(self, kind):
        t = self.tok
        if t.kind != kind:
            found = t.text or "end of input"
            raise self.error(f"expected {kind!r}, found {found!r}")
        self.i += 1
        return t

    def at_prime(self) -> bool:
        t = self.tok
        return t.kind == "ident" or (t.kind == "@" and self.allow_star)

    def at_word(self) -> bool:
        return self.at_prime() or (self.tok.kind == "num" and self.tok.text == "1")

    def polynomial(self) -> Polynomial:
        terms = []
        sign = 1
        if self.tok.kind in ("+", "-"):
            sign = -1 if self.tok.kind == "-" else 1
            self.i += 1
        terms.append(self.term(sign))
        while self.tok.kind in ("+", "-"):
            sign = -1 if self.tok.kind == "-" else 1
            self.i += 1
            terms.append(self.term(sign))
        self.expect("eof")
        return Polynomial(terms)

    def rational(self) -> Fraction:
        num = int(self.expect("num").text)
        if self.tok.kind == "/":
            self.i += 1
            t = self.expect("num")
            den = int(t.text)
            if den == 0:
                raise self.error("zero denominator", t)
            return Fraction(num, den)
        return Fraction(num)

    def term(self, sign):
        if self.tok.kind == "num":
            c = self.rational()
            if self.tok.kind == "*":
                self.i += 1
                if not self.at_word():
                    raise self.error("expected a word after '*'")
            w = self.word() if self.at_word() else Word()
            return w, sign * c
        if not self.at_prime():
            found = self.tok.text or "end of input"
            raise self.error(f"expected a term, found {found!r}")
        return self.word(), sign

    def word(self) -> Word:
        if self.tok.kind == "num":
            t = self.tok
            if t.text != "1":
                raise self.error(f"only 1 may stand for a word, found {t.text!r}")
            self.i += 1
            return Word()
        primes = [self.prime()]
        while True:
            if self.tok.kind == "*" and self.toks[self.i + 1].kind in ("ident", "@"):
                self.i += 1
                primes.append(self.prime())
            elif self.at_prime():
                primes.append(self.prime())
            else:
                break
        return Word(primes)

    def prime(self):
        t = self.tok
        if t.kind == "@":
            self.i += 1
            return STAR
        name = self.expect("ident").text
        if self.tok.kind == "_":
            if name not in ("R", "S"):
                raise self.error(f"operator tag must be R or S, found {name!r}", t)
            if name not in self.tags:
                raise self.error(f"operator tag {name!r} is not available in this system", t)
            self.i += 1
            ot = self.tok
            if ot.kind not in ("ident", "num"):
                raise self.error(f"expected an Ω element name, found {ot.text or 'end of input'!r}")
            self.i += 1
            om = ot.text
            if self.omega is not None:
                if om not in self.omega:
                    raise self.error(f"unknown Ω element {om!r}", ot)
                om = self.omega[om]
            self.expect("[")
            inner = self.word()
            self.expect("]")
            return Bracket(name, om, inner)
        if self.alphabet is not None and name not in self.alphabet:
            raise self.error(f"unknown generator {name!r}", t)
        return name


def parse_expression(text: str, mode: str = "polynomial", alphabet=None, omega=None,
                     tags=("R", "S")):
    """Parse a polynomial, or a star-word when ``mode == "star-word"``.

    ``alphabet`` and ``omega`` (when given) restrict generator and Ω names.
    """
    if mode == "polynomial":
        return _Parser(text, alphabet, omega, tags).polynomial()
    if mode in ("star-word", "star"):
        p = _Parser(text, alphabet, omega, tags, allow_star=True)
        w = p.word()
        p.expect("eof")
        n = star_count(w)
        if n != 1:
            raise ParseError(f"star-word needs exactly one @, found {n}", text, len(text))
        return w
    if mode == "word":
        p = _Parser(text, alphabet, omega, tags)
        w = p.word()
        p.expect("eof")
        return w
    raise ValueError(f"unknown parse mode {mode!r}")


def parse_polynomial(text, **kw) -> Polynomial:
    return parse_expression(text, "polynomial", **kw)


def parse_word(text, **kw) -> Word:
    return parse_expression(text, "word", **kw)


def parse_star_word(text, **kw) -> Word:
    return parse_expression(text, "star-word", **kw)


def render_word(w: Word) -> str:
    return str(w)


def _fallback_order(p: Polynomial):
    from .order import OrderContext

    gens, oms = set(), set()

    def walk(w):
        for pr in w.primes:
            if isinstance(pr, Bracket):
                oms.add(pr.omega)
                walk(pr.inner)
            elif pr != STAR:
                gens.add(pr)

    for w in p.terms:
        walk(w)
    return OrderContext(sorted(gens), sorted(oms, key=str))


def _coef(c) -> str:
    c = number(c)
    return str(c)


def render_polynomial(p, order=None) -> str:
    """Monomials in descending ≤_db order; ``0`` for the zero polynomial."""
    p = Polynomial.coerce(p)
    if not p:
        return "0"
    if order is None:
        order = _fallback_order(p)
    parts = []
    for i, w in enumerate(sorted(p.terms, key=order.key, reverse=True)):
        c = number(p.terms[w])
        neg = c < 0
        a = -c if neg else c
        if w.is_one():
            body = _coef(a)
        elif a == 1:
            body = str(w)
        else:
            body = f"{_coef(a)} {w}"
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def render_trace(trace, sys) -> str:
    lines = []
    for s in trace.steps:
        lines.append(f"{_coef(s.coefficient)} * {s.context()} |_ {s.rule_id}")
    lines.append(f"NF: {render_polynomial(trace.result, sys.order)}")
    return "\n".join(lines)


def render_verdict(verdict, sys=None, traces=None) -> str:
    lines = []
    for fam in sorted(verdict.families, key=lambda f: int(f[1:])):
        checked, failed = verdict.families[fam]
        lines.append(f"{fam}: {checked} compositions, {failed} nontrivial")
    lines.append(f"coverage: {verdict.coverage}")
    lines.append("verdict: " + ("consistent" if verdict.consistent else "INCONSISTENT"))
    for k, (amb, nf) in enumerate(verdict.counterexamples):
        idx = ",".join(map(str, amb.indices[:3])) + ";" + ",".join(map(str, amb.indices[3:]))
        lines.append(f"counterexample {amb.family} ({idx}) on {amb.w}")
        if traces is not None and k < len(traces):
            lines.append(render_trace(traces[k], sys))
        else:
            lines.append(f"NF: {render_polynomial(nf, sys.order if sys else None)}")
    return "\n".join(lines)


def render_axiom_report(report) -> str:
    from .eds import AXIOMS, render_axiom

    if report.passed:
        return "extended diassociative semigroup: all 15 axioms hold"
    lines = [f"not an extended diassociative semigroup: {len(report.violations)} violation(s)"]
    for v in report.violations:
        lhs, rhs = AXIOMS[v.axiom - 1]
        lines.append(
            f"axiom {v.axiom}: {render_axiom(lhs)} = {render_axiom(rhs)} fails at "
            f"(α,β,γ)=({', '.join(map(str, v.triple))}): {v.lhs} != {v.rhs}"
        )
    return "\n".join(lines)


def render(value, order=None) -> str:
    """Canonical text for words, star-words, polynomials and axiom reports."""
    from .eds import AxiomReport

    if isinstance(value, Word):
        return str(value)
    if isinstance(value, AxiomReport):
        return render_axiom_report(value)
    return render_polynomial(value, order)
