"""Rewrite-rule families on bracketed words.

Every family has rules of the shape::

    ⌊u⌋_α^Q ⌊v⌋_β^Q  →  ⌊⌊u⌋_{α▷β}^R v⌋_{α→β}^Q + ⌊u⌊v⌋_{α◁β}^S⌋_{α←β}^Q  (+ λ ⌊uv⌋_{τ}^Q)

so a :class:`RuleSystem` only has to know the index routing and the
optional weight term.  Single-tag (algebra) kinds use ``R`` throughout.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Mapping, Sequence

from .eds import (
    OPERATIONS,
    OmegaStructure,
    StructureError,
    check_semigroup,
    family_structure,
    matching_structure,
    trivial_structure,
)
from .order import OrderContext
from .terms import Bracket, Polynomial, Word, concat, number

__all__ = [
    "SystemKind",
    "RuleSystem",
    "SystemError",
    "build_system",
    "instantiate_rule",
    "eliminate_s",
    "dendriform",
]


class SystemError(ValueError):
    pass


class SystemKind(enum.Enum):
    ORBS = "ORBS"
    ORBA0 = "ORBA0"
    RBS = "RBS"
    RBSF = "RBSF"
    RBF = "RBF"
    MRBS = "MRBS"
    MRBA = "MRBA"
    ORBA_WEIGHTED = "ORBA_WEIGHTED"

    @classmethod
    def parse(cls, name: str) -> "SystemKind":
        key = name.strip().upper().replace("-", "_")
        try:
            return cls[key]
        except KeyError:
            raise SystemError(
                f"unknown system kind {name!r}; expected one of "
                + ", ".join(k.value for k in cls)
            ) from None

    @property
    def two_tags(self) -> bool:
        return self in (SystemKind.ORBS, SystemKind.RBS, SystemKind.RBSF, SystemKind.MRBS)

    @property
    def has_gsb_theorem(self) -> bool:
        return self is not SystemKind.ORBA_WEIGHTED


ONE = 1


class RuleSystem:
    """A rule family bound to an Ω-structure and its weight data.

    ``routes[(α, β)]`` holds ``(α▷β, α→β, α◁β, α←β, weight_term)`` where
    ``weight_term`` is ``None`` or ``(λ, τ)`` for the extra ``λ⌊uv⌋_τ``.
    """

    def __init__(self, kind: SystemKind, omega: OmegaStructure, routes: dict,
                 alphabet: Sequence[str] = (), weights=None, order: OrderContext | None = None):
        self.kind = kind
        self.omega = omega
        self.routes = routes
        self.tags = ("R", "S") if kind.two_tags else ("R",)
        self.weights = weights
        self.order = order if order is not None else OrderContext(alphabet, omega.carrier)
        self._nf_cache: dict = {}

    @property
    def alphabet(self):
        return self.order.alphabet

    @property
    def name(self) -> str:
        return self.kind.value

    def with_alphabet(self, alphabet: Sequence[str]) -> "RuleSystem":
        return RuleSystem(self.kind, self.omega, self.routes, weights=self.weights,
                          order=OrderContext(alphabet, self.omega.carrier))

    def clear_cache(self):
        self._nf_cache.clear()

    def _check(self, alpha, beta, tag):
        if tag not in self.tags:
            raise SystemError(f"{self.name} has no operator tag {tag!r}")
        if (alpha, beta) not in self.routes:
            raise SystemError(f"({alpha!r}, {beta!r}) not in Ω of {self.name}")

    def leading_word(self, alpha, beta, tag, u: Word, v: Word) -> Word:
        return Word((Bracket(tag, alpha, u), Bracket(tag, beta, v)))

    def tail(self, alpha, beta, tag, u: Word, v: Word) -> list:
        """Lower terms ``[(coef, word)]``: the rule is ``leading − Σ coef·word``."""
        rt, rr, lt, ll, wt = self.routes[alpha, beta]
        s_tag = "S" if len(self.tags) == 2 else "R"
        out = [
            (ONE, Word((Bracket(tag, rr, Word((Bracket("R", rt, u),) + v.primes)),))),
            (ONE, Word((Bracket(tag, ll, Word(u.primes + (Bracket(s_tag, lt, v),))),))),
        ]
        if wt is not None:
            lam, target = wt
            if lam:
                out.append((lam, Word((Bracket(tag, target, concat(u, v)),))))
        return out

    def instantiate(self, alpha, beta, tag, u: Word, v: Word) -> Polynomial:
        self._check(alpha, beta, tag)
        p = Polynomial.from_word(self.leading_word(alpha, beta, tag, u, v))
        for c, w in self.tail(alpha, beta, tag, u, v):
            p = p - Polynomial.from_word(w, c)
        return p

    def rule_id(self, alpha, beta, tag, u, v) -> str:
        return f"{self.name}({alpha},{beta},{tag},{u},{v})"

    def __repr__(self):
        return f"RuleSystem({self.name}, Ω={list(self.omega.carrier)}, tags={self.tags})"


def instantiate_rule(sys: RuleSystem, alpha, beta, tag, u: Word, v: Word) -> Polynomial:
    return sys.instantiate(alpha, beta, tag, u, v)


def _family_product(omega: OmegaStructure):
    if omega.dot is not None:
        return omega.dot
    if omega.left is not None and omega.left == omega.right:
        return omega.left
    raise SystemError(
        "family kinds need a semigroup product: give a 'dot' table "
        "or equal 'left' and 'right' tables"
    )


def _scalar(w) -> Fraction:
    if isinstance(w, (Mapping, list, tuple)):
        raise SystemError("expected a scalar weight λ")
    return number(w)


def _vector(w, carrier) -> dict:
    if isinstance(w, Mapping):
        missing = [x for x in carrier if x not in w]
        if missing:
            raise SystemError(f"missing weight for Ω element(s) {missing}")
        return {x: number(w[x]) for x in carrier}
    if isinstance(w, (list, tuple)):
        if len(w) != len(carrier):
            raise SystemError(f"weight vector needs {len(carrier)} entries, got {len(w)}")
        return {x: number(v) for x, v in zip(carrier, w)}
    raise SystemError("expected per-element weights λ_ω")


def _matrix(w, carrier) -> dict:
    if isinstance(w, Mapping):
        out = {}
        for x in carrier:
            for y in carrier:
                if (x, y) not in w:
                    raise SystemError(f"missing weight λ_{{{x},{y}}}")
                out[x, y] = number(w[x, y])
        return out
    if isinstance(w, (list, tuple)) and len(w) == len(carrier) and all(
        isinstance(r, (list, tuple)) and len(r) == len(carrier) for r in w
    ):
        return {
            (x, y): number(w[i][j])
            for i, x in enumerate(carrier)
            for j, y in enumerate(carrier)
        }
    raise SystemError(f"expected a {len(carrier)}x{len(carrier)} weight matrix")


def build_system(kind, omega: OmegaStructure | None = None, weights=None,
                 alphabet: Sequence[str] = ()) -> RuleSystem:
    """Bind a rule family to Ω.

    Family kinds (RBSF, RBF) read the semigroup product from ``dot`` (or from
    equal ``left``/``right`` tables) and rebuild the family structure from it.
    Matching kinds use only the carrier.  RBS needs a one-element Ω.
    """
    if isinstance(kind, str):
        kind = SystemKind.parse(kind)
    needs_weights = kind in (SystemKind.RBF, SystemKind.MRBA, SystemKind.ORBA_WEIGHTED)
    if weights is None and needs_weights and omega is not None:
        weights = omega.weights
    if weights is not None and not needs_weights:
        raise SystemError(f"{kind.value} takes no weights")
    if weights is None and needs_weights:
        raise SystemError(f"{kind.value} requires weights")

    if kind is SystemKind.RBS:
        if omega is None:
            omega = trivial_structure()
        if omega.size != 1:
            raise SystemError(f"RBS needs a one-element Ω, got {omega.size} elements")
        omega = trivial_structure(omega.carrier[0])
    elif kind in (SystemKind.RBSF, SystemKind.RBF):
        if omega is None:
            raise SystemError(f"{kind.value} needs a semigroup Ω")
        product = _family_product(omega)
        ok, witness = check_semigroup(product, omega.carrier)
        if not ok:
            raise SystemError(f"product is not associative; witness {witness}")
        omega = family_structure(product, omega.carrier)
    elif kind in (SystemKind.MRBS, SystemKind.MRBA):
        if omega is None:
            raise SystemError(f"{kind.value} needs an Ω carrier")
        omega = matching_structure(omega.carrier)
    else:
        if omega is None or not omega.has_tables():
            raise SystemError(f"{kind.value} needs the four tables {', '.join(OPERATIONS)}")
        if kind is SystemKind.ORBA_WEIGHTED and omega.dot is None:
            raise SystemError("ORBA_WEIGHTED needs a 'dot' table")

    carrier = omega.carrier
    if kind is SystemKind.RBF:
        lam = _scalar(weights)
        weight_of = lambda x, y: (lam, omega.op("left", x, y))  # noqa: E731
    elif kind is SystemKind.MRBA:
        vec = _vector(weights, carrier)
        weight_of = lambda x, y: (vec[y], x)  # noqa: E731
    elif kind is SystemKind.ORBA_WEIGHTED:
        mat = _matrix(weights, carrier)
        weight_of = lambda x, y: (mat[x, y], omega.op("dot", x, y))  # noqa: E731
    else:
        weight_of = lambda x, y: None  # noqa: E731

    routes = {}
    for x in carrier:
        for y in carrier:
            routes[x, y] = (
                omega.op("rtri", x, y),
                omega.op("right", x, y),
                omega.op("ltri", x, y),
                omega.op("left", x, y),
                weight_of(x, y),
            )
    return RuleSystem(kind, omega, routes, alphabet, weights)


def _weight_vector(weights, carrier=None) -> dict | Fraction:
    if isinstance(weights, Mapping):
        return {k: number(v) for k, v in weights.items()}
    if isinstance(weights, (list, tuple)):
        if carrier is None:
            raise SystemError("a weight list needs the Ω carrier")
        return _vector(weights, carrier)
    return number(weights)


def eliminate_s(p, weights, carrier=None) -> Polynomial:
    """Send ``⌊w⌋_ω^S ↦ ⌊φ(w)⌋_ω^R + λ_ω φ(w)`` recursively and multiplicatively.

    ``weights`` is a scalar λ (same for every ω) or a mapping ω → λ_ω.
    """
    lam = _weight_vector(weights, carrier)
    memo: dict[Word, dict] = {}

    def weight(om):
        if isinstance(lam, dict):
            try:
                return lam[om]
            except KeyError:
                raise SystemError(f"missing weight for Ω element {om!r}") from None
        return lam

    def phi_prime(pr) -> dict:
        if not isinstance(pr, Bracket):
            return {Word((pr,)): ONE}
        inner = phi_word(pr.inner)
        out = {Word((Bracket("R", pr.omega, w),)): c for w, c in inner.items()}
        if pr.tag == "S":
            lw = weight(pr.omega)
            if lw:
                for w, c in inner.items():
                    s = out.get(w, 0) + lw * c
                    if s:
                        out[w] = s
                    else:
                        out.pop(w, None)
        return out

    def phi_word(w: Word) -> dict:
        if w in memo:
            return memo[w]
        acc = {Word(): ONE}
        for pr in w.primes:
            f = phi_prime(pr)
            nxt: dict = {}
            for w1, c1 in acc.items():
                for w2, c2 in f.items():
                    k = concat(w1, w2)
                    s = nxt.get(k, 0) + c1 * c2
                    if s:
                        nxt[k] = s
                    else:
                        nxt.pop(k, None)
            acc = nxt
        memo[w] = acc
        return acc

    p = Polynomial.coerce(p)
    out: dict = {}
    for w, c in p.terms.items():
        for w2, c2 in phi_word(w).items():
            s = out.get(w2, 0) + c * c2
            if s:
                out[w2] = s
            else:
                out.pop(w2, None)
    return Polynomial(out)


def dendriform(a, b, omega_element, side: str, sys: RuleSystem, strategy="max-monomial"):
    """``a ≺_ω b = a·⌊b⌋_ω^S`` or ``a ≻_ω b = ⌊a⌋_ω^R·b``, normalized in ``sys``."""
    from .rewrite import normalize

    if "S" not in sys.tags:
        raise SystemError(f"{sys.name} has no S operators; dendriform products need both tags")
    if omega_element not in sys.omega.carrier:
        raise SystemError(f"unknown Ω element {omega_element!r}")
    a = Polynomial.coerce(a)
    b = Polynomial.coerce(b)
    if side in ("prec", "≺", "<"):
        p = a * b.wrap("S", omega_element)
    elif side in ("succ", "≻", ">"):
        p = a.wrap("R", omega_element) * b
    else:
        raise SystemError(f"side must be 'prec' or 'succ', got {side!r}")
    return normalize(p, sys, strategy)
