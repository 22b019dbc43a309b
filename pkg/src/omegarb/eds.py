"""Finite Ω-structures and the extended-diassociative-semigroup axioms.

The four operations are named after their arrows::

    left  = ←    right = →    ltri = ◁    rtri = ▷

An optional fifth table ``dot`` and weight data are carried along for the
weighted algebra kind; no axiom involves them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

__all__ = [
    "OPERATIONS",
    "OP_SYMBOLS",
    "AXIOMS",
    "StructureError",
    "OmegaStructure",
    "Violation",
    "AxiomReport",
    "check_eds",
    "check_semigroup",
    "family_structure",
    "matching_structure",
    "trivial_structure",
    "all_structures",
    "render_axiom",
]

OPERATIONS = ("left", "right", "ltri", "rtri")
OP_SYMBOLS = {"left": "←", "right": "→", "ltri": "◁", "rtri": "▷", "dot": "·"}


class StructureError(ValueError):
    pass


def _op(name, x, y):
    return (name, x, y)


a, b, c = "a", "b", "c"
L = lambda x, y: _op("left", x, y)  # noqa: E731
R = lambda x, y: _op("right", x, y)  # noqa: E731
LT = lambda x, y: _op("ltri", x, y)  # noqa: E731
RT = lambda x, y: _op("rtri", x, y)  # noqa: E731

# (lhs, rhs) over the variables a, b, c; numbered 1..15 in list order.
AXIOMS = (
    (R(R(a, b), c), R(a, R(b, c))),
    (RT(R(a, b), c), R(RT(a, R(b, c)), RT(b, c))),
    (RT(a, b), RT(RT(a, R(b, c)), RT(b, c))),
    (L(R(a, b), c), R(a, L(b, c))),
    (RT(a, L(b, c)), RT(a, b)),
    (LT(R(a, b), c), LT(b, c)),
    (R(L(a, b), c), R(a, R(b, c))),
    (L(RT(a, R(b, c)), RT(b, c)), RT(L(a, b), c)),
    (LT(RT(a, R(b, c)), RT(b, c)), LT(a, b)),
    (L(L(a, b), c), L(a, R(b, c))),
    (R(LT(a, b), LT(L(a, b), c)), LT(a, R(b, c))),
    (RT(LT(a, b), LT(L(a, b), c)), RT(b, c)),
    (L(L(a, b), c), L(a, L(b, c))),
    (L(LT(a, b), LT(L(a, b), c)), LT(a, L(b, c))),
    (LT(LT(a, b), LT(L(a, b), c)), LT(b, c)),
)

del L, R, LT, RT


def render_axiom(tree) -> str:
    names = {"a": "α", "b": "β", "c": "γ"}
    if isinstance(tree, str):
        return names[tree]
    op, x, y = tree
    lx, ly = render_axiom(x), render_axiom(y)
    if not isinstance(x, str):
        lx = f"({lx})"
    if not isinstance(y, str):
        ly = f"({ly})"
    return f"{lx}{OP_SYMBOLS[op]}{ly}"


@dataclass(frozen=True)
class OmegaStructure:
    """Finite carrier with operation tables indexed ``table[i][j]`` by position.

    Row index is the first argument.  Tables may be absent (``None``) for
    system kinds that do not consult them.
    """

    carrier: tuple
    left: tuple | None = None
    right: tuple | None = None
    ltri: tuple | None = None
    rtri: tuple | None = None
    dot: tuple | None = None
    weights: object = None
    _lookup: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        carrier = tuple(self.carrier)
        object.__setattr__(self, "carrier", carrier)
        if not carrier:
            raise StructureError("Ω must be a nonempty set")
        if len(set(carrier)) != len(carrier):
            raise StructureError("Ω elements must be distinct")
        n = len(carrier)
        members = set(carrier)
        lookup = {}
        for name in OPERATIONS + ("dot",):
            table = getattr(self, name)
            if table is None:
                continue
            table = tuple(tuple(row) for row in table)
            object.__setattr__(self, name, table)
            if len(table) != n or any(len(row) != n for row in table):
                raise StructureError(f"table {name!r} must be {n}x{n}")
            for row in table:
                for x in row:
                    if x not in members:
                        raise StructureError(f"table {name!r} has entry {x!r} outside Ω")
            lookup[name] = {
                (carrier[i], carrier[j]): table[i][j] for i in range(n) for j in range(n)
            }
        object.__setattr__(self, "_lookup", lookup)

    @property
    def size(self) -> int:
        return len(self.carrier)

    def has_tables(self, names=OPERATIONS) -> bool:
        return all(getattr(self, n) is not None for n in names)

    def op(self, name: str, x, y):
        try:
            return self._lookup[name][x, y]
        except KeyError:
            if name not in self._lookup:
                raise StructureError(f"Ω structure has no {name!r} table") from None
            raise StructureError(f"({x!r}, {y!r}) not in Ω") from None

    def table(self, name: str) -> Mapping:
        if name not in self._lookup:
            raise StructureError(f"Ω structure has no {name!r} table")
        return self._lookup[name]

    def index(self, x) -> int:
        return self.carrier.index(x)

    def with_weights(self, weights) -> "OmegaStructure":
        return OmegaStructure(
            self.carrier, self.left, self.right, self.ltri, self.rtri, self.dot, weights
        )


@dataclass(frozen=True)
class Violation:
    axiom: int
    triple: tuple
    lhs: Hashable
    rhs: Hashable


@dataclass
class AxiomReport:
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def axioms_violated(self) -> set[int]:
        return {v.axiom for v in self.violations}

    def __bool__(self):
        return self.passed


def _evaluate(tree, env, tables):
    if isinstance(tree, str):
        return env[tree]
    op, x, y = tree
    return tables[op][_evaluate(x, env, tables), _evaluate(y, env, tables)]


def check_eds(omega: OmegaStructure, *, first_only: bool = False) -> AxiomReport:
    """Evaluate all 15 identities on every triple of Ω.

    Violations come out sorted by axiom index, then by triple in carrier order.
    """
    if not omega.has_tables():
        missing = [n for n in OPERATIONS if getattr(omega, n) is None]
        raise StructureError(f"Ω structure lacks tables: {', '.join(missing)}")
    tables = {n: omega.table(n) for n in OPERATIONS}
    report = AxiomReport()
    triples = list(itertools.product(omega.carrier, repeat=3))
    for k, (lhs, rhs) in enumerate(AXIOMS, start=1):
        for t in triples:
            env = {"a": t[0], "b": t[1], "c": t[2]}
            x = _evaluate(lhs, env, tables)
            y = _evaluate(rhs, env, tables)
            if x != y:
                report.violations.append(Violation(k, t, x, y))
                if first_only:
                    return report
    return report


def _square(product, carrier=None):
    """Normalize a product given as a mapping or a square table."""
    if isinstance(product, Mapping):
        if carrier is None:
            carrier = []
            for x, y in product:
                for z in (x, y):
                    if z not in carrier:
                        carrier.append(z)
        carrier = tuple(carrier)
        table = tuple(tuple(product[x, y] for y in carrier) for x in carrier)
    else:
        table = tuple(tuple(row) for row in product)
        if carrier is None:
            carrier = tuple(range(len(table)))
        carrier = tuple(carrier)
    n = len(carrier)
    if len(table) != n or any(len(r) != n for r in table):
        raise StructureError("product table must be square over the carrier")
    return carrier, table


def check_semigroup(product, carrier=None) -> tuple[bool, tuple | None]:
    """Associativity of a binary table; returns ``(ok, witness_triple)``."""
    carrier, table = _square(product, carrier)
    idx = {x: i for i, x in enumerate(carrier)}

    def mul(x, y):
        return table[idx[x]][idx[y]]

    for x, y, z in itertools.product(carrier, repeat=3):
        if mul(mul(x, y), z) != mul(x, mul(y, z)):
            return False, (x, y, z)
    return True, None


def family_structure(product, carrier=None, weights=None) -> OmegaStructure:
    """← and → both the product; ◁ picks the right argument, ▷ the left."""
    carrier, table = _square(product, carrier)
    n = len(carrier)
    second = tuple(tuple(carrier[j] for j in range(n)) for _ in range(n))
    first = tuple(tuple(carrier[i] for _ in range(n)) for i in range(n))
    return OmegaStructure(carrier, table, table, second, first, table, weights)


def matching_structure(carrier: Sequence, weights=None) -> OmegaStructure:
    """→ and ◁ pick the right argument; ← and ▷ pick the left."""
    carrier = tuple(carrier)
    if not carrier:
        raise StructureError("matching structure needs a nonempty set")
    n = len(carrier)
    second = tuple(tuple(carrier[j] for j in range(n)) for _ in range(n))
    first = tuple(tuple(carrier[i] for _ in range(n)) for i in range(n))
    return OmegaStructure(carrier, first, second, second, first, None, weights)


def trivial_structure(name="e", weights=None) -> OmegaStructure:
    t = ((name,),)
    return OmegaStructure((name,), t, t, t, t, t, weights)


def all_structures(carrier: Sequence) -> "itertools.Iterator[OmegaStructure]":
    """Every assignment of the four tables over ``carrier`` (n^(4n²) of them)."""
    carrier = tuple(carrier)
    n = len(carrier)
    tables = [
        tuple(tuple(cells[i * n : (i + 1) * n]) for i in range(n))
        for cells in itertools.product(carrier, repeat=n * n)
    ]
    for lt, rt, lc, rc in itertools.product(tables, repeat=4):
        yield OmegaStructure(carrier, lt, rt, lc, rc)
