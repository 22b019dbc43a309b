"""Command-line interface and the Ω-structure file format.

Ω files are line oriented; ``#`` starts a comment::

    elements: a b
    left:
    a a
    a b
    right:
    ...
    weights:
    lambda a 0
    lambda b 1/2

Each table block has one row per first argument.  ``weights:`` holds
``scalar q``, one ``lambda ω q`` line per element, or a square matrix.
"""

from __future__ import annotations

import argparse
import re
import sys as _sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .eds import OPERATIONS, OmegaStructure, StructureError, check_eds, trivial_structure
from .gsb import CompositionError, check_gsb
from .rewrite import (
    DEFAULT_BUDGET,
    STRATEGIES,
    ReductionBudgetExceeded,
    basis_census,
    normal_form,
    normalize,
)
from .syntax import (
    ParseError,
    parse_expression,
    render_axiom_report,
    render_polynomial,
    render_trace,
    render_verdict,
)
from .systems import SystemError, SystemKind, build_system, dendriform, eliminate_s
from .terms import EnumerationOverflow, StarWordError

__all__ = ["FormatError", "parse_omega_text", "load_omega", "parse_weights_arg", "SessionConfig", "main"]

_BLOCKS = OPERATIONS + ("dot", "weights")
_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9']*")
_WEIGHTED = (SystemKind.RBF, SystemKind.MRBA, SystemKind.ORBA_WEIGHTED)


class FormatError(ValueError):
    def __init__(self, message, line=None, source="<omega>"):
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)
        self.line = line


def _rational(tok, line, source):
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad rational {tok!r}", line, source) from None


def _parse_weights(rows, carrier, source):
    if not rows:
        raise FormatError("empty weights block", None, source)
    first = rows[0][1]
    if first[0] == "scalar":
        if len(rows) != 1 or len(first) != 2:
            raise FormatError("expected a single line 'scalar <q>'", rows[0][0], source)
        return _rational(first[1], rows[0][0], source)
    if first[0] == "lambda":
        out = {}
        for ln, toks in rows:
            if len(toks) != 3 or toks[0] != "lambda":
                raise FormatError("expected 'lambda <ω> <q>'", ln, source)
            if toks[1] not in carrier:
                raise FormatError(f"unknown Ω element {toks[1]!r}", ln, source)
            if toks[1] in out:
                raise FormatError(f"duplicate weight for {toks[1]!r}", ln, source)
            out[toks[1]] = _rational(toks[2], ln, source)
        missing = [x for x in carrier if x not in out]
        if missing:
            raise FormatError(f"missing weight for {', '.join(missing)}", None, source)
        return out
    n = len(carrier)
    if len(rows) != n:
        raise FormatError(f"weight matrix needs {n} rows, got {len(rows)}", rows[0][0], source)
    mat = []
    for ln, toks in rows:
        if len(toks) != n:
            raise FormatError(f"weight row needs {n} entries", ln, source)
        mat.append(tuple(_rational(t, ln, source) for t in toks))
    return tuple(mat)


def parse_omega_text(text: str, source: str = "<omega>") -> OmegaStructure:
    """Parse the Ω file format into an :class:`OmegaStructure`."""
    carrier = None
    blocks: dict[str, list] = {}
    current = None
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, colon, rest = line.partition(":")
        head = head.strip()
        if colon and (head == "elements" or head in _BLOCKS):
            if head == "elements":
                if carrier is not None:
                    raise FormatError("duplicate 'elements:' line", ln, source)
                carrier = tuple(rest.split())
                if not carrier:
                    raise FormatError("'elements:' lists no elements", ln, source)
                current = None
                continue
            if carrier is None:
                raise FormatError(f"'{head}:' before 'elements:'", ln, source)
            if head in blocks:
                raise FormatError(f"duplicate '{head}:' block", ln, source)
            blocks[head] = []
            current = head
            if rest.strip():
                blocks[head].append((ln, rest.split()))
            continue
        if current is None:
            raise FormatError(f"unexpected line {line!r}", ln, source)
        blocks[current].append((ln, line.split()))
    if carrier is None:
        raise FormatError("missing 'elements:' line", None, source)

    n = len(carrier)
    members = set(carrier)
    tables = {}
    for name in OPERATIONS + ("dot",):
        if name not in blocks:
            continue
        rows = blocks[name]
        if len(rows) != n:
            raise FormatError(f"table '{name}' needs {n} rows, got {len(rows)}",
                              rows[0][0] if rows else None, source)
        for ln, toks in rows:
            if len(toks) != n:
                raise FormatError(f"table '{name}' row needs {n} entries, got {len(toks)}", ln, source)
            for t in toks:
                if t not in members:
                    raise FormatError(f"unknown Ω element {t!r} in table '{name}'", ln, source)
        tables[name] = tuple(tuple(toks) for _, toks in rows)
    weights = _parse_weights(blocks["weights"], carrier, source) if "weights" in blocks else None
    try:
        return OmegaStructure(carrier, weights=weights, **tables)
    except StructureError as e:
        raise FormatError(str(e), None, source) from None


def load_omega(path) -> OmegaStructure:
    p = Path(path)
    return parse_omega_text(p.read_text(encoding="utf-8"), str(p))


def parse_weights_arg(text: str):
    """``1/2`` for a scalar, ``a=0,b=1/2`` for per-element weights."""
    text = text.strip()
    if "=" not in text:
        return _rational(text, None, "--weights")
    out = {}
    for part in text.split(","):
        k, _, v = part.partition("=")
        if not k.strip():
            raise FormatError(f"bad weight entry {part!r}", None, "--weights")
        out[k.strip()] = _rational(v.strip(), None, "--weights")
    return out


@dataclass
class SessionConfig:
    alphabet: tuple
    omega: OmegaStructure
    kind: SystemKind
    weights: object = None
    strategy: str = "max-monomial"
    budget: int = DEFAULT_BUDGET
    seed: int | None = None
    jobs: int = 1

    def system(self):
        w = self.weights if self.kind in _WEIGHTED else None
        return build_system(self.kind, self.omega, w, self.alphabet)


def _config(args) -> SessionConfig:
    kind = SystemKind.parse(args.system)
    alphabet = tuple(a.strip() for a in args.alphabet.split(",") if a.strip())
    if len(set(alphabet)) != len(alphabet):
        raise FormatError("duplicate generator in --alphabet", None, "--alphabet")
    for a in alphabet:
        if not _IDENT.fullmatch(a):
            raise FormatError(f"generator name {a!r} is not an identifier", None, "--alphabet")
    if args.omega_file:
        omega = load_omega(args.omega_file)
    elif args.elements:
        omega = OmegaStructure(tuple(e.strip() for e in args.elements.split(",") if e.strip()))
    else:
        omega = trivial_structure()
    weights = parse_weights_arg(args.weights) if args.weights is not None else omega.weights
    if kind not in _WEIGHTED and args.weights is not None and args.command != "eliminate-s":
        raise SystemError(f"{kind.value} takes no weights")
    return SessionConfig(alphabet, omega, kind, weights, args.strategy, args.budget,
                         args.seed, args.jobs)


def _warn_if_not_eds(cfg: SessionConfig, sys, err):
    if not sys.kind.has_gsb_theorem or not sys.omega.has_tables():
        return
    if not check_eds(sys.omega, first_only=True).passed:
        print(
            f"warning: Ω is not an extended diassociative semigroup; {sys.name} is not a "
            "Gröbner-Shirshov basis and normal forms may depend on the strategy",
            file=err,
        )


def _parse(cfg, sys, text):
    return parse_expression(text, "polynomial", alphabet=cfg.alphabet,
                            omega=sys.omega.carrier, tags=sys.tags)


def _nf(cfg, sys, p):
    return normalize(p, sys, cfg.strategy, cfg.budget, cfg.seed)


def _cmd_nf(cfg, sys, args, out):
    print(render_polynomial(_nf(cfg, sys, _parse(cfg, sys, args.expr)), sys.order), file=out)
    return 0


def _cmd_mul(cfg, sys, args, out):
    p = _parse(cfg, sys, args.left) * _parse(cfg, sys, args.right)
    print(render_polynomial(_nf(cfg, sys, p), sys.order), file=out)
    return 0


def _cmd_reduce(cfg, sys, args, out):
    p = _parse(cfg, sys, args.expr)
    nf, trace = normal_form(p, sys, cfg.strategy, cfg.budget, cfg.seed)
    if args.trace:
        print(render_trace(trace, sys), file=out)
    else:
        print(render_polynomial(nf, sys.order), file=out)
    return 0


def _cmd_check_eds(cfg, sys, args, out):
    omega = cfg.omega
    if not omega.has_tables():
        omega = sys.omega  # matching and family kinds supply their own tables
    report = check_eds(omega)
    print(render_axiom_report(report), file=out)
    return 0 if report.passed else 1


def _cmd_check_gsb(cfg, sys, args, out):
    verdict = check_gsb(sys, intersections_only=args.intersections_only,
                        strategy=cfg.strategy, budget=cfg.budget,
                        contexts_depth=args.contexts_depth, jobs=cfg.jobs)
    work = verdict.system
    traces = []
    for amb, _ in verdict.counterexamples[: args.max_dumps]:
        from .gsb import composition

        traces.append(normal_form(composition(amb, work), work, cfg.strategy, cfg.budget)[1])
    print(render_verdict(verdict, work, traces), file=out)
    return 0 if verdict.consistent else 1


def _cmd_basis(cfg, sys, args, out):
    counts, enum = basis_census(cfg.alphabet, sys, args.max_deg, cross_check=args.cross_check)
    ok = True
    for d, c in enumerate(counts):
        line = f"deg {d}: {c}"
        if enum is not None:
            line += f" (enumerated {enum[d]})"
            if enum[d] != c:
                line += " MISMATCH"
                ok = False
        print(line, file=out)
    return 0 if ok else 1


def _cmd_eliminate_s(cfg, sys, args, out):
    if cfg.weights is None:
        raise SystemError("eliminate-s needs weights (--weights or a 'weights:' block)")
    p = parse_expression(args.expr, "polynomial", alphabet=cfg.alphabet,
                         omega=cfg.omega.carrier, tags=("R", "S"))
    print(render_polynomial(eliminate_s(p, cfg.weights, cfg.omega.carrier), sys.order), file=out)
    return 0


def _cmd_dendriform(cfg, sys, args, out):
    carrier = {str(x): x for x in sys.omega.carrier}
    if args.element not in carrier:
        raise SystemError(f"unknown Ω element {args.element!r}")
    a = _parse(cfg, sys, args.left)
    b = _parse(cfg, sys, args.right)
    r = dendriform(a, b, carrier[args.element], args.side, sys, cfg.strategy)
    print(render_polynomial(r, sys.order), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="omegarb",
        description="Normal forms and Gröbner-Shirshov checks for free Ω-Rota-Baxter systems.",
    )
    ap.add_argument("--system", default="ORBS",
                    help="rule family: " + ", ".join(k.value for k in SystemKind) + " (default ORBS)")
    ap.add_argument("--omega", dest="omega_file", metavar="FILE", help="Ω-structure file")
    ap.add_argument("--elements", metavar="a,b,...",
                    help="Ω carrier without tables (enough for RBS, MRBS, MRBA)")
    ap.add_argument("--alphabet", default="x,y,z", help="generator names (default x,y,z)")
    ap.add_argument("--weights", metavar="SPEC", help="scalar '1/2' or per-element 'a=0,b=1'")
    ap.add_argument("--strategy", default="max-monomial", choices=STRATEGIES)
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum reduction steps")
    ap.add_argument("--seed", type=int, default=None, help="seed for seeded-random")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for check-gsb")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("nf", help="normal form of an expression")
    p.add_argument("expr")
    p = sub.add_parser("mul", help="normal form of a product")
    p.add_argument("left")
    p.add_argument("right")
    sub.add_parser("check-eds", help="check the 15 axioms on the Ω tables")
    p = sub.add_parser("check-gsb", help="reduce all compositions of the rule system")
    p.add_argument("--contexts-depth", type=int, default=1)
    p.add_argument("--intersections-only", action="store_true")
    p.add_argument("--max-dumps", type=int, default=3, help="counterexamples shown with a trace")
    p = sub.add_parser("basis", help="count irreducible words per degree")
    p.add_argument("--max-deg", type=int, required=True)
    p.add_argument("--cross-check", action="store_true")
    p = sub.add_parser("reduce", help="reduce an expression, optionally with its trace")
    p.add_argument("--trace", action="store_true")
    p.add_argument("expr")
    p = sub.add_parser("eliminate-s", help="replace S brackets by R brackets plus weights")
    p.add_argument("expr")
    p = sub.add_parser("dendriform", help="the products a≺b = a S(b) and a≻b = R(a) b")
    p.add_argument("--omega", dest="element", required=True, metavar="ω")
    p.add_argument("--side", choices=("prec", "succ"), required=True)
    p.add_argument("left")
    p.add_argument("right")
    return ap


_COMMANDS = {
    "nf": _cmd_nf,
    "mul": _cmd_mul,
    "reduce": _cmd_reduce,
    "check-eds": _cmd_check_eds,
    "check-gsb": _cmd_check_gsb,
    "basis": _cmd_basis,
    "eliminate-s": _cmd_eliminate_s,
    "dendriform": _cmd_dendriform,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or _sys.stdout
    err = err or _sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = _config(args)
        sys = cfg.system()
        if args.command != "check-eds":
            _warn_if_not_eds(cfg, sys, err)
        return _COMMANDS[args.command](cfg, sys, args, out)
    except (ParseError, FormatError, StructureError, SystemError, StarWordError,
            CompositionError, OSError, ReductionBudgetExceeded, EnumerationOverflow) as e:
        print(f"error: {e}", file=err)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
