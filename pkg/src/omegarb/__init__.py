"""Free Ω-Rota-Baxter systems as rewriting systems on bracketed words."""

from .eds import (
    AxiomReport,
    OmegaStructure,
    check_eds,
    check_semigroup,
    family_structure,
    matching_structure,
    trivial_structure,
)
from .gsb import check_gsb
from .order import OrderContext, leading_monomial, make_monic
from .rewrite import basis_census, find_redexes, is_irreducible, normal_form, normalize, product
from .systems import RuleSystem, SystemKind, build_system, dendriform, eliminate_s
from .terms import ONE, STAR, Bracket, Polynomial, Word, concat, gen, plug, substitute, wrap

__version__ = "0.1.0"
