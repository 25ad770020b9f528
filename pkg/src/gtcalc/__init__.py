"""Finite relations, their morphisms and norms, truncated models of the
classical relations on omega, and a diagram of cardinal inequalities."""

from .errors import GTError
from .relation import (TOP, Finite, FiniteRelation, NormValue, dual, equality_relation,
                       load_relation, make_relation, min_cover, norm, random_relation,
                       strict_order_relation)
from .morphism import (Morphism, compose, dual_morphism, identity_morphism, search_morphism,
                       verify_morphism)
from .algebra import (conjunction, coproduct, dual_seq_composition, product, seq_composition,
                      sigma_power, verify_norm_laws)
from .diagram import Diagram, builtin_knowledge_base

__all__ = [
    "GTError", "TOP", "Finite", "FiniteRelation", "NormValue", "dual", "equality_relation",
    "load_relation", "make_relation", "min_cover", "norm", "random_relation",
    "strict_order_relation", "Morphism", "compose", "dual_morphism", "identity_morphism",
    "search_morphism", "verify_morphism", "conjunction", "coproduct", "dual_seq_composition",
    "product", "seq_composition", "sigma_power", "verify_norm_laws", "Diagram",
    "builtin_knowledge_base",
]
__version__ = "0.1.0"
