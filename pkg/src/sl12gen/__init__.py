"""(2,3)-generation of SL_12(q): finite fields, matrices, permutation-group
machinery and step-by-step certificates."""

from .action import StabilizerChain, normal_closure, schreier_sims, sl_order
from .certify import (
    CertificateReport,
    certify_full_generation,
    sweep,
    verify_corollary,
    verify_lemma_5,
    verify_lemma_alt,
    verify_lemma_alt5,
    verify_orders,
    verify_prop_steps,
)
from .ff import FieldElement, FieldSpec, make_field
from .gens import GeneratorPair, default_t, make_pair
from .matq import Matrix

__version__ = "0.1.0"

__all__ = [
    "CertificateReport",
    "FieldElement",
    "FieldSpec",
    "GeneratorPair",
    "Matrix",
    "StabilizerChain",
    "certify_full_generation",
    "default_t",
    "make_field",
    "make_pair",
    "normal_closure",
    "schreier_sims",
    "sl_order",
    "sweep",
    "verify_corollary",
    "verify_lemma_5",
    "verify_lemma_alt",
    "verify_lemma_alt5",
    "verify_orders",
    "verify_prop_steps",
]
