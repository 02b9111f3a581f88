"""Non-evasiveness of order complexes, dismantlability, and the BW-type hypotheses on (P, s)."""

__version__ = "0.1.0"

from .complex import SimplicialComplex, order_complex
from .dismantle import DismantlingSequence, dismantling_sequence, is_dismantlable
from .evasiveness import LEAF, CertNode, is_non_evasive, verify_certificate
from .kozlov import (
    bw_report,
    check_BW,
    check_corollary15,
    check_theorem8,
    verify_corollary15,
    verify_theorem14,
)
from .poset import FinitePoset, dual, from_cover_relations, join, meet, parse_poset

__all__ = [
    "CertNode",
    "DismantlingSequence",
    "FinitePoset",
    "LEAF",
    "SimplicialComplex",
    "bw_report",
    "check_BW",
    "check_corollary15",
    "check_theorem8",
    "dismantling_sequence",
    "dual",
    "from_cover_relations",
    "is_dismantlable",
    "is_non_evasive",
    "join",
    "meet",
    "order_complex",
    "parse_poset",
    "verify_certificate",
    "verify_corollary15",
    "verify_theorem14",
]
