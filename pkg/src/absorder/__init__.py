"""Absolute orders on the Coxeter groups A_n, B_n and I_2(m), and exact Sperner certificates."""

from .groups import (
    Element, Family, GroupError, GroupId, GroupTooLargeError, ParseError, Reflection,
    absolute_length, absolute_length_bfs, compose, degree_sequence, elements,
    format_element, identity, inverse, parse_element, reflections,
)
from .poset import GradedPoset, build_poset, export_dot, product, rank_sequence
from .factorization import embed_claw_product, factorize, phi, reflection_tiers
from .absolute import build_absolute_order, claw, claw_product, expected_rank_polynomial
from .sperner import (
    KFamilyCertificate, is_k_sperner, is_strong_sperner, max_k_family, validate_certificate,
)

__version__ = "0.1.0"
