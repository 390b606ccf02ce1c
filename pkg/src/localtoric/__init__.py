"""Computational toolkit for local toric rings in positive characteristic."""

__version__ = "0.1.0"

from .arith import GF, PrimePower, adjusted_remainder, split_digits
from .binomial import Monomial, BinomialElement, ToricPresentation, length_artinian
from .toric import BipartiteData, FamilyTParams, PhiMatrix, Semigroup, build_bipartite, build_family_T
from .frobenius import StarElement, saturation_generators, certify_freeness

__all__ = [
    "GF", "PrimePower", "adjusted_remainder", "split_digits",
    "Monomial", "BinomialElement", "ToricPresentation", "length_artinian",
    "BipartiteData", "FamilyTParams", "PhiMatrix", "Semigroup", "build_bipartite", "build_family_T",
    "StarElement", "saturation_generators", "certify_freeness",
]
