"""Exact computations with braid group actions on homotopy categories of projective complexes."""

from .algebra import build_algebra, build_nakayama, build_zigzag
from .braids import BraidWord, oracle_compare, parse_braid_word
from .complexes import ProjComplex, homotopy_equivalent, minimize, stalk
from .scalars import QQ, PrimeField
from .twists import parse_functor_word, word_apply

__version__ = "1.0.0"

__all__ = [
    "BraidWord",
    "PrimeField",
    "ProjComplex",
    "QQ",
    "build_algebra",
    "build_nakayama",
    "build_zigzag",
    "homotopy_equivalent",
    "minimize",
    "oracle_compare",
    "parse_braid_word",
    "parse_functor_word",
    "stalk",
    "word_apply",
]
