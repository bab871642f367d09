"""Exact characters of sl2 fusion products and level-k affine modules."""

from .affine_char import HighestWeightLabel, irrep_character, ld_character, stabilization_check
from .compositions import Composition, avector_of, dvector_of
from .decomposer import decompose_full, decompose_step
from .errors import CutoffError, InvariantViolation, UsageError
from .fusion_char import fusion_character, fusion_dimension, m_character, w_infinity_character
from .qseries import BiSeries
from .verlinde import VerlindeElement, verlinde_coefficients

__all__ = [
    "BiSeries", "Composition", "CutoffError", "HighestWeightLabel", "InvariantViolation",
    "UsageError", "VerlindeElement", "avector_of", "decompose_full", "decompose_step",
    "dvector_of", "fusion_character", "fusion_dimension", "irrep_character", "ld_character",
    "m_character", "stabilization_check", "verlinde_coefficients", "w_infinity_character",
]
