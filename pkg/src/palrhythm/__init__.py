"""Euclidean rhythms with palindromic rests."""

from palrhythm.core import (
    DecimalV,
    GapVector,
    Rhythm,
    bjorklund,
    break_rhythm,
    complement,
    concatenate,
    decimal_of,
    digits_of,
    gap_vector,
    rhythm_from_gaps,
    rotate,
    scale,
)
from palrhythm.family import FamilyMember, classify, enumerate_family, tau1_member, tau2_member

__version__ = "0.1.0"

__all__ = [
    "DecimalV",
    "FamilyMember",
    "GapVector",
    "Rhythm",
    "bjorklund",
    "break_rhythm",
    "classify",
    "complement",
    "concatenate",
    "decimal_of",
    "digits_of",
    "enumerate_family",
    "gap_vector",
    "rhythm_from_gaps",
    "rotate",
    "scale",
    "tau1_member",
    "tau2_member",
]
