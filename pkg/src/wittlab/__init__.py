"""Exact arithmetic for big and truncated Witt vectors."""

from .errors import WittError
from .rings import (
    QQ,
    ZZ,
    FiniteField,
    GaloisRing,
    IntegersLocalized,
    IntegersMod,
    Polynomial,
    PrimeField,
    QuotientRing,
    Rationals,
    ring_from_json,
)
from .truncation import TruncationSet, p_typical
from .witt import (
    GhostVector,
    WittVector,
    artin_hasse_idempotent,
    delta_p,
    frobenius,
    ghost_of,
    teichmuller,
    verschiebung,
    witt_from_ghost,
)

__version__ = "0.1.0"

__all__ = [
    "QQ", "ZZ", "FiniteField", "GaloisRing", "IntegersLocalized", "IntegersMod",
    "Polynomial", "PrimeField", "QuotientRing", "Rationals", "ring_from_json",
    "TruncationSet", "p_typical", "GhostVector", "WittVector", "WittError",
    "artin_hasse_idempotent", "delta_p", "frobenius", "ghost_of", "teichmuller",
    "verschiebung", "witt_from_ghost",
]
