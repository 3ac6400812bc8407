"""Hecke rings of congruence subgroups, their bi-set and bimodule structure, and Hecke operators on modular symbols."""
from .arith import GroupElement, hermite_right, smith_form
from .congruence import CongruenceSubgroup, Kind, parse_group
from .cosets import CosetDecomposition, cocycle, decompose
from .errors import (
    BadDeterminant,
    BadReduction,
    CapExceeded,
    DomainMismatch,
    GroupMismatch,
    HeckeError,
    NonIntegral,
    NotInCoset,
    NotInGroup,
    Unsupported,
)
from .hecke_ring import (
    DoubleCoset,
    HeckeElement,
    double_coset,
    double_coset_eq,
    hecke_mul,
    hecke_T,
    hecke_Tp,
    hecke_Tpp,
    shimura_product,
)
from .report import ENGINE_VERSION as __version__

__all__ = [
    "BadDeterminant", "BadReduction", "CapExceeded", "CongruenceSubgroup", "CosetDecomposition",
    "DomainMismatch", "DoubleCoset", "GroupElement", "GroupMismatch", "HeckeElement", "HeckeError",
    "Kind", "NonIntegral", "NotInCoset", "NotInGroup", "Unsupported", "cocycle", "decompose",
    "double_coset", "double_coset_eq", "hecke_T", "hecke_Tp", "hecke_Tpp", "hecke_mul",
    "hermite_right", "parse_group", "shimura_product", "smith_form",
]
