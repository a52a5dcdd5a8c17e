"""Circulant, g-circulant and cyclic MDS matrices over GF(2^m)."""

__version__ = "0.1.0"

from .errors import CyclicMDSError
from .gf2m import AES_FIELD, GF2, GF2m, Element
from .matrix import Matrix
from .report import PropertyReport
from .structured import (
    KCycle,
    Permutation,
    associated_circulant,
    circulant,
    cyclic,
    g_circulant,
    left_circulant,
    parse_cycle,
)
from .props import branch_numbers, is_involutory, is_mds, is_orthogonal
from .search import CampaignResult, CampaignSpec, Shape, run_campaign, verify_nonexistence_2d

__all__ = [
    "AES_FIELD", "GF2", "GF2m", "Element", "Matrix", "PropertyReport", "CyclicMDSError",
    "Permutation", "KCycle", "parse_cycle", "associated_circulant",
    "circulant", "left_circulant", "g_circulant", "cyclic",
    "is_mds", "is_orthogonal", "is_involutory", "branch_numbers",
    "Shape", "CampaignSpec", "CampaignResult", "run_campaign", "verify_nonexistence_2d",
]
