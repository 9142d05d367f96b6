"""Generating functions, Bailey pairs and the q-series lemmas behind them."""

from .bailey import (BaileyCheck, BaileyPair, andrews_pair, bailey_check, bailey_rhs, ou_pair,
                     perturbed_ou_pair, qq_pair, standard_pairs)
from .forms import (FAMILIES, FORMS, GFForm, gf, hecke2_exponent, ou_counts, ou_direct, ou_hecke,
                    ou_hecke_positive_cone, ou_ramanujan, oustar_appell, oustar_counts,
                    oustar_direct, oustar_hecke, oustar_hecke2, quadrant)

__all__ = [
    "FAMILIES", "FORMS", "GFForm", "gf", "quadrant", "hecke2_exponent",
    "ou_direct", "ou_ramanujan", "ou_hecke", "ou_hecke_positive_cone",
    "oustar_direct", "oustar_appell", "oustar_hecke", "oustar_hecke2",
    "ou_counts", "oustar_counts",
    "BaileyPair", "BaileyCheck", "bailey_check", "bailey_rhs",
    "ou_pair", "andrews_pair", "qq_pair", "perturbed_ou_pair", "standard_pairs",
]
