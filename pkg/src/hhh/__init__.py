"""Triply graded link homology of braid closures via Soergel bimodules.

The engine builds Rouquier complexes of Bott-Samelson bimodules, takes
Hochschild homology of each chain group and the homology of the induced
differential. Two independent oracles cross-check it: the HOMFLY-PT
polynomial from the Hecke algebra and a localization formula on the Hilbert
scheme of points for torus knots.
"""
from .braid import BraidWord, markov_variants, torus_braid
from .pipeline import HHHResult, compute_hhh, verify_euler, verify_markov, verify_symmetry

__all__ = [
    "BraidWord",
    "HHHResult",
    "compute_hhh",
    "markov_variants",
    "torus_braid",
    "verify_euler",
    "verify_markov",
    "verify_symmetry",
]
__version__ = "0.1.0"
