"""Exact arithmetic: polynomials, trigraded series, polynomial matrices, slice ranks."""
from .linalg import dense_rank_fraction, sparse_rank
from .polymatrix import PolyMatrix, graded_slice_rank
from .polynomial import Polynomial, monomials_of_degree
from .series import TriSeries, series_expand

__all__ = [
    "Polynomial",
    "PolyMatrix",
    "TriSeries",
    "dense_rank_fraction",
    "graded_slice_rank",
    "monomials_of_degree",
    "series_expand",
    "sparse_rank",
]
