"""Sparse matrices over a polynomial ring, with graded row/column shifts."""
from __future__ import annotations

from typing import Mapping, Sequence

from .linalg import sparse_rank
from .polynomial import Polynomial, monomial_index, monomials_of_degree


class PolyMatrix:
    """Sparse rows x cols matrix of Polynomials.

    The matrix represents a map from the free module generated in degrees
    ``col_degrees`` to the one generated in ``row_degrees``; it is
    degree-homogeneous when every nonzero entry (i, j) is homogeneous of
    q-degree ``col_degrees[j] - row_degrees[i]``.
    Storage is column-major: ``cols[j] = {i: entry}``.
    """

    __slots__ = ("nrows", "ncols", "arity", "cols", "row_degrees", "col_degrees")

    def __init__(self, nrows: int, ncols: int, arity: int, cols: Mapping[int, Mapping[int, Polynomial]] | None = None,
                 row_degrees: Sequence[int] | None = None, col_degrees: Sequence[int] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.arity = arity
        self.cols: list[dict[int, Polynomial]] = [dict() for _ in range(ncols)]
        if cols:
            for j, col in cols.items():
                for i, p in col.items():
                    if p:
                        self.cols[j][i] = p
        self.row_degrees = tuple(row_degrees) if row_degrees is not None else (0,) * nrows
        self.col_degrees = tuple(col_degrees) if col_degrees is not None else (0,) * ncols

    # constructors -------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Polynomial]], arity: int, row_degrees=None, col_degrees=None):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = {j: {i: rows[i][j] for i in range(nrows) if rows[i][j]} for j in range(ncols)}
        return cls(nrows, ncols, arity, cols, row_degrees, col_degrees)

    @classmethod
    def identity(cls, n: int, arity: int, degrees=None):
        one = Polynomial.const(1, arity)
        return cls(n, n, arity, {j: {j: one} for j in range(n)}, degrees, degrees)

    @classmethod
    def scalar(cls, p: Polynomial, n: int, degrees=None):
        return cls(n, n, p.arity, {j: {j: p} for j in range(n)} if p else None, degrees, degrees)

    @classmethod
    def zero(cls, nrows: int, ncols: int, arity: int, row_degrees=None, col_degrees=None):
        return cls(nrows, ncols, arity, None, row_degrees, col_degrees)

    # access -------------------------------------------------------------
    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self.cols[j].get(i, Polynomial.zero(self.arity))

    def to_rows(self) -> list[list[Polynomial]]:
        z = Polynomial.zero(self.arity)
        out = [[z] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, p in col.items():
                out[i][j] = p
        return out

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def is_zero(self) -> bool:
        return not any(self.cols)

    def with_degrees(self, row_degrees, col_degrees) -> "PolyMatrix":
        m = self.copy()
        m.row_degrees = tuple(row_degrees)
        m.col_degrees = tuple(col_degrees)
        return m

    def copy(self) -> "PolyMatrix":
        m = PolyMatrix(self.nrows, self.ncols, self.arity, None, self.row_degrees, self.col_degrees)
        m.cols = [dict(c) for c in self.cols]
        return m

    # algebra ------------------------------------------------------------
    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._same_shape(other)
        out = self.copy()
        for j, col in enumerate(other.cols):
            tgt = out.cols[j]
            for i, p in col.items():
                s = tgt.get(i)
                s = p if s is None else s + p
                if s:
                    tgt[i] = s
                else:
                    tgt.pop(i, None)
        return out

    def __neg__(self):
        out = self.copy()
        out.cols = [{i: -p for i, p in c.items()} for c in self.cols]
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, p) -> "PolyMatrix":
        out = self.copy()
        cols = []
        for c in self.cols:
            d = {}
            for i, e in c.items():
                v = e * p
                if v:
                    d[i] = v
            cols.append(d)
        out.cols = cols
        return out

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        out = PolyMatrix(self.nrows, other.ncols, self.arity, None, self.row_degrees, other.col_degrees)
        for j, ocol in enumerate(other.cols):
            acc: dict[int, Polynomial] = {}
            for k, pk in ocol.items():
                for i, pik in self.cols[k].items():
                    v = pik * pk
                    s = acc.get(i)
                    acc[i] = v if s is None else s + v
            out.cols[j] = {i: v for i, v in acc.items() if v}
        return out

    def _same_shape(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self.cols == other.cols

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    # grading ------------------------------------------------------------
    def inhomogeneous_entries(self) -> list[tuple[int, int]]:
        bad = []
        for j, col in enumerate(self.cols):
            for i, p in col.items():
                if not p.is_homogeneous() or p.qdeg() != self.col_degrees[j] - self.row_degrees[i]:
                    bad.append((i, j))
        return bad

    def is_homogeneous(self) -> bool:
        return not self.inhomogeneous_entries()

    def specialize(self, images: Mapping[int, Polynomial], arity: int) -> "PolyMatrix":
        out = PolyMatrix(self.nrows, self.ncols, arity, None, self.row_degrees, self.col_degrees)
        for j, col in enumerate(self.cols):
            out.cols[j] = {i: v for i, p in col.items() if (v := p.subs(images, arity))}
        return out

    # graded slices ------------------------------------------------------
    def slice_columns(self, q_deg: int) -> tuple[list[dict], int, int]:
        """Columns of the induced Q-linear map on the degree-``q_deg`` slices.

        Returns (columns, domain_dim, codomain_dim); rows are indexed by
        (row generator, monomial) pairs in a fixed order.
        """
        return slice_columns(self.cols, self.arity, self.row_degrees, self.col_degrees, q_deg)


def slice_offsets(degrees: Sequence[int], arity: int, q_deg: int) -> tuple[list[int | None], int]:
    """Start offset of each generator's monomial block in the q_deg slice."""
    offsets: list[int | None] = []
    total = 0
    for d in degrees:
        diff = q_deg - d
        if diff < 0 or diff % 2:
            offsets.append(None)
            continue
        offsets.append(total)
        total += len(monomials_of_degree(arity, diff // 2))
    return offsets, total


def slice_columns(cols: Sequence[Mapping[int, Polynomial]], arity: int, row_degrees: Sequence[int],
                  col_degrees: Sequence[int], q_deg: int) -> tuple[list[dict], int, int]:
    row_off, nrows = slice_offsets(row_degrees, arity, q_deg)
    out: list[dict] = []
    ndom = 0
    for j, col in enumerate(cols):
        diff = q_deg - col_degrees[j]
        if diff < 0 or diff % 2:
            continue
        mons = monomials_of_degree(arity, diff // 2)
        ndom += len(mons)
        for mu in mons:
            c: dict = {}
            for i, p in col.items():
                off = row_off[i]
                if off is None:
                    continue
                rdeg = (q_deg - row_degrees[i]) // 2
                idx = monomial_index(arity, rdeg)
                for e, coeff in p.terms.items():
                    key = off + idx[tuple(a + b for a, b in zip(e, mu))]
                    v = c.get(key, 0) + coeff
                    if v:
                        c[key] = v
                    else:
                        c.pop(key, None)
            out.append(c)
    return out, ndom, nrows


def graded_slice_rank(M: PolyMatrix, q_deg: int, specialization: Mapping[int, Polynomial] | None = None,
                      target_arity: int | None = None, exact: bool = False) -> tuple[int, int]:
    """(rank, kernel_dim) of M on the degree-q_deg slice, after an optional substitution."""
    if specialization:
        M = M.specialize(specialization, target_arity if target_arity is not None else M.arity)
    bad = M.inhomogeneous_entries()
    if bad:
        raise ValueError(f"matrix is not degree-homogeneous at entries {bad[:5]}")
    cols, ndom, _ = M.slice_columns(q_deg)
    r = sparse_rank(cols, exact=exact)
    return r, ndom - r
