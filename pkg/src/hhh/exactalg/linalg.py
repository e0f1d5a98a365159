"""Exact rank computations for sparse rational matrices.

Matrices arrive as a list of sparse columns ``{row_index: coeff}`` with integer
or Fraction entries. Ranks are characteristic-0 ranks. Small matrices go through
FLINT's exact integer rank; large ones are ranked modulo two independent random
62-bit primes. A modular rank never exceeds the rational rank, and it can be
strictly smaller only when the prime divides every maximal nonvanishing minor;
two independent primes agreeing with each other and with the structural bound
gives a failure probability far below 2^-100 for the matrix sizes used here.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import lcm
from typing import Sequence

import flint

SparseColumns = Sequence[dict]

EXACT_THRESHOLD = 60  # min(rows, cols) at or below this uses exact integer rank
_PRIMES = (4611686018427387847, 4611686018427387817, 4611686018427387787, 4611686018427387733)


def dense_rank_fraction(rows: list[list]) -> int:
    """Plain Gaussian elimination over Q. Slow; kept as an independent oracle."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][c]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / pv
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _integer_columns(cols: SparseColumns) -> list[dict]:
    """Clear denominators column by column (does not change the rank)."""
    out = []
    for col in cols:
        dens = [v.denominator for v in col.values() if isinstance(v, Fraction)]
        if dens:
            m = lcm(*dens)
            out.append({r: int(v * m) for r, v in col.items()})
        else:
            out.append(col)
    return out


def _compress(cols: SparseColumns) -> tuple[list[dict], int]:
    """Drop empty columns and relabel occupied rows densely."""
    cols = [c for c in cols if c]
    rows = sorted({r for c in cols for r in c})
    index = {r: i for i, r in enumerate(rows)}
    return [{index[r]: v for r, v in c.items()} for c in cols], len(rows)


def _rank_mod_p_sparse(cols: list[dict], p: int) -> int:
    """Sparse elimination mod p with shortest-column pivoting."""
    work = []
    for c in cols:
        d = {r: v % p for r, v in c.items() if v % p}
        if d:
            work.append(d)
    pivots: dict[int, dict] = {}  # pivot row -> normalized reduced column
    rank = 0
    work.sort(key=len)
    for col in work:
        # reduce col by existing pivots until its leading row is free
        while col:
            r = min(col)
            pc = pivots.get(r)
            if pc is None:
                break
            f = col[r]
            for rr, vv in pc.items():
                nv = (col.get(rr, 0) - f * vv) % p
                if nv:
                    col[rr] = nv
                else:
                    col.pop(rr, None)
        if col:
            r = min(col)
            inv = pow(col[r], -1, p)
            pivots[r] = {rr: (vv * inv) % p for rr, vv in col.items()}
            rank += 1
    return rank


def _rank_mod_p(cols: list[dict], nrows: int, p: int) -> int:
    ncols = len(cols)
    if ncols == 0 or nrows == 0:
        return 0
    nnz = sum(len(c) for c in cols)
    if nnz < 0.02 * nrows * ncols or min(nrows, ncols) > 4000:
        return _rank_mod_p_sparse(cols, p)
    M = flint.nmod_mat(nrows, ncols, p)
    for j, c in enumerate(cols):
        for i, v in c.items():
            M[i, j] = v % p
    return M.rank()


def _rank_exact(cols: list[dict], nrows: int) -> int:
    ncols = len(cols)
    if ncols == 0 or nrows == 0:
        return 0
    M = flint.fmpz_mat(nrows, ncols)
    for j, c in enumerate(cols):
        for i, v in c.items():
            M[i, j] = v
    return M.rank()


def sparse_rank(cols: SparseColumns, exact: bool = False, seed: int | None = None) -> int:
    """Characteristic-0 rank of a sparse rational matrix given by columns."""
    cols, nrows = _compress(_integer_columns(cols))
    if not cols:
        return 0
    bound = min(nrows, len(cols))
    if exact or bound <= EXACT_THRESHOLD:
        return _rank_exact(cols, nrows)
    rng = random.Random(seed if seed is not None else len(cols) * 1000003 + nrows)
    p1, p2 = rng.sample(_PRIMES, 2)
    r1 = _rank_mod_p(cols, nrows, p1)
    if r1 == bound:
        return r1
    r2 = _rank_mod_p(cols, nrows, p2)
    if r1 != r2:
        return _rank_exact(cols, nrows)
    return r1


def dense_to_columns(rows: list[list]) -> list[dict]:
    if not rows:
        return []
    return [{i: r[j] for i, r in enumerate(rows) if r[j]} for j in range(len(rows[0]))]


def nullspace_fraction(rows: list[list], ncols: int) -> list[list[Fraction]]:
    """Basis of the right kernel of a small dense rational matrix (reduced echelon)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][c]
        m[rank] = [a / pv for a in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        pivots.append(c)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis


def solve_fraction(rows: list[list], rhs: list, ncols: int) -> list[Fraction] | None:
    """One solution of rows . v = rhs over Q, or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m = [[Fraction(x) for x in r] for r in aug]
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][c]
        m[rank] = [a / pv for a in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        pivots.append(c)
        rank += 1
    for r in range(rank, len(m)):
        if m[r][ncols] != 0:
            return None
    v = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        v[pc] = m[i][ncols]
    return v
