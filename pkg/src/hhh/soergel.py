"""Bott-Samelson bimodules as free left modules with explicit right actions.

A Bott-Samelson bimodule B_{i_1} (x)_R ... (x)_R B_{i_k} over R = Q[x_1..x_n] is
free of rank 2^k as a left R-module, with basis 1 (x) b_1 (x) ... (x) b_k (x) 1,
b_j in {1, x_{i_j}}. The right R-action is recorded as one matrix per variable.

Two coefficient rings are supported (see :class:`Ring`): the full polynomial
ring in n variables, and its quotient by e_1 = x_1 + ... + x_n. Since e_1 is
symmetric it acts identically on both sides of every Bott-Samelson bimodule
and every Rouquier differential is defined without it, so everything built over
the full ring is the base change of the quotient version along Q -> Q[e_1].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .exactalg import Polynomial, PolyMatrix, TriSeries


class SoergelError(ValueError):
    pass


@dataclass(frozen=True)
class Ring:
    """Coefficient ring for n strands.

    ``reduced=False``: Q[x_1..x_n]. ``reduced=True``: Q[x_1..x_{n-1}] with
    x_n = -(x_1 + ... + x_{n-1}), i.e. the quotient by e_1.
    """

    n: int
    reduced: bool = False

    @property
    def arity(self) -> int:
        return self.n - 1 if self.reduced else self.n

    def x(self, j: int) -> Polynomial:
        return _ring_var(self, j)

    def one(self) -> Polynomial:
        return Polynomial.const(1, self.arity)

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.arity)

    def from_full(self, p: Polynomial) -> Polynomial:
        """Image of a polynomial in Q[x_1..x_n] in this ring."""
        if not self.reduced:
            return p
        return p.subs({j: self.x(j) for j in range(1, self.n + 1)}, self.arity)


@lru_cache(maxsize=None)
def _ring_var(ring: Ring, j: int) -> Polynomial:
    if not 1 <= j <= ring.n:
        raise SoergelError(f"variable x_{j} out of range for {ring.n} strands")
    if not ring.reduced or j < ring.n:
        return Polynomial.var(j, ring.arity)
    total = Polynomial.zero(ring.arity)
    for k in range(1, ring.n):
        total = total - Polynomial.var(k, ring.arity)
    return total


@dataclass(frozen=True, eq=False)
class BSBimodule:
    ring: Ring
    word: tuple[int, ...]
    basis_degrees: tuple[int, ...]
    right_action: tuple[PolyMatrix, ...]  # index j-1 <-> right multiplication by x_j
    global_shift: int = 0

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def rank(self) -> int:
        return len(self.basis_degrees)

    def degrees(self) -> tuple[int, ...]:
        """Generator q-degrees including the global shift."""
        return tuple(d + self.global_shift for d in self.basis_degrees)

    def shifted(self, k: int) -> "BSBimodule":
        return BSBimodule(self.ring, self.word, self.basis_degrees, self.right_action, self.global_shift + k)

    def ra(self, j: int) -> PolyMatrix:
        return self.right_action[j - 1]

    def left_scalar(self, p: Polynomial) -> PolyMatrix:
        degs = self.basis_degrees
        return PolyMatrix.scalar(p, self.rank, degs).with_degrees(degs, tuple(d + p.qdeg() for d in degs))

    def right_poly(self, p: Polynomial) -> PolyMatrix:
        """Matrix of right multiplication by p (a polynomial of the ring)."""
        return poly_at_matrices(p, self.right_action[: self.ring.arity], self.rank, self.basis_degrees)

    def same_module(self, other: "BSBimodule") -> bool:
        return self.ring == other.ring and self.word == other.word

    def __repr__(self):
        w = "".join(f"B{i}" for i in self.word) or "R"
        return f"{w}<{self.global_shift}>(n={self.n})"


def poly_at_matrices(p: Polynomial, mats: Sequence[PolyMatrix], rank: int, degs: Sequence[int]) -> PolyMatrix:
    """Evaluate p at pairwise commuting matrices (one per ring variable)."""
    degs = tuple(degs)
    shift = p.qdeg() if p else 0
    result = PolyMatrix.zero(rank, rank, p.arity, degs, tuple(d + shift for d in degs))
    powers: dict[tuple[int, int], PolyMatrix] = {}

    def power(i: int, k: int) -> PolyMatrix:
        if (i, k) not in powers:
            powers[(i, k)] = mats[i] if k == 1 else power(i, k - 1) @ mats[i]
        return powers[(i, k)]

    for e, c in p.terms.items():
        term: PolyMatrix | None = None
        for i, k in enumerate(e):
            if k:
                term = power(i, k) if term is None else term @ power(i, k)
        if term is None:
            term = PolyMatrix.identity(rank, p.arity, degs)
        result = result + term.scale(Polynomial.const(c, p.arity))
    return result.with_degrees(degs, tuple(d + shift for d in degs))


def unit_bimodule(n: int, ring: Ring | None = None) -> BSBimodule:
    ring = ring or Ring(n)
    ra = tuple(PolyMatrix.scalar(ring.x(j), 1).with_degrees((0,), (2,)) for j in range(1, n + 1))
    return BSBimodule(ring, (), (0,), ra)


def elementary_bimodule(n: int, i: int, ring: Ring | None = None) -> BSBimodule:
    """B_i with left basis {1(x)1, 1(x)x_i} in degrees {0, 2}."""
    ring = ring or Ring(n)
    if not 1 <= i <= n - 1:
        raise SoergelError(f"B_{i} undefined on {n} strands")
    return _elementary(ring, i)


@lru_cache(maxsize=None)
def _elementary(ring: Ring, i: int) -> BSBimodule:
    n = ring.n
    xi, xj = ring.x(i), ring.x(i + 1)
    zero, one = ring.zero(), ring.one()
    degs = (0, 2)
    rdegs = (2, 4)
    # (1(x)x_i) x_i = (x_i + x_{i+1})(1(x)x_i) - x_i x_{i+1} (1(x)1)
    ra_i = PolyMatrix.from_rows([[zero, -(xi * xj)], [one, xi + xj]], ring.arity, degs, rdegs)
    ra = []
    for j in range(1, n + 1):
        if j == i:
            ra.append(ra_i)
        elif j == i + 1:
            ra.append((PolyMatrix.scalar(xi + xj, 2, degs) - ra_i).with_degrees(degs, rdegs))
        else:
            ra.append(PolyMatrix.scalar(ring.x(j), 2, degs).with_degrees(degs, rdegs))
    return BSBimodule(ring, (i,), degs, tuple(ra))


def substitute_blocks(G: PolyMatrix, A: BSBimodule) -> PolyMatrix:
    """Matrix of Id_A (x) g on A (x) B, where g has matrix G in B's bases.

    Block (b', b) is G[b', b] evaluated at A's right action; the basis of A (x) B
    is ordered with A's index major.
    """
    rA = A.rank
    cache: dict[Polynomial, PolyMatrix] = {}
    cols: dict[int, dict[int, Polynomial]] = {}
    for b, gcol in enumerate(G.cols):
        for bp, p in gcol.items():
            if p not in cache:
                cache[p] = A.right_poly(p)
            blk = cache[p]
            for a, col in enumerate(blk.cols):
                tgt = cols.setdefault(a * G.ncols + b, {})
                for ap, v in col.items():
                    tgt[ap * G.nrows + bp] = v
    rowdeg = tuple(da + db for da in A.degrees() for db in G.row_degrees)
    coldeg = tuple(da + db for da in A.degrees() for db in G.col_degrees)
    return PolyMatrix(rA * G.nrows, rA * G.ncols, G.arity, cols, rowdeg, coldeg)


def kron_left(F: PolyMatrix, rB: int, degB: Sequence[int]) -> PolyMatrix:
    """Matrix of f (x) Id_B where f has left-scalar entries F."""
    cols: dict[int, dict[int, Polynomial]] = {}
    for a, col in enumerate(F.cols):
        for b in range(rB):
            cols[a * rB + b] = {ap * rB + b: p for ap, p in col.items()}
    rowdeg = tuple(da + db for da in F.row_degrees for db in degB)
    coldeg = tuple(da + db for da in F.col_degrees for db in degB)
    return PolyMatrix(F.nrows * rB, F.ncols * rB, F.arity, cols, rowdeg, coldeg)


def tensor_over_R(A: BSBimodule, B: BSBimodule) -> BSBimodule:
    if A.ring != B.ring:
        raise SoergelError("tensor of bimodules over different rings")
    if not B.word:
        return A.shifted(B.global_shift)
    if not A.word:
        return B.shifted(A.global_shift)
    base = bs_bimodule(A.word + B.word, A.ring)
    return base.shifted(A.global_shift + B.global_shift)


def bs_bimodule(word: Sequence[int], ring: Ring) -> BSBimodule:
    """The Bott-Samelson bimodule B_{w_1} (x) ... (x) B_{w_k} (cached)."""
    return _bs(ring, tuple(word))


@lru_cache(maxsize=None)
def _bs(ring: Ring, word: tuple[int, ...]) -> BSBimodule:
    if not word:
        return unit_bimodule(ring.n, ring)
    for i in word:
        if not 1 <= i <= ring.n - 1:
            raise SoergelError(f"B_{i} undefined on {ring.n} strands")
    if len(word) == 1:
        return _elementary(ring, word[0])
    A = _bs(ring, word[:-1])
    Bi = _elementary(ring, word[-1])
    degs = tuple(da + db for da in A.basis_degrees for db in Bi.basis_degrees)
    ra = []
    for j in range(1, ring.n + 1):
        m = substitute_blocks(Bi.ra(j), A)
        ra.append(m.with_degrees(degs, tuple(d + 2 for d in degs)))
    return BSBimodule(ring, word, degs, tuple(ra))


@dataclass(frozen=True, eq=False)
class BimoduleMap:
    """A left-linear map given by its matrix in the left bases (target x source)."""

    source: BSBimodule
    target: BSBimodule
    matrix: PolyMatrix = field(repr=False)

    def intertwines(self) -> bool:
        for j in range(1, self.source.n + 1):
            if self.matrix @ self.source.ra(j) != self.target.ra(j) @ self.matrix:
                return False
        return True

    def is_homogeneous(self) -> bool:
        m = self.matrix.with_degrees(self.target.degrees(), self.source.degrees())
        return m.is_homogeneous()

    def compose(self, other: "BimoduleMap") -> "BimoduleMap":
        """self o other"""
        return BimoduleMap(other.source, self.target, self.matrix @ other.matrix)


def tensor_maps(f: BimoduleMap, g: BimoduleMap) -> BimoduleMap:
    """f (x)_R g : A (x) B -> A' (x) B'."""
    A, Ap = f.source, f.target
    B, Bp = g.source, g.target
    idg = substitute_blocks(g.matrix.with_degrees(Bp.basis_degrees, B.basis_degrees), A)
    fk = kron_left(f.matrix.with_degrees(Ap.basis_degrees, A.basis_degrees), Bp.rank, Bp.basis_degrees)
    return BimoduleMap(tensor_over_R(A, B), tensor_over_R(Ap, Bp), fk @ idg)


def identity_map(A: BSBimodule) -> BimoduleMap:
    return BimoduleMap(A, A, PolyMatrix.identity(A.rank, A.ring.arity, A.basis_degrees))


def standard_maps(n: int, i: int, ring: Ring | None = None) -> tuple[BimoduleMap, BimoduleMap]:
    """(mult: B_i -> R, dot: q^2 R -> B_i).

    mult(1(x)1) = 1, mult(1(x)x_i) = x_i;
    dot(1) = x_i(x)1 - 1(x)x_{i+1} = -x_{i+1}(1(x)1) + (1(x)x_i).
    """
    ring = ring or Ring(n)
    Bi = elementary_bimodule(n, i, ring)
    R = unit_bimodule(n, ring)
    mult = PolyMatrix.from_rows([[ring.one(), ring.x(i)]], ring.arity, (0,), (0, 2))
    dot = PolyMatrix.from_rows([[-ring.x(i + 1)], [ring.one()]], ring.arity, (0, 2), (2,))
    return BimoduleMap(Bi, R, mult), BimoduleMap(R.shifted(2), Bi, dot)


def bigraded_character(B: BSBimodule) -> TriSeries:
    """Graded rank of B as a left module: sum of q^(degree + shift) over the basis."""
    coeffs: dict = {}
    for d in B.degrees():
        coeffs[(0, 0, d)] = coeffs.get((0, 0, d), 0) + 1
    return TriSeries(coeffs)


def hom_space(X: BSBimodule, Y: BSBimodule, degree: int = 0) -> list[BimoduleMap]:
    """Basis of the degree-``degree`` bimodule maps X -> Y (shifts included).

    Solves M . RA_X[j] = RA_Y[j] . M on the coefficients of a generic
    homogeneous left-linear matrix M. Meant for small bimodules.
    """
    from .exactalg.linalg import nullspace_fraction
    from .exactalg.polynomial import monomials_of_degree

    ring = X.ring
    ar = ring.arity
    dX, dY = X.degrees(), Y.degrees()
    unknowns = []
    for y in range(Y.rank):
        for x in range(X.rank):
            diff = dX[x] + degree - dY[y]
            if diff < 0 or diff % 2:
                continue
            for mu in monomials_of_degree(ar, diff // 2):
                unknowns.append((y, x, mu))
    if not unknowns:
        return []
    eqs: dict = {}
    for u, (y, x, mu) in enumerate(unknowns):
        for j in range(1, ar + 1):
            # (M RA_X)[y, x'] gets mu * RA_X[x, x']
            for xp in range(X.rank):
                p = X.ra(j)[x, xp]
                for e, c in p.terms.items():
                    key = (j, 0, y, xp, tuple(a + b for a, b in zip(e, mu)))
                    eqs.setdefault(key, {})
                    eqs[key][u] = eqs[key].get(u, 0) + c
            # (RA_Y M)[y', x] gets RA_Y[y', y] * mu
            for yp, p in Y.ra(j).cols[y].items():
                for e, c in p.terms.items():
                    key = (j, 0, yp, x, tuple(a + b for a, b in zip(e, mu)))
                    eqs.setdefault(key, {})
                    eqs[key][u] = eqs[key].get(u, 0) - c
    rows = [[row.get(u, 0) for u in range(len(unknowns))] for row in eqs.values() if any(row.values())]
    basis = nullspace_fraction(rows, len(unknowns)) if rows else [
        [1 if k == u else 0 for k in range(len(unknowns))] for u in range(len(unknowns))
    ]
    maps = []
    for vec in basis:
        cols: dict = {}
        for u, c in enumerate(vec):
            if c:
                y, x, mu = unknowns[u]
                col = cols.setdefault(x, {})
                col[y] = col.get(y, Polynomial.zero(ar)) + Polynomial({mu: c}, ar)
        maps.append(BimoduleMap(X, Y, PolyMatrix(Y.rank, X.rank, ar, cols, dY, dX)))
    return maps


@dataclass(frozen=True, eq=False)
class Deloop:
    """Explicit splitting B_i B_i = B_i (+) q^2 B_i: p_k j_k = id, j_0 p_0 + j_1 p_1 = id."""

    incl: tuple[BimoduleMap, BimoduleMap]
    proj: tuple[BimoduleMap, BimoduleMap]


def _solve_map(space: list[BimoduleMap], constraint) -> BimoduleMap | None:
    """Find a combination f of ``space`` with constraint(f) an affine identity.

    ``constraint`` maps a BimoduleMap to (matrix, target_matrix); solves
    sum c_k matrix(space_k) = target.
    """
    from .exactalg.linalg import solve_fraction

    mats = [constraint(f)[0] for f in space]
    target = constraint(space[0])[1]
    keys = set()
    for m in mats + [target]:
        for j, col in enumerate(m.cols):
            for i, p in col.items():
                for e in p.terms:
                    keys.add((i, j, e))
    keys = sorted(keys)
    rows = [[m[i, j].terms.get(e, 0) for m in mats] for (i, j, e) in keys]
    rhs = [target[i, j].terms.get(e, 0) for (i, j, e) in keys]
    sol = solve_fraction(rows, rhs, len(mats))
    if sol is None:
        return None
    M = None
    for c, f in zip(sol, space):
        if c:
            term = f.matrix.scale(c)
            M = term if M is None else M + term
    if M is None:
        M = space[0].matrix.scale(0)
    return BimoduleMap(space[0].source, space[0].target, M)


@lru_cache(maxsize=None)
def deloop_data(ring: Ring, i: int) -> Deloop:
    """Inclusions and projections for B_i B_i = B_i (+) q^2 B_i."""
    BB = bs_bimodule((i, i), ring)
    B0 = bs_bimodule((i,), ring)
    B2 = B0.shifted(2)
    idB0 = PolyMatrix.identity(B0.rank, ring.arity)
    p0 = hom_space(BB, B0)[0]
    j0 = _solve_map(hom_space(B0, BB), lambda f: (p0.matrix @ f.matrix, idB0))
    space = hom_space(B2, BB)
    # j1 spans the kernel of p0 o - inside Hom(q^2 B_i, B_i B_i)
    j1 = None
    for f in space:
        corr = _solve_map(space, lambda g: (p0.matrix @ g.matrix, p0.matrix @ f.matrix))
        m = f.matrix - corr.matrix
        if not m.is_zero():
            j1 = BimoduleMap(B2, BB, m)
            break
    if j0 is None or j1 is None:
        raise SoergelError("failed to split B_i B_i")
    p1 = _solve_map(hom_space(BB, B2), lambda f: (f.matrix @ j1.matrix, idB0))
    if p1 is None:
        raise SoergelError("failed to split B_i B_i")
    p1 = BimoduleMap(BB, B2, p1.matrix - p1.matrix @ j0.matrix @ p0.matrix)
    d = Deloop((j0, j1), (p0, p1))
    _check_deloop(d, BB)
    return d


def _check_deloop(d: Deloop, BB: BSBimodule):
    (j0, j1), (p0, p1) = d.incl, d.proj
    ident = PolyMatrix.identity(j0.source.rank, BB.ring.arity)
    ok = p0.matrix @ j0.matrix == ident and p1.matrix @ j1.matrix == ident
    ok = ok and (p0.matrix @ j1.matrix).is_zero() and (p1.matrix @ j0.matrix).is_zero()
    ok = ok and j0.matrix @ p0.matrix + j1.matrix @ p1.matrix == PolyMatrix.identity(BB.rank, BB.ring.arity)
    if not ok:
        raise SoergelError("splitting of B_i B_i failed its identities")
