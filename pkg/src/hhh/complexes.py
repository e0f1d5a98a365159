"""Bounded chain complexes of shifted Bott-Samelson bimodules.

A complex stores, for each homological degree t, a list of summands (each a
BSBimodule carrying its own q-shift) and the differential d_t : C_t -> C_{t+1}
as a sparse dict of blocks ``{(target_index, source_index): PolyMatrix}``.
Each block is the left-basis matrix of a bimodule map of q-degree 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .braid import BraidWord
from .exactalg import PolyMatrix, Polynomial, TriSeries
from .soergel import (
    BimoduleMap,
    BSBimodule,
    Ring,
    bs_bimodule,
    deloop_data,
    identity_map,
    standard_maps,
    tensor_maps,
    unit_bimodule,
)

Blocks = dict[tuple[int, int], PolyMatrix]


class ComplexError(ValueError):
    pass


@dataclass
class ChainComplex:
    ring: Ring
    groups: dict[int, list[BSBimodule]]
    diff: dict[int, Blocks] = field(default_factory=dict)

    def __post_init__(self):
        self.groups = {t: list(g) for t, g in self.groups.items() if g}
        for t in list(self.diff):
            if t not in self.groups or t + 1 not in self.groups:
                self.diff.pop(t)

    @property
    def n(self) -> int:
        return self.ring.n

    def degrees(self) -> list[int]:
        return sorted(self.groups)

    def t_range(self) -> tuple[int, int] | None:
        ts = self.degrees()
        return (ts[0], ts[-1]) if ts else None

    def block(self, t: int, tgt: int, src: int) -> PolyMatrix | None:
        return self.diff.get(t, {}).get((tgt, src))

    def summand_count(self) -> int:
        return sum(len(g) for g in self.groups.values())

    def total_rank(self) -> int:
        return sum(B.rank for g in self.groups.values() for B in g)

    def differential_matrix(self, t: int) -> PolyMatrix:
        """d_t assembled into one matrix in the concatenated left bases."""
        src = self.groups.get(t, [])
        tgt = self.groups.get(t + 1, [])
        so, to = _offsets(src), _offsets(tgt)
        cols: dict[int, dict[int, Polynomial]] = {}
        for (i, j), M in self.diff.get(t, {}).items():
            for c, col in enumerate(M.cols):
                dst = cols.setdefault(so[j] + c, {})
                for r, p in col.items():
                    dst[to[i] + r] = p
        rdeg = tuple(d for B in tgt for d in B.degrees())
        cdeg = tuple(d for B in src for d in B.degrees())
        return PolyMatrix(len(rdeg), len(cdeg), self.ring.arity, cols, rdeg, cdeg)

    def d_squared_is_zero(self) -> bool:
        for t in self.degrees():
            if t not in self.diff or t + 1 not in self.diff:
                continue
            prod: dict[tuple[int, int], PolyMatrix] = {}
            for (j, i), M1 in self.diff[t].items():
                for (k, j2), M2 in self.diff[t + 1].items():
                    if j2 != j:
                        continue
                    P = M2 @ M1
                    prod[(k, i)] = P if (k, i) not in prod else prod[(k, i)] + P
            if any(not P.is_zero() for P in prod.values()):
                return False
        return True

    def blocks_are_maps(self) -> bool:
        """Every block intertwines the right actions and has q-degree 0."""
        for t, blocks in self.diff.items():
            for (i, j), M in blocks.items():
                f = BimoduleMap(self.groups[t][j], self.groups[t + 1][i], M)
                if not f.intertwines() or not f.is_homogeneous():
                    return False
        return True

    def character(self) -> TriSeries:
        """Sum over summands of t^t times the graded left rank (a Laurent polynomial)."""
        coeffs: dict = {}
        for t, g in self.groups.items():
            for B in g:
                for d in B.degrees():
                    coeffs[(0, t, d)] = coeffs.get((0, t, d), 0) + 1
        return TriSeries(coeffs)

    def euler_character(self) -> dict[tuple[int, ...], int]:
        """Alternating sum of summand classes: {(word, shift): multiplicity}."""
        out: dict = {}
        for t, g in self.groups.items():
            sign = -1 if t % 2 else 1
            for B in g:
                key = (B.word, B.global_shift)
                out[key] = out.get(key, 0) + sign
        return {k: v for k, v in out.items() if v}

    def copy(self) -> "ChainComplex":
        return ChainComplex(self.ring, {t: list(g) for t, g in self.groups.items()},
                            {t: dict(b) for t, b in self.diff.items()})

    def __repr__(self):
        parts = []
        for t in self.degrees():
            parts.append(f"t={t}: " + " + ".join(repr(B) for B in self.groups[t]))
        return "ChainComplex(" + "; ".join(parts) + ")"


def _offsets(mods: list[BSBimodule]) -> list[int]:
    out, total = [], 0
    for B in mods:
        out.append(total)
        total += B.rank
    return out


def unit_complex(ring: Ring) -> ChainComplex:
    return ChainComplex(ring, {0: [unit_bimodule(ring.n, ring)]})


def elementary_complex(ring: Ring, letter: int) -> ChainComplex:
    """sigma_i: B_i (t=0) -> R (t=1) by mult; sigma_i^-1: R (t=-1) -> q^-2 B_i (t=0) by dot.

    The shift on the inverse makes sigma_i sigma_i^-1 homotopy equivalent to R
    with no residual grading shift.
    """
    i = abs(letter)
    mult, dot = standard_maps(ring.n, i, ring)
    if letter > 0:
        return ChainComplex(ring, {0: [mult.source], 1: [mult.target]}, {0: {(0, 0): mult.matrix}})
    return ChainComplex(ring, {-1: [dot.source.shifted(-2)], 0: [dot.target.shifted(-2)]},
                        {-1: {(0, 0): dot.matrix}})


def tensor_complexes(C: ChainComplex, D: ChainComplex) -> ChainComplex:
    """Total complex of C (x)_R D with d = d_C (x) 1 + (-1)^t 1 (x) d_D."""
    if C.ring != D.ring:
        raise ComplexError("complexes over different rings")
    groups: dict[int, list[BSBimodule]] = {}
    index: dict[tuple[int, int, int, int], tuple[int, int]] = {}
    for tc in C.degrees():
        for td in D.degrees():
            t = tc + td
            g = groups.setdefault(t, [])
            for a, A in enumerate(C.groups[tc]):
                for b, B in enumerate(D.groups[td]):
                    index[(tc, a, td, b)] = (t, len(g))
                    g.append(_tensor_modules(A, B))
    diff: dict[int, Blocks] = {}

    def add(t, key, M):
        blocks = diff.setdefault(t, {})
        blocks[key] = M if key not in blocks else blocks[key] + M
        if blocks[key].is_zero():
            del blocks[key]

    for tc in C.degrees():
        for td in D.degrees():
            t = tc + td
            for (a2, a), F in C.diff.get(tc, {}).items():
                A, A2 = C.groups[tc][a], C.groups[tc + 1][a2]
                f = BimoduleMap(A, A2, F)
                for b, B in enumerate(D.groups[td]):
                    M = tensor_maps(f, identity_map(B)).matrix
                    add(t, (index[(tc + 1, a2, td, b)][1], index[(tc, a, td, b)][1]), M)
            sign = -1 if tc % 2 else 1
            for (b2, b), G in D.diff.get(td, {}).items():
                B, B2 = D.groups[td][b], D.groups[td + 1][b2]
                g = BimoduleMap(B, B2, G)
                for a, A in enumerate(C.groups[tc]):
                    M = tensor_maps(identity_map(A), g).matrix
                    if sign < 0:
                        M = -M
                    add(t, (index[(tc, a, td + 1, b2)][1], index[(tc, a, td, b)][1]), M)
    return ChainComplex(C.ring, groups, diff)


def _tensor_modules(A: BSBimodule, B: BSBimodule) -> BSBimodule:
    return bs_bimodule(A.word + B.word, A.ring).shifted(A.global_shift + B.global_shift)


def rouquier_complex(w: BraidWord, ring: Ring | None = None, minimize_steps: bool = False) -> ChainComplex:
    """Tensor product of the elementary complexes of the letters of w.

    With ``minimize_steps`` the complex is minimized after every letter, which
    keeps intermediate complexes small; the result is homotopy equivalent.
    """
    ring = ring or Ring(w.strands)
    if ring.n != w.strands:
        raise ComplexError("ring and braid have different strand counts")
    C = unit_complex(ring)
    for x in w.letters:
        C = tensor_complexes(C, elementary_complex(ring, x))
        if minimize_steps:
            C = minimize(C)
    return C


# --- minimization -------------------------------------------------------------

def minimize(C: ChainComplex, q_window: tuple[int, int] | None = None) -> ChainComplex:
    """Homotopy-equivalent complex via delooping and Gaussian elimination.

    Every summand B_u B_i B_i B_v is split as B_u B_i B_v (+) q^2 B_u B_i B_v,
    then differential blocks that are invertible constant matrices between
    summands with the same word and shift are cancelled until none remain.
    ``q_window`` restricts cancellation to summands whose shift lies in the
    window (None: no restriction).
    """
    C = deloop(C)
    while True:
        hit = _find_invertible(C, q_window)
        if hit is None:
            return C
        C = gaussian_eliminate(C, *hit)


def _repeat_position(word: tuple[int, ...]) -> int | None:
    for p in range(len(word) - 1):
        if word[p] == word[p + 1]:
            return p
    return None


def deloop(C: ChainComplex) -> ChainComplex:
    """Split summands with a repeated adjacent letter until none remain."""
    C = C.copy()
    changed = True
    while changed:
        changed = False
        for t in C.degrees():
            for idx, X in enumerate(C.groups[t]):
                p = _repeat_position(X.word)
                if p is not None:
                    _deloop_summand(C, t, idx, p)
                    changed = True
                    break
            if changed:
                break
    return C


def _deloop_maps(ring: Ring, word: tuple[int, ...], p: int):
    """(incl0, incl1, proj0, proj1) matrices for splitting word at position p."""
    d = deloop_data(ring, word[p])
    u = bs_bimodule(word[:p], ring)
    v = bs_bimodule(word[p + 2:], ring)
    out = []
    for f in d.incl + d.proj:
        g = tensor_maps(tensor_maps(identity_map(u), f), identity_map(v))
        out.append(g.matrix)
    return out


def _deloop_summand(C: ChainComplex, t: int, idx: int, p: int) -> None:
    X = C.groups[t][idx]
    word = X.word
    j0, j1, p0, p1 = _deloop_maps(C.ring, word, p)
    small = bs_bimodule(word[:p + 1] + word[p + 2:], C.ring)
    Y0 = small.shifted(X.global_shift)
    Y1 = small.shifted(X.global_shift + 2)
    g = C.groups[t]
    new_idx = len(g)
    g[idx] = Y0
    g.append(Y1)
    # outgoing blocks: D_{W,X} -> D j0 at idx, D j1 at new_idx
    out = C.diff.get(t, {})
    for (i, j), M in list(out.items()):
        if j == idx:
            del out[(i, j)]
            for k, J in ((idx, j0), (new_idx, j1)):
                N = M @ J
                if not N.is_zero():
                    out[(i, k)] = N
    # incoming blocks: D_{X,Z} -> p0 D at idx, p1 D at new_idx
    inc = C.diff.get(t - 1, {})
    for (i, j), M in list(inc.items()):
        if i == idx:
            del inc[(i, j)]
            for k, P in ((idx, p0), (new_idx, p1)):
                N = P @ M
                if not N.is_zero():
                    inc[(k, j)] = N


def _constant_inverse(M: PolyMatrix) -> PolyMatrix | None:
    """Inverse of a square matrix with constant entries, or None."""
    n = M.nrows
    if n != M.ncols:
        return None
    rows = [[Fraction(0)] * n for _ in range(n)]
    for j, col in enumerate(M.cols):
        for i, p in col.items():
            if not p.is_constant():
                return None
            rows[i][j] = Fraction(p.constant_term())
    aug = [r + [Fraction(int(i == k)) for k in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    cols = {j: {i: Polynomial.const(aug[i][n + j], M.arity) for i in range(n) if aug[i][n + j] != 0}
            for j in range(n)}
    return PolyMatrix(n, n, M.arity, cols, M.col_degrees, M.row_degrees)


def _find_invertible(C: ChainComplex, q_window) -> tuple[int, int, int, PolyMatrix] | None:
    for t in C.degrees():
        src, tgt = C.groups.get(t, []), C.groups.get(t + 1, [])
        for (i, j), M in sorted(C.diff.get(t, {}).items()):
            X, Y = src[j], tgt[i]
            if X.word != Y.word or X.global_shift != Y.global_shift:
                continue
            if q_window is not None and not q_window[0] <= X.global_shift <= q_window[1]:
                continue
            inv = _constant_inverse(M)
            if inv is not None:
                return t, j, i, inv
    return None


def gaussian_eliminate(C: ChainComplex, t: int, x: int, y: int, inv: PolyMatrix) -> ChainComplex:
    """Cancel an isomorphism block phi: X -> Y (X = C_t[x], Y = C_{t+1}[y]).

    For the other summands A of C_t and B of C_{t+1} the differential becomes
    d_BA - d_BX phi^-1 d_YA; the summands X and Y are removed.
    """
    C = C.copy()
    d = C.diff.get(t, {})
    col_x = {i: M for (i, j), M in d.items() if j == x and i != y}  # d_BX
    row_y = {j: M for (i, j), M in d.items() if i == y and j != x}  # d_YA
    for b, DBX in col_x.items():
        left = DBX @ inv
        for a, DYA in row_y.items():
            corr = left @ DYA
            key = (b, a)
            N = d[key] - corr if key in d else -corr
            if N.is_zero():
                d.pop(key, None)
            else:
                d[key] = N
    C.groups[t] = _drop(C.groups[t], x)
    C.groups[t + 1] = _drop(C.groups[t + 1], y)
    C.diff[t] = _reindex(d, y, x)
    if t - 1 in C.diff:
        C.diff[t - 1] = _reindex(C.diff[t - 1], x, None)
    if t + 1 in C.diff:
        C.diff[t + 1] = _reindex(C.diff[t + 1], None, y)
    return ChainComplex(C.ring, C.groups, C.diff)


def _drop(items: list, k: int) -> list:
    return items[:k] + items[k + 1:]


def _reindex(blocks: Blocks, drop_tgt: int | None, drop_src: int | None) -> Blocks:
    out: Blocks = {}
    for (i, j), M in blocks.items():
        if i == drop_tgt or j == drop_src:
            continue
        ni = i - (1 if drop_tgt is not None and i > drop_tgt else 0)
        nj = j - (1 if drop_src is not None and j > drop_src else 0)
        out[(ni, nj)] = M
    return out


def complexes_equal_shape(C: ChainComplex, D: ChainComplex) -> bool:
    """Same summands (word and shift) in each degree, as multisets."""
    def shape(X):
        return {t: sorted((B.word, B.global_shift) for B in g) for t, g in X.groups.items()}
    return shape(C) == shape(D)


def random_words(strands: int, length: int, count: int, rng) -> Iterable[BraidWord]:
    for _ in range(count):
        letters = [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(length)]
        yield BraidWord(strands, tuple(letters))
