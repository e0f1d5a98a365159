"""Hochschild homology of Bott-Samelson bimodules through the Koszul complex.

For a bimodule B over R = Q[x_1..x_m], HH(B) is the homology of
B (x) Lambda[theta_1..theta_m] with differential

    d(b theta_S) = sum_{j in S} (-1)^{#{s in S, s < j}} (x_j b - b x_j) theta_{S - j}.

Internally a generator b theta_S sits in Koszul degree k = |S| and q-degree
deg b + 2k (the Tor grading, where d preserves q). Output series use the Ext
grading: the a-exponent is m - k and the q-exponent is q_tor - 2m, where m is
the number of ring variables (for the e_1-quotient ring the missing theta is
accounted for by multiplying with :func:`unknot_factor`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exactalg import Polynomial, PolyMatrix, TriSeries
from .exactalg.linalg import sparse_rank
from .exactalg.polymatrix import slice_columns, slice_offsets
from .soergel import BSBimodule, Ring, bs_bimodule

SparseCols = dict[int, dict[int, Polynomial]]


def unknot_factor(cutoff: int) -> TriSeries:
    """(1 + a q^-2) / (1 - q^2): HH of the one-strand unit bimodule, Ext grading."""
    from .exactalg import series_expand

    return series_expand({(0, 0, 0): 1, (1, 0, -2): 1}, [(0, 0, 2)], cutoff)


@dataclass
class KoszulComplex:
    """A complex of free graded left R-modules in Koszul degrees 0..m.

    ``degrees[k]`` lists generator q-degrees (Tor grading) and ``diff[k]`` is
    the differential K_k -> K_{k-1} as sparse columns. ``iota[k]`` expresses
    each generator as a combination of generators of the original complex, and
    ``pi[k]`` sends original generators to combinations of current ones; both
    are identities until :meth:`eliminate_units` runs.
    """

    arity: int
    degrees: dict[int, list[int]]
    diff: dict[int, SparseCols]
    labels: dict[int, list] = field(default_factory=dict)
    iota: dict[int, list[dict]] | None = None
    pi: dict[int, dict] | None = None

    def rank(self, k: int) -> int:
        return len(self.degrees.get(k, []))

    def total_rank(self) -> int:
        return sum(len(v) for v in self.degrees.values())

    def matrix(self, k: int) -> PolyMatrix:
        cols = self.diff.get(k, {})
        return PolyMatrix(self.rank(k - 1), self.rank(k), self.arity, cols,
                          self.degrees.get(k - 1, []), self.degrees.get(k, []))

    def boundary_rank(self, k: int, q: int) -> int:
        """Rank of d_k : K_k -> K_{k-1} on the q-slice."""
        if k not in self.diff or not self.diff[k]:
            return 0
        cols = [self.diff[k].get(j, {}) for j in range(self.rank(k))]
        sc, _, _ = slice_columns(cols, self.arity, self.degrees[k - 1], self.degrees[k], q)
        return sparse_rank(sc)

    def slice_dim(self, k: int, q: int) -> int:
        return slice_offsets(self.degrees.get(k, []), self.arity, q)[1]

    def homology_dim(self, k: int, q: int) -> int:
        return self.slice_dim(k, q) - self.boundary_rank(k, q) - self.boundary_rank(k + 1, q)

    def q_min(self) -> int | None:
        ds = [d for v in self.degrees.values() for d in v]
        return min(ds) if ds else None

    def commutes(self) -> bool:
        """d_{k-1} d_k = 0 for every k."""
        for k in self.diff:
            if k - 1 not in self.diff:
                continue
            prod = self.matrix(k - 1) @ self.matrix(k)
            if not prod.is_zero():
                return False
        return True


def koszul_operators(B: BSBimodule) -> list[PolyMatrix]:
    """The matrices of (left x_j) - (right x_j), j = 1..arity."""
    ring = B.ring
    ops = []
    for j in range(1, ring.arity + 1):
        L = PolyMatrix.scalar(ring.x(j), B.rank)
        ops.append(L - B.ra(j))
    return ops


def koszul_complex(B: BSBimodule) -> KoszulComplex:
    """B (x) Lambda(theta_1..theta_m); generator order is (subset, basis index)."""
    m = B.ring.arity
    r = B.rank
    ops = koszul_operators(B)
    subsets = {k: list(combinations(range(m), k)) for k in range(m + 1)}
    pos = {k: {S: i for i, S in enumerate(subsets[k])} for k in subsets}
    bdeg = B.degrees()
    degrees = {k: [bdeg[b] + 2 * k for S in subsets[k] for b in range(r)] for k in subsets}
    labels = {k: [(S, b) for S in subsets[k] for b in range(r)] for k in subsets}
    diff: dict[int, SparseCols] = {}
    for k in range(1, m + 1):
        cols: SparseCols = {}
        for si, S in enumerate(subsets[k]):
            for idx, j in enumerate(S):
                sign = -1 if idx % 2 else 1
                T = S[:idx] + S[idx + 1:]
                ti = pos[k - 1][T]
                op = ops[j]
                for b in range(r):
                    col = cols.setdefault(si * r + b, {})
                    for bp, p in op.cols[b].items():
                        key = ti * r + bp
                        val = p if sign > 0 else -p
                        col[key] = val if key not in col else col[key] + val
        diff[k] = {j: {i: p for i, p in c.items() if p} for j, c in cols.items()}
    return KoszulComplex(m, degrees, diff, labels)


def eliminate_units(K: KoszulComplex, track: bool = True) -> KoszulComplex:
    """Gaussian elimination of all constant nonzero differential entries over R.

    Returns a homotopy-equivalent Koszul-type complex with no unit entries,
    together with (when ``track``) the comparison maps iota: K' -> K and
    pi: K -> K' needed to transport maps between complexes.
    """
    ar = K.arity
    ks = sorted(K.degrees)
    cols = {k: {j: dict(c) for j, c in K.diff.get(k, {}).items()} for k in ks}
    rows: dict[int, dict[int, set]] = {k: {} for k in ks}
    for k in ks:
        for j, c in cols[k].items():
            for i in c:
                rows[k].setdefault(i, set()).add(j)
    alive = {k: set(range(len(K.degrees[k]))) for k in ks}
    iota = {k: {j: {j: Polynomial.const(1, ar)} for j in alive[k]} for k in ks} if track else None
    pirows = {k: {j: {j: Polynomial.const(1, ar)} for j in alive[k]} for k in ks} if track else None

    def add_into(target: dict, key, p):
        v = target.get(key)
        v = p if v is None else v + p
        if v:
            target[key] = v
        else:
            target.pop(key, None)

    changed = True
    while changed:
        changed = False
        for k in ks:
            if k == 0 or k not in cols:
                continue
            for u in sorted(alive[k]):
                if u not in alive[k]:
                    continue
                col = cols[k].get(u, {})
                best = None
                for v, p in col.items():
                    if p.is_constant():
                        score = len(rows[k].get(v, ()))
                        if best is None or score < best[0] or (score == best[0] and v < best[1]):
                            best = (score, v)
                if best is None:
                    continue
                v = best[1]
                _eliminate(k, u, v, cols, rows, alive, iota, pirows, add_into)
                changed = True
    degrees = {}
    diff = {}
    new_iota = {} if track else None
    new_pi = {} if track else None
    for k in ks:
        keep = sorted(alive[k])
        degrees[k] = [K.degrees[k][j] for j in keep]
        index = {j: i for i, j in enumerate(keep)}
        if track:
            new_iota[k] = [iota[k][j] for j in keep]
            # pi as columns: original generator -> {new index: poly}
            picols: dict[int, dict] = {}
            for j in keep:
                for g, p in pirows[k][j].items():
                    picols.setdefault(g, {})[index[j]] = p
            new_pi[k] = picols
        if k - 1 in alive:
            lower = {j: i for i, j in enumerate(sorted(alive[k - 1]))}
            diff[k] = {index[j]: {lower[i]: p for i, p in cols[k][j].items()}
                       for j in keep if cols[k].get(j)}
    return KoszulComplex(ar, degrees, diff, {}, new_iota, new_pi)


def _eliminate(k, u, v, cols, rows, alive, iota, pirows, add_into):
    """Cancel the unit entry d_k[v, u] (u in degree k, v in degree k - 1)."""
    colu = cols[k][u]
    c = colu[v].constant_term()
    inv = Fraction(1) / c if not isinstance(c, int) or abs(c) != 1 else c
    others = [w for w in rows[k].get(v, ()) if w != u]
    for w in sorted(others):
        f = cols[k][w][v] * inv
        colw = cols[k][w]
        for b, p in colu.items():
            old = b in colw
            add_into(colw, b, -(p * f))
            if b in colw and not old:
                rows[k].setdefault(b, set()).add(w)
            elif b not in colw and old:
                rows[k][b].discard(w)
        if iota is not None:
            for g, p in iota[k][u].items():
                add_into(iota[k][w], g, -(p * f))
    if pirows is not None:
        pv = pirows[k - 1][v]
        for b, p in colu.items():
            if b == v:
                continue
            coef = -(p * inv)
            tgt = pirows[k - 1][b]
            for g, q in pv.items():
                add_into(tgt, g, q * coef)
        del pirows[k - 1][v]
        del pirows[k][u]
    # drop column u of d_k and row v of d_k
    for b in colu:
        rows[k][b].discard(u)
    del cols[k][u]
    for w in list(rows[k].get(v, ())):
        cols[k][w].pop(v, None)
    rows[k].pop(v, None)
    # drop row u from d_{k+1} and column v from d_{k-1}
    if k + 1 in cols:
        for z in list(rows[k + 1].get(u, ())):
            cols[k + 1][z].pop(u, None)
        rows[k + 1].pop(u, None)
    if k - 1 in cols and v in cols[k - 1]:
        for b in cols[k - 1][v]:
            rows[k - 1][b].discard(v)
        del cols[k - 1][v]
    alive[k].discard(u)
    alive[k - 1].discard(v)
    if iota is not None:
        del iota[k][u]
        del iota[k - 1][v]


# --- Hochschild series ------------------------------------------------------------

def hochschild_dims(B: BSBimodule, q_window: tuple[int, int], reduce: bool = True) -> TriSeries:
    """Dimensions of HH_k(B) in each Tor q-slice of the window, keyed (k, 0, q_tor)."""
    K = koszul_complex(B)
    if reduce:
        K = eliminate_units(K, track=False)
    lo, hi = q_window
    coeffs = {}
    for k in sorted(K.degrees):
        for q in range(lo, hi + 1):
            d = K.homology_dim(k, q)
            if d:
                coeffs[(k, 0, q)] = d
    return TriSeries(coeffs, hi)


def tor_to_ext(tor: TriSeries, n: int) -> TriSeries:
    """Regrade (k, t, q_tor) -> (n - k, t, q_tor - 2n)."""
    coeffs = {(n - k, t, q - 2 * n): c for (k, t, q), c in tor.coeffs.items()}
    cut = None if tor.q_cutoff is None else tor.q_cutoff - 2 * n
    return TriSeries(coeffs, cut)


def hh_series(B: BSBimodule, q_cutoff: int, reduce: bool = True) -> TriSeries:
    """Sum over k of a^(n-k) times the Ext-graded Hilbert series of HH_k(B), up to q_cutoff.

    Over the e_1-quotient ring the result is multiplied by the e_1 factor so
    that both rings give the same answer.
    """
    ring = B.ring
    if not ring.reduced:
        return tor_to_ext(_tor_series(B, q_cutoff + 2 * ring.n, reduce), ring.n)
    # the e_1 factor starts at q^-2, so two more slices are needed
    ext = tor_to_ext(_tor_series(B, q_cutoff + 2 + 2 * ring.arity, reduce), ring.arity)
    low = ext.q_range()[0] if ext.coeffs else 0
    return (ext * unknot_factor(q_cutoff - low + 2)).truncate(q_cutoff)


def _tor_series(B: BSBimodule, hi: int, reduce: bool) -> TriSeries:
    K = koszul_complex(B)
    if reduce:
        K = eliminate_units(K, track=False)
    lo = K.q_min()
    coeffs = {}
    if lo is not None:
        for k in sorted(K.degrees):
            for q in range(lo, hi + 1):
                d = K.homology_dim(k, q)
                if d:
                    coeffs[(k, 0, q)] = d
    return TriSeries(coeffs, hi)


def word_series(word, n: int, q_cutoff: int, reduced_ring: bool = True, shift: int = 0) -> TriSeries:
    """hh_series of the Bott-Samelson bimodule of ``word`` on n strands."""
    B = bs_bimodule(tuple(word), Ring(n, reduced_ring)).shifted(shift)
    return hh_series(B, q_cutoff)


# --- MOY and Markov-type identities -------------------------------------------------

S_MONOMIAL = (0, 0, -4)  # s = -q^-4, sign carried separately


def markov_factor(with_q2: bool, cutoff: int) -> TriSeries:
    """(1 - q^2 a s)/(1 - q^2) if with_q2, else (1 - a s)/(1 - q^2), for s = -q^-4."""
    from .exactalg import series_expand

    qa = S_MONOMIAL[2] + (2 if with_q2 else 0)
    return series_expand({(0, 0, 0): 1, (1, 0, qa): 1}, [(0, 0, 2)], cutoff)


def moy2_discrepancies(cutoff: int = 24) -> list:
    """hh(B1 B1) against (1 + q^2) hh(B1) on two strands."""
    lhs = word_series((1, 1), 2, cutoff)
    b1 = word_series((1,), 2, cutoff)
    return lhs.discrepancies(b1 + b1.shift(q=2), cutoff)


def moy1_discrepancies(cutoff: int = 20) -> list:
    """hh(B1B2B1) + q^2 hh(B2) against hh(B2B1B2) + q^2 hh(B1) on three strands."""
    lhs = word_series((1, 2, 1), 3, cutoff) + word_series((2,), 3, cutoff).shift(q=2)
    rhs = word_series((2, 1, 2), 3, cutoff) + word_series((1,), 3, cutoff).shift(q=2)
    return lhs.discrepancies(rhs, cutoff)


def markov_discrepancies(dots: tuple[int, ...], n: int, cutoff: int = 20) -> tuple[list, list]:
    """Both Markov-type identities for the dot word ``dots`` on n strands avoiding n - 1.

    Returns the discrepancy lists of
    hh(D) = (1 - q^2 a s)/(1 - q^2) hh(D') and hh(D.(n-1)) = (1 - a s)/(1 - q^2) hh(D').
    """
    if any(i >= n - 1 for i in dots):
        raise ValueError("dot word must avoid the last strand")
    # enough slices of hh(D') that the products are exact up to cutoff
    base = word_series(dots, n - 1, cutoff + 6)
    first = word_series(dots, n, cutoff).discrepancies(base * markov_factor(True, cutoff + 6), cutoff)
    second = word_series(dots + (n - 1,), n, cutoff).discrepancies(base * markov_factor(False, cutoff + 6), cutoff)
    return first, second
