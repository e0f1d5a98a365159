"""Trigraded Laurent series in (a, t, q) with a certified q-cutoff."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .polynomial import normalize_coeff

Key = tuple[int, int, int]  # (a_exp, t_exp, q_exp)


class TriSeries:
    """Finite map (a, t, q) -> rational, certified for q <= ``q_cutoff``.

    ``q_cutoff=None`` means the series is an exact Laurent polynomial.
    Coefficients with q above the cutoff are never stored.
    """

    __slots__ = ("coeffs", "q_cutoff")

    def __init__(self, coeffs: Mapping[Key, object] | None = None, q_cutoff: int | None = None):
        clean = {}
        for k, c in (coeffs or {}).items():
            if c and (q_cutoff is None or k[2] <= q_cutoff):
                clean[tuple(k)] = normalize_coeff(c)
        self.coeffs = clean
        self.q_cutoff = q_cutoff

    @classmethod
    def one(cls, q_cutoff=None) -> "TriSeries":
        return cls({(0, 0, 0): 1}, q_cutoff)

    @classmethod
    def monomial(cls, a=0, t=0, q=0, coeff=1, q_cutoff=None) -> "TriSeries":
        return cls({(a, t, q): coeff}, q_cutoff)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int, int, object]], q_cutoff=None) -> "TriSeries":
        coeffs: dict = {}
        for a, t, q, c in terms:
            coeffs[(a, t, q)] = coeffs.get((a, t, q), 0) + c
        return cls(coeffs, q_cutoff)

    # helpers ------------------------------------------------------------
    @staticmethod
    def _min_cut(c1, c2):
        if c1 is None:
            return c2
        if c2 is None:
            return c1
        return min(c1, c2)

    def truncate(self, q_cutoff: int | None) -> "TriSeries":
        return TriSeries(self.coeffs, self._min_cut(self.q_cutoff, q_cutoff))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, key: Key):
        return self.coeffs.get(tuple(key), 0)

    def items(self):
        return sorted(self.coeffs.items())

    def q_range(self) -> tuple[int, int] | None:
        if not self.coeffs:
            return None
        qs = [k[2] for k in self.coeffs]
        return min(qs), max(qs)

    def a_range(self) -> tuple[int, int] | None:
        if not self.coeffs:
            return None
        a = [k[0] for k in self.coeffs]
        return min(a), max(a)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: "TriSeries") -> "TriSeries":
        cut = self._min_cut(self.q_cutoff, other.q_cutoff)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return TriSeries(out, cut)

    def __neg__(self):
        return TriSeries({k: -c for k, c in self.coeffs.items()}, self.q_cutoff)

    def __sub__(self, other: "TriSeries") -> "TriSeries":
        return self + (-other)

    def scale(self, c) -> "TriSeries":
        return TriSeries({k: v * c for k, v in self.coeffs.items()}, self.q_cutoff)

    def shift(self, a=0, t=0, q=0) -> "TriSeries":
        """Multiply by the monomial a^a t^t q^q; the certified cutoff moves with q."""
        cut = None if self.q_cutoff is None else self.q_cutoff + q
        return TriSeries({(k[0] + a, k[1] + t, k[2] + q): c for k, c in self.coeffs.items()}, cut)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        # the product is certified up to min(cut1 + lowq2, cut2 + lowq1)
        cut = None
        if self.q_cutoff is not None or other.q_cutoff is not None:
            cands = []
            r1, r2 = self.q_range(), other.q_range()
            if self.q_cutoff is not None:
                cands.append(self.q_cutoff + (r2[0] if r2 else 0))
            if other.q_cutoff is not None:
                cands.append(other.q_cutoff + (r1[0] if r1 else 0))
            cut = min(cands)
        out: dict = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                q = k1[2] + k2[2]
                if cut is not None and q > cut:
                    continue
                k = (k1[0] + k2[0], k1[1] + k2[1], q)
                out[k] = out.get(k, 0) + c1 * c2
        return TriSeries(out, cut)

    __rmul__ = __mul__

    def substitute(self, a=None, t=None, q=None) -> "TriSeries":
        """Linear regrading of exponents: each of a, t, q maps to an exponent triple."""
        a = a or (1, 0, 0)
        t = t or (0, 1, 0)
        q = q or (0, 0, 1)
        out: dict = {}
        for (i, j, k), c in self.coeffs.items():
            key = (
                i * a[0] + j * t[0] + k * q[0],
                i * a[1] + j * t[1] + k * q[1],
                i * a[2] + j * t[2] + k * q[2],
            )
            out[key] = out.get(key, 0) + c
        return TriSeries(out, None)

    # comparison ---------------------------------------------------------
    def agrees_with(self, other: "TriSeries", q_cutoff: int | None = None) -> bool:
        return not self.discrepancies(other, q_cutoff)

    def discrepancies(self, other: "TriSeries", q_cutoff: int | None = None) -> list[tuple[Key, object, object]]:
        cut = self._min_cut(self._min_cut(self.q_cutoff, other.q_cutoff), q_cutoff)
        keys = set(self.coeffs) | set(other.coeffs)
        bad = []
        for k in sorted(keys, key=lambda k: (k[2], k[0], k[1])):
            if cut is not None and k[2] > cut:
                continue
            if self[k] != other[k]:
                bad.append((k, self[k], other[k]))
        return bad

    def __eq__(self, other):
        if not isinstance(other, TriSeries):
            return NotImplemented
        return self.q_cutoff == other.q_cutoff and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            body = "0"
        else:
            parts = []
            for (a, t, q), c in sorted(self.coeffs.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1])):
                mono = "".join(f"{v}^{e}" if e != 1 else v for v, e in (("a", a), ("t", t), ("q", q)) if e)
                parts.append(f"{c}{'*' + mono if mono else ''}" if c != 1 or not mono else mono)
            body = " + ".join(parts)
        cut = "" if self.q_cutoff is None else f" + O(q^{self.q_cutoff + 1})"
        return body + cut

    def to_rows(self) -> list[list[int]]:
        """Sorted [a, t, q, coeff] rows (integer coefficients expected)."""
        rows = []
        for (a, t, q), c in sorted(self.coeffs.items()):
            if isinstance(c, Fraction):
                raise ValueError("non-integral coefficient in dimension table")
            rows.append([a, t, q, c])
        return rows


def series_expand(num: TriSeries | Mapping[Key, object], den: Iterable[Key], cutoff: int) -> TriSeries:
    """Expand num / prod(1 - m) over denominator monomials m, exactly up to q^cutoff.

    Each denominator monomial must have positive q-degree.
    """
    if not isinstance(num, TriSeries):
        num = TriSeries(num)
    den = [tuple(m) for m in den]
    for m in den:
        if m[2] <= 0:
            raise ValueError(f"denominator factor (1 - a^{m[0]} t^{m[1]} q^{m[2]}) has non-positive q-degree")
    cur = dict(TriSeries(num.coeffs, cutoff).coeffs)
    for m in den:
        # multiply by 1/(1-m) = sum m^j, processing q in increasing order
        out: dict = {}
        for k in sorted(cur, key=lambda k: k[2]):
            c = cur[k]
            j = 0
            while True:
                kk = (k[0] + j * m[0], k[1] + j * m[1], k[2] + j * m[2])
                if kk[2] > cutoff:
                    break
                out[kk] = out.get(kk, 0) + c
                j += 1
        cur = out
    cut = cutoff if num.q_cutoff is None else min(cutoff, num.q_cutoff)
    return TriSeries(cur, cut)
