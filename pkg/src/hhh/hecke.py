"""Iwahori-Hecke algebra of type A and the HOMFLY-PT polynomial of braid closures.

Elements are stored in the standard basis {T_w : w in S_n}, permutations as
tuples of images (0-based), with T_w T_i = T_{w s_i} when the length grows and
the quadratic relation (T_i - v)(T_i + v^-1) = 0 otherwise. Coefficients are
sympy expressions in v. The Jones-Ocneanu trace with tr(x T_{n-1}) = z tr(x)
gives the HOMFLY-PT polynomial

    P(beta) = c^-(n-1) a^-writhe tr(beta),   z = (v - v^-1) a^2/(a^2 - 1),
    c = (v - v^-1)/(a - a^-1),

normalized so the unknot is 1 and satisfying
a P(L+) - a^-1 P(L-) = (v - v^-1) P(L0).
"""
from __future__ import annotations

from functools import lru_cache

import sympy as sp

from .braid import BraidWord

a, v = sp.symbols("a v")
_DELTA = v - 1 / v

Perm = tuple[int, ...]


def _swap(w: Perm, i: int) -> Perm:
    """w s_i for the 0-based adjacent transposition (i, i+1)."""
    lst = list(w)
    lst[i], lst[i + 1] = lst[i + 1], lst[i]
    return tuple(lst)


class HeckeElement:
    """Finite linear combination of basis elements T_w with coefficients in Q(v)."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: dict[Perm, sp.Expr] | None = None):
        self.n = n
        self.coeffs = {w: c for w, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def identity(cls, n: int) -> "HeckeElement":
        return cls(n, {tuple(range(n)): sp.Integer(1)})

    @classmethod
    def generator(cls, n: int, i: int) -> "HeckeElement":
        """T_i (1-based index)."""
        return cls.identity(n).mul_generator(i)

    def mul_generator(self, i: int, inverse: bool = False) -> "HeckeElement":
        """Right multiplication by T_i or T_i^-1 = T_i - (v - v^-1)."""
        k = i - 1
        out: dict[Perm, sp.Expr] = {}

        def add(w, c):
            out[w] = sp.expand(out.get(w, 0) + c)

        for w, c in self.coeffs.items():
            ws = _swap(w, k)
            if w[k] < w[k + 1]:
                add(ws, c)
            else:
                add(ws, c)
                add(w, c * _DELTA)
            if inverse:
                add(w, -c * _DELTA)
        return HeckeElement(self.n, out)

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        out = HeckeElement(self.n, {})
        for w, c in other.coeffs.items():
            part = HeckeElement(self.n, dict(self.coeffs))
            for i in reduced_word(w):
                part = part.mul_generator(i)
            for u, d in part.coeffs.items():
                out.coeffs[u] = sp.expand(out.coeffs.get(u, 0) + c * d)
        return HeckeElement(self.n, out.coeffs)

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(sp.simplify(self.coeffs.get(k, 0) - other.coeffs.get(k, 0)) == 0 for k in keys)

    def __repr__(self):
        terms = [f"({sp.simplify(c)})*T{list(w)}" for w, c in sorted(self.coeffs.items())]
        return " + ".join(terms) or "0"


def reduced_word(w: Perm) -> list[int]:
    """A reduced word (1-based generator indices) with T_w = T_{i_1} ... T_{i_k}."""
    word = []
    cur = list(w)
    # bubble sort from the right: w = w' s_i whenever w(i) > w(i+1)
    while True:
        for k in range(len(cur) - 1):
            if cur[k] > cur[k + 1]:
                cur[k], cur[k + 1] = cur[k + 1], cur[k]
                word.append(k + 1)
                break
        else:
            break
    return list(reversed(word))


def hecke_image(w: BraidWord) -> HeckeElement:
    """Image of the braid: sigma_i -> T_i, sigma_i^-1 -> T_i^-1."""
    h = HeckeElement.identity(w.strands)
    for x in w.letters:
        h = h.mul_generator(abs(x), inverse=x < 0)
    return h


_Z = _DELTA * a**2 / (a**2 - 1)


@lru_cache(maxsize=None)
def _trace_basis(w: Perm) -> sp.Expr:
    """Ocneanu trace of T_w."""
    n = len(w)
    if n <= 1:
        return sp.Integer(1)
    if w[n - 1] == n - 1:
        return _trace_basis(w[:-1])
    # w = u s_{n-1} s_{n-2} ... s_j with u fixing the last point, lengths adding
    j = w.index(n - 1)  # 0-based position sent to n-1
    u = list(w)
    for k in range(j, n - 1):
        u[k], u[k + 1] = u[k + 1], u[k]
    u = tuple(u)
    # T_w = T_u T_{n-1} T_{c'}, c' = s_{n-2} ... s_{j}; trace gives z tr(T_u T_{c'})
    elem = HeckeElement(n - 1, {u[:-1]: sp.Integer(1)})
    for k in range(n - 2, j, -1):
        elem = elem.mul_generator(k)
    return sp.expand(_Z * trace(elem))


def trace(h: HeckeElement) -> sp.Expr:
    total = sp.Integer(0)
    for w, c in h.coeffs.items():
        total += c * _trace_basis(w)
    return total


def homfly(w: BraidWord) -> sp.Expr:
    """HOMFLY-PT polynomial of the closure, a Laurent polynomial in (a, v); unknot = 1."""
    c = _DELTA / (a - 1 / a)
    expr = trace(hecke_image(w)) * c ** (-(w.strands - 1)) * a ** (-w.writhe)
    return sp.expand(sp.cancel(sp.together(expr)))


def laurent_terms(expr: sp.Expr) -> dict[tuple[int, int], int]:
    """{(a_exp, v_exp): coefficient} of a Laurent polynomial in a, v."""
    expr = sp.expand(expr)
    out: dict[tuple[int, int], int] = {}
    for term in sp.Add.make_args(expr):
        coeff, rest = term.as_coeff_Mul()
        powers = rest.as_powers_dict()
        ea = int(powers.get(a, 0))
        ev = int(powers.get(v, 0))
        leftover = rest / (a**ea * v**ev)
        if leftover != 1:
            raise ValueError(f"not a Laurent monomial in a, v: {term}")
        key = (ea, ev)
        out[key] = out.get(key, 0) + int(coeff)
    return {k: c for k, c in out.items() if c}


def unknot_value() -> sp.Expr:
    """HOMFLY value of the unknot in the unreduced normalization, (a - a^-1)/(v - v^-1)."""
    return (a - 1 / a) / _DELTA


def skein_holds(w: BraidWord, i: int) -> bool:
    """a P(w s_i) - a^-1 P(w s_i^-1) = (v - v^-1) P(w)."""
    plus = BraidWord(w.strands, w.letters + (i,))
    minus = BraidWord(w.strands, w.letters + (-i,))
    lhs = a * homfly(plus) - homfly(minus) / a
    return sp.simplify(lhs - _DELTA * homfly(w)) == 0


def is_palindromic_in_v(expr: sp.Expr) -> bool:
    return sp.simplify(expr - expr.subs(v, 1 / v)) == 0


def mirror_image(expr: sp.Expr) -> sp.Expr:
    """The HOMFLY polynomial of the mirror image: a -> a^-1, v -> v^-1."""
    return sp.expand(expr.subs({a: 1 / a, v: 1 / v}, simultaneous=True))
