"""Sparse multivariate polynomials with exact rational coefficients.

Exponent vectors are tuples of nonnegative ints, one slot per ring variable.
Coefficients are Python ints whenever they are integral and
:class:`fractions.Fraction` otherwise, so the common integral case stays fast.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Union

Coeff = Union[int, Fraction]


def normalize_coeff(c) -> Coeff:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def grlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


class Polynomial:
    """Immutable polynomial in ``arity`` commuting variables x_1..x_arity.

    The q-degree convention is deg x_i = q^2, so :meth:`qdeg` of a
    homogeneous polynomial is twice its total degree.
    """

    __slots__ = ("arity", "terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], Coeff] | None = None, arity: int = 0):
        clean = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != arity:
                    raise ValueError(f"exponent {exp} does not match arity {arity}")
                if c:
                    clean[exp] = normalize_coeff(c)
        self.arity = arity
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, arity: int) -> "Polynomial":
        p = cls.__new__(cls)
        p.arity = arity
        p.terms = terms
        p._hash = None
        return p

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, arity: int) -> "Polynomial":
        return cls._raw({}, arity)

    @classmethod
    def const(cls, c, arity: int) -> "Polynomial":
        c = normalize_coeff(c)
        return cls._raw({(0,) * arity: c} if c else {}, arity)

    @classmethod
    def var(cls, i: int, arity: int) -> "Polynomial":
        """The variable x_i (1-based)."""
        if not 1 <= i <= arity:
            raise ValueError(f"variable index {i} out of range for arity {arity}")
        exp = [0] * arity
        exp[i - 1] = 1
        return cls._raw({tuple(exp): 1}, arity)

    @classmethod
    def monomial(cls, exp: tuple[int, ...], coeff=1) -> "Polynomial":
        return cls({tuple(exp): coeff}, len(exp))

    # basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self) -> Coeff:
        return self.terms.get((0,) * self.arity, 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def qdeg(self) -> int:
        if not self.is_homogeneous():
            raise ValueError("q-degree requested for an inhomogeneous polynomial")
        return 2 * self.degree() if self.terms else 0

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Coeff]]:
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(other, self.arity)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = terms.get(e, 0) + c
            if v:
                terms[e] = normalize_coeff(v)
            else:
                terms.pop(e, None)
        return Polynomial._raw(terms, self.arity)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({e: -c for e, c in self.terms.items()}, self.arity)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial._raw({}, self.arity)
            return Polynomial._raw({e: normalize_coeff(c * other) for e, c in self.terms.items()}, self.arity)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if not a or not b:
            return Polynomial._raw({}, self.arity)
        if len(a) < len(b):
            a, b = b, a
        terms: dict = {}
        get = terms.get
        for e1, c1 in b.items():
            for e2, c2 in a.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = get(e, 0) + c1 * c2
        return Polynomial._raw({e: normalize_coeff(c) for e, c in terms.items() if c}, self.arity)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.const(1, self.arity)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        return self * normalize_coeff(c)

    def mul_monomial(self, exp: tuple[int, ...], coeff=1) -> "Polynomial":
        return Polynomial._raw(
            {tuple(x + y for x, y in zip(e, exp)): normalize_coeff(c * coeff) for e, c in self.terms.items()},
            self.arity,
        )

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other, self.arity)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self.terms.items())))
        return self._hash

    # substitution -------------------------------------------------------
    def subs(self, images: Mapping[int, "Polynomial"], arity: int | None = None) -> "Polynomial":
        """Substitute x_i -> images[i] (1-based); unspecified variables map to themselves.

        ``arity`` is the arity of the target ring; it defaults to the arity of
        the images (or self when no image is given).
        """
        if arity is None:
            arity = next(iter(images.values())).arity if images else self.arity
        gens = []
        for i in range(1, self.arity + 1):
            if i in images:
                g = images[i]
                if g.arity != arity:
                    raise ValueError("substitution images have inconsistent arity")
                gens.append(g)
            else:
                if arity != self.arity:
                    raise ValueError(f"variable x_{i} has no image in the target ring")
                gens.append(Polynomial.var(i, arity))
        result = Polynomial.zero(arity)
        powcache: dict = {}
        for e, c in self.terms.items():
            term = Polynomial.const(c, arity)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powcache:
                        powcache[key] = gens[i] ** k
                    term = term * powcache[key]
            result = result + term
        return result

    def evaluate(self, values: Iterable) -> Fraction:
        values = list(values)
        total = Fraction(0)
        for e, c in self.terms.items():
            m = Fraction(c)
            for v, k in zip(values, e):
                m *= Fraction(v) ** k
            total += m
        return normalize_coeff(total)

    # printing -----------------------------------------------------------
    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


@lru_cache(maxsize=None)
def monomials_of_degree(arity: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of the given total degree, in descending grlex order."""
    if degree < 0:
        return ()
    if arity == 0:
        return ((),) if degree == 0 else ()
    out = []
    for combo in combinations_with_replacement(range(arity), degree):
        e = [0] * arity
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(arity: int, degree: int) -> dict:
    return {m: i for i, m in enumerate(monomials_of_degree(arity, degree))}


def count_monomials(arity: int, degree: int) -> int:
    return len(monomials_of_degree(arity, degree))


def iter_terms(p: Polynomial) -> Iterator[tuple[tuple[int, ...], Coeff]]:
    return iter(p.terms.items())
