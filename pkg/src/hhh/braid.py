"""Braid words, flat braid graphs, closure statistics and Markov moves."""
from __future__ import annotations

from dataclasses import dataclass, field


class BraidError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    """A braid on ``strands`` strands; letter i is sigma_i, -i is its inverse."""

    strands: int
    letters: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.strands < 1:
            raise BraidError("a braid needs at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise BraidError(f"letter {x} invalid on {self.strands} strands")

    @classmethod
    def parse(cls, strands: int, text: str) -> "BraidWord":
        """Parse whitespace- or comma-separated signed generator indices."""
        tokens = text.replace(",", " ").split()
        try:
            letters = tuple(int(tok) for tok in tokens)
        except ValueError as exc:
            raise BraidError(f"cannot parse braid word {text!r}") from exc
        return cls(strands, letters)

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise BraidError("strand count mismatch")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def mirror(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in self.letters))

    def free_reduce(self) -> "BraidWord":
        stack: list[int] = []
        for x in self.letters:
            if stack and stack[-1] == -x:
                stack.pop()
            else:
                stack.append(x)
        return BraidWord(self.strands, tuple(stack))

    def text(self) -> str:
        return " ".join(str(x) for x in self.letters)

    @property
    def writhe(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def permutation(self) -> tuple[int, ...]:
        """Image of each strand position (0-based) after reading the word left to right."""
        perm = list(range(self.strands))
        for x in self.letters:
            i = abs(x) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        return tuple(perm)

    def components(self) -> int:
        return len(cycles(self.permutation()))

    def is_knot(self) -> bool:
        return self.components() == 1


def cycles(perm: tuple[int, ...]) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        cyc = []
        j = s
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = perm[j]
        out.append(cyc)
    return out


def closure_stats(w: BraidWord) -> tuple[int, int, tuple[int, ...]]:
    """(writhe, number of closure components, permutation)."""
    perm = w.permutation()
    return w.writhe, len(cycles(perm)), perm


def torus_braid(n: int, m: int) -> BraidWord:
    """(sigma_1 ... sigma_{n-1})^m on n strands."""
    if n < 1 or m < 0:
        raise BraidError("torus_braid needs n >= 1 and m >= 0")
    return BraidWord(n, tuple(range(1, n)) * m)


def full_twist(n: int) -> BraidWord:
    return torus_braid(n, n)


def stabilize(w: BraidWord, sign: int = 1) -> BraidWord:
    """Add a strand and append sigma_n^{+-1}."""
    return BraidWord(w.strands + 1, w.letters + (sign * w.strands,))


def conjugate(w: BraidWord, letter: int) -> BraidWord:
    """letter^-1 . w . letter"""
    return BraidWord(w.strands, (-letter,) + w.letters + (letter,))


def markov_variants(w: BraidWord) -> list[BraidWord]:
    """Conjugates by every generator (both signs) and both stabilizations."""
    out = []
    for i in range(1, w.strands):
        out.append(conjugate(w, i))
        out.append(conjugate(w, -i))
    out.append(stabilize(w, 1))
    out.append(stabilize(w, -1))
    return out


@dataclass(frozen=True)
class FlatGraph:
    """Composition of elementary graphs D^(i,i+1), recorded by their indices."""

    strands: int
    dots: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "dots", tuple(int(i) for i in self.dots))
        for i in self.dots:
            if not 1 <= i < self.strands:
                raise BraidError(f"dot index {i} invalid on {self.strands} strands")

    def remove_last_strand(self) -> "FlatGraph":
        if any(i == self.strands - 1 for i in self.dots):
            raise BraidError("graph touches the last strand")
        return FlatGraph(self.strands - 1, self.dots)
