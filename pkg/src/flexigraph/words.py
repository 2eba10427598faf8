"""Free-group words over x1..xk: reduction, balls, abelianization, evaluation.

A letter is a nonzero int: ``i`` stands for x_i and ``-i`` for its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ResourceCapExceeded


def _check_letters(letters: Iterable[int], rank: int) -> None:
    for g in letters:
        if g == 0 or abs(g) > rank:
            raise ValueError(f"generator index {g} out of range 1..{rank}")


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for g in letters:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word in F_rank. Construct through :func:`reduce` or the
    classmethods; the raw constructor trusts its input."""

    letters: tuple[int, ...]
    rank: int

    @classmethod
    def identity(cls, rank: int) -> "FreeWord":
        return cls((), rank)

    @classmethod
    def gen(cls, i: int, rank: int, power: int = 1) -> "FreeWord":
        _check_letters([i], rank)
        return cls((i if power > 0 else -i,) * abs(power), rank)

    @classmethod
    def from_syllables(cls, syllables: Iterable[tuple[int, int]], rank: int) -> "FreeWord":
        raw: list[int] = []
        for i, e in syllables:
            raw.extend([i if e > 0 else -i] * abs(e))
        return reduce(raw, rank)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return FreeWord(free_reduce(self.letters + other.letters), self.rank)

    def __pow__(self, n: int) -> "FreeWord":
        base = self if n >= 0 else self.inverse()
        out = FreeWord.identity(self.rank)
        for _ in range(abs(n)):
            out = out * base
        return out

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple(-g for g in reversed(self.letters)), self.rank)

    def is_identity(self) -> bool:
        return not self.letters

    def syllables(self) -> list[tuple[int, int]]:
        """Maximal runs as (index, exponent) pairs."""
        out: list[tuple[int, int]] = []
        for g in self.letters:
            i, s = abs(g), (1 if g > 0 else -1)
            if out and out[-1][0] == i:
                out[-1] = (i, out[-1][1] + s)
            else:
                out.append((i, s))
        return out

    def substitute(self, images: Sequence["FreeWord"]) -> "FreeWord":
        """Image under the endomorphism x_i -> images[i-1]."""
        rank = images[0].rank
        raw: list[int] = []
        for g in self.letters:
            w = images[abs(g) - 1]
            raw.extend(w.letters if g > 0 else w.inverse().letters)
        return FreeWord(free_reduce(raw), rank)

    def cyclic_reduce(self) -> "FreeWord":
        lt = list(self.letters)
        while len(lt) >= 2 and lt[0] == -lt[-1]:
            lt = lt[1:-1]
        return FreeWord(tuple(lt), self.rank)

    def to_text(self, names: Sequence[str] | None = None) -> str:
        if not self.letters:
            return "1"
        names = names or [f"x{i}" for i in range(1, self.rank + 1)]
        parts = []
        for i, e in self.syllables():
            parts.append(names[i - 1] if e == 1 else f"{names[i - 1]}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        return self.to_text()


def reduce(raw: Iterable[int], rank: int) -> FreeWord:
    raw = list(raw)
    _check_letters(raw, rank)
    return FreeWord(free_reduce(raw), rank)


def parse_word(text: str, rank: int) -> FreeWord:
    """Parse ``x1*x2^-1*x3`` style text (``1`` is the identity)."""
    from .cosetenum import parse_word_text

    names = [f"x{i}" for i in range(1, rank + 1)]
    return parse_word_text(text, names)


def _letter_key(g: int) -> tuple[int, int]:
    return (abs(g), 0 if g > 0 else 1)


def ball_size(rank: int, radius: int) -> int:
    if radius < 0:
        return 0
    if rank == 1:
        return 2 * radius + 1
    q = 2 * rank - 1
    return 1 + 2 * rank * (q**radius - 1) // (q - 1)


def enumerate_sphere(rank: int, length: int) -> Iterator[FreeWord]:
    """Reduced words of exactly ``length`` letters, lexicographic in
    (index, sign) with + before -."""
    alphabet = sorted([i for i in range(1, rank + 1)] + [-i for i in range(1, rank + 1)],
                      key=_letter_key)
    if length == 0:
        yield FreeWord((), rank)
        return
    # explicit-stack DFS; each frame holds the next alphabet position to try
    word: list[int] = []
    stack = [0]
    while stack:
        pos = stack[-1]
        if pos == len(alphabet):
            stack.pop()
            if word:
                word.pop()
            continue
        stack[-1] = pos + 1
        g = alphabet[pos]
        if word and word[-1] == -g:
            continue
        word.append(g)
        if len(word) == length:
            yield FreeWord(tuple(word), rank)
            word.pop()
        else:
            stack.append(0)


def enumerate_ball(rank: int, radius: int, max_count: int | None = None) -> Iterator[FreeWord]:
    """Stream B(radius) in (length, lexicographic) order.

    Raises ResourceCapExceeded up front when the ball is larger than
    ``max_count``.
    """
    if rank < 1 or radius < 0:
        raise ValueError("need rank >= 1 and radius >= 0")
    if max_count is not None and ball_size(rank, radius) > max_count:
        raise ResourceCapExceeded(
            f"ball of radius {radius} in F_{rank} has {ball_size(rank, radius)} words "
            f"(cap {max_count})")
    for length in range(radius + 1):
        yield from enumerate_sphere(rank, length)


def abelianize(w: FreeWord) -> tuple[int, ...]:
    v = [0] * w.rank
    for g in w.letters:
        v[abs(g) - 1] += 1 if g > 0 else -1
    return tuple(v)


def evaluate(w: FreeWord, images: Sequence[int]) -> int:
    """Additive evaluation x_i -> images[i-1] into Z."""
    if len(images) != w.rank:
        raise ValueError("need one image per generator")
    return sum(images[abs(g) - 1] if g > 0 else -images[abs(g) - 1] for g in w.letters)
