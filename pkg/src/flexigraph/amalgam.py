"""Arithmetic in G = D4 *_{C2} (C2 x C2) = <a, b, z | a^4, b^2, (ab)^2, z^2, (abz)^2>.

Every element has a unique reduced form ``(ab)^eps a^e1 z a^e2 z ... z a^ei``
with e1, ei in 0..3 and the middle exponents in 1..3. The star-length counts
the a-syllables with nonzero exponent plus the z separators; the ``(ab)``
prefix is free.

Also here: the homomorphism ``phi`` onto D4 x C2 (order 16), whose kernel is
free on x1 = za^2za^2, x2 = zaza, x3 = za^3za^3, together with Schreier
rewriting of kernel elements into those generators and the conjugation
action of a, b, z on them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import NotInKernel, ResourceCapExceeded
from .words import FreeWord, enumerate_ball, free_reduce

Letter = tuple[str, int]


@dataclass(frozen=True)
class GWord:
    """A word in a, b, z with integer exponents (not necessarily reduced)."""

    letters: tuple[Letter, ...] = ()

    def __mul__(self, other: "GWord") -> "GWord":
        return GWord(self.letters + other.letters)

    def __pow__(self, n: int) -> "GWord":
        base = self if n >= 0 else self.inverse()
        return GWord(base.letters * abs(n))

    def inverse(self) -> "GWord":
        return GWord(tuple((s, -e) for s, e in reversed(self.letters)))

    def to_text(self) -> str:
        if not self.letters:
            return "1"
        return "*".join(s if e == 1 else f"{s}^{e}" for s, e in self.letters)

    def __str__(self) -> str:
        return self.to_text()


def gword(text: str) -> GWord:
    """Parse ``z*a^2*(a*b)^-1`` style text over a, b, z. ``(ab)`` is accepted
    as shorthand for ``(a*b)``."""
    from .cosetenum import parse_word_text

    text = text.replace("(ab)", "(a*b)")
    w = parse_word_text(text, ["a", "b", "z"])
    names = "abz"
    return GWord(tuple((names[abs(g) - 1], 1 if g > 0 else -1) for g in w.letters))


A, B, Z = GWord((("a", 1),)), GWord((("b", 1),)), GWord((("z", 1),))


@dataclass(frozen=True)
class AmalgamNF:
    eps: int
    exps: tuple[int, ...]

    @property
    def star_length(self) -> int:
        return sum(1 for e in self.exps if e) + len(self.exps) - 1

    @property
    def z_count(self) -> int:
        return len(self.exps) - 1

    def is_identity(self) -> bool:
        return self.eps == 0 and self.exps == (0,)

    def to_gword(self) -> GWord:
        out: list[Letter] = [("a", 1), ("b", 1)] if self.eps else []
        for k, e in enumerate(self.exps):
            if k:
                out.append(("z", 1))
            if e:
                out.append(("a", e))
        return GWord(tuple(out))

    def __mul__(self, other: "AmalgamNF") -> "AmalgamNF":
        return normal_form(other.to_gword(), start=self)

    def inverse(self) -> "AmalgamNF":
        return normal_form(self.to_gword().inverse())

    def to_text(self) -> str:
        if self.is_identity():
            return "1"
        parts = ["(ab)"] if self.eps else []
        for k, e in enumerate(self.exps):
            if k:
                parts.append("z")
            if e:
                parts.append("a" if e == 1 else f"a^{e}")
        return " * ".join(parts)

    def __str__(self) -> str:
        return self.to_text()


IDENTITY = AmalgamNF(0, (0,))


def _expand(w: GWord) -> Iterator[str]:
    """Single letters a, A (= a^-1), b, z."""
    for s, e in w.letters:
        if s == "a":
            e %= 4
            yield from ("a" * e if e <= 2 else "A")
        elif s in ("b", "z"):
            if e % 2:
                yield s
        else:
            raise ValueError(f"unknown symbol {s!r}")


def _push(eps: int, exps: list[int], x: str) -> int:
    """Right-multiply the reduced form (eps, exps) by one letter in place."""
    if x == "a":
        exps[-1] = (exps[-1] + 1) % 4
    elif x == "A":
        exps[-1] = (exps[-1] + 3) % 4
    elif x == "z":
        if len(exps) >= 2 and exps[-1] == 0:
            exps.pop()
        else:
            exps.append(0)
    else:  # b = (ab) a, and (ab) commutes with z while inverting a
        eps ^= 1
        for k, e in enumerate(exps):
            exps[k] = (-e) % 4
        exps[-1] = (exps[-1] + 1) % 4
    return eps


def normal_form(w: GWord, start: AmalgamNF = IDENTITY) -> AmalgamNF:
    eps, exps = start.eps, list(start.exps)
    for x in _expand(w):
        eps = _push(eps, exps, x)
    return AmalgamNF(eps, tuple(exps))


def star_length(w: GWord) -> int:
    return normal_form(w).star_length


def _exps_of_length(n: int) -> list[tuple[int, ...]]:
    out = []
    if n <= 1:
        out += [(e,) for e in range(4) if (e != 0) == n]
    # i syllables contribute 2i-3 from middles and separators, plus the ends
    for i in range(2, n + 2):
        core = 2 * i - 3
        for e1, ei in itertools.product(range(4), repeat=2):
            if core + (e1 != 0) + (ei != 0) != n:
                continue
            for mid in itertools.product((1, 2, 3), repeat=i - 2):
                out.append((e1, *mid, ei))
    return sorted(out)


def star_ball_size(radius: int) -> int:
    return sum(2 * len(_exps_of_length(n)) for n in range(radius + 1))


def star_ball(radius: int, max_count: int | None = None) -> Iterator[AmalgamNF]:
    """All g with star-length <= radius, ordered by (length, eps, exps)."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    if max_count is not None:
        size = star_ball_size(radius)
        if size > max_count:
            raise ResourceCapExceeded(f"B_*({radius}) has {size} elements (cap {max_count})")
    for n in range(radius + 1):
        exps_list = _exps_of_length(n)
        for eps in (0, 1):
            for exps in exps_list:
                yield AmalgamNF(eps, exps)


# --- the homomorphism phi onto D4 x C2 -------------------------------------
# An image element is (r, s, c): abar^r bbar^s in D4, and c in C2.

ImageElement = tuple[int, int, int]
IMAGE_IDENTITY: ImageElement = (0, 0, 0)


def image_mul(x: ImageElement, y: ImageElement) -> ImageElement:
    r1, s1, c1 = x
    r2, s2, c2 = y
    return ((r1 + (-r2 if s1 else r2)) % 4, (s1 + s2) % 2, (c1 + c2) % 2)


def image_inv(x: ImageElement) -> ImageElement:
    r, s, c = x
    return ((r if s else -r) % 4, s, c)


def image_index(x: ImageElement) -> int:
    return x[0] + 4 * x[1] + 8 * x[2]


_PHI_GEN = {"a": (1, 0, 0), "A": (3, 0, 0), "b": (0, 1, 0), "z": (1, 1, 1)}


def phi(w: GWord) -> ImageElement:
    x = IMAGE_IDENTITY
    for s in _expand(w):
        x = image_mul(x, _PHI_GEN[s])
    return x


def image_closure(gens: Sequence[ImageElement]) -> set[ImageElement]:
    seen = {IMAGE_IDENTITY}
    frontier = [IMAGE_IDENTITY]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = image_mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


# --- kernel generators, Schreier transversal and rewriting ------------------

X_WORDS = {
    1: gword("z*a^2*z*a^2"),
    2: gword("z*a*z*a"),
    3: gword("z*a^3*z*a^3"),
}

_LETTERS = ("a", "A", "b", "z")
_LETTER_WORD = {"a": GWord((("a", 1),)), "A": GWord((("a", -1),)),
                "b": GWord((("b", 1),)), "z": GWord((("z", 1),))}


def expand_x(w: FreeWord) -> GWord:
    """The element of G named by a word in x1, x2, x3."""
    out: list[Letter] = []
    for g in w.letters:
        xw = X_WORDS[abs(g)]
        out.extend(xw.letters if g > 0 else xw.inverse().letters)
    return GWord(tuple(out))


@lru_cache(maxsize=None)
def transversal() -> dict[ImageElement, GWord]:
    """BFS Schreier transversal of the 16 cosets of ker(phi), letters tried
    in the order a, a^-1, b, z."""
    reps = {IMAGE_IDENTITY: GWord()}
    frontier = [IMAGE_IDENTITY]
    while frontier:
        nxt = []
        for t in frontier:
            for s in _LETTERS:
                u = image_mul(t, _PHI_GEN[s])
                if u not in reps:
                    reps[u] = reps[t] * _LETTER_WORD[s]
                    nxt.append(u)
        frontier = nxt
    return reps


@lru_cache(maxsize=None)
def _nf_to_xword(radius: int = 4) -> dict[AmalgamNF, FreeWord]:
    table: dict[AmalgamNF, FreeWord] = {}
    for w in enumerate_ball(3, radius):
        table.setdefault(normal_form(expand_x(w)), w)
    return table


@lru_cache(maxsize=None)
def schreier_generators() -> dict[tuple[ImageElement, str], FreeWord]:
    """x-word for each Schreier generator T_t * s * T_{ts}^-1."""
    reps = transversal()
    lookup = _nf_to_xword()
    out = {}
    for t, rep in reps.items():
        for s in _LETTERS:
            u = image_mul(t, _PHI_GEN[s])
            nf = normal_form(rep * _LETTER_WORD[s] * reps[u].inverse())
            if nf not in lookup:
                raise RuntimeError(f"Schreier generator {nf} not found in the x-ball")
            out[t, s] = lookup[nf]
    return out


def schreier_rewrite(w: GWord) -> FreeWord:
    """Express a kernel element of phi as a reduced word in x1, x2, x3."""
    if phi(w) != IMAGE_IDENTITY:
        raise NotInKernel(f"{w} maps to {phi(w)} under phi")
    table = schreier_generators()
    t = IMAGE_IDENTITY
    raw: list[int] = []
    for s in _expand(w):
        raw.extend(table[t, s].letters)
        t = image_mul(t, _PHI_GEN[s])
    return FreeWord(free_reduce(raw), 3)


def conj_action(g: GWord) -> tuple[FreeWord, FreeWord, FreeWord]:
    """Images of x1, x2, x3 under v -> g^-1 v g."""
    gi = g.inverse()
    return tuple(schreier_rewrite(gi * X_WORDS[i] * g) for i in (1, 2, 3))  # type: ignore[return-value]


def cyclic_class(w: FreeWord) -> tuple[int, ...]:
    """Canonical label of w up to conjugacy in F3 and inversion."""
    reps = []
    for u in (w.cyclic_reduce(), w.inverse().cyclic_reduce()):
        lt = u.letters
        reps += [lt[k:] + lt[:k] for k in range(max(len(lt), 1))]
    return min(reps, key=lambda t: (len(t), t))


def conjugacy_orbit(w: FreeWord, actions: Iterable[Sequence[FreeWord]]) -> set[tuple[int, ...]]:
    """Classes (mod F3-conjugacy and inversion) reached from w by the given
    automorphisms of F3."""
    actions = list(actions)
    seen = {cyclic_class(w)}
    frontier = [w]
    while frontier:
        nxt = []
        for u in frontier:
            for images in actions:
                v = u.substitute(images).cyclic_reduce()
                key = cyclic_class(v)
                if key not in seen:
                    seen.add(key)
                    nxt.append(v)
        frontier = nxt
    return seen


# --- relator checking for candidate permutation images ----------------------

G_RELATORS = {
    "a^4": "a^4",
    "b^2": "b^2",
    "(ab)^2": "(a*b)^2",
    "z^2": "z^2",
    "[ab,z]": "(a*b)^-1*z^-1*a*b*z",
}


def _perm_from_cycles(cycles: Sequence[Sequence[int]], degree: int) -> tuple[int, ...]:
    p = list(range(degree + 1))
    for cyc in cycles:
        for k, x in enumerate(cyc):
            p[x] = cyc[(k + 1) % len(cyc)]
    return tuple(p)


def check_relators(images: dict[str, Sequence[Sequence[int]]], degree: int) -> dict[str, dict[str, bool]]:
    """For permutation images of a, b, z given in cycle notation on 1..degree,
    report which relators of G hold, under left-to-right composition
    (apply the first letter first) and right-to-left composition."""
    perms = {s: _perm_from_cycles(c, degree) for s, c in images.items()}
    inv = {s: tuple(sorted(range(degree + 1), key=lambda i: p[i])) for s, p in perms.items()}

    def evaluate(text: str, left_to_right: bool) -> bool:
        w = gword(text)
        letters = [(s, 1 if e > 0 else -1) for s, e in w.letters for _ in range(abs(e))]
        if not left_to_right:
            letters = letters[::-1]
        for x in range(1, degree + 1):
            y = x
            for s, e in letters:
                y = perms[s][y] if e > 0 else inv[s][y]
            if y != x:
                return False
        return True

    return {conv: {name: evaluate(text, conv == "left-to-right") for name, text in G_RELATORS.items()}
            for conv in ("left-to-right", "right-to-left")}


SYM8_CANDIDATE_IMAGES = {
    "a": [(1, 2, 3, 4), (5, 8, 7, 6)],
    "b": [(1, 2), (3, 4), (5, 6), (7, 8)],
    "z": [(1, 2), (3, 4), (5, 8), (6, 7)],
}
