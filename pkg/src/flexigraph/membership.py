"""Word-length oracles in free groups.

* truncated Magnus series ``x_i -> 1 + X_i`` with coefficients mod m,
* the ``F_k^l gamma_l(F_k)`` exclusion test built on it,
* Fox/Magnus coefficients of power words,
* the membership test for H = <x1^l, (x2 x3^-1)^l>^{F3} via the free product
  C_l * C_l * C_inf.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .words import FreeWord, abelianize, enumerate_ball

Monomial = tuple[int, ...]


@dataclass
class TruncSeries:
    """Noncommutative polynomial in X_1..X_rank, coefficients mod ``modulus``
    (0 means integers), monomials of degree >= ``degree_bound`` dropped."""

    rank: int
    modulus: int
    degree_bound: int
    coeffs: dict[Monomial, int] = field(default_factory=dict)

    def _norm(self, c: int) -> int:
        return c % self.modulus if self.modulus else c

    @classmethod
    def one(cls, rank: int, modulus: int, degree_bound: int) -> "TruncSeries":
        s = cls(rank, modulus, degree_bound)
        if degree_bound > 0 and s._norm(1):
            s.coeffs[()] = 1
        return s

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        d = self.degree_bound
        out: dict[Monomial, int] = {}
        for m1, c1 in self.coeffs.items():
            room = d - len(m1)
            for m2, c2 in other.coeffs.items():
                if len(m2) < room:
                    key = m1 + m2
                    out[key] = out.get(key, 0) + c1 * c2
        res = TruncSeries(self.rank, self.modulus, d)
        res.coeffs = {k: v for k, v in ((k, self._norm(v)) for k, v in out.items()) if v}
        return res

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.rank, self.modulus, self.degree_bound, self.coeffs) == \
            (other.rank, other.modulus, other.degree_bound, other.coeffs)

    def coefficient(self, mono: Sequence[int]) -> int:
        return self.coeffs.get(tuple(mono), 0)

    def is_one(self) -> bool:
        return self == TruncSeries.one(self.rank, self.modulus, self.degree_bound)

    def order(self) -> int | None:
        """Lowest degree of a monomial in (self - 1); None if self is 1."""
        degs = [len(m) for m, c in self.coeffs.items() if m or c != 1]
        return min(degs) if degs else None

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for m, c in sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0])):
            mono = "*".join(f"X{i}" for i in m)
            terms.append(str(c) if not m else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(terms)


def _letter_series(g: int, rank: int, modulus: int, d: int) -> TruncSeries:
    s = TruncSeries.one(rank, modulus, d)
    i = abs(g)
    sign = 1 if g > 0 else -1
    # (1 + X)^-1 = sum (-X)^n
    for n in range(1, d if g < 0 else min(d, 2)):
        c = s._norm(sign**n)
        if c:
            s.coeffs[(i,) * n] = c
    return s


def magnus(w: FreeWord, modulus: int = 0, degree_bound: int = 3) -> TruncSeries:
    if degree_bound < 1:
        raise ValueError("degree bound must be >= 1")
    out = TruncSeries.one(w.rank, modulus, degree_bound)
    cache: dict[int, TruncSeries] = {}
    for g in w.letters:
        if g not in cache:
            cache[g] = _letter_series(g, w.rank, modulus, degree_bound)
        out = out * cache[g]
    return out


class Verdict(enum.Enum):
    CERTIFIED_OUT = "certified_out"
    TRIVIAL_IMAGE = "trivial_image"


def in_power_gamma(w: FreeWord, ell: int) -> Verdict:
    """CERTIFIED_OUT proves w is not in F_k^ell gamma_ell(F_k); TRIVIAL_IMAGE
    is only a necessary condition for membership."""
    if magnus(w, ell, ell).is_one():
        return Verdict.TRIVIAL_IMAGE
    return Verdict.CERTIFIED_OUT


def fox_coefficient(w: FreeWord, monomial: Sequence[int]) -> int:
    """Integer Magnus coefficient of X_{i1}...X_{in} in w, i.e. the augmented
    iterated Fox derivative."""
    return magnus(w, 0, len(monomial) + 1).coefficient(monomial)


# --- free product C_l * C_l * C_inf -----------------------------------------

@dataclass(frozen=True)
class FPWord:
    """Alternating syllables (factor, exponent); factors 1 and 2 have order
    ``ell`` (exponents kept in 1..ell-1), factor 3 is infinite cyclic."""

    syllables: tuple[tuple[int, int], ...]
    ell: int

    def is_identity(self) -> bool:
        return not self.syllables


def fp_normal_form(w: FreeWord | Iterable[tuple[int, int]], ell: int) -> FPWord:
    if ell < 2:
        raise ValueError("ell must be >= 2")
    syls = w.syllables() if isinstance(w, FreeWord) else list(w)
    stack: list[tuple[int, int]] = []
    for f, e in syls:
        if stack and stack[-1][0] == f:
            e += stack.pop()[1]
        if f in (1, 2):
            e %= ell
        if e:
            stack.append((f, e))
    return FPWord(tuple(stack), ell)


# x1 -> z1, x2 -> z2 z3, x3 -> z3
_H_SUBST = (FreeWord((1,), 3), FreeWord((2, 3), 3), FreeWord((3,), 3))


def in_H(w: FreeWord, ell: int) -> bool:
    """Exact membership in the normal closure of x1^ell and (x2 x3^-1)^ell."""
    return fp_normal_form(w.substitute(_H_SUBST), ell).is_identity()


# --- desk verifications -----------------------------------------------------

def _power(i: int, e: int, rank: int) -> FreeWord:
    return FreeWord.gen(i, rank, e)


def verify_power_gamma(rank: int, ell: int, max_count: int | None = None) -> dict:
    """Scan B(ell): nontrivial words shorter than ell must be certified out,
    and the trivial-image set must be {1} plus the x_i^(+-ell)."""
    trivial: list[FreeWord] = []
    short_failures: list[str] = []
    abel_failures: list[str] = []
    checked = 0
    for w in enumerate_ball(rank, ell, max_count):
        checked += 1
        if in_power_gamma(w, ell) is Verdict.TRIVIAL_IMAGE:
            trivial.append(w)
            if any(v % ell for v in abelianize(w)):
                abel_failures.append(str(w))
            if 0 < len(w) < ell:
                short_failures.append(str(w))
    expected = {FreeWord.identity(rank)} | {_power(i, s * ell, rank)
                                            for i in range(1, rank + 1) for s in (1, -1)}
    ok = not short_failures and not abel_failures and set(trivial) == expected
    return {
        "theorem": "B",
        "claim": f"nontrivial words of length < {ell} leave F_{rank}^{ell} gamma_{ell}; "
                 f"at length {ell} only x_i^(+-{ell}) survive",
        "rank": rank,
        "ell": ell,
        "ball_checked": checked,
        "trivial_image": [str(w) for w in trivial],
        "short_failures": short_failures,
        "verdict": "PASS" if ok else "FAIL",
    }


def verify_normal_closure_ball(ell: int, max_count: int | None = None) -> dict:
    members: list[FreeWord] = []
    checked = 0
    for w in enumerate_ball(3, ell, max_count):
        checked += 1
        if in_H(w, ell):
            members.append(w)
    long_words = [FreeWord((2, -3) * ell, 3), FreeWord((3, -2) * ell, 3)]
    long_ok = all(in_H(w, ell) and len(w) == 2 * ell for w in long_words)
    expected = {FreeWord.identity(3), _power(1, ell, 3), _power(1, -ell, 3)}
    ok = set(members) == expected and long_ok
    return {
        "theorem": "lemma43",
        "claim": f"the normal closure of x1^{ell}, (x2 x3^-1)^{ell} meets B({ell}) in "
                 f"{{1, x1^(+-{ell})}} and contains (x2 x3^-1)^(+-{ell}) of length {2 * ell}",
        "ell": ell,
        "ball_checked": checked,
        "members": [str(w) for w in members],
        "long_members": [str(w) for w in long_words if in_H(w, ell)],
        "verdict": "PASS" if ok else "FAIL",
    }


def random_power_word(rng: random.Random, rank: int, max_syllables: int = 5,
                      max_exp: int = 4) -> tuple[FreeWord, tuple[int, ...], tuple[int, ...]]:
    """A word x_{i1}^{a1}...x_{in}^{an} with adjacent indices distinct and
    nonzero exponents; returns (word, indices, exponents)."""
    n = rng.randint(1, max_syllables)
    idx: list[int] = []
    for _ in range(n):
        choices = [i for i in range(1, rank + 1) if not idx or i != idx[-1]]
        idx.append(rng.choice(choices))
    exps = [rng.choice([e for e in range(-max_exp, max_exp + 1) if e]) for _ in range(n)]
    return FreeWord.from_syllables(zip(idx, exps), rank), tuple(idx), tuple(exps)


def random_word(rng: random.Random, rank: int, max_len: int = 8) -> FreeWord:
    raw = [rng.choice([1, -1]) * rng.randint(1, rank) for _ in range(rng.randint(0, max_len))]
    return FreeWord.identity(rank) * FreeWord(tuple(raw), rank)


def fox_suite(samples: int = 1000, seed: int = 7, rank: int = 3) -> dict:
    rng = random.Random(seed)
    matches = 0
    mismatches = []
    for _ in range(samples):
        w, idx, exps = random_power_word(rng, rank)
        prod = 1
        for e in exps:
            prod *= e
        c = fox_coefficient(w, idx)
        if c == prod:
            matches += 1
        else:
            mismatches.append({"word": str(w), "coefficient": c, "product": prod})
    return {
        "oracle": "fox",
        "claim": "Magnus coefficient of X_{i1}..X_{in} in x_{i1}^{a1}..x_{in}^{an} equals a1*...*an",
        "samples": samples,
        "seed": seed,
        "matches": matches,
        "mismatches": mismatches[:10],
        "verdict": "PASS" if matches == samples else "FAIL",
    }


MAGNUS_GRID = [(m, d) for m in (0, 2, 3, 5) for d in (2, 3, 5)]


def magnus_suite(samples: int = 200, seed: int = 7, rank: int = 3) -> dict:
    """Multiplicativity and inverse cancellation on random word pairs."""
    rng = random.Random(seed)
    failures = []
    for _ in range(samples):
        u, v = random_word(rng, rank), random_word(rng, rank)
        for m, d in MAGNUS_GRID:
            if magnus(u * v, m, d) != magnus(u, m, d) * magnus(v, m, d):
                failures.append(("mul", str(u), str(v), m, d))
            if not (magnus(u.inverse(), m, d) * magnus(u, m, d)).is_one():
                failures.append(("inv", str(u), m, d))
    return {
        "oracle": "magnus",
        "samples": samples,
        "seed": seed,
        "grid": MAGNUS_GRID,
        "failures": failures[:10],
        "verdict": "PASS" if not failures else "FAIL",
    }
