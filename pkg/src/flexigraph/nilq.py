"""Finite quotients P = F3 / F3^(2l) gamma_l(F3) for l in {2, 3}, and the
concrete model of G/M where M is the G-normal closure of x1^l and N.

P elements are tuples ``(a1, a2, a3, c21, c31, c32)`` standing for
``x1^a1 x2^a2 x3^a3 [x2,x1]^c21 [x3,x1]^c31 [x3,x2]^c32`` with
``[u, v] = u^-1 v^-1 u v``. The a-part lives mod 2l, the c-part mod 3 for
l = 3 and is identically 0 for l = 2 (P abelian).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import amalgam
from .amalgam import GWord, ImageElement
from .errors import NotBijective, ResourceCapExceeded, UnsupportedEll
from .words import FreeWord, enumerate_ball, evaluate

PElement = tuple[int, int, int, int, int, int]
PAIRS = ((1, 0), (2, 0), (2, 1))  # zero-based (j, i), j > i


class PGroup:
    """Class <= 2 collection arithmetic for F3 / F3^(2l) gamma_l(F3)."""

    def __init__(self, ell: int):
        if ell not in (2, 3):
            raise UnsupportedEll(f"desk-scale bound: ell ∈ {{2,3}} (got {ell})")
        self.ell = ell
        self.n = 2 * ell
        self.cm = 3 if ell == 3 else 1
        self.identity: PElement = (0,) * 6
        self.gens: list[PElement] = [self.make((1, 0, 0)), self.make((0, 1, 0)), self.make((0, 0, 1))]

    def make(self, a: Sequence[int], c: Sequence[int] = (0, 0, 0)) -> PElement:
        n, cm = self.n, self.cm
        return (a[0] % n, a[1] % n, a[2] % n, c[0] % cm, c[1] % cm, c[2] % cm)  # type: ignore[return-value]

    @property
    def order(self) -> int:
        return self.n**3 * self.cm**3

    def mul(self, x: PElement, y: PElement) -> PElement:
        n, cm = self.n, self.cm
        return (
            (x[0] + y[0]) % n, (x[1] + y[1]) % n, (x[2] + y[2]) % n,
            (x[3] + y[3] + x[1] * y[0]) % cm,
            (x[4] + y[4] + x[2] * y[0]) % cm,
            (x[5] + y[5] + x[2] * y[1]) % cm,
        )

    def inv(self, x: PElement) -> PElement:
        n, cm = self.n, self.cm
        return (
            -x[0] % n, -x[1] % n, -x[2] % n,
            (-x[3] + x[1] * x[0]) % cm,
            (-x[4] + x[2] * x[0]) % cm,
            (-x[5] + x[2] * x[1]) % cm,
        )

    def power(self, x: PElement, k: int) -> PElement:
        base = x if k >= 0 else self.inv(x)
        out = self.identity
        for _ in range(abs(k)):
            out = self.mul(out, base)
        return out

    def comm(self, x: PElement, y: PElement) -> PElement:
        return self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))

    def conj(self, x: PElement, g: PElement) -> PElement:
        """x^g = g^-1 x g."""
        return self.mul(self.mul(self.inv(g), x), g)

    def evaluate(self, w: FreeWord, images: Sequence[PElement] | None = None) -> PElement:
        images = images or self.gens
        invs = [self.inv(g) for g in images]
        out = self.identity
        for g in w.letters:
            out = self.mul(out, images[g - 1] if g > 0 else invs[-g - 1])
        return out

    def index(self, x: PElement) -> int:
        n, cm = self.n, self.cm
        return ((((x[0] * n + x[1]) * n + x[2]) * cm + x[3]) * cm + x[4]) * cm + x[5]

    def elements(self) -> list[PElement]:
        n, cm = self.n, self.cm
        return [(a0, a1, a2, c0, c1, c2) for a0, a1, a2, c0, c1, c2 in
                itertools.product(range(n), range(n), range(n), range(cm), range(cm), range(cm))]

    def hom_from_images(self, images: Sequence[PElement]) -> dict[PElement, PElement]:
        """Extend generator images to a map on all of P via the collected form."""
        g = images
        comms = [self.comm(g[j], g[i]) for j, i in PAIRS]
        out = {}
        for x in self.elements():
            y = self.identity
            for k in range(3):
                y = self.mul(y, self.power(g[k], x[k]))
            for k in range(3):
                y = self.mul(y, self.power(comms[k], x[3 + k]))
            out[x] = y
        return out


def build_P(ell: int) -> PGroup:
    return PGroup(ell)


@dataclass
class AutoMap:
    images: tuple[PElement, PElement, PElement]
    table: dict[PElement, PElement]

    def __call__(self, x: PElement) -> PElement:
        return self.table[x]


def induce_automorphism(P: PGroup, images: Sequence[FreeWord]) -> AutoMap:
    """The automorphism of P induced by x_i -> images[i-1] (kernel words)."""
    gen_images = tuple(P.evaluate(w) for w in images)
    table = P.hom_from_images(gen_images)
    if len(set(table.values())) != P.order:
        raise NotBijective("induced map on P is not a bijection")
    return AutoMap(gen_images, table)  # type: ignore[arg-type]


def subgroup_closure(P: PGroup, gens: Iterable[PElement]) -> set[PElement]:
    gens = list(gens)
    sub = {P.identity}
    frontier = [P.identity]
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                y = P.mul(s, g)
                if y not in sub:
                    sub.add(y)
                    nxt.append(y)
        frontier = nxt
    return sub


def invariant_closure(P: PGroup, seeds: Iterable[PElement], autos: Sequence[AutoMap]) -> set[PElement]:
    """Smallest subgroup containing ``seeds`` that is normal in P and
    invariant under every map in ``autos``."""
    gens: list[PElement] = []
    sub = {P.identity}
    pending = list(seeds)
    while pending:
        g = pending.pop(0)
        if g in sub:
            continue
        gens.append(g)
        sub = subgroup_closure(P, gens)
        for h in gens:
            images = [P.conj(h, x) for x in P.gens] + [alpha(h) for alpha in autos]
            pending.extend(y for y in images if y not in sub)
    return sub


MachineElement = tuple[int, PElement]  # (transversal index, canonical P representative)


@dataclass
class QuotientMachine:
    """G/M as pairs (t, q): the element k * T_t with k in F3 taken mod M."""

    ell: int
    P: PGroup
    mbar: set[PElement]
    reps: list[ImageElement]
    canon: dict[PElement, PElement]
    sigma: list[dict[PElement, PElement]]
    cocycle: list[list[PElement]]
    letter_images: dict[str, MachineElement]
    tmul: list[list[int]] = field(repr=False, default_factory=list)

    @property
    def q_order(self) -> int:
        return self.P.order // len(self.mbar)

    @property
    def order(self) -> int:
        return 16 * self.q_order

    @property
    def identity(self) -> MachineElement:
        return (self.reps.index(amalgam.IMAGE_IDENTITY), self.P.identity)

    def mul(self, x: MachineElement, y: MachineElement) -> MachineElement:
        t, q = x
        u, r = y
        P = self.P
        k = P.mul(P.mul(q, self.sigma[t][r]), self.cocycle[t][u])
        return (self.tmul[t][u], self.canon[k])

    def image(self, w: GWord) -> MachineElement:
        out = self.identity
        for s in amalgam._expand(w):
            out = self.mul(out, self.letter_images[s])
        return out

    def image_nf(self, g: amalgam.AmalgamNF) -> MachineElement:
        return self.image(g.to_gword())

    def is_in_M(self, w: GWord) -> bool:
        return self.image(w) == self.identity

    def elements(self) -> list[MachineElement]:
        qs = sorted(set(self.canon.values()), key=self.P.index)
        return [(t, q) for t in range(16) for q in qs]

    def summary(self) -> dict:
        return {
            "ell": self.ell,
            "P_order": self.P.order,
            "Mbar_order": len(self.mbar),
            "Q_order": self.q_order,
            "machine_order": self.order,
        }

    def summary_json(self) -> str:
        return json.dumps(self.summary(), sort_keys=True)


def p_automorphisms(P: PGroup) -> dict[str, AutoMap]:
    return {s: induce_automorphism(P, amalgam.conj_action(g))
            for s, g in (("a", amalgam.A), ("b", amalgam.B), ("z", amalgam.Z))}


def build_machine(ell: int) -> QuotientMachine:
    P = build_P(ell)
    autos = p_automorphisms(P)
    seed = P.evaluate(FreeWord.gen(1, 3, ell))
    mbar = invariant_closure(P, [seed], list(autos.values()))

    canon: dict[PElement, PElement] = {}
    for x in sorted(P.elements(), key=P.index):
        if x not in canon:
            for m in mbar:
                canon[P.mul(x, m)] = x

    trans = amalgam.transversal()
    reps = sorted(trans, key=amalgam.image_index)
    pos = {t: k for k, t in enumerate(reps)}

    sigma = []
    for t in reps:
        T = trans[t]
        images = [amalgam.schreier_rewrite(T * amalgam.X_WORDS[i] * T.inverse()) for i in (1, 2, 3)]
        sigma.append(induce_automorphism(P, images).table)

    cocycle = []
    tmul = []
    for t in reps:
        row, trow = [], []
        for u in reps:
            tu = amalgam.image_mul(t, u)
            k = amalgam.schreier_rewrite(trans[t] * trans[u] * trans[tu].inverse())
            row.append(P.evaluate(k))
            trow.append(pos[tu])
        cocycle.append(row)
        tmul.append(trow)

    letter_images = {}
    for s, word in amalgam._LETTER_WORD.items():
        t = amalgam.phi(word)
        k = amalgam.schreier_rewrite(word * trans[t].inverse())
        letter_images[s] = (pos[t], canon[P.evaluate(k)])

    return QuotientMachine(ell, P, mbar, reps, canon, sigma, cocycle, letter_images, tmul)


def za2_power(n: int) -> GWord:
    return amalgam.gword("z*a^2") ** n


def verify_ball_intersection(machine: QuotientMachine, radius: int,
                             max_count: int | None = None) -> list[amalgam.AmalgamNF]:
    """Exact list of g in B_*(radius) with image 1 in G/M, in ball order."""
    out = []
    for g in amalgam.star_ball(radius, max_count):
        if machine.image_nf(g) == machine.identity:
            out.append(g)
    return out


def expected_ball_intersection(ell: int, radius: int) -> set[amalgam.AmalgamNF] | None:
    if radius <= 4 * ell - 1:
        return {amalgam.IDENTITY}
    if radius <= 4 * ell + 1:
        return {amalgam.IDENTITY, amalgam.normal_form(za2_power(2 * ell)),
                amalgam.normal_form(za2_power(-2 * ell))}
    return None


def ball_report(ell: int, radius: int, max_count: int | None = None,
                machine: QuotientMachine | None = None) -> dict:
    machine = machine or build_machine(ell)
    found = verify_ball_intersection(machine, radius, max_count)
    expected = expected_ball_intersection(ell, radius)
    if expected is None:
        verdict = "INFO"
    else:
        verdict = "PASS" if set(found) == expected and len(found) == len(expected) else "FAIL"
    return {
        "oracle": "balls",
        "claim": f"M meets B_*({4 * ell - 1}) trivially and B_*({4 * ell + 1}) in "
                 f"{{1, (za^2)^(+-{2 * ell})}}",
        "ell": ell,
        "radius": radius,
        "ball_checked": amalgam.star_ball_size(radius),
        "intersection": [g.to_text() for g in found],
        "machine": machine.summary(),
        "verdict": verdict,
    }


def check_evaluation_property(machine: QuotientMachine, radius: int | None = None) -> list[str]:
    """Words w in B_S(radius) lying in M whose (0,1,1)-evaluation is not
    divisible by 2l; an empty list means the property holds."""
    ell = machine.ell
    bad = []
    for w in enumerate_ball(3, radius if radius is not None else ell):
        if machine.is_in_M(amalgam.expand_x(w)) and evaluate(w, (0, 1, 1)) % (2 * ell):
            bad.append(str(w))
    return bad


def random_associativity_check(P: PGroup, samples: int, seed: int = 7) -> bool:
    rng = random.Random(seed)
    elems = P.elements()
    for _ in range(samples):
        x, y, z = rng.choice(elems), rng.choice(elems), rng.choice(elems)
        if P.mul(P.mul(x, y), z) != P.mul(x, P.mul(y, z)):
            return False
    return True
