"""Quotient graph Delta_l, its invariant 2-factor, the cubic split Gamma_l,
girth data, action orbits and the flexibility certificate."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from . import _backend, amalgam
from .automorphisms import small_aut
from .errors import (Acyclic, ActionNotByAutomorphisms, MultiEdge, NotACycleCover,
                     NotAPartition, NotFourValent, TooLarge)
from .nilq import MachineElement, QuotientMachine, build_machine

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass
class LabeledGraph:
    n: int
    edges: list[Edge]
    labels: list | None = None

    def __post_init__(self) -> None:
        es = sorted({_edge(u, v) for u, v in self.edges})
        if len(es) != len(self.edges):
            raise MultiEdge("repeated edge")
        if any(u == v for u, v in es):
            raise MultiEdge("loop")
        self.edges = es

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], labels=None) -> "LabeledGraph":
        return cls(n, [_edge(u, v) for u, v in edges], labels)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for row in adj:
            row.sort()
        return adj

    def csr(self) -> tuple[list[int], list[int]]:
        adj = self.adjacency()
        indptr = [0]
        indices: list[int] = []
        for row in adj:
            indices.extend(row)
            indptr.append(len(indices))
        return indptr, indices

    def degrees(self) -> list[int]:
        return [len(r) for r in self.adjacency()]

    def is_regular(self, k: int) -> bool:
        return all(d == k for d in self.degrees())

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def to_json(self, two_factor: list[list[int]] | None = None) -> dict:
        out: dict = {"n": self.n, "edges": [list(e) for e in self.edges]}
        if self.labels is not None:
            out["labels"] = self.labels
        if two_factor is not None:
            out["two_factor"] = two_factor
        return out


# --- Delta from the machine --------------------------------------------------

@dataclass
class Delta:
    graph: LabeledGraph
    reps: list[MachineElement]            # canonical representative per vertex
    vertex_of: dict[MachineElement, int]  # every machine element -> its vertex


def d4_images(machine: QuotientMachine) -> list[MachineElement]:
    return [machine.image(amalgam.gword(f"a^{r}*b^{s}")) for s in (0, 1) for r in range(4)]


def build_delta(machine: QuotientMachine) -> Delta:
    """Vertices are the orbits of left multiplication by the D4 image; the
    neighbours of [u] are [z a^e u], e = 0..3."""
    d4 = d4_images(machine)
    reps: list[MachineElement] = []
    vertex_of: dict[MachineElement, int] = {}
    for u in machine.elements():
        if u in vertex_of:
            continue
        v = len(reps)
        reps.append(u)
        for d in d4:
            vertex_of[machine.mul(d, u)] = v
    steps = [machine.image(amalgam.gword(f"z*a^{e}")) for e in range(4)]
    edges = set()
    for v, u in enumerate(reps):
        nbrs = [vertex_of[machine.mul(s, u)] for s in steps]
        if len(set(nbrs)) != 4 or v in nbrs:
            raise MultiEdge(f"vertex {v} has neighbours {nbrs}")
        edges.update(_edge(v, w) for w in nbrs)
    labels = [[t, list(q)] for t, q in reps]
    g = LabeledGraph(len(reps), sorted(edges), labels)
    if not g.is_regular(4):
        raise MultiEdge("Delta is not 4-regular")
    return Delta(g, reps, vertex_of)


def _canonical_cycle(cyc: Sequence[int]) -> tuple[int, ...]:
    k = cyc.index(min(cyc))
    rot = list(cyc[k:]) + list(cyc[:k])
    rev = [rot[0]] + rot[1:][::-1]
    return tuple(min(rot, rev))


def cycle_edges(cyc: Sequence[int]) -> frozenset[Edge]:
    return frozenset(_edge(cyc[k], cyc[(k + 1) % len(cyc)]) for k in range(len(cyc)))


def two_factor(machine: QuotientMachine, delta: Delta) -> list[list[int]]:
    """Cycles traced by left multiplication with za^2 from u and from a*u."""
    step = machine.image(amalgam.gword("z*a^2"))
    a = machine.image(amalgam.A)
    found: dict[frozenset[Edge], tuple[int, ...]] = {}
    for u in delta.reps:
        for start in (u, machine.mul(a, u)):
            v0 = delta.vertex_of[start]
            cyc = [v0]
            w = machine.mul(step, start)
            while delta.vertex_of[w] != v0:
                cyc.append(delta.vertex_of[w])
                w = machine.mul(step, w)
                if len(cyc) > delta.graph.n:
                    raise NotAPartition("cycle does not close")
            if len(set(cyc)) != len(cyc) or len(cyc) < 3:
                raise NotAPartition(f"non-simple cycle {cyc}")
            found.setdefault(cycle_edges(cyc), _canonical_cycle(cyc))
    cycles = sorted(found.values())
    check_cycle_cover(delta.graph, cycles, NotAPartition)
    return [list(c) for c in cycles]


def check_cycle_cover(g: LabeledGraph, cycles: Sequence[Sequence[int]], exc=NotACycleCover) -> None:
    edges = set(g.edges)
    used: set[Edge] = set()
    on = [0] * g.n
    for c in cycles:
        if len(set(c)) != len(c) or len(c) < 3:
            raise exc(f"not a simple cycle: {list(c)}")
        ce = cycle_edges(c)
        if not ce <= edges:
            raise exc("cycle uses a non-edge")
        if used & ce:
            raise exc("cycles share an edge")
        used |= ce
        for v in c:
            on[v] += 1
    if used != edges:
        raise exc("cycles do not cover every edge")
    if any(k != 2 for k in on):
        raise exc("some vertex is not on exactly two cycles")


# --- splitting -----------------------------------------------------------------

@dataclass
class Split:
    graph: LabeledGraph
    vertices: list[tuple[int, int]]          # (vertex of Delta, cycle index)
    index: dict[tuple[int, int], int]
    matching_edges: list[Edge]
    cycle_class_edges: list[Edge]


def split(delta: LabeledGraph, cycles: Sequence[Sequence[int]]) -> Split:
    """Replace each vertex alpha by one copy (alpha, c) per cycle c through it."""
    if not delta.is_regular(4):
        raise NotFourValent("input graph is not 4-valent")
    check_cycle_cover(delta, cycles)
    verts = sorted((v, ci) for ci, c in enumerate(cycles) for v in c)
    index = {p: k for k, p in enumerate(verts)}
    at: dict[int, list[int]] = {}
    for v, ci in verts:
        at.setdefault(v, []).append(ci)
    matching = [_edge(index[v, cs[0]], index[v, cs[1]]) for v, cs in sorted(at.items())]
    cyc_edges = []
    for ci, c in enumerate(cycles):
        for k in range(len(c)):
            cyc_edges.append(_edge(index[c[k], ci], index[c[(k + 1) % len(c)], ci]))
    g = LabeledGraph(len(verts), matching + cyc_edges, [list(p) for p in verts])
    return Split(g, verts, index, sorted(matching), sorted(cyc_edges))


# --- girth -------------------------------------------------------------------

def girth(g: LabeledGraph) -> int:
    indptr, indices = g.csr()
    val = _backend.kernels.girth(indptr, indices)
    if val < 0:
        raise Acyclic("graph has no cycle")
    return val


def edge_girth_profile(g: LabeledGraph, gval: int | None = None) -> dict[Edge, int]:
    gval = gval if gval is not None else girth(g)
    indptr, indices = g.csr()
    counts = _backend.kernels.girth_cycle_counts(indptr, indices, g.edges, gval)
    return dict(zip(g.edges, counts))


# --- the machine acting on Delta and Gamma ---------------------------------------

def delta_permutation(machine: QuotientMachine, delta: Delta, h: MachineElement) -> list[int]:
    """[u] -> [u h]."""
    return [delta.vertex_of[machine.mul(u, h)] for u in delta.reps]


def _cycle_lookup(cycles: Sequence[Sequence[int]]) -> dict[frozenset[Edge], int]:
    return {cycle_edges(c): k for k, c in enumerate(cycles)}


def gamma_permutation(sp: Split, cycles: Sequence[Sequence[int]], dperm: Sequence[int],
                      lookup: dict[frozenset[Edge], int] | None = None) -> list[int]:
    lookup = lookup or _cycle_lookup(cycles)
    cmap = []
    for c in cycles:
        key = cycle_edges([dperm[v] for v in c])
        if key not in lookup:
            raise ActionNotByAutomorphisms("cycle image is not a 2-factor cycle")
        cmap.append(lookup[key])
    return [sp.index[dperm[v], cmap[ci]] for v, ci in sp.vertices]


def _check_automorphism(g: LabeledGraph, perm: Sequence[int]) -> None:
    es = set(g.edges)
    for u, v in g.edges:
        if _edge(perm[u], perm[v]) not in es:
            raise ActionNotByAutomorphisms(f"edge {(u, v)} is not preserved")


class _UF:
    def __init__(self, n: int):
        self.p = list(range(n))

    def find(self, x: int) -> int:
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x != y:
            self.p[max(x, y)] = min(x, y)

    def classes(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x in range(len(self.p)):
            out.setdefault(self.find(x), []).append(x)
        return sorted(out.values())


def orbits_from_perms(g: LabeledGraph, perms: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[Edge]]]:
    vuf = _UF(g.n)
    eidx = {e: k for k, e in enumerate(g.edges)}
    euf = _UF(len(g.edges))
    for p in perms:
        for v in range(g.n):
            vuf.union(v, p[v])
        for k, (u, v) in enumerate(g.edges):
            euf.union(k, eidx[_edge(p[u], p[v])])
    return vuf.classes(), [[g.edges[k] for k in cls] for cls in euf.classes()]


@dataclass
class ActionOrbits:
    vertex_orbits: list[list[int]]
    edge_orbits: list[list[Edge]]
    stabilizer_order: int


def action_orbits_delta(machine: QuotientMachine, delta: Delta) -> ActionOrbits:
    gens = [machine.letter_images[s] for s in ("a", "b", "z")]
    perms = [delta_permutation(machine, delta, h) for h in gens]
    for p in perms:
        _check_automorphism(delta.graph, p)
    vo, eo = orbits_from_perms(delta.graph, perms)
    base = delta.vertex_of[machine.identity]
    stab = sum(1 for d in d4_images(machine) if delta_permutation(machine, delta, d)[base] == base)
    return ActionOrbits(vo, eo, stab)


def action_orbits_gamma(machine: QuotientMachine, delta: Delta, cycles: Sequence[Sequence[int]],
                        sp: Split) -> ActionOrbits:
    lookup = _cycle_lookup(cycles)
    gens = [machine.letter_images[s] for s in ("a", "b", "z")]
    perms = [gamma_permutation(sp, cycles, delta_permutation(machine, delta, h), lookup) for h in gens]
    for p in perms:
        _check_automorphism(sp.graph, p)
    vo, eo = orbits_from_perms(sp.graph, perms)
    base = base_gamma_vertex(machine, delta, cycles, sp)
    stab = 0
    for d in d4_images(machine):
        p = gamma_permutation(sp, cycles, delta_permutation(machine, delta, d), lookup)
        if p[base] == base:
            stab += 1
    return ActionOrbits(vo, eo, stab)


def base_gamma_vertex(machine: QuotientMachine, delta: Delta, cycles: Sequence[Sequence[int]],
                      sp: Split) -> int:
    """(base vertex, the cycle through [1] and [za^2])."""
    v0 = delta.vertex_of[machine.identity]
    v1 = delta.vertex_of[machine.image(amalgam.gword("z*a^2"))]
    for ci, c in enumerate(cycles):
        if _edge(v0, v1) in cycle_edges(c):
            return sp.index[v0, ci]
    raise NotAPartition("no cycle through the base edge")


# --- certificate ---------------------------------------------------------------

@dataclass
class FlexCertificate:
    ell: int | None
    n: int
    girth: int
    is_cubic: bool
    is_connected: bool
    vertex_transitive: bool
    cycle_lengths: list[int]
    edge_class_counts: list[int]
    girth_cycles_per_edge: list[list[int]]
    stabilizer_order: int
    full_aut_order: int | None = None
    full_aut_edge_orbits: int | None = None
    delta_n: int | None = None
    delta_girth: int | None = None
    delta_edge_orbits: int | None = None
    delta_stabilizer_order: int | None = None
    machine: dict | None = None
    vertex_bound: int | None = None
    index_G_M: int | None = None
    notes: list[str] = field(default_factory=list)
    verdict: str = "FAIL"

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2)


def separated_classes(profile: dict[Edge, int], classes: Sequence[Sequence[Edge]]) -> tuple[list[list[int]], bool]:
    per_class = [sorted({profile[e] for e in cls}) for cls in classes]
    separated = all(len(p) == 1 for p in per_class) and len({p[0] for p in per_class}) == len(per_class)
    return per_class, separated


@dataclass
class Build:
    machine: QuotientMachine
    delta: Delta
    cycles: list[list[int]]
    split: Split
    certificate: FlexCertificate


def certify_flexible(ell: int, max_n: int = 2000) -> Build:
    """Run the full pipeline for ell in {2, 3} and certify Gamma_ell."""
    machine = build_machine(ell)
    delta = build_delta(machine)
    cycles = two_factor(machine, delta)
    sp = split(delta.graph, cycles)
    gam = sp.graph
    gval = girth(gam)
    dgirth = girth(delta.graph)
    profile = edge_girth_profile(gam, gval)
    dorb = action_orbits_delta(machine, delta)
    orb = action_orbits_gamma(machine, delta, cycles, sp)
    per_class, separated = separated_classes(profile, orb.edge_orbits)
    if len(orb.vertex_orbits) == 1 and len(orb.vertex_orbits[0]) * orb.stabilizer_order != machine.order:
        raise ActionNotByAutomorphisms("orbit-stabilizer count mismatch")
    notes = []
    cert = FlexCertificate(
        ell=ell,
        n=gam.n,
        girth=gval,
        is_cubic=gam.is_regular(3),
        is_connected=gam.is_connected(),
        vertex_transitive=len(orb.vertex_orbits) == 1,
        cycle_lengths=sorted({len(c) for c in cycles}),
        edge_class_counts=[len(c) for c in orb.edge_orbits],
        girth_cycles_per_edge=per_class,
        stabilizer_order=orb.stabilizer_order,
        delta_n=delta.graph.n,
        delta_girth=dgirth,
        delta_edge_orbits=len(dorb.edge_orbits),
        delta_stabilizer_order=dorb.stabilizer_order,
        machine=machine.summary(),
        vertex_bound=16 * machine.P.order,
        index_G_M=machine.order,
        notes=notes,
    )
    two_classes = len(orb.edge_orbits) == 2 and separated
    if gam.n <= max_n:
        aut = small_aut(gam, max_n)
        cert.full_aut_order = aut.order
        cert.full_aut_edge_orbits = len(aut.edge_orbits)
        two_classes = two_classes and len(aut.edge_orbits) == 2
    else:
        notes.append("full automorphism group skipped (n > max_n); two edge orbits follow "
                     "from machine transitivity on each class plus differing girth-cycle counts")
    cert.verdict = "PASS" if (
        gval == 2 * ell and cert.is_cubic and cert.is_connected and cert.vertex_transitive
        and two_classes and cert.stabilizer_order >= 4
        and cert.cycle_lengths == [2 * ell] and gam.n <= 16 * machine.P.order
    ) else "FAIL"
    return Build(machine, delta, cycles, sp, cert)


def certify_graph(g: LabeledGraph, max_n: int = 2000) -> FlexCertificate:
    """Checker-only entry point: decide flexibility of an arbitrary graph from
    its full automorphism group."""
    if g.n > max_n:
        raise TooLarge(f"{g.n} vertices exceeds max_n={max_n}")
    cubic = g.is_regular(3)
    connected = g.is_connected()
    gval = girth(g)
    aut = small_aut(g, max_n)
    profile = edge_girth_profile(g, gval)
    per_class, _ = separated_classes(profile, aut.edge_orbits)
    vt = len(aut.vertex_orbits) == 1
    stab = aut.order // g.n if vt else 0
    cert = FlexCertificate(
        ell=None, n=g.n, girth=gval, is_cubic=cubic, is_connected=connected,
        vertex_transitive=vt, cycle_lengths=[], edge_class_counts=[len(c) for c in aut.edge_orbits],
        girth_cycles_per_edge=per_class, stabilizer_order=stab, full_aut_order=aut.order,
        full_aut_edge_orbits=len(aut.edge_orbits),
    )
    ok = cubic and connected and vt and len(aut.edge_orbits) == 2 and stab >= 4
    cert.verdict = "PASS" if ok else "FAIL"
    return cert
