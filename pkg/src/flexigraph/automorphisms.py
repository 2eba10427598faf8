"""Full automorphism groups of small graphs by individualization-refinement.

The group order is the product of basic orbit lengths along a base chosen
from the first non-singleton cell; an orbit point y is accepted only after
an explicit automorphism mapping the base prefix and b -> y has been found
and checked against the edge set.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .errors import TooLarge

if TYPE_CHECKING:
    from .graphs import Edge, LabeledGraph


def _refine_pair(adj: Sequence[Sequence[int]], left: list[int], right: list[int]):
    """Colour refinement run in lockstep on two colourings of the same graph.
    Returns the stable pair, or None when the colour statistics diverge."""
    ncol = len(set(left))
    while True:
        sl = [(left[v], tuple(sorted(left[w] for w in adj[v]))) for v in range(len(adj))]
        sr = [(right[v], tuple(sorted(right[w] for w in adj[v]))) for v in range(len(adj))]
        if Counter(sl) != Counter(sr):
            return None
        rank = {s: k for k, s in enumerate(sorted(set(sl)))}
        left = [rank[s] for s in sl]
        right = [rank[s] for s in sr]
        if len(rank) == ncol:
            return left, right
        ncol = len(rank)


def _individualize(n: int, fixed: Sequence[int]) -> list[int]:
    col = [0] * n
    for k, v in enumerate(fixed):
        col[v] = k + 1
    return col


def _is_automorphism(edges: set, perm: Sequence[int]) -> bool:
    for u, v in edges:
        a, b = perm[u], perm[v]
        if (a, b) not in edges and (b, a) not in edges:
            return False
    return True


def _search(adj, edges, left: list[int], right: list[int]) -> list[int] | None:
    pair = _refine_pair(adj, left, right)
    if pair is None:
        return None
    left, right = pair
    n = len(adj)
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(left[v], []).append(v)
    target = next((c for c in sorted(cells) if len(cells[c]) > 1), None)
    if target is None:
        where = {c: v for v, c in enumerate(right)}
        perm = [where[left[v]] for v in range(n)]
        return perm if _is_automorphism(edges, perm) else None
    x = cells[target][0]
    new = max(left) + 1
    for y in (v for v in range(n) if right[v] == target):
        l2, r2 = list(left), list(right)
        l2[x] = new
        r2[y] = new
        found = _search(adj, edges, l2, r2)
        if found is not None:
            return found
    return None


def find_automorphism(g: "LabeledGraph", src: Sequence[int], dst: Sequence[int]) -> list[int] | None:
    """Some automorphism mapping src[i] -> dst[i], or None."""
    adj = g.adjacency()
    return _search(adj, set(g.edges), _individualize(g.n, src), _individualize(g.n, dst))


@dataclass
class AutResult:
    order: int
    generators: list[list[int]]
    vertex_orbits: list[list[int]]
    edge_orbits: list[list["Edge"]]
    base: list[int]


def small_aut(g: "LabeledGraph", max_n: int = 2000) -> AutResult:
    from .graphs import orbits_from_perms

    if g.n > max_n:
        raise TooLarge(f"{g.n} vertices exceeds max_n={max_n}")
    adj = g.adjacency()
    edges = set(g.edges)
    base: list[int] = []
    gens: list[list[int]] = []
    order = 1
    while True:
        col = _individualize(g.n, base)
        col, _ = _refine_pair(adj, col, list(col))
        cells: dict[int, list[int]] = {}
        for v in range(g.n):
            cells.setdefault(col[v], []).append(v)
        target = next((c for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            break
        b = cells[target][0]
        level: list[list[int]] = []
        orbit = {b}
        for y in cells[target]:
            if y in orbit:
                continue
            perm = _search(adj, edges, _individualize(g.n, base + [b]), _individualize(g.n, base + [y]))
            if perm is None:
                continue
            level.append(perm)
            # close the orbit of b under this level's generators (all fix the base)
            frontier = list(orbit)
            while frontier:
                nxt = []
                for v in frontier:
                    for p in level:
                        if p[v] not in orbit:
                            orbit.add(p[v])
                            nxt.append(p[v])
                frontier = nxt
        order *= len(orbit)
        gens.extend(level)
        base.append(b)
    if gens:
        vo, eo = orbits_from_perms(g, gens)
    else:
        vo = [[v] for v in range(g.n)]
        eo = [[e] for e in g.edges]
    return AutResult(order, gens, vo, eo, base)
