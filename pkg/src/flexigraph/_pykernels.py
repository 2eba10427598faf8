"""Pure-Python kernels. Same signatures and results as the compiled ``_ckernels``.

Coset tables use columns 2g (generator g) and 2g+1 (its inverse).
Graphs are CSR pairs ``(indptr, indices)`` of a simple undirected graph.
"""

from __future__ import annotations

from typing import Sequence


def enumerate_cosets(ngens: int, relators: Sequence[Sequence[int]],
                     subgens: Sequence[Sequence[int]], max_cosets: int):
    """HLT enumeration with lookahead. Returns ``(complete, rows)``."""
    ncols = 2 * ngens
    table: list[list[int]] = [[-1] * ncols]
    parent = [0]
    queue: list[int] = []

    def rep(c: int) -> int:
        r = c
        while parent[r] != r:
            r = parent[r]
        while parent[c] != r:
            parent[c], c = r, parent[c]
        return r

    def merge(a: int, b: int) -> None:
        a, b = rep(a), rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        parent[b] = a
        queue.append(b)

    def coincidence(a: int, b: int) -> None:
        queue.clear()
        merge(a, b)
        k = 0
        while k < len(queue):
            g = queue[k]
            k += 1
            row = table[g]
            for x in range(ncols):
                d = row[x]
                if d < 0:
                    continue
                ix = x ^ 1
                table[d][ix] = -1
                m, n = rep(g), rep(d)
                if table[m][x] >= 0:
                    merge(n, table[m][x])
                elif table[n][ix] >= 0:
                    merge(m, table[n][ix])
                else:
                    table[m][x] = n
                    table[n][ix] = m

    def define(c: int, x: int) -> bool:
        if len(table) >= max_cosets:
            return False
        n = len(table)
        table.append([-1] * ncols)
        parent.append(n)
        table[c][x] = n
        table[n][x ^ 1] = c
        return True

    def scan(a: int, w: Sequence[int], fill: bool) -> bool:
        r = len(w)
        f, i = a, 0
        b, j = a, r - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != a:
                    coincidence(f, a)
                return True
            while j >= i and table[b][w[j] ^ 1] >= 0:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return True
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return True
            if not fill:
                return True
            if not define(f, w[i]):
                return False

    def lookahead() -> None:
        c = 0
        while c < len(table):
            if parent[c] == c:
                for w in relators:
                    scan(c, w, False)
                    if parent[c] != c:
                        break
            c += 1

    def compact(cur: int) -> int:
        """Drop dead cosets, renumbering in order; returns the new index of
        the first live coset >= ``cur``."""
        live = [c for c in range(len(table)) if parent[c] == c]
        new = {c: k for k, c in enumerate(live)}
        rows = [[new[rep(d)] if d >= 0 else -1 for d in table[c]] for c in live]
        table[:] = rows
        parent[:] = list(range(len(rows)))
        return sum(1 for c in live if c < cur)

    def make_room(cur: int) -> int:
        lookahead()
        cur = compact(cur)
        return cur if len(table) < max_cosets else -1

    for w in subgens:
        while not scan(0, w, True):
            if make_room(0) < 0:
                return False, []
    c = 0
    while c < len(table):
        if parent[c] == c:
            k = 0
            while k < len(relators):
                if not scan(c, relators[k], True):
                    c = make_room(c)
                    if c < 0:
                        return False, []
                    k = 0
                    if c >= len(table):
                        break
                    continue
                if parent[c] != c:
                    break
                k += 1
        c += 1
    compact(0)
    return True, table


def girth(indptr: Sequence[int], indices: Sequence[int]) -> int:
    """Shortest cycle length, or -1 for a forest."""
    n = len(indptr) - 1
    best = n + 1
    dist = [-1] * n
    par = [-1] * n
    for s in range(n):
        seen = [s]
        dist[s] = 0
        frontier = [s]
        d = 0
        while frontier and 2 * d + 1 < best:
            nxt = []
            for u in frontier:
                for k in range(indptr[u], indptr[u + 1]):
                    w = indices[k]
                    if dist[w] < 0:
                        dist[w] = d + 1
                        par[w] = u
                        seen.append(w)
                        nxt.append(w)
                    elif w != par[u]:
                        cand = dist[u] + dist[w] + 1
                        if cand < best:
                            best = cand
            frontier = nxt
            d += 1
        for v in seen:
            dist[v] = -1
            par[v] = -1
    return best if best <= n else -1


def girth_cycle_counts(indptr: Sequence[int], indices: Sequence[int],
                       edges: Sequence[Sequence[int]], g: int) -> list[int]:
    """For each edge (u, v): the number of g-cycles through it, counted as
    simple v->u paths of length g-1."""
    n = len(indptr) - 1
    on_path = [False] * n
    out = []
    for u, v in edges:
        count = 0
        on_path[v] = True
        # stack of (vertex, next neighbour offset, depth)
        stack = [[v, indptr[v], 0]]
        while stack:
            top = stack[-1]
            x, k, depth = top
            if k == indptr[x + 1]:
                stack.pop()
                on_path[x] = False
                continue
            top[1] = k + 1
            y = indices[k]
            if depth + 1 == g - 1:
                if y == u:
                    count += 1
                continue
            if y == u or on_path[y]:
                continue
            on_path[y] = True
            stack.append([y, indptr[y], depth + 1])
        out.append(count)
    return out
