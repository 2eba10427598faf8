# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; behaviour mirrors ``_pykernels`` exactly."""

import numpy as np


cdef class _Enumerator:
    cdef int ncols, n, cap, maxc
    cdef int[:, ::1] T
    cdef int[::1] P
    cdef int[::1] Q
    cdef int qlen
    cdef object T_arr, P_arr, Q_arr

    def __init__(self, int ngens, int maxc):
        self.ncols = 2 * ngens
        self.maxc = maxc
        self.cap = min(maxc, 1 << 14)
        self.T_arr = np.full((self.cap, self.ncols), -1, dtype=np.int32)
        self.P_arr = np.arange(self.cap, dtype=np.int32)
        self.Q_arr = np.zeros(self.cap, dtype=np.int32)
        self.T = self.T_arr
        self.P = self.P_arr
        self.Q = self.Q_arr
        self.n = 1

    cdef void grow(self):
        cdef int newcap = min(self.maxc, 2 * self.cap)
        T2 = np.full((newcap, self.ncols), -1, dtype=np.int32)
        T2[:self.cap] = self.T_arr
        P2 = np.arange(newcap, dtype=np.int32)
        P2[:self.cap] = self.P_arr
        self.T_arr, self.P_arr = T2, P2
        self.Q_arr = np.zeros(newcap, dtype=np.int32)
        self.T = self.T_arr
        self.P = self.P_arr
        self.Q = self.Q_arr
        self.cap = newcap

    cdef inline int rep(self, int c):
        cdef int r = c, nxt
        while self.P[r] != r:
            r = self.P[r]
        while self.P[c] != r:
            nxt = self.P[c]
            self.P[c] = r
            c = nxt
        return r

    cdef inline void merge(self, int a, int b):
        cdef int t
        a = self.rep(a)
        b = self.rep(b)
        if a == b:
            return
        if a > b:
            t = a; a = b; b = t
        self.P[b] = a
        self.Q[self.qlen] = b
        self.qlen += 1

    cdef void coincidence(self, int a, int b):
        cdef int k = 0, g, x, d, ix, m, nn
        self.qlen = 0
        self.merge(a, b)
        while k < self.qlen:
            g = self.Q[k]
            k += 1
            for x in range(self.ncols):
                d = self.T[g, x]
                if d < 0:
                    continue
                ix = x ^ 1
                self.T[d, ix] = -1
                m = self.rep(g)
                nn = self.rep(d)
                if self.T[m, x] >= 0:
                    self.merge(nn, self.T[m, x])
                elif self.T[nn, ix] >= 0:
                    self.merge(m, self.T[nn, ix])
                else:
                    self.T[m, x] = nn
                    self.T[nn, ix] = m

    cdef int define(self, int c, int x):
        cdef int m
        if self.n >= self.maxc:
            return 0
        if self.n >= self.cap:
            self.grow()
        m = self.n
        self.n += 1
        self.T[c, x] = m
        self.T[m, x ^ 1] = c
        return 1

    cdef int scan(self, int a, int[::1] w, bint fill):
        cdef int r = w.shape[0]
        cdef int f = a, i = 0, b = a, j = r - 1
        while True:
            while i <= j and self.T[f, w[i]] >= 0:
                f = self.T[f, w[i]]
                i += 1
            if i > j:
                if f != a:
                    self.coincidence(f, a)
                return 1
            while j >= i and self.T[b, w[j] ^ 1] >= 0:
                b = self.T[b, w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return 1
            if i == j:
                self.T[f, w[i]] = b
                self.T[b, w[i] ^ 1] = f
                return 1
            if not fill:
                return 1
            if not self.define(f, w[i]):
                return 0

    cdef void lookahead(self, list rels):
        cdef int c = 0
        cdef int[::1] w
        while c < self.n:
            if self.P[c] == c:
                for w in rels:
                    self.scan(c, w, False)
                    if self.P[c] != c:
                        break
            c += 1

    cdef int compact(self, int cur):
        cdef int c, k = 0, x, d, newcur = 0
        new_arr = np.full(self.n, -1, dtype=np.int32)
        cdef int[::1] new = new_arr
        for c in range(self.n):
            if self.P[c] == c:
                new[c] = k
                k += 1
                if c < cur:
                    newcur += 1
        for c in range(self.n):
            if self.P[c] == c:
                for x in range(self.ncols):
                    d = self.T[c, x]
                    self.T[new[c], x] = new[self.rep(d)] if d >= 0 else -1
        for c in range(k, self.n):
            for x in range(self.ncols):
                self.T[c, x] = -1
        for c in range(self.n):
            self.P[c] = c
        self.n = k
        return newcur

    cdef int make_room(self, list rels, int cur):
        self.lookahead(rels)
        cur = self.compact(cur)
        return cur if self.n < self.maxc else -1

    def run(self, list rels, list subs):
        cdef int c, k, nrels = len(rels)
        cdef int[::1] w
        for w in subs:
            while not self.scan(0, w, True):
                if self.make_room(rels, 0) < 0:
                    return False, None
        c = 0
        while c < self.n:
            if self.P[c] == c:
                k = 0
                while k < nrels:
                    if not self.scan(c, rels[k], True):
                        c = self.make_room(rels, c)
                        if c < 0:
                            return False, None
                        k = 0
                        if c >= self.n:
                            break
                        continue
                    if self.P[c] != c:
                        break
                    k += 1
            c += 1
        self.compact(0)
        return True, np.array(self.T_arr[:self.n])


def enumerate_cosets(int ngens, relators, subgens, int max_cosets):
    """HLT enumeration with lookahead. Returns ``(complete, rows)``."""
    rels = [np.ascontiguousarray(r, dtype=np.int32) for r in relators]
    subs = [np.ascontiguousarray(s, dtype=np.int32) for s in subgens]
    e = _Enumerator(ngens, max_cosets)
    complete, rows = e.run(rels, subs)
    if not complete:
        return False, []
    return True, rows.tolist()


def girth(indptr_in, indices_in):
    """Shortest cycle length, or -1 for a forest."""
    cdef int[::1] indptr = np.ascontiguousarray(indptr_in, dtype=np.int32)
    cdef int[::1] indices = np.ascontiguousarray(indices_in, dtype=np.int32)
    cdef int n = indptr.shape[0] - 1
    cdef int best = n + 1, s, d, u, w, k, cand, head, tail, level_end, nseen
    dist_a = np.full(max(n, 1), -1, dtype=np.int32)
    par_a = np.full(max(n, 1), -1, dtype=np.int32)
    queue_a = np.zeros(max(n, 1), dtype=np.int32)
    cdef int[::1] dist = dist_a
    cdef int[::1] par = par_a
    cdef int[::1] queue = queue_a
    for s in range(n):
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        d = 0
        while head < tail and 2 * d + 1 < best:
            level_end = tail
            while head < level_end:
                u = queue[head]
                head += 1
                for k in range(indptr[u], indptr[u + 1]):
                    w = indices[k]
                    if dist[w] < 0:
                        dist[w] = d + 1
                        par[w] = u
                        queue[tail] = w
                        tail += 1
                    elif w != par[u]:
                        cand = dist[u] + dist[w] + 1
                        if cand < best:
                            best = cand
            d += 1
        for k in range(tail):
            dist[queue[k]] = -1
            par[queue[k]] = -1
    return best if best <= n else -1


def girth_cycle_counts(indptr_in, indices_in, edges, int g):
    """For each edge (u, v): the number of g-cycles through it, counted as
    simple v->u paths of length g-1."""
    cdef int[::1] indptr = np.ascontiguousarray(indptr_in, dtype=np.int32)
    cdef int[::1] indices = np.ascontiguousarray(indices_in, dtype=np.int32)
    cdef int n = indptr.shape[0] - 1
    on_a = np.zeros(max(n, 1), dtype=np.uint8)
    sv_a = np.zeros(max(g, 1), dtype=np.int32)
    sk_a = np.zeros(max(g, 1), dtype=np.int32)
    cdef unsigned char[::1] on_path = on_a
    cdef int[::1] sv = sv_a
    cdef int[::1] sk = sk_a
    cdef int u, v, top, x, k, y, count
    out = []
    for pair in edges:
        u = pair[0]
        v = pair[1]
        count = 0
        on_path[v] = 1
        top = 0
        sv[0] = v
        sk[0] = indptr[v]
        while top >= 0:
            x = sv[top]
            k = sk[top]
            if k == indptr[x + 1]:
                on_path[x] = 0
                top -= 1
                continue
            sk[top] = k + 1
            y = indices[k]
            if top + 1 == g - 1:
                if y == u:
                    count += 1
                continue
            if y == u or on_path[y]:
                continue
            on_path[y] = 1
            top += 1
            sv[top] = y
            sk[top] = indptr[y]
        out.append(count)
    return out
