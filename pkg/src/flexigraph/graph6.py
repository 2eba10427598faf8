"""graph6 encoding of simple undirected graphs."""

from __future__ import annotations

from .graphs import LabeledGraph


def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def to_graph6(g: LabeledGraph, header: bool = False) -> bytes:
    """Upper triangle read column by column (x(0,1), x(0,2), x(1,2), ...),
    packed six bits per byte with offset 63."""
    nbits = g.n * (g.n - 1) // 2
    vals = bytearray((nbits + 5) // 6)
    for i, j in g.edges:  # i < j
        k = j * (j - 1) // 2 + i
        vals[k // 6] |= 1 << (5 - k % 6)
    body = bytes(v + 63 for v in vals)
    return (b">>graph6<<" if header else b"") + _encode_n(g.n) + body


def from_graph6(data: bytes | str) -> LabeledGraph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif data[1] != 126:
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
    else:
        n = 0
        for k in range(2, 8):
            n = (n << 6) | (data[k] - 63)
        pos = 8
    bits = []
    for byte in data[pos:]:
        v = byte - 63
        if not 0 <= v < 64:
            raise ValueError("invalid graph6 byte")
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    need = n * (n - 1) // 2
    if len(bits) < need:
        raise ValueError("truncated graph6 data")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return LabeledGraph(n, edges)
