"""graph6 encoding (one graph per line, printable ASCII 63..126)."""

from __future__ import annotations

from typing import Iterable

from .errors import MalformedHeader, NonCanonicalPadding, TrailingGarbage
from .graph import Graph

_HEADER = b">>graph6<<"


def _size_bytes(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [(n >> s & 63) + 63 for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [(n >> s & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError("graph too large for graph6")


def encode_graph6(g: Graph) -> bytes:
    """Bytes of ``g`` in graph6, without header or newline."""
    rows = g.rows
    out = bytearray(_size_bytes(g.n))
    acc = nbits = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = acc << 1 | (rows[i] >> j & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def decode_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    data = data.rstrip(b"\r\n")
    if data.startswith(_HEADER):
        data = data[len(_HEADER):]
    if not data:
        raise MalformedHeader("empty graph6 string")
    if any(c < 63 or c > 126 for c in data):
        raise MalformedHeader("graph6 characters must lie in 63..126")
    vals = [c - 63 for c in data]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 4 and vals[1] < 63:
        n, pos = vals[1] << 12 | vals[2] << 6 | vals[3], 4
    elif len(vals) >= 8 and vals[1] == 63:
        n = 0
        for v in vals[2:8]:
            n = n << 6 | v
        pos = 8
    else:
        raise MalformedHeader("truncated graph6 size header")
    if n < 1:
        raise MalformedHeader("graph6 graph must have at least one vertex")
    nbits = n * (n - 1) // 2
    nchars = -(-nbits // 6)
    body = vals[pos:]
    if len(body) < nchars:
        raise MalformedHeader(f"graph6 body truncated: need {nchars} chars, got {len(body)}")
    if len(body) > nchars:
        raise TrailingGarbage(f"{len(body) - nchars} extra characters after graph6 body")
    bits = 0
    for v in body:
        bits = bits << 6 | v
    pad = nchars * 6 - nbits
    if bits & ((1 << pad) - 1):
        raise NonCanonicalPadding("graph6 padding bits must be zero")
    bits >>= pad
    rows = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if bits >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k -= 1
    return Graph(n, tuple(rows))


def write_graph6_lines(graphs: Iterable[Graph]) -> bytes:
    return b"".join(encode_graph6(g) + b"\n" for g in graphs)


def read_graph6_lines(data: bytes | str) -> list[Graph]:
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    return [decode_graph6(line) for line in data.splitlines() if line.strip()]
