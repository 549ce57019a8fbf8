"""Simple undirected graphs, graph6 I/O and the structural queries used by bounds.

A :class:`Graph` stores one neighbour bitmask per vertex, so degree and
connectivity queries stay cheap for the small graphs this package sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO

GRAPH6_HEADER = ">>graph6<<"
MAX_GRAPH6_N = 62


class GraphError(ValueError):
    """Invalid graph construction."""


class Graph6Error(ValueError):
    """Malformed or unsupported graph6 data."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``rows[v]`` is the bitmask of neighbours of ``v``.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.rows) != self.n:
            raise GraphError("row count must equal n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in _bits(row):
                if not self.rows[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.rows)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, row in enumerate(self.rows):
            for v in _bits(row >> (u + 1)):
                yield u, u + 1 + v

    def relabel(self, perm: Iterable[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        perm = list(perm)
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabelling must be a permutation of 0..n-1")
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def disjoint_union(self, other: Graph) -> Graph:
        shift = self.n
        return Graph(self.n + other.n, self.rows + tuple(r << shift for r in other.rows))

    def __str__(self) -> str:
        return write_graph6(self) if self.n <= MAX_GRAPH6_N else f"Graph(n={self.n}, m={self.m})"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# graph6


def parse_graph6(line: str) -> Graph:
    """Decode one headerless graph6 string (``n <= 62``)."""
    data = line.strip()
    base = 0
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
        base = len(GRAPH6_HEADER)
    if not data:
        raise Graph6Error("empty graph6 string", base)
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside graph6 range 63..126", base + i)
    n = ord(data[0]) - 63
    if n > MAX_GRAPH6_N:
        raise Graph6Error("multi-byte graph6 sizes are not supported", base)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) < 1 + nbytes:
        raise Graph6Error(f"truncated: expected {1 + nbytes} bytes, got {len(data)}", base + len(data))
    if len(data) > 1 + nbytes:
        raise Graph6Error("trailing data after adjacency bytes", base + 1 + nbytes)

    value = 0
    for ch in data[1:]:
        value = value << 6 | (ord(ch) - 63)
    pad = 6 * nbytes - nbits
    if value & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", base + len(data) - 1)
    value >>= pad

    rows = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if value >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k -= 1
    return Graph(n, tuple(rows))


def write_graph6(g: Graph) -> str:
    """Encode ``g`` as a headerless graph6 string."""
    if g.n > MAX_GRAPH6_N:
        raise Graph6Error(f"graph6 writer supports n <= {MAX_GRAPH6_N}, got n={g.n}")
    n = g.n
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    value = 0
    for j in range(1, n):
        for i in range(j):
            value = value << 1 | (g.rows[i] >> j & 1)
    value <<= 6 * nbytes - nbits
    chars = [chr(n + 63)]
    for shift in range(6 * (nbytes - 1), -1, -6):
        chars.append(chr((value >> shift & 0x3F) + 63))
    return "".join(chars)


def read_graph6_lines(stream: TextIO | Iterable[str]) -> Iterator[tuple[int, str]]:
    """Yield ``(line_number, text)`` for every non-blank line, skipping a header line."""
    for lineno, raw in enumerate(stream, start=1):
        text = raw.strip()
        if text.startswith(GRAPH6_HEADER):
            text = text[len(GRAPH6_HEADER):]
        if not text:
            continue
        yield lineno, text


# structural queries


@dataclass(frozen=True)
class DegreeSummary:
    degrees: tuple[int, ...]
    delta: int
    Delta: int


def degree_summary(g: Graph) -> DegreeSummary:
    degs = g.degrees()
    if not degs:
        return DegreeSummary(degs, 0, 0)
    return DegreeSummary(degs, min(degs), max(degs))


def components(g: Graph) -> list[int]:
    """Vertex bitmasks of the connected components, ordered by lowest vertex."""
    seen = 0
    comps = []
    for start in range(g.n):
        if seen >> start & 1:
            continue
        comp = frontier = 1 << start
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.rows[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    """True for exactly one component; the null graph counts as connected."""
    return g.n == 0 or len(components(g)) == 1


EMPTY = "empty"
REGULAR = "regular"
ALL_COMPONENTS_REGULAR = "all-components-regular"
MATCHING = "matching"
OTHER = "other"


def component_degree_profile(g: Graph) -> str:
    """Strongest of empty / matching / regular / all-components-regular / other."""
    if g.m == 0:
        return EMPTY
    ds = degree_summary(g)
    if ds.Delta <= 1:
        return MATCHING
    if ds.delta == ds.Delta:
        return REGULAR
    degs = ds.degrees
    if all(degs[u] == degs[v] for u, v in g.edges()):
        return ALL_COMPONENTS_REGULAR
    return OTHER
