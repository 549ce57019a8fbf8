"""Graph corpora: named families, non-isomorphic enumeration, seeded random graphs."""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .graph import Graph, GraphError, is_connected, parse_graph6, write_graph6

MAX_ENUM_N = 8
# n = 8 takes minutes in pure Python; callers must ask for it
DEFAULT_ENUM_LIMIT = 7


# families


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int | None = None
    a: int | None = None
    b: int | None = None
    m: int | None = None
    d: int | None = None
    parts: tuple[FamilySpec, ...] = ()


FAMILIES = (
    "complete", "empty", "star", "path", "cycle",
    "complete_bipartite", "matching", "hypercube", "disjoint_union",
)


def _need(value: int | None, name: str, family: str, minimum: int) -> int:
    if value is None:
        raise GraphError(f"{family} needs parameter {name}")
    if value < minimum:
        raise GraphError(f"{family} needs {name} >= {minimum}, got {value}")
    return value


def complete(n: int) -> Graph:
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def star(n: int) -> Graph:
    """K_{1,n-1} with the centre at vertex 0."""
    return Graph.from_edges(n, ((0, v) for v in range(1, n)))


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((v, v + 1) for v in range(n - 1)))


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)] + [(n - 1, 0)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def matching(m: int) -> Graph:
    return Graph.from_edges(2 * m, ((2 * i, 2 * i + 1) for i in range(m)))


def hypercube(d: int) -> Graph:
    n = 1 << d
    return Graph.from_edges(n, ((v, v ^ (1 << k)) for v in range(n) for k in range(d) if v < v ^ (1 << k)))


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    out = Graph.empty(0)
    for g in graphs:
        out = out.disjoint_union(g)
    return out


def make_family(spec: FamilySpec) -> Graph:
    f = spec.family
    if f == "complete":
        return complete(_need(spec.n, "n", f, 0))
    if f == "empty":
        return Graph.empty(_need(spec.n, "n", f, 0))
    if f == "star":
        return star(_need(spec.n, "n", f, 2))
    if f == "path":
        return path(_need(spec.n, "n", f, 1))
    if f == "cycle":
        return cycle(_need(spec.n, "n", f, 3))
    if f == "complete_bipartite":
        return complete_bipartite(_need(spec.a, "a", f, 1), _need(spec.b, "b", f, 1))
    if f == "matching":
        return matching(_need(spec.m, "m", f, 1))
    if f == "hypercube":
        return hypercube(_need(spec.d, "d", f, 0))
    if f == "disjoint_union":
        if not spec.parts:
            raise GraphError("disjoint_union needs at least one part")
        return disjoint_union([make_family(p) for p in spec.parts])
    raise GraphError(f"unknown family {f!r}; valid: {', '.join(FAMILIES)}")


# canonical form


def _refine(g: Graph) -> list[int]:
    """Stable colour refinement started from degrees; colours are isomorphism-invariant."""
    colors = list(g.degrees())
    ncolors = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in range(g.n) if g.rows[v] >> u & 1)))
            for v in range(g.n)
        ]
        palette = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        colors = [palette[s] for s in sigs]
        if len(palette) == ncolors:
            return colors
        ncolors = len(palette)


def canonical_labeling(g: Graph) -> list[int]:
    """Vertex order whose relabelled adjacency string is lexicographically maximal.

    Only orders that list the refined colour classes in colour order are
    searched; a branch is cut as soon as its adjacency prefix falls below the
    best one found.
    """
    n = g.n
    if n <= 1:
        return list(range(n))
    colors = _refine(g)
    slots = sorted(colors)
    rows = g.rows
    best_cols: list[int] = []
    best_order: list[int] = []

    def search(depth, order, remaining, colvals, cols):
        nonlocal best_cols, best_order
        if depth == n:
            if cols > best_cols:
                best_cols, best_order = list(cols), list(order)
            return
        cands = [v for v in remaining if colors[v] == slots[depth]]
        top = max(colvals[v] for v in cands)
        cols.append(top)
        for v in cands:
            if colvals[v] != top:
                continue
            if best_cols and cols < best_cols[: depth + 1]:
                break
            row = rows[v]
            rest = [u for u in remaining if u != v]
            nxt = {u: colvals[u] << 1 | (row >> u & 1) for u in rest}
            order.append(v)
            search(depth + 1, order, rest, nxt, cols)
            order.pop()
        cols.pop()

    search(0, [], list(range(n)), {v: 0 for v in range(n)}, [])
    return best_order


def canonical_form(g: Graph) -> Graph:
    order = canonical_labeling(g)
    perm = [0] * g.n
    for pos, v in enumerate(order):
        perm[v] = pos
    return g.relabel(perm)


def canonical_code(g: Graph) -> bytes:
    """graph6 bytes of the canonical form; equal exactly for isomorphic graphs."""
    return write_graph6(canonical_form(g)).encode("ascii")


# exhaustive enumeration


@dataclass(frozen=True)
class EnumerationSpec:
    n: int
    connected_only: bool = False


@functools.lru_cache(maxsize=None)
def _level(n: int) -> tuple[str, ...]:
    """Canonical graph6 strings of all graphs on n vertices, sorted.

    Every graph arises from one on n-1 vertices by adding a vertex of minimum
    degree, so only extensions whose new vertex has minimum degree are tried.
    """
    if n == 1:
        return (write_graph6(Graph.empty(1)),)
    seen: set[str] = set()
    new = n - 1
    for code in _level(n - 1):
        base = parse_graph6(code)
        degs = base.degrees()
        for mask in range(1 << new):
            k = mask.bit_count()
            if any(degs[u] + (mask >> u & 1) < k for u in range(new)):
                continue
            rows = list(base.rows) + [mask]
            for u in range(new):
                if mask >> u & 1:
                    rows[u] |= 1 << new
            seen.add(canonical_code(Graph(n, tuple(rows))).decode("ascii"))
    return tuple(sorted(seen))


def enumerate_graphs(spec: EnumerationSpec, allow_large: bool = False) -> Iterator[Graph]:
    """One representative per isomorphism class, in canonical-code order.

    n = 8 requires ``allow_large=True``.
    """
    limit = MAX_ENUM_N if allow_large else DEFAULT_ENUM_LIMIT
    if not 1 <= spec.n <= limit:
        hint = " (pass allow_large for n = 8)" if spec.n == MAX_ENUM_N else ""
        raise ValueError(f"enumeration supports 1 <= n <= {limit}, got {spec.n}{hint}")
    for code in _level(spec.n):
        g = parse_graph6(code)
        if not spec.connected_only or is_connected(g):
            yield g


def enumerate_up_to(n_max: int, connected_only: bool = False, allow_large: bool = False) -> Iterator[Graph]:
    for n in range(1, n_max + 1):
        yield from enumerate_graphs(EnumerationSpec(n, connected_only), allow_large)


# random models (random.Random: Mersenne Twister, stable across platforms)


def random_gnp(n: int, p: float, seed: int) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"p must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def _complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.rows)))


def _pairing(n: int, d: int, rng: random.Random, max_restarts: int) -> Graph | None:
    points = [v for v in range(n) for _ in range(d)]
    for _ in range(max_restarts):
        rng.shuffle(points)
        rows = [0] * n
        ok = True
        for i in range(0, len(points), 2):
            u, v = points[i], points[i + 1]
            if u == v or rows[u] >> v & 1:
                ok = False
                break
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        if ok:
            return Graph(n, tuple(rows))
    return None


def _swap_mix(n: int, d: int, rng: random.Random) -> Graph:
    """Circulant d-regular graph scrambled by degree-preserving double-edge swaps."""
    edges = set()
    for v in range(n):
        for k in range(1, d // 2 + 1):
            edges.add(tuple(sorted((v, (v + k) % n))))
        if d % 2:
            edges.add(tuple(sorted((v, (v + n // 2) % n))))
    edges = sorted(edges)
    present = set(edges)
    for _ in range(10 * len(edges)):
        i, j = rng.randrange(len(edges)), rng.randrange(len(edges))
        (a, b), (c, e) = edges[i], edges[j]
        if rng.random() < 0.5:
            c, e = e, c
        if len({a, b, c, e}) < 4:
            continue
        x, y = tuple(sorted((a, c))), tuple(sorted((b, e)))
        if x in present or y in present:
            continue
        present -= {edges[i], edges[j]}
        present |= {x, y}
        edges[i], edges[j] = x, y
    return Graph.from_edges(n, edges)


def random_regular(n: int, d: int, seed: int, max_restarts: int = 1000) -> Graph:
    """Seeded simple d-regular graph from the pairing model with full restarts.

    Dense requests are built as complements of sparse ones. If the pairing
    model keeps colliding, a swap-randomised circulant is returned instead.
    """
    if n < 1 or not 0 <= d < n or (n * d) % 2:
        raise GraphError(f"no simple {d}-regular graph on {n} vertices")
    rng = random.Random(seed)
    if d > (n - 1) / 2:
        return _complement(random_regular(n, n - 1 - d, rng.randrange(1 << 32), max_restarts))
    if d == 0:
        return Graph.empty(n)
    g = _pairing(n, d, rng, max_restarts)
    return g if g is not None else _swap_mix(n, d, rng)
