"""Finite undirected graphs on natural-number vertices.

Edge counts between vertex sets use ordered pairs, so when ``X == Y`` every
edge inside ``X`` is counted twice. Density with an empty side is 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import DomainError, GraphError
from .rational import as_rational

Edge = frozenset  # a two-element frozenset of ints


def _as_vertex_set(vs: Iterable[int]) -> frozenset[int]:
    return vs if isinstance(vs, frozenset) else frozenset(vs)


@dataclass(frozen=True)
class UGraph:
    """Immutable simple undirected graph.

    Use :func:`make_graph` to build one; it validates well-formedness.
    Equality is structural on the vertex and edge sets.
    """

    vertices: frozenset[int]
    edges: frozenset[Edge]
    adj: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.adj is None:
            nbrs: dict[int, set[int]] = {v: set() for v in self.vertices}
            for e in self.edges:
                u, v = tuple(e)
                nbrs[u].add(v)
                nbrs[v].add(u)
            object.__setattr__(self, "adj", {v: frozenset(s) for v, s in nbrs.items()})

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj.get(v, frozenset())

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj.get(u, ())

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def with_edges(self, edges: Iterable[Edge]) -> "UGraph":
        """Same vertex set, different edge set (validated)."""
        return make_graph(self.vertices, edges)


def make_graph(vertices: Iterable[int], edges: Iterable) -> UGraph:
    vs = frozenset(int(v) for v in vertices)
    es = set()
    for e in edges:
        pair = frozenset(int(x) for x in e)
        if len(pair) != 2:
            raise GraphError(f"edge {sorted(e)} is not a pair of distinct vertices")
        for x in pair:
            if x not in vs:
                raise GraphError(f"edge endpoint {x} is not a vertex")
        es.add(pair)
    if any(v < 0 for v in vs):
        raise GraphError("vertices must be natural numbers")
    return UGraph(vs, frozenset(es))


def empty_graph(vertices: Iterable[int]) -> UGraph:
    return make_graph(vertices, ())


def all_edges_between(X: Iterable[int], Y: Iterable[int], G: UGraph) -> set[tuple[int, int]]:
    Y = _as_vertex_set(Y)
    return {(x, y) for x in set(X) for y in G.neighbors(x) if y in Y}


def edge_count(X: Iterable[int], Y: Iterable[int], G: UGraph) -> int:
    """``|all_edges_between(X, Y, G)|`` without materialising the pairs."""
    Y = _as_vertex_set(Y)
    return sum(len(G.neighbors(x) & Y) for x in set(X))


def edge_density(X: Iterable[int], Y: Iterable[int], G: UGraph) -> Fraction:
    X = _as_vertex_set(X)
    Y = _as_vertex_set(Y)
    if not X or not Y:
        return Fraction(0)
    return Fraction(edge_count(X, Y, G), len(X) * len(Y))


def neighbors_ss(x: int, Y: Iterable[int], G: UGraph) -> frozenset[int]:
    return G.neighbors(x) & _as_vertex_set(Y)


# -- generators ---------------------------------------------------------------

def complete_graph(n: int) -> UGraph:
    return make_graph(range(n), ((u, v) for u in range(n) for v in range(u + 1, n)))


def complete_tripartite(a: int, b: int, c: int) -> UGraph:
    """Parts ``[0, a)``, ``[a, a+b)``, ``[a+b, a+b+c)``."""
    parts = [range(0, a), range(a, a + b), range(a + b, a + b + c)]
    edges = [
        (u, v)
        for i in range(3)
        for j in range(i + 1, 3)
        for u in parts[i]
        for v in parts[j]
    ]
    return make_graph(range(a + b + c), edges)


def bipartite_half(n: int) -> UGraph:
    """Complete bipartite graph between ``[0, n//2)`` and ``[n//2, n)``."""
    h = n // 2
    return make_graph(range(n), ((u, v) for u in range(h) for v in range(h, n)))


def random_graph(n: int, p, seed: int) -> UGraph:
    """G(n, p) with exact rational ``p``: each pair kept iff ``randrange(den) < num``."""
    p = as_rational(p)
    if p < 0 or p > 1:
        raise DomainError(f"edge probability {p} outside [0, 1]")
    rng = random.Random(seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.randrange(p.denominator) < p.numerator:
                edges.append((u, v))
    return make_graph(range(n), edges)


GENERATORS = {
    "random": random_graph,
    "complete": complete_graph,
    "complete_tripartite": complete_tripartite,
    "bipartite_half": bipartite_half,
}


def generate(kind: str, **params) -> UGraph:
    try:
        fn = GENERATORS[kind]
    except KeyError:
        raise DomainError(f"unknown generator {kind!r}; choose from {sorted(GENERATORS)}") from None
    return fn(**params)


# -- serialization --------------------------------------------------------------

def to_edge_list(G: UGraph) -> str:
    n = G.n
    if G.vertices != frozenset(range(n)):
        raise GraphError("edge-list format requires vertices 0..n-1")
    lines = [f"{n} {G.m}"]
    lines += [f"{u} {v}" for u, v in G.sorted_edges()]
    return "\n".join(lines) + "\n"


def _data_lines(text: str) -> Iterator[str]:
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            yield line


def parse_edge_list(text: str) -> UGraph:
    lines = list(_data_lines(text))
    if not lines:
        raise GraphError("empty edge-list file")
    try:
        n, m = (int(t) for t in lines[0].split())
    except ValueError:
        raise GraphError(f"bad header line {lines[0]!r}; expected 'n m'") from None
    body = lines[1:]
    if len(body) != m:
        raise GraphError(f"header announces {m} edges, file has {len(body)}")
    edges = []
    for line in body:
        try:
            u, v = (int(t) for t in line.split())
        except ValueError:
            raise GraphError(f"bad edge line {line!r}") from None
        if not 0 <= u < v < n:
            raise GraphError(f"edge line {line!r} violates 0 <= u < v < n")
        edges.append((u, v))
    if len(set(edges)) != m:
        raise GraphError("duplicate edge in edge list")
    return make_graph(range(n), edges)


def read_edge_list(path) -> UGraph:
    with open(path) as fh:
        return parse_edge_list(fh.read())


def write_edge_list(G: UGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(to_edge_list(G))


_PALETTE = (
    "lightblue", "lightpink", "palegreen", "khaki", "plum", "lightsalmon",
    "lightcyan", "wheat", "thistle", "aquamarine", "lightgray", "peachpuff",
)


def to_dot(G: UGraph, parts=None, name: str = "G") -> str:
    """Graphviz export; ``parts`` (ordered by minimum element) become colored clusters."""
    out = [f"graph {name} {{"]
    if parts:
        ordered = sorted((sorted(p) for p in parts), key=lambda p: p[0])
        for i, part in enumerate(ordered):
            color = _PALETTE[i % len(_PALETTE)]
            out.append(f"  subgraph cluster_{i} {{")
            out.append(f'    label="V{i}"; style=filled; color="{color}";')
            out.extend(f"    {v};" for v in part)
            out.append("  }")
    else:
        out.extend(f"  {v};" for v in sorted(G.vertices))
    out.extend(f"  {u} -- {v};" for u, v in G.sorted_edges())
    out.append("}")
    return "\n".join(out) + "\n"
