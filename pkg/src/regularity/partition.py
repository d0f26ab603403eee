"""Vertex partitions, refinement, and the energy (mean square density) calculus."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import GraphError, PartitionError
from .graph import UGraph, edge_count

Part = frozenset  # frozenset[int]


def _freeze_parts(P) -> frozenset[Part]:
    if isinstance(P, VertexPartition):
        return P.parts
    return frozenset(frozenset(p) for p in P)


def is_partition(V: Iterable[int], P: Iterable[Iterable[int]]) -> bool:
    V = frozenset(V)
    seen: set[int] = set()
    for part in _freeze_parts(P):
        if not part or not seen.isdisjoint(part):
            return False
        seen |= part
    return seen == V


@dataclass(frozen=True)
class VertexPartition:
    """A set of pairwise-disjoint non-empty parts covering ``ground``."""

    ground: frozenset[int]
    parts: frozenset[Part]

    def __post_init__(self):
        if not is_partition(self.ground, self.parts):
            raise PartitionError("parts are not a partition of the ground set")

    @classmethod
    def of(cls, parts: Iterable[Iterable[int]], ground: Iterable[int] | None = None) -> "VertexPartition":
        fparts = frozenset(frozenset(p) for p in parts)
        if ground is None:
            ground = frozenset().union(*fparts) if fparts else frozenset()
        return cls(frozenset(ground), fparts)

    @classmethod
    def trivial(cls, V: Iterable[int]) -> "VertexPartition":
        V = frozenset(V)
        return cls(V, frozenset([V]) if V else frozenset())

    @classmethod
    def discrete(cls, V: Iterable[int]) -> "VertexPartition":
        V = frozenset(V)
        return cls(V, frozenset(frozenset([v]) for v in V))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __contains__(self, part) -> bool:
        return frozenset(part) in self.parts

    def ordered(self) -> list[Part]:
        """Parts sorted by their minimum element."""
        return sorted(self.parts, key=min)

    def part_of(self) -> dict[int, Part]:
        return {v: part for part in self.parts for v in part}

    def as_lists(self) -> list[list[int]]:
        return [sorted(p) for p in self.ordered()]


def refines(V: Iterable[int], Q, P) -> bool:
    """True iff Q and P partition V and every part of Q lies inside a part of P."""
    V = frozenset(V)
    Qp, Pp = _freeze_parts(Q), _freeze_parts(P)
    if not (is_partition(V, Qp) and is_partition(V, Pp)):
        return False
    owner = {v: p for p in Pp for v in p}
    return all(part <= owner[next(iter(part))] for part in Qp)


def common_refinement(V: Iterable[int], family: Sequence) -> VertexPartition:
    """All non-empty intersections taking one part from each member of ``family``."""
    V = frozenset(V)
    members = [_freeze_parts(P) for P in family]
    for i, P in enumerate(members):
        if not is_partition(V, P):
            raise PartitionError(f"family member {i} does not partition the ground set")
    if not members:
        return VertexPartition.trivial(V)
    # vertices sharing a part in every member form exactly one intersection
    owners = [{v: idx for idx, p in enumerate(P) for v in p} for P in members]
    groups: dict[tuple, set[int]] = {}
    for v in V:
        groups.setdefault(tuple(o[v] for o in owners), set()).add(v)
    return VertexPartition(V, frozenset(frozenset(g) for g in groups.values()))


def p2(X: Iterable[int], Y: Iterable[int]) -> frozenset[Part]:
    """Split ``Y`` along ``X``: ``{X, Y - X}`` for a proper non-empty ``X``, else ``{Y}``."""
    X, Y = frozenset(X), frozenset(Y)
    if not X <= Y:
        raise PartitionError("p2 requires X to be a subset of Y")
    if X and X != Y:
        return frozenset([X, Y - X])
    return frozenset([Y]) if Y else frozenset()


def _require_vertices(G: UGraph) -> int:
    if G.n == 0:
        raise GraphError("energy is undefined for a graph with no vertices")
    return G.n


def energy_graph_subsets(U: Iterable[int], W: Iterable[int], G: UGraph) -> Fraction:
    n = _require_vertices(G)
    U, W = frozenset(U), frozenset(W)
    if not U or not W:
        return Fraction(0)
    # |U||W| d(U,W)^2 = e(U,W)^2 / (|U||W|)
    e = edge_count(U, W, G)
    return Fraction(e * e, len(U) * len(W) * n * n)


def energy_graph_partitions(G: UGraph, P, Q) -> Fraction:
    _require_vertices(G)
    Pp, Qp = _freeze_parts(P), _freeze_parts(Q)
    return sum((energy_graph_subsets(R, S, G) for R in Pp for S in Qp), Fraction(0))


def mean_square_density(G: UGraph, P) -> Fraction:
    return energy_graph_partitions(G, P, P)


# -- text format ----------------------------------------------------------------

def to_partition_text(P: VertexPartition) -> str:
    return "".join(" ".join(map(str, part)) + "\n" for part in P.as_lists())


def parse_partition_text(text: str, G: UGraph | None = None) -> VertexPartition:
    parts = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            parts.append(frozenset(int(t) for t in line.split()))
        except ValueError:
            raise PartitionError(f"line {lineno}: non-integer vertex id") from None
    ground = G.vertices if G is not None else frozenset().union(*parts) if parts else frozenset()
    if sum(map(len, parts)) != len(frozenset().union(*parts) if parts else ()):
        raise PartitionError("a vertex appears in more than one part")
    if not is_partition(ground, parts):
        raise PartitionError("parts do not partition the graph's vertex set")
    return VertexPartition(frozenset(ground), frozenset(parts))


def read_partition(path, G: UGraph | None = None) -> VertexPartition:
    with open(path) as fh:
        return parse_partition_text(fh.read(), G)

