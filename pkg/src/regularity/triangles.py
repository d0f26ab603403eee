"""Triangles, the counting-lemma quantities, and the partition/clean/count
removal procedure."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, HypothesisFailed
from .graph import UGraph, edge_count, edge_density, neighbors_ss
from .partition import VertexPartition
from .rational import as_rational, to_json
from .regular import (
    DEFAULT_SIZE_CAP,
    SrlResult,
    irregular_witnesses,
    is_regular_pair,
    szemeredi_partition,
)


def triangle_in_graph(x: int, y: int, z: int, G: UGraph) -> bool:
    return G.has_edge(x, y) and G.has_edge(y, z) and G.has_edge(x, z)


def triangle_triples(X, Y, Z, G: UGraph) -> set[tuple[int, int, int]]:
    Y, Z = frozenset(Y), frozenset(Z)
    out = set()
    for x in set(X):
        nx = G.neighbors(x)
        for y in nx & Y:
            for z in nx & G.neighbors(y) & Z:
                out.add((x, y, z))
    return out


def triangle_set(G: UGraph) -> set[frozenset]:
    out = set()
    for e in G.edges:
        u, v = sorted(e)
        for w in G.neighbors(u) & G.neighbors(v):
            if w > v:
                out.add(frozenset((u, v, w)))
    return out


def triangle_free(G: UGraph) -> bool:
    return not any(G.neighbors(u) & G.neighbors(v) for u, v in map(tuple, G.edges))


@dataclass(frozen=True)
class TriangleCensus:
    ordered_count: int
    unordered: frozenset

    def to_report(self) -> dict:
        return {
            "ordered_count": self.ordered_count,
            "triangles": len(self.unordered),
            "list": sorted(sorted(t) for t in self.unordered),
        }


def census(G: UGraph, X=None, Y=None, Z=None) -> TriangleCensus:
    V = G.vertices
    pick = lambda S: V if S is None else S
    triples = triangle_triples(pick(X), pick(Y), pick(Z), G)
    return TriangleCensus(len(triples), frozenset(triangle_set(G)))


# -- counting lemma pieces -------------------------------------------------------

def _subset_check(G: UGraph, *sets) -> None:
    for S in sets:
        if not frozenset(S) <= G.vertices:
            raise DomainError("vertex sets must be subsets of V(G)")


@dataclass(frozen=True)
class CountingCertificate:
    hypotheses_ok: bool
    bound: Fraction
    actual: int
    densities: tuple[Fraction, Fraction, Fraction]  # d(X,Y), d(X,Z), d(Y,Z)
    regular: tuple[bool, bool, bool]

    @property
    def holds(self) -> bool:
        return not self.hypotheses_ok or self.actual >= self.bound

    def to_report(self) -> dict:
        return {
            "hypotheses_ok": self.hypotheses_ok,
            "bound": to_json(self.bound),
            "actual": self.actual,
            "densities": [to_json(d) for d in self.densities],
            "regular": list(self.regular),
        }


def counting_bound_value(eps: Fraction, dxy, dxz, dyz, nx: int, ny: int, nz: int) -> Fraction:
    return (1 - 2 * eps) * (dxy - eps) * (dxz - eps) * (dyz - eps) * nx * ny * nz


def counting_lemma_bound(X, Y, Z, G: UGraph, eps, size_cap: int = DEFAULT_SIZE_CAP) -> CountingCertificate:
    """Hypotheses, lower bound and actual ordered-triple count for ``(X, Y, Z)``."""
    eps = as_rational(eps)
    if eps <= 0:
        raise DomainError("epsilon must be positive")
    X, Y, Z = frozenset(X), frozenset(Y), frozenset(Z)
    _subset_check(G, X, Y, Z)
    dens = (edge_density(X, Y, G), edge_density(X, Z, G), edge_density(Y, Z, G))
    reg = (
        is_regular_pair(X, Y, G, eps, size_cap),
        is_regular_pair(X, Z, G, eps, size_cap),
        is_regular_pair(Y, Z, G, eps, size_cap),
    )
    ok = all(reg) and all(d >= 2 * eps for d in dens)
    bound = counting_bound_value(eps, *dens, len(X), len(Y), len(Z))
    return CountingCertificate(ok, bound, len(triangle_triples(X, Y, Z, G)), dens, reg)


def neighbor_bound_defect(X, Y, G: UGraph, eps, size_cap: int = DEFAULT_SIZE_CAP) -> tuple[int, Fraction]:
    """Count vertices of ``X`` whose ``Y``-neighbourhood falls below ``(d(X,Y) - eps)|Y|``.

    The lemma promises ``low_count < eps * |X|``; returns both sides.
    """
    eps = as_rational(eps)
    X, Y = frozenset(X), frozenset(Y)
    _subset_check(G, X, Y)
    if not X:
        raise HypothesisFailed("X must be non-empty")
    d = edge_density(X, Y, G)
    if eps <= 0 or d < 2 * eps or not is_regular_pair(X, Y, G, eps, size_cap):
        raise HypothesisFailed("(X, Y) must be eps-regular with density at least 2 eps")
    floor = (d - eps) * len(Y)
    low = sum(1 for x in X if len(neighbors_ss(x, Y, G)) < floor)
    return low, eps * len(X)


def neighborhood_edges_bound(
    x: int, X, Y, Z, G: UGraph, eps, check_hypotheses: bool = True, size_cap: int = DEFAULT_SIZE_CAP
) -> tuple[int, Fraction]:
    """``(e(N_Y(x), N_Z(x)), (d(Y,Z) - eps) |N_Y(x)| |N_Z(x)|)``; the lemma says lhs >= rhs."""
    eps = as_rational(eps)
    X, Y, Z = frozenset(X), frozenset(Y), frozenset(Z)
    ny, nz = neighbors_ss(x, Y, G), neighbors_ss(x, Z, G)
    if check_hypotheses:
        _subset_check(G, X, Y, Z)
        if eps <= 0 or x not in X:
            raise HypothesisFailed("need eps > 0 and x in X")
        cert = counting_lemma_bound(X, Y, Z, G, eps, size_cap)
        if not cert.hypotheses_ok:
            raise HypothesisFailed("pairs must be eps-regular with densities at least 2 eps")
        dxy, dxz, _ = cert.densities
        if len(ny) < (dxy - eps) * len(Y) or len(nz) < (dxz - eps) * len(Z):
            raise HypothesisFailed("x has a negligible neighbourhood in Y or Z")
    rhs = (edge_density(Y, Z, G) - eps) * len(ny) * len(nz)
    return edge_count(ny, nz, G), rhs


def convert_triangle_count(X, Y, Z, G: UGraph) -> Fraction:
    """Right-hand side ``|triangle_triples(X, Y, Z)| / 6`` of ``|triangle_set| >= ...``."""
    _subset_check(G, X, Y, Z)
    return Fraction(len(triangle_triples(X, Y, Z, G)), 6)


# -- cleaned-graph predicates ------------------------------------------------------

def regular_graph(P, G: UGraph, eps, size_cap: int = DEFAULT_SIZE_CAP) -> bool:
    parts = list(P)
    return all(is_regular_pair(R, S, G, eps, size_cap) for i, R in enumerate(parts) for S in parts[i:])


def edge_dense(X, Y, G: UGraph, eps) -> bool:
    return edge_count(X, Y, G) == 0 or edge_density(X, Y, G) >= eps


def dense_graph(P, G: UGraph, eps) -> bool:
    return all(edge_dense(R, S, G, eps) for R in P for S in P)


def decent(X, Y, G: UGraph, eta) -> bool:
    return edge_count(X, Y, G) == 0 or (len(X) >= eta and len(Y) >= eta)


def decent_graph(P, G: UGraph, eta) -> bool:
    return all(decent(R, S, G, eta) for R in P for S in P)


# -- clean and remove --------------------------------------------------------------

def _edge_list(edges) -> list[list[int]]:
    return sorted(sorted(e) for e in edges)


@dataclass
class CleanResult:
    original: UGraph
    cleaned: UGraph
    removed_irregular: frozenset
    removed_sparse: frozenset
    removed_small: frozenset
    epsilon: Fraction
    partition_epsilon: Fraction
    density_floor: Fraction
    size_floor: Fraction
    partition_used: VertexPartition
    srl: SrlResult
    budgets: dict = field(default_factory=dict)

    @property
    def removed(self) -> frozenset:
        return self.removed_irregular | self.removed_sparse | self.removed_small

    def to_report(self) -> dict:
        n2 = self.original.n ** 2
        return {
            "parameters": {
                "epsilon": to_json(self.epsilon),
                "partition_epsilon": to_json(self.partition_epsilon),
                "density_floor": to_json(self.density_floor),
                "size_floor": to_json(self.size_floor),
            },
            "partition": self.partition_used.as_lists(),
            "srl_iterations": self.srl.iterations,
            "removed": {
                "irregular": _edge_list(self.removed_irregular),
                "sparse": _edge_list(self.removed_sparse),
                "small": _edge_list(self.removed_small),
            },
            "certificates": {
                name: {"count": cnt, "budget": to_json(b), "holds": cnt <= b}
                for name, (cnt, b) in self.budgets.items()
            },
            "total_removed": len(self.removed),
            "total_budget": to_json(self.epsilon * n2),
        }


def clean_graph(G: UGraph, eps, size_cap: int = DEFAULT_SIZE_CAP) -> CleanResult:
    """Partition at eps/4, then drop edges of irregular pairs, of pairs with density
    below eps/2, and edges touching parts smaller than ``eps / (4|P|) * |V|``."""
    eps = as_rational(eps)
    if not 0 < eps < 1:
        raise DomainError(f"clean_graph needs 0 < eps < 1, got {eps}")
    if G.n == 0:
        raise DomainError("graph has no vertices")
    eps_p = eps / 4
    srl = szemeredi_partition(G, eps_p, size_cap=size_cap)
    P = srl.partition
    n = G.n
    density_floor = eps / 2
    size_floor = eps / (4 * len(P)) * n
    irregular = {frozenset((R, S)) for R, S in irregular_witnesses(eps_p, G, P, size_cap)}
    owner = P.part_of()
    dens_cache: dict[frozenset, Fraction] = {}

    cls_irr, cls_sparse, cls_small, kept = set(), set(), set(), set()
    for e in G.edges:
        u, v = tuple(e)
        R, S = owner[u], owner[v]
        key = frozenset((R, S))
        if key in irregular:
            cls_irr.add(e)
            continue
        if key not in dens_cache:
            dens_cache[key] = edge_density(R, S, G)
        if dens_cache[key] < density_floor:
            cls_sparse.add(e)
        elif len(R) < size_floor or len(S) < size_floor:
            cls_small.add(e)
        else:
            kept.add(e)
    cleaned = G.with_edges(kept)

    n2 = n * n
    budgets = {
        "irregular": (len(cls_irr), eps / 4 * n2),
        "sparse": (len(cls_sparse), eps / 2 * n2),
        "small": (len(cls_small), eps / 4 * n2),
        "total": (len(cls_irr) + len(cls_sparse) + len(cls_small), eps * n2),
    }
    for name, (cnt, b) in budgets.items():
        if cnt > b:
            raise RuntimeError(f"clean budget violated for class {name}: {cnt} > {b}")
    if not (
        regular_graph(P, cleaned, eps_p, size_cap)
        and dense_graph(P, cleaned, density_floor)
        and decent_graph(P, cleaned, size_floor)
    ):
        raise RuntimeError("cleaned graph is not regular, dense and decent")
    return CleanResult(
        original=G,
        cleaned=cleaned,
        removed_irregular=frozenset(cls_irr),
        removed_sparse=frozenset(cls_sparse),
        removed_small=frozenset(cls_small),
        epsilon=eps,
        partition_epsilon=eps_p,
        density_floor=density_floor,
        size_floor=size_floor,
        partition_used=P,
        srl=srl,
        budgets=budgets,
    )


@dataclass
class RemovalResult:
    cleaned: UGraph
    removed: int
    bound: Fraction
    epsilon: Fraction
    triangles_before: int
    triangle_free: bool
    delta: Fraction | None = None
    certificate: CountingCertificate | None = None
    certificate_parts: tuple | None = None
    clean: CleanResult | None = None

    @property
    def guarantee_applies(self) -> bool:
        """Whether the instance meets the removal hypothesis ``|T(G)| < delta |V|^3``."""
        if self.clean is None or self.delta is None:
            return True
        return self.triangles_before < self.delta * self.cleaned.n**3

    def to_report(self) -> dict:
        out = {
            "epsilon": to_json(self.epsilon),
            "removed": self.removed,
            "bound": to_json(self.bound),
            "triangles_before": self.triangles_before,
            "triangle_free_after": self.triangle_free,
            "delta": None if self.delta is None else to_json(self.delta),
            "guarantee_applies": self.guarantee_applies,
            "certificate": None if self.certificate is None else self.certificate.to_report(),
            "certificate_parts": None
            if self.certificate_parts is None
            else [sorted(p) for p in self.certificate_parts],
        }
        if self.clean is not None:
            out["clean"] = self.clean.to_report()
        return out


def instance_delta(P: VertexPartition, G: UGraph, eps, size_cap: int = DEFAULT_SIZE_CAP) -> Fraction | None:
    """Smallest positive counting-lemma bound over part triples, divided by ``6 |V|^3``.

    ``None`` when no triple of parts passes the counting-lemma hypotheses.
    """
    parts = P.ordered()
    dens: dict = {}
    reg: dict = {}
    for i, R in enumerate(parts):
        for S in parts[i:]:
            dens[frozenset((R, S))] = edge_density(R, S, G)
            reg[frozenset((R, S))] = is_regular_pair(R, S, G, eps, size_cap)
    best = None
    k = len(parts)
    for i in range(k):
        for j in range(i, k):
            for l in range(j, k):
                X, Y, Z = parts[i], parts[j], parts[l]
                keys = (frozenset((X, Y)), frozenset((X, Z)), frozenset((Y, Z)))
                if not all(reg[key] and dens[key] >= 2 * eps for key in keys):
                    continue
                b = counting_bound_value(eps, *(dens[key] for key in keys), len(X), len(Y), len(Z))
                if b > 0 and (best is None or b < best):
                    best = b
    return None if best is None else best / (6 * G.n**3)


def triangle_removal(G: UGraph, eps, size_cap: int = DEFAULT_SIZE_CAP) -> RemovalResult:
    eps = as_rational(eps)
    if eps <= 0:
        raise DomainError("epsilon must be positive")
    if G.n == 0:
        raise DomainError("graph has no vertices")
    bound = eps * G.n**2
    t_before = len(triangle_set(G))
    if eps >= 1:
        return RemovalResult(G.with_edges(()), G.m, bound, eps, t_before, True)

    cr = clean_graph(G, eps, size_cap)
    Gp = cr.cleaned
    delta = instance_delta(cr.partition_used, Gp, cr.partition_epsilon, size_cap)
    res = RemovalResult(Gp, len(cr.removed), bound, eps, t_before, triangle_free(Gp), delta, clean=cr)
    if not res.triangle_free:
        tri = min(tuple(sorted(t)) for t in triangle_set(Gp))
        owner = cr.partition_used.part_of()
        parts = tuple(owner[v] for v in tri)
        cert = counting_lemma_bound(*parts, Gp, cr.partition_epsilon, size_cap)
        if not (cert.hypotheses_ok and cert.bound > 0 and cert.actual >= cert.bound):
            raise RuntimeError("cleaned graph kept a triangle without a counting certificate")
        res.certificate, res.certificate_parts = cert, parts
    return res
