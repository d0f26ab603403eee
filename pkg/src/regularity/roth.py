"""3-term progressions and the tripartite graph on three copies of Z/MZ.

For ``A`` inside ``{0..N-1}`` and ``M = 2N + 1``, vertex ``x_i`` of the first
copy joins ``y_j`` when ``j - i`` is in ``A``, ``y_j`` joins ``z_k`` when
``k - j`` is in ``A``, and ``x_i`` joins ``z_k`` when ``(k - i)/2`` is in ``A``.
Halving uses multiplication by ``N + 1``, the inverse of 2 modulo the odd ``M``.
Every triangle then has the shape ``(x_i, y_{i+a}, z_{i+2a})`` exactly when
``A`` has no 3-term progression.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .errors import CapExceeded, DomainError
from .graph import UGraph, make_graph
from .rational import as_rational, to_json
from .triangles import triangle_set


def progression3_set(k: int, d: int) -> frozenset[int]:
    return frozenset((k, k + d, k + d + d))


def find_progression3(A: Iterable[int]) -> tuple[int, int] | None:
    """Lexicographically smallest ``(k, d)`` with ``d > 0`` and ``{k, k+d, k+2d}`` inside ``A``."""
    S = set(A)
    for k in sorted(S):
        for j in sorted(x for x in S if x > k):
            if 2 * j - k in S:
                return k, j - k
    return None


def encode(label: int, residue: int) -> int:
    return 3 * residue + label


def decode(v: int) -> tuple[int, int]:
    return v % 3, v // 3


@dataclass(frozen=True)
class RothInstance:
    N: int
    A: frozenset
    M: int
    graph: UGraph
    parts: tuple[frozenset, frozenset, frozenset]
    XY: frozenset
    YZ: frozenset
    XZ: frozenset

    def diff(self, a: int, b: int) -> int:
        return (a - b) % self.M

    def diff2(self, a: int, b: int) -> int:
        return ((a - b) * (self.N + 1)) % self.M

    encode = staticmethod(encode)
    decode = staticmethod(decode)

    def to_report(self, with_triangles: bool = True) -> dict:
        out = {
            "N": self.N,
            "A": sorted(self.A),
            "M": self.M,
            "vertices": self.graph.n,
            "edges": self.graph.m,
            "edge_classes": {"XY": len(self.XY), "YZ": len(self.YZ), "XZ": len(self.XZ)},
            "progression": find_progression3(self.A),
        }
        if with_triangles:
            tris = sorted(tuple(sorted(t)) for t in triangle_set(self.graph))
            table = []
            for t in tris:
                c = classify_triangle(*t, self)
                table.append({"triangle": list(t), "i": c[0] if c else None, "a": c[1] if c else None})
            out["triangles"] = len(tris)
            out["classification"] = table
        return out


def diff_mod(a: int, b: int, M: int) -> int:
    return (a - b) % M


def diff2_mod(a: int, b: int, N: int) -> int:
    return ((a - b) * (N + 1)) % (2 * N + 1)


def build_roth_graph(N: int, A: Iterable[int]) -> RothInstance:
    A = frozenset(int(a) for a in A)
    if N < 1:
        raise DomainError("N must be at least 1")
    if not all(0 <= a < N for a in A):
        raise DomainError(f"A must be a subset of {{0..{N - 1}}}")
    M = 2 * N + 1
    X = frozenset(encode(0, i) for i in range(M))
    Y = frozenset(encode(1, i) for i in range(M))
    Z = frozenset(encode(2, i) for i in range(M))

    def edges(P, Q, df):
        return frozenset(
            frozenset((p, q)) for p in P for q in Q if df(decode(q)[1], decode(p)[1]) in A
        )

    XY = edges(X, Y, lambda a, b: diff_mod(a, b, M))
    YZ = edges(Y, Z, lambda a, b: diff_mod(a, b, M))
    XZ = edges(X, Z, lambda a, b: diff2_mod(a, b, N))
    G = make_graph(X | Y | Z, XY | YZ | XZ)
    inst = RothInstance(N, A, M, G, (X, Y, Z), XY, YZ, XZ)

    expect = M * len(A)
    if not (len(XY) == len(YZ) == len(XZ) == expect and G.m == 3 * expect):
        raise RuntimeError("edge-class cardinalities do not match M|A|")
    return inst


def classify_triangle(p: int, q: int, r: int, inst: RothInstance) -> tuple[int, int] | None:
    """``(i, a)`` with the triangle equal to ``{x_i, y_(i+a), z_(i+2a)}``, or None."""
    G = inst.graph
    if not (G.has_edge(p, q) and G.has_edge(q, r) and G.has_edge(p, r)):
        return None
    by_label = {}
    for v in (p, q, r):
        if v not in G.vertices:
            return None
        by_label[decode(v)[0]] = decode(v)[1]
    if sorted(by_label) != [0, 1, 2]:
        return None
    i, j, k = by_label[0], by_label[1], by_label[2]
    M = inst.M
    a = (j - i) % M
    if a in inst.A and (i + 2 * a) % M == k:
        return i, a
    return None


def unique_triangles_check(G: UGraph) -> tuple[bool, tuple[int, int] | None]:
    """Whether every edge lies in exactly one triangle; else the smallest offending edge."""
    for u, v in G.sorted_edges():
        if len(G.neighbors(u) & G.neighbors(v)) != 1:
            return False, (u, v)
    return True, None


@dataclass(frozen=True)
class DiamondFreeReport:
    edges: int
    triangles: int
    edge_bound: Fraction
    holds: bool

    def to_report(self) -> dict:
        return {
            "edges": self.edges,
            "triangles": self.triangles,
            "edge_bound": to_json(self.edge_bound),
            "holds": self.holds,
        }


def diamond_free_inequality(G: UGraph, eps) -> DiamondFreeReport:
    eps = as_rational(eps)
    if eps <= 0:
        raise DomainError("epsilon must be positive")
    ok, bad = unique_triangles_check(G)
    if not ok:
        raise DomainError(f"edge {bad} does not lie in exactly one triangle")
    t = len(triangle_set(G))
    if G.m != 3 * t:
        raise RuntimeError("unique-triangle graph without |E| = 3 |triangles|")
    bound = eps * G.n**2
    return DiamondFreeReport(G.m, t, bound, G.m <= bound)


ROTH_AUX_CAP = 14


def _subsets(N: int):
    for r in range(N + 1):
        yield from combinations(range(N), r)


def roth_aux_verify(N: int, eps, cap: int = ROTH_AUX_CAP) -> dict:
    """Check every finite identity of the construction for all AP-free ``A`` in ``{0..N-1}``.

    Also confirms that each ``A`` holding a progression breaks unique triangles.
    """
    eps = as_rational(eps)
    if eps <= 0:
        raise DomainError("epsilon must be positive")
    if N > cap:
        raise CapExceeded(f"N={N} above the exhaustive cap {cap}")
    if N < 1:
        raise DomainError("N must be at least 1")
    M = 2 * N + 1
    ap_free = 0
    best: tuple = ()
    failures = []
    for sub in _subsets(N):
        inst = build_roth_graph(N, sub)
        uniq, _ = unique_triangles_check(inst.graph)
        has_ap = find_progression3(sub) is not None
        if has_ap:
            if uniq:
                failures.append({"A": list(sub), "problem": "progression but unique triangles"})
            continue
        ap_free += 1
        tris = triangle_set(inst.graph)
        classes = {classify_triangle(*sorted(t), inst) for t in tris}
        problems = []
        if not uniq:
            problems.append("unique triangles fails")
        if inst.graph.m != 3 * M * len(sub):
            problems.append("|E| != 3M|A|")
        if len(tris) != M * len(sub) or None in classes or classes != {(i, a) for i in range(M) for a in sub}:
            problems.append("triangle classification is not a bijection")
        if problems:
            failures.append({"A": list(sub), "problem": "; ".join(problems)})
        if len(sub) > len(best):
            best = sub
    return {
        "N": N,
        "M": M,
        "epsilon": to_json(eps),
        "subsets_checked": 1 << N,
        "ap_free_subsets": ap_free,
        "max_ap_free_size": len(best),
        "max_ap_free_witness": list(best),
        "epsilon_times_N": to_json(eps * N),
        "max_below_epsilon_N": len(best) < eps * N,
        "failures": failures,
        "ok": not failures,
    }
