"""Naive reference implementations.

Nothing here reuses the optimised code paths: edge counts, densities and
subset enumeration are all recomputed from the raw edge set so that an
agreement between an oracle and its optimised counterpart means something.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator

from .errors import CapExceeded, DomainError
from .graph import UGraph
from .regular import RegularityOutcome, Witness


@dataclass(frozen=True)
class OracleConfig:
    subset_cap: int = 6
    partition_cap: int = 7
    ap_cap: int = 20

    def __post_init__(self):
        if min(self.subset_cap, self.partition_cap, self.ap_cap) <= 0:
            raise DomainError("oracle caps must be positive")


DEFAULT_CONFIG = OracleConfig()


def _density(A, B, G: UGraph) -> Fraction:
    if not A or not B:
        return Fraction(0)
    hits = 0
    for a in A:
        for b in B:
            if frozenset((a, b)) in G.edges:
                hits += 1
    return Fraction(hits, len(A) * len(B))


def _subsets(xs):
    for r in range(len(xs) + 1):
        yield from combinations(xs, r)


def brute_regular_pair(X, Y, G: UGraph, eps, strict: bool = False, config: OracleConfig = DEFAULT_CONFIG) -> RegularityOutcome:
    """Full ``2^|X| * 2^|Y|`` enumeration; ``strict`` restricts to proper subsets.

    The witness is the maximal-deviation pair, ties broken by the lexicographically
    smallest ``(sorted A, sorted B)``.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise DomainError("epsilon must be positive")
    xs, ys = sorted(set(X)), sorted(set(Y))
    if len(xs) > config.subset_cap or len(ys) > config.subset_cap:
        raise CapExceeded(f"oracle subset cap {config.subset_cap} exceeded")
    dXY = _density(xs, ys, G)
    best = None
    for A in _subsets(xs):
        if len(A) < eps * len(xs) or (strict and len(A) == len(xs)):
            continue
        for B in _subsets(ys):
            if len(B) < eps * len(ys) or (strict and len(B) == len(ys)):
                continue
            dev = abs(_density(A, B, G) - dXY)
            if dev <= eps:
                continue
            key = (-dev, A, B)
            if best is None or key < best:
                best = key
    if best is None:
        return RegularityOutcome(True)
    return RegularityOutcome(False, Witness(frozenset(best[1]), frozenset(best[2]), -best[0]))


def all_partitions(V, config: OracleConfig = DEFAULT_CONFIG) -> Iterator[frozenset]:
    """Every set partition of ``V`` exactly once, via restricted growth strings."""
    vs = sorted(set(V))
    if len(vs) > config.partition_cap:
        raise CapExceeded(f"partition cap {config.partition_cap} exceeded")
    n = len(vs)
    if n == 0:
        yield frozenset()
        return
    rgs = [0] * n

    def emit():
        blocks: dict[int, list[int]] = {}
        for v, b in zip(vs, rgs):
            blocks.setdefault(b, []).append(v)
        return frozenset(frozenset(b) for b in blocks.values())

    def rec(i: int, top: int):
        if i == n:
            yield emit()
            return
        for b in range(top + 2):
            rgs[i] = b
            yield from rec(i + 1, max(top, b))

    rgs[0] = 0
    yield from rec(1, 0)


def brute_triangles(G: UGraph) -> set[frozenset]:
    vs = sorted(G.vertices)
    if len(vs) > 64:
        raise CapExceeded("brute triangle enumeration is capped at 64 vertices")
    E = G.edges
    out = set()
    for x, y, z in combinations(vs, 3):
        if frozenset((x, y)) in E and frozenset((y, z)) in E and frozenset((x, z)) in E:
            out.add(frozenset((x, y, z)))
    return out


def _has_ap(A: set[int]) -> bool:
    for k in A:
        for j in A:
            if j > k and 2 * j - k in A:
                return True
    return False


def max_ap_free(N: int, config: OracleConfig = DEFAULT_CONFIG) -> tuple[int, frozenset]:
    """Largest 3-AP-free subset of ``{0..N-1}``; the lexicographically least among maxima."""
    if N > config.ap_cap:
        raise CapExceeded(f"AP cap {config.ap_cap} exceeded")
    best: list = [0, ()]
    chosen: list[int] = []

    def rec(i: int):
        # pruning: even taking every remaining element cannot beat the incumbent
        if len(chosen) + (N - i) < best[0]:
            return
        if i == N:
            t = tuple(chosen)
            if len(t) > best[0] or (len(t) == best[0] and t < best[1]):
                best[0], best[1] = len(t), t
            return
        cs = set(chosen)
        if not any(2 * j - k == i for k in cs for j in cs if j > k):
            chosen.append(i)
            rec(i + 1)
            chosen.pop()
        rec(i + 1)

    rec(0)
    return best[0], frozenset(best[1])


def ap_free_subsets(N: int) -> Iterator[frozenset]:
    """All 3-AP-free subsets of ``{0..N-1}`` (plain ``2^N`` scan)."""
    for mask in range(1 << N):
        A = {i for i in range(N) if mask >> i & 1}
        if not _has_ap(A):
            yield frozenset(A)
