"""Exact epsilon-regularity checking, the energy-increment refinement and the
iterated partition algorithm.

The pair checker enumerates every eligible ``A`` (a subset of ``X``) and, for
each one, finds the extreme densities over ``B`` of each size ``b`` by sorting
``Y`` on degree into ``A``: ``e(A, B)`` is the sum of those degrees, so the
top-``b`` and bottom-``b`` prefixes are the maximisers and minimisers. That
replaces the ``2^|Y|`` inner loop with a sort and two cumulative sums, and
the enumeration over ``A`` is vectorised with numpy bit counting.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import BoundTooLarge, CapExceeded, DomainError, PartitionError
from .graph import UGraph, edge_count
from .partition import VertexPartition, common_refinement, is_partition, mean_square_density, p2
from .rational import as_rational, ceil_frac, to_json

log = logging.getLogger(__name__)

DEFAULT_SIZE_CAP = 22
_CHUNK = 1 << 14
_TIE_TOL = 1e-9  # distinct scaled deviations differ by at least ~4e-6 at the size cap


@dataclass(frozen=True)
class Witness:
    A: frozenset
    B: frozenset
    deviation: Fraction

    def key(self) -> tuple:
        return (tuple(sorted(self.A)), tuple(sorted(self.B)))


@dataclass(frozen=True)
class RegularityOutcome:
    regular: bool
    witness: Witness | None = None

    @property
    def verdict(self) -> str:
        return "regular" if self.regular else "irregular"


REGULAR = RegularityOutcome(True)


def _check_eps(eps) -> Fraction:
    eps = as_rational(eps)
    if eps <= 0:
        raise DomainError(f"epsilon must be positive, got {eps}")
    return eps


def size_threshold(eps: Fraction, size: int) -> int:
    """Smallest integer ``t`` with ``t >= eps * size``."""
    return ceil_frac(eps * size)


def _canonical_B(ys: list[int], deg: np.ndarray, b: int, top: bool) -> frozenset:
    # Forced vertices beat the b-th degree strictly; ties are filled by smallest id,
    # which yields the lexicographically least B with the extreme edge count.
    order = np.sort(deg)
    t = order[-b] if top else order[b - 1]
    forced = [y for y, d in zip(ys, deg) if (d > t if top else d < t)]
    ties = [y for y, d in zip(ys, deg) if d == t]
    return frozenset(forced + ties[: b - len(forced)])


def check_regular_pair(
    X: Iterable[int], Y: Iterable[int], G: UGraph, eps, size_cap: int = DEFAULT_SIZE_CAP
) -> RegularityOutcome:
    """Decide whether ``(X, Y)`` is eps-regular, with non-strict subsets.

    An irregular outcome carries the witness of maximal deviation; ties are
    broken by the lexicographically smallest ``(sorted A, sorted B)``.
    """
    eps = _check_eps(eps)
    xs, ys = sorted(set(X)), sorted(set(Y))
    if len(xs) > size_cap or len(ys) > size_cap:
        raise CapExceeded(
            f"pair sizes ({len(xs)}, {len(ys)}) exceed the exact-checker cap {size_cap}; "
            "use a sampling estimate or reduce the instance"
        )
    nx, ny = len(xs), len(ys)
    if nx == 0 or ny == 0:
        return REGULAR
    a_min, b_min = size_threshold(eps, nx), size_threshold(eps, ny)
    if a_min > nx or b_min > ny:
        return REGULAR

    d = Fraction(edge_count(xs, ys, G), nx * ny)
    p, q = d.numerator, d.denominator
    r, s = eps.numerator, eps.denominator

    xindex = {x: i for i, x in enumerate(xs)}
    nbr = np.zeros(ny, dtype=np.uint64)
    for j, y in enumerate(ys):
        bits = 0
        for x in G.neighbors(y):
            i = xindex.get(x)
            if i is not None:
                bits |= 1 << i
        nbr[j] = bits

    bs = np.arange(b_min, ny + 1, dtype=np.int64)
    cols = bs - 1
    # exact test dev > eps  <=>  devnum * s > r * q * a * b
    bound_scale = max(nx * ny * q, 1)
    exact_int64 = s * bound_scale * 2 < 2**62 and r * q * nx * ny < 2**62

    best = -1.0
    cands: list[tuple[int, int, bool]] = []  # (mask, b, top)
    irregular = False
    total = 1 << nx
    for lo in range(0, total, _CHUNK):
        masks = np.arange(lo, min(total, lo + _CHUNK), dtype=np.uint64)
        sizes = np.bitwise_count(masks).astype(np.int64)
        keep = sizes >= a_min
        if not keep.any():
            continue
        masks, sizes = masks[keep], sizes[keep]
        deg = np.bitwise_count(masks[:, None] & nbr[None, :]).astype(np.int64)
        srt = np.sort(deg, axis=1)
        bottom = np.cumsum(srt, axis=1)[:, cols]
        top = np.cumsum(srt[:, ::-1], axis=1)[:, cols]
        ab = sizes[:, None] * bs[None, :]
        pab = p * ab
        dev_top = top * q - pab
        dev_bot = pab - bottom * q
        devnum = np.maximum(dev_top, dev_bot)
        if exact_int64:
            viol = devnum * s > r * q * ab
        else:
            viol = devnum.astype(object) * s > (ab.astype(object) * (r * q))
        if not viol.any():
            continue
        irregular = True
        scaled = np.where(viol, devnum / ab, -1.0)
        cmax = float(scaled.max())
        if cmax < best - _TIE_TOL:
            continue
        if cmax > best + _TIE_TOL:
            cands = []
        best = max(best, cmax)
        rows, cs = np.nonzero(scaled >= best - _TIE_TOL)
        for i, c in zip(rows.tolist(), cs.tolist()):
            m = int(masks[i])
            b = int(bs[c])
            if dev_top[i, c] == devnum[i, c]:
                cands.append((m, b, True))
            if dev_bot[i, c] == devnum[i, c]:
                cands.append((m, b, False))

    if not irregular:
        return REGULAR

    witnesses = []
    for m, b, is_top in cands:
        A = frozenset(x for i, x in enumerate(xs) if m >> i & 1)
        deg = np.bitwise_count(np.uint64(m) & nbr).astype(np.int64)
        B = _canonical_B(ys, deg, b, is_top)
        dens = Fraction(edge_count(A, B, G), len(A) * len(B))
        witnesses.append(Witness(A, B, abs(dens - d)))
    top_dev = max(w.deviation for w in witnesses)
    best_w = min((w for w in witnesses if w.deviation == top_dev), key=Witness.key)
    assert best_w.deviation > eps
    return RegularityOutcome(False, best_w)


def is_regular_pair(X, Y, G: UGraph, eps, size_cap: int = DEFAULT_SIZE_CAP) -> bool:
    return check_regular_pair(X, Y, G, eps, size_cap).regular


def _require_partition(G: UGraph, P) -> VertexPartition:
    if not isinstance(P, VertexPartition):
        P = VertexPartition.of(P, G.vertices) if is_partition(G.vertices, P) else None
    if P is None or P.ground != G.vertices:
        raise PartitionError("partition does not partition the graph's vertex set")
    return P


def irregular_witnesses(eps, G: UGraph, P, size_cap: int = DEFAULT_SIZE_CAP) -> dict:
    """One entry per unordered irregular pair ``{R, S}`` (diagonal included).

    Keys are ``(R, S)`` with ``R`` ordered before ``S`` by minimum element;
    values are the witnesses for ``check_regular_pair(R, S)``.
    """
    eps = _check_eps(eps)
    parts = _require_partition(G, P).ordered()
    out = {}
    for i, R in enumerate(parts):
        for S in parts[i:]:
            res = check_regular_pair(R, S, G, eps, size_cap)
            if not res.regular:
                out[(R, S)] = res.witness
    return out


def irregular_set(eps, G: UGraph, P, size_cap: int = DEFAULT_SIZE_CAP) -> set[tuple[frozenset, frozenset]]:
    """Ordered pairs of parts that are not eps-regular, diagonal pairs included."""
    pairs = set()
    for R, S in irregular_witnesses(eps, G, P, size_cap):
        pairs.add((R, S))
        pairs.add((S, R))
    return pairs


def _defect(pairs) -> int:
    return sum(len(R) * len(S) for R, S in pairs)


def is_regular_partition(eps, G: UGraph, P, size_cap: int = DEFAULT_SIZE_CAP) -> tuple[bool, Fraction]:
    """Return ``(verdict, defect)`` where defect sums ``|R||S|`` over irregular ordered pairs."""
    eps = _check_eps(eps)
    if G.n == 0:
        raise DomainError("graph has no vertices")
    defect = Fraction(_defect(irregular_set(eps, G, P, size_cap)))
    return defect <= eps * G.n * G.n, defect


def _refine_from_witnesses(P: VertexPartition, witnesses: dict) -> VertexPartition:
    family: dict[frozenset, list] = {R: [] for R in P.parts}
    for (R, S), w in witnesses.items():
        family[R].append(p2(w.A, R))
        family[S].append(p2(w.B, S))
    parts = set()
    for R, splits in family.items():
        parts |= common_refinement(R, splits).parts
    return VertexPartition(P.ground, frozenset(parts))


def refine_step(G: UGraph, P, eps, size_cap: int = DEFAULT_SIZE_CAP) -> VertexPartition:
    """Refine an eps-irregular partition along the witnesses of its irregular pairs.

    Every irregular unordered pair ``{R, S}`` with witness ``(A, B)`` contributes
    the split ``p2(A, R)`` to ``R`` and ``p2(B, S)`` to ``S``; each part is then
    cut by the common refinement of the splits it received. A part takes at
    most one split per other part and two from its diagonal pair, hence at most
    ``2^(k+1)`` pieces.
    """
    eps = _check_eps(eps)
    P = _require_partition(G, P)
    wit = irregular_witnesses(eps, G, P, size_cap)
    defect = 2 * _defect(wit) - sum(len(R) ** 2 for R, S in wit if R == S)
    if defect <= eps * G.n * G.n:
        raise DomainError("partition is already eps-regular; nothing to refine")
    return _refine_from_witnesses(P, wit)


def iteration_cap(eps) -> int:
    """``ceil(eps^-5)``: energy lies in [0, 1] and each refinement adds at least eps^5."""
    eps = _check_eps(eps)
    return ceil_frac(1 / eps**5)


# -- tower bound ----------------------------------------------------------------

def _grow(k: int) -> int:
    return k << (k + 1)  # k * 2^(k+1)


def partition_count_bound(steps: int, start: int = 1) -> int:
    """Iterate ``k -> k * 2^(k+1)`` ``steps`` times from ``start`` (exact)."""
    k = start
    for _ in range(steps):
        k = _grow(k)
    return k


def tower_bound(eps, max_digits: int = 100_000) -> int:
    """Part-count bound after ``ceil(eps^-5)`` refinements of the trivial partition.

    Raises :class:`BoundTooLarge` once the value would exceed ``max_digits``
    decimal digits; for any eps below about 0.8 it is a tower of exponentials.
    """
    steps = iteration_cap(eps)
    max_bits = max_digits * 3322 // 1000 + 1
    k = 1
    for _ in range(steps):
        if k + 1 + k.bit_length() > max_bits:
            raise BoundTooLarge(
                f"tower bound for eps={eps} ({steps} iterations) exceeds {max_digits} digits", steps
            )
        k = _grow(k)
    return k


def within_iterated_bound(count: int, steps: int, start: int = 1) -> bool:
    """Exact ``count <= partition_count_bound(steps, start)``, stopping as soon as it is decided."""
    k = start
    for _ in range(steps):
        if k >= count:
            return True
        k = _grow(k)
    return count <= k


def within_tower_bound(count: int, eps) -> bool:
    """Exact ``count <= tower_bound(eps)`` without materialising the tower."""
    return within_iterated_bound(count, iteration_cap(eps))


def le_tower_check(k: int) -> bool:
    """``k * 2^(k+1) <= 2^(2^k)`` in exact integers."""
    return k * 2 ** (k + 1) <= 2 ** (2**k)


def loose_tower_check(k: int) -> bool:
    """The weaker per-part bound variant ``k * 2^(2k) <= 2^(2^k)``; false at k = 2."""
    return k * 2 ** (2 * k) <= 2 ** (2**k)


# -- the iteration ----------------------------------------------------------------

@dataclass
class SrlResult:
    epsilon: Fraction
    partition: VertexPartition
    iterations: int
    energy_trajectory: list[Fraction]
    defect: Fraction
    iteration_cap: int
    part_bound: int | None
    certified: bool
    part_counts: list[int] = field(default_factory=list)

    def within_bound(self) -> bool:
        """Part count respects the bound for the refinements actually performed."""
        return within_iterated_bound(len(self.partition), self.iterations, self.part_counts[0])

    def to_report(self) -> dict:
        return {
            "epsilon": to_json(self.epsilon),
            "iterations": self.iterations,
            "iteration_cap": self.iteration_cap,
            "energy_trajectory": [to_json(e) for e in self.energy_trajectory],
            "part_counts": self.part_counts,
            "partition": self.partition.as_lists(),
            "defect": to_json(self.defect),
            "part_bound": None if self.part_bound is None else str(self.part_bound),
            "within_tower_bound": self.within_bound(),
            "certified": self.certified,
        }


def szemeredi_partition(
    G: UGraph, eps, initial=None, size_cap: int = DEFAULT_SIZE_CAP, max_digits: int = 2_000
) -> SrlResult:
    """Refine until the partition is eps-regular, certifying each step exactly."""
    eps = _check_eps(eps)
    if G.n == 0:
        raise DomainError("graph has no vertices")
    P = VertexPartition.trivial(G.vertices) if initial is None else _require_partition(G, initial)
    cap = iteration_cap(eps)
    gain = eps**5
    energy = mean_square_density(G, P)
    traj, counts = [energy], [len(P)]
    n2 = G.n * G.n
    it = 0
    while True:
        wit = irregular_witnesses(eps, G, P, size_cap)
        defect = Fraction(2 * _defect(wit) - sum(len(R) ** 2 for R, S in wit if R == S))
        log.debug("iteration %d: %d parts, defect %s, energy %s", it, len(P), defect, energy)
        if defect <= eps * n2:
            break
        if it >= cap:
            raise RuntimeError(f"exceeded {cap} refinements; energy bound violated")
        k = len(P)
        Q = _refine_from_witnesses(P, wit)
        new_energy = mean_square_density(G, Q)
        if new_energy < energy + gain or len(Q) > k * 2 ** (k + 1):
            raise RuntimeError("refinement postcondition failed")
        P, energy = Q, new_energy
        traj.append(energy)
        counts.append(len(P))
        it += 1

    try:
        part_bound = tower_bound(eps, max_digits) if initial is None else None
    except BoundTooLarge:
        part_bound = None
    return SrlResult(
        epsilon=eps,
        partition=P,
        iterations=it,
        energy_trajectory=traj,
        defect=defect,
        iteration_cap=cap,
        part_bound=part_bound,
        certified=True,
        part_counts=counts,
    )
