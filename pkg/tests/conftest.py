import random

import pytest

from regularity.graph import make_graph, random_graph
from regularity.partition import VertexPartition

# criterion id -> (passed, detail); filled by test_acceptance, printed at the end
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def random_partition(vs, rng: random.Random, max_parts=None) -> VertexPartition:
    vs = sorted(vs)
    k = rng.randint(1, max_parts or max(1, len(vs)))
    labels = {v: rng.randrange(k) for v in vs}
    blocks: dict[int, set] = {}
    for v, b in labels.items():
        blocks.setdefault(b, set()).add(v)
    return VertexPartition.of(blocks.values(), vs)


def random_corpus_graph(rng: random.Random, n_lo: int, n_hi: int):
    n = rng.randint(n_lo, n_hi)
    from fractions import Fraction

    p = Fraction(rng.randint(1, 9), 10)
    return random_graph(n, p, rng.randrange(2**31))


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture
def k3():
    return make_graph(range(3), [(0, 1), (1, 2), (0, 2)])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE, key=lambda c: int(c[1:])):
        ok, detail = ACCEPTANCE[cid]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {cid}: {detail}")
