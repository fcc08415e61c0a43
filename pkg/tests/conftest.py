import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from quivertoric import Quiver
from quivertoric.corpus import random_corpus
from quivertoric.quiver import Bundle

sys.path.insert(0, str(Path(__file__).parent))

CORPUS_SEED = 20240611


@pytest.fixture(scope="session")
def corpus():
    return random_corpus(100, seed=CORPUS_SEED)


@pytest.fixture
def example_quiver():
    return Quiver.from_edges([("a", "c", 3), ("b", "c", 2), ("b", "d", 2), ("a", "d", 1)], ["a", "b", "c", "d"])


def kronecker(m):
    return Quiver.from_edges([("a", "b", m)])


@st.composite
def quivers(draw, max_vertices=5, max_arrows=8):
    """Connected quivers without directed cycles; arrows point forward in a drawn order."""
    n = draw(st.integers(1, max_vertices))
    names = [chr(ord("a") + i) for i in range(n)]
    order = draw(st.permutations(names))
    pos = {v: i for i, v in enumerate(order)}

    def forward(u, v):
        return (u, v) if pos[u] < pos[v] else (v, u)

    pairs = [forward(order[i], order[draw(st.integers(0, i - 1))]) for i in range(1, n)]
    candidates = [forward(u, v) for i, u in enumerate(names) for v in names[i + 1:]]
    candidates = [p for p in candidates if p not in pairs]
    room = max_arrows - len(pairs)
    if candidates and room > 0:
        pairs += draw(st.lists(st.sampled_from(candidates), unique=True, max_size=min(room, len(candidates))))
    pairs = draw(st.permutations(pairs))
    mults = [1] * len(pairs)
    if pairs:
        for i in draw(st.lists(st.integers(0, len(pairs) - 1), max_size=max_arrows - len(pairs))):
            mults[i] += 1
    return Quiver(tuple(names), tuple(Bundle(s, t, m) for (s, t), m in zip(pairs, mults)))


# acceptance summary lines, filled in by test_acceptance.py
ACCEPTANCE_RESULTS: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: (int(k.rstrip("abc")), k)):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[key])
