import random

import pytest
from hypothesis import strategies as st

from mcstree.generators import SplitMix64, prufer_decode, random_tree_edges
from mcstree.graph import ColoredTree


def path_tree(colors):
    return ColoredTree.from_edges(colors, [(u, u + 1) for u in range(1, len(colors))])


@pytest.fixture
def t_b():
    """Bi-colored edge."""
    return ColoredTree(2, 2, (1, 2), ((1, 2),))


@pytest.fixture
def t_c():
    """Path 1-2-3 colored (2, 1, 2)."""
    return ColoredTree(3, 2, (2, 1, 2), ((1, 2), (2, 3)))


def random_tree(rng: random.Random, n: int, k: int) -> ColoredTree:
    edges = random_tree_edges(n, SplitMix64(rng.getrandbits(64)))
    return ColoredTree(n, k, tuple(rng.randint(1, k) for _ in range(n)), tuple(edges))


@st.composite
def colored_trees(draw, max_n=8, max_k=3, min_n=1):
    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(1, max_k))
    seq = draw(st.lists(st.integers(1, n), min_size=max(n - 2, 0), max_size=max(n - 2, 0)))
    colors = draw(st.lists(st.integers(1, k), min_size=n, max_size=n))
    if n == 1:
        edges = []
    elif n == 2:
        edges = [(1, 2)]
    else:
        edges = prufer_decode(seq, n)
    return ColoredTree(n, k, tuple(colors), tuple(edges))


# -- acceptance reporting: one line per criterion at the end of the run --

_criteria: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.outcome == "failed":
        _criteria[name] = "PASS" if report.outcome == "passed" else report.outcome.upper()


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _criteria.items():
        terminalreporter.write_line(f"{outcome:<6} {name}")


def _canon(children, v):
    return "(" + "".join(sorted(_canon(children, c) for c in children[v - 1])) + ")"


def rooted_shapes(n):
    """One (tree, root) per isomorphism class of rooted trees on n vertices."""
    from mcstree.generators import enumerate_labeled_trees
    from mcstree.graph import root_view

    seen = {}
    for tree in enumerate_labeled_trees(n):
        for root in tree.vertices():
            key = _canon(root_view(tree, root).children, root)
            seen.setdefault(key, (tree, root))
    return list(seen.values())
