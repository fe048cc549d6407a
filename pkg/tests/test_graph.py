import pytest
from hypothesis import given

from mcstree.graph import (INF, ColoredTree, ParseError, ValidationError, bfs_distances,
                           inc, monus, parse_instance, root_view, serialize)

from .conftest import colored_trees

T_C_TEXT = """\
mcs 1
# path of three
3 2
2 1 2
1 2
2 3   # trailing comment
"""


def test_parse_single_vertex():
    tree = parse_instance("mcs 1\n1 1\n1\n")
    assert (tree.n, tree.k, tree.colors, tree.edges) == (1, 1, (1,), ())


def test_parse_path_round_trip(t_c):
    tree = parse_instance(T_C_TEXT)
    assert tree == t_c
    assert parse_instance(serialize(tree)) == tree


def test_serialize_is_canonical():
    tree = ColoredTree(4, 2, (1, 2, 2, 1), ((3, 1), (2, 1), (4, 2)))
    assert serialize(tree) == "mcs 1\n4 2\n1 2 2 1\n1 2\n1 3\n2 4\n"


@pytest.mark.parametrize("text, exc, line", [
    ("mcs 1\n3 2\n1 2 1\n1 2\n1 2\n", ValidationError, 5),        # duplicate edge
    ("mcs 1\n3 2\n1 2 1\n1 2\n", ValidationError, 4),             # too few edges
    ("mcs 1\n3 2\n1 3 1\n1 2\n2 3\n", ValidationError, 3),        # color out of range
    ("mcs 1\n3 2\n1 2 1\n1 2\n2 4\n", ValidationError, 5),        # vertex out of range
    ("mcs 1\n4 1\n1 1 1 1\n1 2\n2 1\n3 4\n", ValidationError, 5), # cycle, disconnected
    ("mcs 1\n2 1\n1 1\n1 1\n", ValidationError, 4),               # self-loop
    ("mcs 2\n1 1\n1\n", ParseError, 1),
    ("mcs 1\n1 x\n1\n", ParseError, 2),
    ("mcs 1\n2 1\n1 1\n1 2 3\n", ParseError, 4),
    ("", ParseError, None),
])
def test_parse_rejects(text, exc, line):
    with pytest.raises(exc) as info:
        parse_instance(text)
    assert info.value.line == line


def test_ext_dist_arithmetic():
    assert inc(INF) == INF and inc(3) == 4
    assert monus(INF) == INF
    assert monus(0) == 0 and monus(1) == 0 and monus(5) == 4
    assert 10**9 < INF


def test_bfs_distances(t_c):
    assert bfs_distances(t_c, 1) == [0, 1, 2]
    star = ColoredTree.from_edges([1, 1, 1, 1], [(1, 2), (1, 3), (1, 4)])
    assert bfs_distances(star, 2) == [1, 0, 2, 2]


@given(colored_trees())
def test_bfs_symmetric(tree):
    rows = [bfs_distances(tree, s) for s in tree.vertices()]
    for u in range(tree.n):
        assert rows[u][u] == 0
        for w in range(tree.n):
            assert rows[u][w] == rows[w][u]


@given(colored_trees())
def test_round_trip(tree):
    assert parse_instance(serialize(tree)) == tree


def test_root_view_examples(t_c):
    view = root_view(t_c, 2)
    assert view.children_of(2) == (1, 3)
    assert view.post_order == (1, 3, 2)
    assert view.parent_of(2) is None and view.parent_of(1) == 2

    single = root_view(ColoredTree(1, 1, (1,), ()), 1)
    assert single.post_order == (1,) and single.parent == (0,)

    view = root_view(t_c, 1)
    assert view.children_of(1) == (2,) and view.children_of(2) == (3,)


@given(colored_trees())
def test_root_view_invariants(tree):
    for root in tree.vertices():
        view = root_view(tree, root)
        assert sorted(view.post_order) == list(tree.vertices())
        pos = {u: i for i, u in enumerate(view.post_order)}
        for u in tree.vertices():
            kids = view.children_of(u)
            assert list(kids) == sorted(kids)
            for c in kids:
                assert view.parent_of(c) == u and pos[c] < pos[u]
        assert sum(len(c) for c in view.children) == tree.n - 1
        assert len(view.subtree(root)) == tree.n
