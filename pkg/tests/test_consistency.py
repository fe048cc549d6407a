import random
from itertools import chain, combinations, product

from hypothesis import given, strategies as st

from mcstree.consistency import (StateTuple, admissible_signature, color_mask, first_inconsistent,
                                 is_consistent_by_color, is_consistent_subset,
                                 is_vertex_consistent, mask_colors, nearest_set, signature)
from mcstree.generators import enumerate_labeled_trees
from mcstree.graph import INF, ColoredTree, distance_matrix, root_view

from .conftest import colored_trees, random_tree, rooted_shapes


def subsets(items):
    items = list(items)
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


def test_masks():
    assert color_mask([1, 3]) == 0b101
    assert mask_colors(0b101) == [1, 3]
    assert mask_colors(0) == []


def test_nearest_set(t_c):
    assert nearest_set(t_c, {2}, 2) == {2}
    assert nearest_set(t_c, set(), 2) == set()
    assert nearest_set(t_c, {1, 3}, 2) == {1, 3}
    assert nearest_set(t_c, {1, 3}, 1) == {1}


def test_vertex_consistency(t_b):
    assert is_vertex_consistent(t_b, {1}, 1)
    assert not is_vertex_consistent(t_b, {1}, 2)
    assert not is_vertex_consistent(t_b, set(), 1)


def test_subset_consistency(t_c):
    assert is_consistent_subset(t_c, {1, 2, 3})
    assert not is_consistent_subset(t_c, {1, 2})
    assert first_inconsistent(t_c, {1, 2}) == 3
    mono = ColoredTree.from_edges([1] * 5, [(1, 2), (1, 3), (3, 4), (3, 5)])
    assert all(is_consistent_subset(mono, {u}) for u in mono.vertices())


@given(colored_trees(), st.data())
def test_members_are_consistent(tree, data):
    S = data.draw(st.sets(st.integers(1, tree.n)))
    for u in S:
        assert is_vertex_consistent(tree, S, u)


@given(colored_trees())
def test_full_set_consistent(tree):
    assert is_consistent_subset(tree, set(tree.vertices()))
    assert not is_consistent_subset(tree, set())


def test_vertex_and_color_formulations_agree():
    rng = random.Random(7)
    for _ in range(300):
        tree = random_tree(rng, rng.randint(1, 9), rng.randint(1, 3))
        D = distance_matrix(tree)
        S = {u for u in tree.vertices() if rng.random() < 0.4}
        assert is_consistent_subset(tree, S, D) == is_consistent_by_color(tree, S, D)


def test_signature_leaf_cases():
    tree = ColoredTree(1, 3, (2,), ())
    view = root_view(tree, 1)
    assert admissible_signature(view, 1, {1}) == StateTuple(0, 0b010, 0, (0, 0, 0))
    assert admissible_signature(view, 1, set()) == StateTuple(INF, 0, 0b010, (0, INF, 0))


def test_signature_edge_with_root_selected():
    # v colored 1, its child colored 2, S = {v}: the child is inconsistent with slack 1 - 1
    tree = ColoredTree(2, 2, (1, 2), ((1, 2),))
    assert admissible_signature(root_view(tree, 1), 1, {1}) == StateTuple(0, 0b01, 0b10, (0, 0))


def test_signature_uses_aggregate_clamp():
    # path a(1) - v(1) - b(2) seen from v with S = {b}: both color-1 vertices are
    # inconsistent; slacks are 1 (v) and 2 - 1 = 1 (a)
    tree = ColoredTree(3, 2, (1, 1, 2), ((1, 2), (2, 3)))
    t = signature(tree, [1, 2, 3], 2, {3})
    assert t == StateTuple(1, 0b10, 0b01, (1, 0))


def _check_invariants(t: StateTuple, n: int, k: int):
    assert (t.ell == INF) == (t.L == 0)
    if t.ell == INF:
        for i in range(k):
            assert t.r[i] == (INF if t.H >> i & 1 else 0)
    for x in t.r:
        assert x == INF or 0 <= x <= n
    assert t.L < 1 << k and t.H < 1 << k


def test_signature_invariants_exhaustive():
    """All rooted shapes with n <= 6, all colorings with k <= 3, all subsets."""
    for n in range(1, 7):
        for skeleton, root in rooted_shapes(n):
            verts = root_view(skeleton, root).subtree(root)
            D = distance_matrix(skeleton)
            for k in (1, 2, 3):
                for colors in product(range(1, k + 1), repeat=n):
                    tree = skeleton.recolored(colors, k)
                    for S in subsets(verts):
                        _check_invariants(signature(tree, verts, root, S, D), n, k)
