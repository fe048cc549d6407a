"""Nearest-neighbor semantics and the admissibility signature of a subset.

This module is the ground truth the dynamic program is checked against, so
it favors the literal definitions over speed.
"""

from __future__ import annotations

from typing import Collection, Iterable, NamedTuple, Sequence

from .graph import INF, ColoredTree, ExtDist, RootedView, distance_matrix

__all__ = [
    "StateTuple",
    "color_mask",
    "mask_colors",
    "nearest_set",
    "is_vertex_consistent",
    "is_consistent_subset",
    "is_consistent_by_color",
    "first_inconsistent",
    "signature",
    "admissible_signature",
]


class StateTuple(NamedTuple):
    """Summary of a subset ``S`` inside a rooted subtree with root ``v``.

    ``ell`` is ``dist(v, S)``; ``L`` the colors of the nearest members of S
    as seen from ``v``; ``H`` the colors with an inconsistent vertex; ``r``
    the per-color slack bounds (``r[i-1]`` for color ``i``).  ``L`` and ``H``
    are bitmasks, bit ``i-1`` standing for color ``i``.
    """

    ell: ExtDist
    L: int
    H: int
    r: tuple[ExtDist, ...]

    def describe(self) -> str:
        def fmt(x):
            return "inf" if x == INF else str(x)

        return "({}, {{{}}}, {{{}}}, {})".format(
            fmt(self.ell),
            ",".join(map(str, mask_colors(self.L))),
            ",".join(map(str, mask_colors(self.H))),
            ", ".join(map(fmt, self.r)),
        )


def color_mask(colors: Iterable[int]) -> int:
    m = 0
    for c in colors:
        m |= 1 << (c - 1)
    return m


def mask_colors(mask: int) -> list[int]:
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def _dist_to(D, w: int, S: Collection[int]) -> ExtDist:
    row = D[w - 1]
    return min((row[s - 1] for s in S), default=INF)


def nearest_set(tree: ColoredTree, S: Collection[int], u: int, D=None) -> set[int]:
    if not S:
        return set()
    D = D if D is not None else distance_matrix(tree)
    best = _dist_to(D, u, S)
    row = D[u - 1]
    return {s for s in S if row[s - 1] == best}


def is_vertex_consistent(tree: ColoredTree, S: Collection[int], u: int, D=None) -> bool:
    cu = tree.colors[u - 1]
    return any(tree.colors[w - 1] == cu for w in nearest_set(tree, S, u, D))


def first_inconsistent(tree: ColoredTree, S: Collection[int], D=None) -> int | None:
    """Smallest inconsistent vertex, or ``None`` when ``S`` is consistent."""
    D = D if D is not None else distance_matrix(tree)
    for u in tree.vertices():
        if not is_vertex_consistent(tree, S, u, D):
            return u
    return None


def is_consistent_subset(tree: ColoredTree, S: Collection[int], D=None) -> bool:
    return first_inconsistent(tree, S, D) is None


def is_consistent_by_color(tree: ColoredTree, S: Collection[int], D=None) -> bool:
    """Same predicate phrased per color: every color class is consistent."""
    D = D if D is not None else distance_matrix(tree)
    return all(
        all(is_vertex_consistent(tree, S, w, D) for w in tree.color_class(i))
        for i in range(1, tree.k + 1)
    )


def signature(tree: ColoredTree, vertices: Sequence[int], v: int,
              S: Collection[int], D=None) -> StateTuple:
    """Admissibility tuple of ``S`` in the connected subtree ``vertices`` seen from ``v``.

    ``vertices`` must induce a connected subtree containing ``v`` (for
    instance a full subtree ``T_v`` or a child-prefix of it), so tree
    distances equal distances inside it.
    """
    D = D if D is not None else distance_matrix(tree)
    S = list(S)
    colors = tree.colors
    k = tree.k
    ell = _dist_to(D, v, S)
    rowv = D[v - 1]
    L = color_mask(colors[s - 1] for s in S if rowv[s - 1] == ell)

    H = 0
    worst: list[ExtDist | None] = [None] * k       # max slack, all vertices of a color
    tightest: list[ExtDist] = [INF] * k            # min slack, inconsistent vertices only
    for w in vertices:
        row = D[w - 1]
        dws = min((row[s - 1] for s in S), default=INF)
        cw = colors[w - 1]
        ok = any(colors[s - 1] == cw for s in S if row[s - 1] == dws)
        slack = dws - row[v - 1]
        i = cw - 1
        if worst[i] is None or slack > worst[i]:
            worst[i] = slack
        if not ok:
            H |= 1 << i
            if slack < tightest[i]:
                tightest[i] = slack
    r = []
    for i in range(k):
        x = tightest[i] if H >> i & 1 else (worst[i] if worst[i] is not None else 0)
        r.append(max(0, x))
    return StateTuple(ell, L, H, tuple(r))


def admissible_signature(view: RootedView, v: int, S: Collection[int], D=None) -> StateTuple:
    """Signature of ``S`` (a subset of ``T_v``) within the subtree rooted at ``v``."""
    return signature(view.tree, view.subtree(v), v, S, D)
