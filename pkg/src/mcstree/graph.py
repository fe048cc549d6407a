"""Vertex-colored trees: the instance model, file format, distances and rooting.

Vertices are numbered ``1..n`` and colors ``1..k`` everywhere in the public
API.  Per-vertex sequences (``colors``, the result of :func:`bfs_distances`)
are indexed by ``vertex - 1``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

__all__ = [
    "INF",
    "ExtDist",
    "inc",
    "monus",
    "ParseError",
    "ValidationError",
    "ColoredTree",
    "RootedView",
    "parse_instance",
    "serialize",
    "bfs_distances",
    "distance_matrix",
    "root_view",
]

MAGIC = "mcs"
FORMAT_VERSION = 1

# Extended distances are plain ints plus ``INF``; float('inf') already
# absorbs increments and orders above every int.
INF = math.inf
ExtDist = Union[int, float]


def inc(x: ExtDist) -> ExtDist:
    """``x + 1`` with ``INF + 1 == INF``."""
    return x + 1


def monus(x: ExtDist, y: int = 1) -> ExtDist:
    """Saturating subtraction: never below zero, ``INF`` absorbing."""
    return x - y if x > y else 0


class ParseError(ValueError):
    """Syntactically malformed instance text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ValidationError(ValueError):
    """Well-formed text that does not describe a valid colored tree."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class ColoredTree:
    n: int
    k: int
    colors: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        # normalize edges so equality does not depend on input orientation/order
        edges = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "colors", tuple(self.colors))
        _validate(self.n, self.k, self.colors, edges)
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in edges:
            adj[u - 1].append(v)
            adj[v - 1].append(u)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))

    @classmethod
    def from_edges(cls, colors: Sequence[int], edges: Iterable[tuple[int, int]],
                   k: int | None = None) -> "ColoredTree":
        colors = tuple(colors)
        return cls(len(colors), k if k is not None else max(colors), colors, tuple(edges))

    def color(self, u: int) -> int:
        return self.colors[u - 1]

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adjacency[u - 1]

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def color_class(self, i: int) -> frozenset[int]:
        """All vertices colored ``i``."""
        return frozenset(u for u in self.vertices() if self.colors[u - 1] == i)

    def recolored(self, colors: Sequence[int], k: int | None = None) -> "ColoredTree":
        return ColoredTree(self.n, self.k if k is None else k, tuple(colors), self.edges)


def _validate(n, k, colors, edges, edge_lines=None):
    if n < 1:
        raise ValidationError(f"vertex count must be positive, got {n}")
    if k < 1:
        raise ValidationError(f"color count must be positive, got {k}")
    if len(colors) != n:
        raise ValidationError(f"expected {n} colors, got {len(colors)}")
    for u, c in enumerate(colors, 1):
        if not 1 <= c <= k:
            raise ValidationError(f"color {c} of vertex {u} outside 1..{k}")
    if len(edges) != n - 1:
        raise ValidationError(f"expected {n - 1} edges, got {len(edges)}")
    # union-find catches cycles, duplicates and (by edge count) disconnection
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for idx, (u, v) in enumerate(edges):
        line = edge_lines[idx] if edge_lines else None
        for x in (u, v):
            if not 1 <= x <= n:
                raise ValidationError(f"vertex {x} outside 1..{n}", line)
        if u == v:
            raise ValidationError(f"self-loop at vertex {u}", line)
        ru, rv = find(u), find(v)
        if ru == rv:
            raise ValidationError(f"edge {u}-{v} closes a cycle or duplicates an edge", line)
        parent[ru] = rv


def _ints(tokens: list[str], line: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", line) from None


def parse_instance(text: str) -> ColoredTree:
    """Parse the ``mcs 1`` instance format into a validated tree."""
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].split()
        if body:
            rows.append((lineno, body))
    if not rows:
        raise ParseError("empty instance")

    lineno, head = rows[0]
    if head != [MAGIC, str(FORMAT_VERSION)]:
        raise ParseError(f"expected header '{MAGIC} {FORMAT_VERSION}', got {' '.join(head)!r}", lineno)
    if len(rows) < 3:
        raise ParseError("missing size or color line", rows[-1][0])

    lineno, size = rows[1]
    if len(size) != 2:
        raise ParseError("size line must be 'n k'", lineno)
    n, k = _ints(size, lineno)
    if n < 1 or k < 1:
        raise ValidationError("n and k must be positive", lineno)

    lineno, color_tokens = rows[2]
    colors = _ints(color_tokens, lineno)
    if len(colors) != n:
        raise ValidationError(f"expected {n} colors, got {len(colors)}", lineno)
    for u, c in enumerate(colors, 1):
        if not 1 <= c <= k:
            raise ValidationError(f"color {c} of vertex {u} outside 1..{k}", lineno)

    edges, edge_lines = [], []
    for lineno, tokens in rows[3:]:
        if len(tokens) != 2:
            raise ParseError("edge line must be 'u v'", lineno)
        u, v = _ints(tokens, lineno)
        edges.append((u, v))
        edge_lines.append(lineno)
    if len(edges) != n - 1:
        raise ValidationError(f"expected {n - 1} edges, got {len(edges)}",
                              edge_lines[-1] if edge_lines else rows[2][0])
    _validate(n, k, colors, edges, edge_lines)
    return ColoredTree(n, k, tuple(colors), tuple(edges))


def serialize(tree: ColoredTree) -> str:
    lines = [f"{MAGIC} {FORMAT_VERSION}", f"{tree.n} {tree.k}", " ".join(map(str, tree.colors))]
    lines.extend(f"{u} {v}" for u, v in tree.edges)
    return "\n".join(lines) + "\n"


def bfs_distances(tree: ColoredTree, source: int) -> list[int]:
    dist = [-1] * tree.n
    dist[source - 1] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        d = dist[u - 1] + 1
        for w in tree.adjacency[u - 1]:
            if dist[w - 1] < 0:
                dist[w - 1] = d
                queue.append(w)
    return dist


def distance_matrix(tree: ColoredTree) -> list[list[int]]:
    """All-pairs distances, 0-based: ``D[u-1][w-1]``."""
    return [bfs_distances(tree, s) for s in tree.vertices()]


@dataclass(frozen=True)
class RootedView:
    tree: ColoredTree
    root: int
    parent: tuple[int, ...]          # parent[u-1]; 0 for the root
    children: tuple[tuple[int, ...], ...]
    post_order: tuple[int, ...]

    def children_of(self, u: int) -> tuple[int, ...]:
        return self.children[u - 1]

    def parent_of(self, u: int) -> int | None:
        p = self.parent[u - 1]
        return p or None

    def subtree(self, v: int) -> list[int]:
        """Vertices of the subtree rooted at ``v`` in preorder."""
        out, stack = [], [v]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(reversed(self.children[u - 1]))
        return out


def root_view(tree: ColoredTree, root: int = 1) -> RootedView:
    if not 1 <= root <= tree.n:
        raise ValueError(f"root {root} outside 1..{tree.n}")
    parent = [0] * tree.n
    children: list[tuple[int, ...]] = [()] * tree.n
    order = [root]
    seen = [False] * tree.n
    seen[root - 1] = True
    for u in order:  # BFS; list grows while iterating
        kids = []
        for w in tree.adjacency[u - 1]:
            if not seen[w - 1]:
                seen[w - 1] = True
                parent[w - 1] = u
                kids.append(w)
                order.append(w)
        children[u - 1] = tuple(kids)  # adjacency is sorted, so ascending

    post: list[int] = []
    stack = [(root, False)]
    while stack:
        u, done = stack.pop()
        if done:
            post.append(u)
            continue
        stack.append((u, True))
        stack.extend((c, False) for c in reversed(children[u - 1]))
    return RootedView(tree, root, tuple(parent), tuple(children), tuple(post))
