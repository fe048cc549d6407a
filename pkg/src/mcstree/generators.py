"""Seeded instance generation and exhaustive labeled-tree enumeration.

Randomness comes from SplitMix64 so that fixtures are reproducible without
relying on any runtime's library RNG:

    state += 0x9E3779B97F4A7C15
    z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    output z ^ (z >> 31)                       (all arithmetic mod 2**64)

Bounded draws use rejection sampling on the raw 64-bit output.
"""

from __future__ import annotations

import heapq
import itertools
from collections import deque
from dataclasses import dataclass
from math import isqrt
from typing import Iterator, Sequence

from .graph import ColoredTree

__all__ = [
    "FAMILIES",
    "COLORINGS",
    "InvalidSpec",
    "InstanceTooLarge",
    "SplitMix64",
    "GenSpec",
    "generate",
    "prufer_decode",
    "prufer_encode",
    "random_tree_edges",
    "enumerate_labeled_trees",
]

MASK64 = (1 << 64) - 1
FAMILIES = ("random", "path", "star", "caterpillar", "spider", "binary")
COLORINGS = ("uniform-random", "alternating", "blocks")
MAX_ENUMERATE_N = 7


class InvalidSpec(ValueError):
    pass


class InstanceTooLarge(ValueError):
    pass


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, m: int) -> int:
        """Uniform integer in ``[0, m)``."""
        if m <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % m
        while True:
            x = self.next_u64()
            if x < limit:
                return x % m


@dataclass(frozen=True)
class GenSpec:
    family: str = "random"
    n: int = 10
    k: int = 2
    seed: int = 0
    coloring: str = "uniform-random"

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise InvalidSpec(f"unknown family {self.family!r}")
        if self.coloring not in COLORINGS:
            raise InvalidSpec(f"unknown coloring {self.coloring!r}")
        if self.n < 1 or self.k < 1:
            raise InvalidSpec("n and k must be positive")
        if self.coloring != "uniform-random" and self.k > self.n:
            raise InvalidSpec(f"coloring {self.coloring!r} needs k <= n")


def prufer_decode(seq: Sequence[int], n: int) -> list[tuple[int, int]]:
    """Edges of the labeled tree on ``1..n`` with Prüfer sequence ``seq``."""
    if n == 1:
        return []
    if len(seq) != n - 2:
        raise ValueError(f"Prüfer sequence for n={n} must have length {n - 2}")
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    leaves = [u for u in range(1, n + 1) if degree[u] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, w = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, w))
    return edges


def prufer_encode(edges: Sequence[tuple[int, int]], n: int) -> list[int]:
    adj: list[set[int]] = [set() for _ in range(n + 1)]
    for u, w in edges:
        adj[u].add(w)
        adj[w].add(u)
    leaves = [u for u in range(1, n + 1) if len(adj[u]) == 1]
    heapq.heapify(leaves)
    seq = []
    for _ in range(n - 2):
        leaf = heapq.heappop(leaves)
        (nb,) = adj[leaf]
        seq.append(nb)
        adj[nb].discard(leaf)
        adj[leaf].clear()
        if len(adj[nb]) == 1:
            heapq.heappush(leaves, nb)
    return seq


def random_tree_edges(n: int, rng: SplitMix64) -> list[tuple[int, int]]:
    """Uniform random labeled tree via a random Prüfer sequence."""
    if n <= 2:
        return [(1, 2)] if n == 2 else []
    return prufer_decode([rng.below(n) + 1 for _ in range(n - 2)], n)


def _family_edges(family: str, n: int, rng: SplitMix64) -> list[tuple[int, int]]:
    if family == "random":
        return random_tree_edges(n, rng)
    if family == "path":
        return [(u, u + 1) for u in range(1, n)]
    if family == "star":
        return [(1, u) for u in range(2, n + 1)]
    if family == "binary":
        return [(u // 2, u) for u in range(2, n + 1)]
    if family == "caterpillar":
        spine = max(1, (n + 1) // 2)
        edges = [(u, u + 1) for u in range(1, spine)]
        edges += [(rng.below(spine) + 1, u) for u in range(spine + 1, n + 1)]
        return edges
    if family == "spider":
        legs = max(1, isqrt(n - 1)) if n > 1 else 1
        tips = [1] * legs
        edges = []
        for u in range(2, n + 1):
            leg = (u - 2) % legs
            edges.append((tips[leg], u))
            tips[leg] = u
        return edges
    raise InvalidSpec(f"unknown family {family!r}")


def _bfs_order(n: int, edges: list[tuple[int, int]]) -> list[int]:
    adj: list[list[int]] = [[] for _ in range(n + 1)]
    for u, w in edges:
        adj[u].append(w)
        adj[w].append(u)
    order, seen = [1], {1}
    queue = deque([1])
    while queue:
        u = queue.popleft()
        for w in sorted(adj[u]):
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


def _coloring(spec: GenSpec, edges, rng: SplitMix64) -> list[int]:
    n, k = spec.n, spec.k
    if spec.coloring == "uniform-random":
        return [rng.below(k) + 1 for _ in range(n)]
    if spec.coloring == "alternating":
        return [(u - 1) % k + 1 for u in range(1, n + 1)]
    # blocks: contiguous runs along the BFS order from vertex 1; vertex 1 alone
    # keeps color 1 and every color appears when k <= n
    colors = [0] * n
    for p, u in enumerate(_bfs_order(n, edges)):
        colors[u - 1] = 1 if n == 1 else 1 + -(-p * (k - 1) // (n - 1))
    return colors


def generate(spec: GenSpec) -> ColoredTree:
    spec.validate()
    rng = SplitMix64(spec.seed)
    edges = _family_edges(spec.family, spec.n, rng)
    colors = _coloring(spec, edges, rng)
    return ColoredTree(spec.n, spec.k, tuple(colors), tuple(edges))


def enumerate_labeled_trees(n: int) -> Iterator[ColoredTree]:
    """Every labeled tree on ``1..n`` once, monochromatic (k = 1)."""
    if n < 1:
        raise InvalidSpec("n must be positive")
    if n > MAX_ENUMERATE_N:
        raise InstanceTooLarge(f"n={n} exceeds enumeration cap {MAX_ENUMERATE_N}")
    if n <= 2:
        yield ColoredTree(n, 1, (1,) * n, ((1, 2),) if n == 2 else ())
        return
    for seq in itertools.product(range(1, n + 1), repeat=n - 2):
        yield ColoredTree(n, 1, (1,) * n, tuple(prufer_decode(seq, n)))
