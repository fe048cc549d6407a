"""Exact dynamic program over admissibility tuples on a rooted tree.

Tables are built forward: every pair (parent-prefix tuple, child tuple)
determines the merged tuple uniquely, so only reachable tuples are stored.
Each table maps a :class:`StateTuple` to its minimum cost and a
back-reference used to rebuild an optimal subset.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Union

from .consistency import StateTuple, is_consistent_subset
from .graph import INF, ColoredTree, RootedView, distance_matrix, root_view

__all__ = [
    "InternalInconsistency",
    "CorruptTable",
    "LeafChoice",
    "Join",
    "TableEntry",
    "DPTable",
    "Solution",
    "SolveStats",
    "leaf_table",
    "left_consistent",
    "right_consistent",
    "merge",
    "combine_tables",
    "build_tables",
    "traceback",
    "prefix_vertices",
    "best_root_entry",
    "solve",
]


class InternalInconsistency(RuntimeError):
    """A traced witness failed verification; indicates a solver bug."""


class CorruptTable(RuntimeError):
    """A back-reference points at a tuple missing from its source table."""


class LeafChoice(NamedTuple):
    included: bool


class Join(NamedTuple):
    left: StateTuple
    child: StateTuple


class TableEntry(NamedTuple):
    cost: int
    back: Union[LeafChoice, Join]


@dataclass
class DPTable:
    owner: tuple[int, int]  # (vertex, number of children merged so far)
    entries: dict[StateTuple, TableEntry] = field(default_factory=dict)

    def __len__(self):
        return len(self.entries)

    def __contains__(self, t):
        return t in self.entries

    def __getitem__(self, t) -> TableEntry:
        return self.entries[t]

    def costs(self) -> dict[StateTuple, int]:
        return {t: e.cost for t, e in self.entries.items()}

    def relax(self, t: StateTuple, cost: int, back) -> None:
        old = self.entries.get(t)
        if old is None or cost < old.cost:
            self.entries[t] = TableEntry(cost, back)


@dataclass
class SolveStats:
    table_sizes: dict[int, int] = field(default_factory=dict)  # final table per vertex
    states_max: int = 0
    states_total: int = 0
    merges_total: int = 0

    def as_dict(self) -> dict:
        return {
            "states_max": self.states_max,
            "states_total": self.states_total,
            "merges_total": self.merges_total,
            "table_sizes": {str(v): s for v, s in sorted(self.table_sizes.items())},
        }


@dataclass(frozen=True)
class Solution:
    subset: frozenset[int]
    size: int
    stats: SolveStats | None = field(default=None, compare=False)

    @property
    def vertices(self) -> list[int]:
        return sorted(self.subset)


def leaf_table(v: int, color: int, k: int) -> DPTable:
    bit = 1 << (color - 1)
    empty_r = tuple(INF if i == color - 1 else 0 for i in range(k))
    table = DPTable((v, 0))
    table.entries[StateTuple(INF, 0, bit, empty_r)] = TableEntry(0, LeafChoice(False))
    table.entries[StateTuple(0, bit, 0, (0,) * k)] = TableEntry(1, LeafChoice(True))
    return table


def left_consistent(tp: StateTuple, tpp: StateTuple, i: int) -> bool:
    """Whether every color-``i`` vertex of the parent side stays (or becomes) consistent."""
    bit = 1 << (i - 1)
    lift = tpp.ell + 1
    if tp.H & bit:
        return bool(tpp.L & bit) and tp.r[i - 1] >= lift
    return tp.r[i - 1] <= lift or bool(tpp.L & bit)


def right_consistent(tp: StateTuple, tpp: StateTuple, i: int) -> bool:
    """Mirror of :func:`left_consistent` for the child side."""
    bit = 1 << (i - 1)
    lift = tp.ell + 1
    if tpp.H & bit:
        return bool(tp.L & bit) and tpp.r[i - 1] >= lift
    return tpp.r[i - 1] <= lift or bool(tp.L & bit)


def merge(tp: StateTuple, tpp: StateTuple, k: int) -> StateTuple:
    """Tuple of ``S' | S''`` on the prefix tree after attaching the next child.

    ``tp`` describes ``S'`` in the current prefix rooted at ``v``; ``tpp``
    describes ``S''`` in the child's subtree rooted at the child.  Child
    slacks are re-expressed relative to ``v`` (one edge further away).
    """
    l1, L1, H1, r1 = tp
    l2, L2, H2, r2 = tpp
    a = l2 + 1  # dist(v, S'')
    b = l1 + 1  # dist(child, S')
    if l1 < a:
        ell, L = l1, L1
    elif l1 > a:
        ell, L = a, L2
    else:
        ell, L = l1, L1 | L2

    H = 0
    r = []
    for i in range(k):
        bit = 1 << i
        x = r1[i]
        y = r2[i]
        if H1 & bit:
            lok = x >= a and L2 & bit
        else:
            lok = x <= a or L2 & bit
        if H2 & bit:
            rok = y >= b and L1 & bit
        else:
            rok = y <= b or L1 & bit
        A = x if x < a else a
        B = y if y < b else b
        B = B - 1 if B > 1 else 0
        if lok and rok:
            r.append(A if A > B else B)
        else:
            H |= bit
            if lok:
                A = INF
            if rok:
                B = INF
            r.append(A if A < B else B)
    return StateTuple(ell, L, H, tuple(r))


def combine_tables(left: DPTable, child: DPTable, k: int, stats: SolveStats | None = None) -> DPTable:
    v, j = left.owner
    out = DPTable((v, j + 1))
    entries = out.entries
    child_items = list(child.entries.items())
    for tp, ep in left.entries.items():
        c1 = ep.cost
        for tpp, epp in child_items:
            t = merge(tp, tpp, k)
            cost = c1 + epp.cost
            old = entries.get(t)
            if old is None or cost < old.cost:
                entries[t] = TableEntry(cost, Join(tp, tpp))
    if stats is not None:
        stats.merges_total += len(left) * len(child)
    return out


def build_tables(view: RootedView, stats: SolveStats | None = None) -> dict[tuple[int, int], DPTable]:
    """All prefix tables ``(v, j)`` of the rooted tree, built in post-order."""
    tree = view.tree
    k = tree.k
    tables: dict[tuple[int, int], DPTable] = {}
    final: dict[int, DPTable] = {}
    for v in view.post_order:
        table = leaf_table(v, tree.colors[v - 1], k)
        tables[(v, 0)] = table
        for c in view.children[v - 1]:
            table = combine_tables(table, final.pop(c), k, stats)
            tables[table.owner] = table
        final[v] = table
        if stats is not None:
            stats.table_sizes[v] = len(table)
    if stats is not None:
        sizes = [len(t) for t in tables.values()]
        stats.states_max = max(sizes)
        stats.states_total = sum(sizes)
    return tables


def prefix_vertices(view: RootedView, v: int, j: int) -> list[int]:
    """Vertices of ``v`` plus the subtrees of its first ``j`` children."""
    out = [v]
    for c in view.children[v - 1][:j]:
        out.extend(view.subtree(c))
    return out


def traceback(tables: dict[tuple[int, int], DPTable], view: RootedView, t: StateTuple,
              start: tuple[int, int] | None = None) -> frozenset[int]:
    """Rebuild a subset realizing ``t`` by following back-references.

    Starts from the root's final table unless ``start = (v, j)`` names
    another prefix table.
    """
    if start is None:
        start = (view.root, len(view.children[view.root - 1]))
    chosen = []
    stack = [(*start, t)]
    while stack:
        v, j, t = stack.pop()
        table = tables.get((v, j))
        if table is None or t not in table.entries:
            raise CorruptTable(f"tuple {t.describe()} missing from table {(v, j)}")
        back = table.entries[t].back
        if isinstance(back, LeafChoice):
            if back.included:
                chosen.append(v)
        else:
            c = view.children[v - 1][j - 1]
            stack.append((v, j - 1, back.left))
            stack.append((c, len(view.children[c - 1]), back.child))
    return frozenset(chosen)


def best_root_entry(table: DPTable) -> tuple[StateTuple, TableEntry]:
    """Cheapest tuple with no inconsistent color; first found wins ties."""
    best = None
    for t, e in table.entries.items():
        if t.H == 0 and (best is None or e.cost < best[1].cost):
            best = (t, e)
    if best is None:
        raise InternalInconsistency("root table has no tuple with H empty")
    return best


def solve(tree: ColoredTree, root: int = 1, with_stats: bool = False) -> Solution:
    view = root_view(tree, root)
    stats = SolveStats() if with_stats else None
    tables = build_tables(view, stats)
    t, entry = best_root_entry(tables[(root, len(view.children[root - 1]))])
    subset = traceback(tables, view, t)
    if len(subset) != entry.cost or not is_consistent_subset(tree, subset, distance_matrix(tree)):
        raise InternalInconsistency(
            f"witness {sorted(subset)} (cost {entry.cost}) is not a consistent subset")
    return Solution(subset, entry.cost, stats)
