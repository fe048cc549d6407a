"""Exhaustive reference solvers used for differential testing."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .consistency import StateTuple, signature
from .generators import InstanceTooLarge
from .graph import ColoredTree, RootedView, distance_matrix

__all__ = ["OracleResult", "brute_force_min", "reference_opt_table",
           "DEFAULT_ORACLE_CAP", "DEFAULT_TABLE_CAP"]

DEFAULT_ORACLE_CAP = 20
DEFAULT_TABLE_CAP = 12


@dataclass(frozen=True)
class OracleResult:
    size: int
    witness: frozenset[int]
    evaluated: int

    @property
    def vertices(self) -> list[int]:
        return sorted(self.witness)


def _consistent(S, rows, colors) -> bool:
    for u, row in enumerate(rows):
        best = min(row[s] for s in S)
        cu = colors[u]
        for s in S:
            if row[s] == best and colors[s] == cu:
                break
        else:
            return False
    return True


def brute_force_min(tree: ColoredTree, cap: int = DEFAULT_ORACLE_CAP) -> OracleResult:
    """Smallest consistent subset by enumeration in order of size.

    Within a size, subsets are tried in lexicographic order, so the witness
    is the lexicographically smallest optimum.
    """
    if tree.n > cap:
        raise InstanceTooLarge(f"n={tree.n} exceeds oracle cap {cap}")
    rows = distance_matrix(tree)
    colors = tree.colors
    evaluated = 0
    for size in range(1, tree.n + 1):
        for S in combinations(range(tree.n), size):
            evaluated += 1
            if _consistent(S, rows, colors):
                return OracleResult(size, frozenset(s + 1 for s in S), evaluated)
    raise AssertionError("the full vertex set is always consistent")


def reference_opt_table(view: RootedView, v: int,
                        cap: int = DEFAULT_TABLE_CAP) -> dict[StateTuple, int]:
    """Minimum subset size per signature over all subsets of the subtree at ``v``.

    Tuples that no subset realizes are absent (their optimum is infinite).
    """
    verts = view.subtree(v)
    if len(verts) > cap:
        raise InstanceTooLarge(f"subtree of {len(verts)} vertices exceeds cap {cap}")
    D = distance_matrix(view.tree)
    table: dict[StateTuple, int] = {}
    for size in range(len(verts) + 1):
        for S in combinations(verts, size):
            t = signature(view.tree, verts, v, S, D)
            if t not in table:
                table[t] = size
    return table
