"""Scaling runs: wall time and reachable-state counters per generated instance."""

from __future__ import annotations

import logging
import math
import statistics
import time
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .dp import solve
from .generators import GenSpec, generate
from .oracle import DEFAULT_ORACLE_CAP, brute_force_min

__all__ = ["CSV_FIELDS", "BenchRecord", "ScalingReport", "state_cap", "fit_exponent",
           "run_scaling", "NOISE_FLOOR_MS"]

log = logging.getLogger(__name__)

CSV_FIELDS = ("family", "n", "k", "seed", "opt_size", "dp_millis", "states_max",
              "states_total", "merges_total", "oracle_millis", "agree")
NOISE_FLOOR_MS = 5.0
MIN_FIT_POINTS = 4


@dataclass
class BenchRecord:
    family: str
    n: int
    k: int
    seed: int
    opt_size: int
    dp_millis: float
    states_max: int
    states_total: int
    merges_total: int
    oracle_millis: float | None = None
    agree: bool | None = None

    def csv_row(self) -> list[str]:
        def cell(x):
            if x is None:
                return ""
            if isinstance(x, bool):
                return "true" if x else "false"
            if isinstance(x, float):
                return f"{x:.3f}"
            return str(x)

        return [cell(v) for v in asdict(self).values()]


def state_cap(n: int, k: int) -> int:
    """Loose upper bound on the number of distinct tuples in any one table."""
    return (n + 1) * 2 ** k * 2 ** k * (n + 1) ** k


def fit_exponent(points: Iterable[tuple[int, float]]) -> float | None:
    """Slope of log(time) against log(n), or None without enough signal.

    Times are aggregated per n by median; points under the noise floor are
    dropped and at least four distinct n values must remain.
    """
    by_n: dict[int, list[float]] = {}
    for n, ms in points:
        by_n.setdefault(n, []).append(ms)
    pts = [(n, statistics.median(v)) for n, v in sorted(by_n.items())]
    pts = [(n, ms) for n, ms in pts if ms >= NOISE_FLOOR_MS]
    if len(pts) < MIN_FIT_POINTS:
        return None
    xs = [math.log(n) for n, _ in pts]
    ys = [math.log(ms) for _, ms in pts]
    return statistics.linear_regression(xs, ys).slope


@dataclass
class ScalingReport:
    records: list[BenchRecord] = field(default_factory=list)
    fitted_exponent: dict[int, float | None] = field(default_factory=dict)

    @staticmethod
    def reference_exponent(k: int) -> int:
        return 2 * k + 3

    def flagged(self) -> list[int]:
        """Color counts whose fitted slope exceeds the worst-case exponent plus one."""
        return [k for k, e in self.fitted_exponent.items()
                if e is not None and e > self.reference_exponent(k) + 1]

    @property
    def all_agree(self) -> bool:
        return all(r.agree is not False for r in self.records)

    def summary(self) -> str:
        lines = [f"{'k':>3} {'runs':>5} {'max n':>6} {'fit slope':>10} {'2k+3':>5}"]
        for k in sorted(self.fitted_exponent):
            recs = [r for r in self.records if r.k == k]
            e = self.fitted_exponent[k]
            slope = "n/a" if e is None else f"{e:.2f}"
            flag = "  WARNING: above reference" if k in self.flagged() else ""
            lines.append(f"{k:>3} {len(recs):>5} {max((r.n for r in recs), default=0):>6} "
                         f"{slope:>10} {self.reference_exponent(k):>5}{flag}")
        return "\n".join(lines)


def _timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, (time.perf_counter() - t0) * 1000.0


def run_scaling(families: Sequence[str], ns: Iterable[int], ks: Sequence[int] | int,
                reps: int = 1, seed: int = 0, with_oracle: bool = False,
                oracle_cap: int = DEFAULT_ORACLE_CAP, coloring: str = "uniform-random",
                on_record=None) -> ScalingReport:
    """Solve one generated instance per (family, k, n) ``reps`` times.

    Every instance is generated from ``seed`` directly, so repetitions of the
    same (family, n, k) hit the identical tree.  ``on_record`` is called with
    each record as soon as it is produced.
    """
    if isinstance(ks, int):
        ks = [ks]
    ns = list(ns)
    report = ScalingReport()
    for k in ks:
        for family in families:
            for n in ns:
                spec = GenSpec(family, n, k, seed, coloring)
                tree = generate(spec)
                solve(tree)  # warm-up, discarded
                for _ in range(reps):
                    sol, dp_ms = _timed(solve, tree, with_stats=True)
                    st = sol.stats
                    rec = BenchRecord(family, n, k, seed, sol.size, dp_ms,
                                      st.states_max, st.states_total, st.merges_total)
                    if with_oracle and n <= oracle_cap:
                        ref, rec.oracle_millis = _timed(brute_force_min, tree, oracle_cap)
                        rec.agree = ref.size == sol.size
                        if not rec.agree:
                            log.error("disagreement on %s: dp=%d oracle=%d", spec, sol.size, ref.size)
                    if st.states_max > state_cap(n, k):
                        log.warning("states_max %d above cap %d for %s", st.states_max, state_cap(n, k), spec)
                    report.records.append(rec)
                    if on_record is not None:
                        on_record(rec)
        report.fitted_exponent[k] = fit_exponent((r.n, r.dp_millis) for r in report.records if r.k == k)
    return report
