"""Breadth-first gapped search shared by every index variant.

States are hashable (trie locations, or text cursors for the linear-time
special index).  A gap ``(a, b)`` becomes ``a`` mandatory one-symbol steps
followed by ``b - a`` optional ones; an optional step keeps each state and
adds everything reachable by consuming one symbol.
"""
from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Callable, Hashable, Sequence

from .text import GapPattern

State = Hashable
MatchFn = Callable[[State, Sequence[int]], list]
StepFn = Callable[[State], list]


@dataclass
class QueryStats:
    lcp_queries: int = 0
    branch_events: int = 0
    locations_explored: int = 0
    active_location_peak: int = 0
    heavy_hops_total: int = 0
    predecessor_calls: int = 0
    dedup_removed: int = 0
    text_extensions: int = 0
    routed_to: str = "n/a"
    subpattern_starts: list[int] = field(default_factory=list)

    def as_pairs(self) -> list[tuple[str, str]]:
        out = []
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, list):
                value = ",".join(map(str, value))
            out.append((f.name, str(value)))
        return out


@dataclass(frozen=True)
class GapSchedule:
    """Per gap: how many normal and how many optional wildcards it expands to."""

    normal: tuple[int, ...]
    optional: tuple[int, ...]
    prefix_A: tuple[int, ...]
    prefix_B: tuple[int, ...]


def vlg_expand(pattern: GapPattern) -> GapSchedule:
    normal = tuple(a for a, _ in pattern.gaps)
    optional = tuple(b - a for a, b in pattern.gaps)
    return GapSchedule(normal, optional, tuple(pattern.prefix_A), tuple(pattern.prefix_B))


def _advance(states: list, step: StepFn, stats: QueryStats, optional: bool) -> list:
    out: dict = {}
    for st in states:
        targets = step(st)
        if len(targets) > 1:
            stats.branch_events += 1
        cands = [st, *targets] if optional else targets
        for c in cands:
            if c in out:
                stats.dedup_removed += 1
            else:
                out[c] = None
    stats.locations_explored += len(out)
    return list(out)


def gapped_search(pattern: GapPattern, start: State, match: MatchFn, step: StepFn,
                  stats: QueryStats) -> list:
    """Return the states reached after consuming the whole pattern."""
    schedule = vlg_expand(pattern)
    states = [start]
    stats.locations_explored += 1
    stats.active_location_peak = max(stats.active_location_peak, 1)
    for i, sub in enumerate(pattern.codes):
        if i:
            for _ in range(schedule.normal[i - 1]):
                states = _advance(states, step, stats, optional=False)
            for _ in range(schedule.optional[i - 1]):
                states = _advance(states, step, stats, optional=True)
            stats.active_location_peak = max(stats.active_location_peak, len(states))
        stats.subpattern_starts.append(len(states))
        if sub and states:
            nxt: dict = {}
            for st in states:
                for r in match(st, sub):
                    if r in nxt:
                        stats.dedup_removed += 1
                    else:
                        nxt[r] = None
            states = list(nxt)
    return states
