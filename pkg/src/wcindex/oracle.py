"""Brute-force matcher used as ground truth.

Tries every start position and every combination of gap lengths.  Shares
nothing with the index code beyond the pattern model.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ResourceError
from .text import GapPattern, IndexedText

DEFAULT_CAP = 4096


@dataclass
class OracleResult:
    starts: list[int]
    spans: list[tuple[int, int]]
    witnesses: dict[tuple[int, int], list[tuple[int, ...]]] = field(repr=False)

    def occurrences(self, pattern: GapPattern) -> list:
        """Starts for plain wildcard patterns, ``(start, end)`` spans otherwise."""
        return self.starts if pattern.wildcard_only else self.spans


def oracle_match(text: str | IndexedText, pattern: GapPattern,
                 cap: int = DEFAULT_CAP) -> OracleResult:
    """All occurrences of ``pattern`` in ``text`` (1-indexed, inclusive spans).

    ``witnesses`` maps each span to every choice of gap lengths realising it.
    Raises :class:`ResourceError` when the number of gap-length combinations
    exceeds ``cap``.
    """
    t = text.chars if isinstance(text, IndexedText) else text
    if pattern.gap_product > cap:
        raise ResourceError(
            f"pattern has {pattern.gap_product} gap-length combinations, above the cap {cap}",
            pattern.gap_product)
    subs = pattern.subpatterns
    gaps = pattern.gaps
    n = len(t)
    witnesses: dict[tuple[int, int], list[tuple[int, ...]]] = {}

    def walk(i: int, pos: int, chosen: tuple[int, ...], origin: int) -> None:
        # pos is the 0-indexed position where subpattern i must begin
        sub = subs[i]
        if pos + len(sub) > n or t[pos:pos + len(sub)] != sub:
            return
        pos += len(sub)
        if i == len(gaps):
            witnesses.setdefault((origin + 1, pos), []).append(chosen)
            return
        a, b = gaps[i]
        for g in range(a, b + 1):
            if pos + g > n:
                break
            walk(i + 1, pos + g, chosen + (g,), origin)

    for origin in range(n):
        walk(0, origin, (), origin)
    spans = sorted(witnesses)
    starts = sorted({s for s, _ in spans})
    return OracleResult(starts, spans, witnesses)
