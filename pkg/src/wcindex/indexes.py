"""The four index variants behind one query interface.

* ``SIMPLE``: suffix tree, wildcards branch on every child.
* ``ART_LINEAR``: suffix tree with an ART decomposition; subpatterns are
  matched with LCP queries (top tree with jump tables, bottom trees light).
* ``TRADEOFF``: wildcard tree of height ``k + o`` over all suffixes, matched
  with LCP queries; wildcards branch into at most ``beta`` locations.
* ``LINEAR_TIME``: a ``beta = 1`` wildcard tree over suffix prefixes of length
  ``G`` for short patterns, ``ART_LINEAR`` for the rest.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Sequence

from .decomposition import art_decompose
from .errors import BudgetError
from .lcp import FULL, LIGHT, LcpStructure, PreprocessedPattern
from .search import GapSchedule, QueryStats, gapped_search, vlg_expand
from .text import SENTINEL, GapPattern, IndexedText, parse_pattern
from .trie import (CompressedTrie, Item, Location, TrieView, build_suffix_tree, collect_occurrences,
                   descend, prefix_items)
from .wildcard_tree import (WildcardTree, build_wildcard_tree, check_wildcard_budget, descend_match,
                            wildcard_step)


class Variant(str, Enum):
    SIMPLE = "SIMPLE"
    ART_LINEAR = "ART_LINEAR"
    TRADEOFF = "TRADEOFF"
    LINEAR_TIME = "LINEAR_TIME"


SPECIAL = "SPECIAL"
FALLBACK = "FALLBACK"


@dataclass(frozen=True)
class IndexVariant:
    """What to build.  Unset parameters get their defaults at build time."""

    kind: Variant
    beta: int | None = None
    k: int = 0
    o: int | None = None
    chi: int | None = None
    g: int | None = None
    guard: int | None = None

    @classmethod
    def simple(cls, k: int = 0, o: int = 0) -> "IndexVariant":
        return cls(Variant.SIMPLE, k=k, o=o)

    @classmethod
    def art(cls, k: int = 0, o: int = 0, chi: int | None = None) -> "IndexVariant":
        return cls(Variant.ART_LINEAR, k=k, o=o, chi=chi)

    @classmethod
    def tradeoff(cls, beta: int, k: int, o: int = 0, guard: int | None = None) -> "IndexVariant":
        return cls(Variant.TRADEOFF, beta=beta, k=k, o=o, guard=guard)

    @classmethod
    def linear_time(cls, k: int, o: int | None = None, g: int | None = None,
                    chi: int | None = None, guard: int | None = None) -> "IndexVariant":
        return cls(Variant.LINEAR_TIME, k=k, o=o, g=g, chi=chi, guard=guard)


def default_chi(n: int) -> int:
    return max(1, math.ceil(math.log2(n))) if n > 1 else 1


def default_g(n: int, sigma: int, k: int) -> int:
    return sigma ** k * max(1, math.ceil(math.log2(max(2.0, math.log2(max(n, 1))))))


class TextCursor(NamedTuple):
    """A match that has run past a truncated string and continues in the text."""

    origin: int
    consumed: int


@dataclass(frozen=True)
class OccurrenceSet:
    """Sorted occurrences: start positions, or ``(start, end)`` spans."""

    starts: tuple[int, ...] | None = None
    spans: tuple[tuple[int, int], ...] | None = None

    @property
    def mode(self) -> str:
        return "starts" if self.spans is None else "spans"

    @property
    def items(self) -> tuple:
        return self.starts if self.spans is None else self.spans

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def lines(self) -> list[str]:
        if self.spans is None:
            return [str(s) for s in self.starts]
        return [f"{a} {b}" for a, b in self.spans]


def suffix_tree_step(trie: CompressedTrie, loc: Location) -> list[Location]:
    """One wildcard in a plain suffix tree: every continuation except the sentinel."""
    if loc.offset:
        if trie.next_symbol(loc) == SENTINEL:
            return []
        return [trie.step(loc.vertex, loc.offset + 1)]
    return [trie.step(c, 1) for c in trie.children[loc.vertex].values()
            if trie.first_symbol(c) != SENTINEL]


class Index:
    kind: Variant

    def __init__(self, text: IndexedText, variant: IndexVariant):
        self.text = text
        self.variant = variant

    # parameters after defaults
    @property
    def k(self) -> int:
        return self.variant.k

    @property
    def o(self) -> int:
        return self.variant.o or 0

    @property
    def branching(self) -> int:
        """Largest number of locations one wildcard can lead to."""
        return max(1, self.text.sigma)

    def check_budget(self, pattern: GapPattern) -> None:
        """SIMPLE and ART_LINEAR take any number of gaps; the others are bounded."""
        if self.kind in (Variant.TRADEOFF, Variant.LINEAR_TIME):
            check_wildcard_budget(pattern, self.k, self.o)

    def query(self, pattern: GapPattern | str, route: str | None = None
              ) -> tuple[OccurrenceSet, QueryStats]:
        if isinstance(pattern, str):
            pattern = parse_pattern(pattern)
        self.check_budget(pattern)
        stats = QueryStats()
        found = self._search(pattern, stats, route)
        return self._report(pattern, found), stats

    def _search(self, pattern: GapPattern, stats: QueryStats, route: str | None) -> list:
        raise NotImplementedError

    def _trie_for_reporting(self) -> CompressedTrie:
        raise NotImplementedError

    def _report(self, pattern: GapPattern, found: list) -> OccurrenceSet:
        spans: set[tuple[int, int]] = set()
        for st in found:
            if isinstance(st, TextCursor):
                spans.add((st.origin, st.origin + st.consumed - 1))
                continue
            trie = st.trie if isinstance(st, _Tagged) else self._trie_for_reporting()
            loc = st.loc if isinstance(st, _Tagged) else st
            d = trie.location_depth(loc)
            for lab in collect_occurrences(trie, loc):
                spans.add((lab, lab + d - 1))
        if pattern.wildcard_only:
            return OccurrenceSet(starts=tuple(sorted({a for a, _ in spans})))
        return OccurrenceSet(spans=tuple(sorted(spans)))

    def summary(self) -> dict[str, object]:
        return {"variant": self.kind.value, "n": self.text.n, "sigma": self.text.sigma,
                "k": self.k, "o": self.o}

    def tries(self) -> list[CompressedTrie]:
        """Tries that fully determine the index (persisted to disk)."""
        raise NotImplementedError


class _Tagged(NamedTuple):
    trie: CompressedTrie
    loc: Location


class SimpleIndex(Index):
    kind = Variant.SIMPLE

    def __init__(self, text: IndexedText, variant: IndexVariant,
                 tree: CompressedTrie | None = None):
        super().__init__(text, variant)
        self.tree = tree if tree is not None else build_suffix_tree(text)

    def _trie_for_reporting(self) -> CompressedTrie:
        return self.tree

    def _search(self, pattern, stats, route):
        tree = self.tree
        stats.routed_to = "n/a"
        inner = descend_match(tree)

        def match(loc, sub):
            stats.lcp_queries += 1
            return inner(loc, sub)

        return gapped_search(pattern, Location(tree.root), match,
                             lambda loc: suffix_tree_step(tree, loc), stats)

    def summary(self):
        return {**super().summary(), "leaves": len(self.tree.labels),
                "vertex_count": len(self.tree), "stored_strings": self.text.n + 1}

    def tries(self):
        return [self.tree]


class _LcpMatcher:
    """Turns LCP answers into subpattern matches and keeps the counters."""

    def __init__(self, lcp: LcpStructure):
        self.lcp = lcp
        self._cache: dict[tuple[int, ...], PreprocessedPattern] = {}

    def prepare(self, sub: Sequence[int]) -> PreprocessedPattern:
        key = tuple(sub)
        pp = self._cache.get(key)
        if pp is None:
            if len(self._cache) > 256:
                self._cache.clear()
            pp = self._cache[key] = self.lcp.preprocess_pattern(key)
        return pp

    def ask(self, pp, s, tid, loc, stats: QueryStats):
        ans = self.lcp.lcp_query(pp, s, tid, loc)
        stats.lcp_queries += 1
        stats.heavy_hops_total += ans.hops
        stats.predecessor_calls += ans.used_predecessor
        return ans


class ArtIndex(Index):
    kind = Variant.ART_LINEAR

    def __init__(self, text: IndexedText, variant: IndexVariant,
                 tree: CompressedTrie | None = None):
        super().__init__(text, variant)
        self.tree = tree if tree is not None else build_suffix_tree(text)
        self.chi = variant.chi or default_chi(text.n)
        tree = self.tree
        self.art = art_decompose(TrieView(tree), self.chi)
        self.lcp = LcpStructure(text, tree)
        self._bottom_roots = frozenset(self.art.bottom_roots)
        self._view: dict[int, int] = {}
        self.top_id = -1
        if self.art.top:
            self.top_id = self.lcp.register_trie(tree, FULL, cut=self.art.bottom_roots)
        for b in self.art.bottom_roots:
            self._view[b] = self.lcp.register_trie(tree, LIGHT, root=b)
        self._matcher = _LcpMatcher(self.lcp)

    def _trie_for_reporting(self):
        return self.tree

    def view_of(self, loc: Location) -> int:
        owner = self.art.bottom_of.get(loc.vertex)
        return self.top_id if owner is None else self._view[owner]

    def match(self, loc: Location, sub: Sequence[int], stats: QueryStats) -> list[Location]:
        tree = self.tree
        pp = self._matcher.prepare(sub)
        s, cur = 0, loc
        while True:
            tid = self.view_of(cur)
            ans = self._matcher.ask(pp, s, tid, cur, stats)
            s += ans.matched
            cur = ans.location
            if s == len(sub):
                return [cur]
            if tid != self.top_id or not cur.explicit:
                return []
            c = tree.children[cur.vertex].get(sub[s])
            if c is None or c not in self._bottom_roots:
                return []
            cur = tree.step(c, 1)
            s += 1
            if s == len(sub):
                return [cur]

    def _search(self, pattern, stats, route):
        tree = self.tree
        return gapped_search(pattern, Location(tree.root),
                             lambda loc, sub: self.match(loc, sub, stats),
                             lambda loc: suffix_tree_step(tree, loc), stats)

    def summary(self):
        return {**super().summary(), "chi": self.chi, "leaves": len(self.tree.labels),
                "vertex_count": len(self.tree),
                "stored_strings": self.text.n + 1, "bottom_trees": len(self.art.bottom_roots),
                "top_vertices": len(self.art.top)}

    def tries(self):
        return [self.tree]


class TradeoffIndex(Index):
    kind = Variant.TRADEOFF

    def __init__(self, text: IndexedText, variant: IndexVariant, strict: bool = True,
                 wt: WildcardTree | None = None):
        super().__init__(text, variant)
        self.beta = variant.beta if variant.beta is not None else 2
        if wt is None:
            last = text.n + 1
            items = [Item(i, last, [i]) for i in range(1, last + 1)]
            wt = build_wildcard_tree(text, items, self.beta, self.k + self.o, variant.guard,
                                     strict=strict)
        self.wt = wt
        self.lcp = LcpStructure(text)
        trie = wt.trie
        self._view: dict[int, int] = {}
        for r in wt.level_roots:
            final = trie.wheight[r] == wt.k
            self._view[r] = self.lcp.register_trie(trie, LIGHT if final else FULL, root=r)
        self._matcher = _LcpMatcher(self.lcp)

    @property
    def branching(self) -> int:
        return self.beta

    def _trie_for_reporting(self):
        return self.wt.trie

    def match(self, loc: Location, sub: Sequence[int], stats: QueryStats) -> list[Location]:
        pp = self._matcher.prepare(sub)
        tid = self._view[self.wt.trie.level_root[loc.vertex]]
        ans = self._matcher.ask(pp, 0, tid, loc, stats)
        return [ans.location] if ans.matched == len(sub) else []

    def _search(self, pattern, stats, route):
        trie = self.wt.trie
        return gapped_search(pattern, Location(trie.root),
                             lambda loc, sub: self.match(loc, sub, stats),
                             lambda loc: wildcard_step(trie, loc), stats)

    def summary(self):
        wt = self.wt
        return {**super().summary(), "beta": self.beta, "vertex_count": wt.vertex_count,
                "stored_strings": wt.stored_strings, "level_tries": len(wt.level_roots),
                "max_lightheight": wt.max_lightheight, "size_bound": wt.size_bound(),
                "guard": wt.guard}

    def tries(self):
        return [self.wt.trie]


class LinearTimeIndex(Index):
    kind = Variant.LINEAR_TIME

    def __init__(self, text: IndexedText, variant: IndexVariant,
                 special: WildcardTree | None = None, tree: CompressedTrie | None = None):
        super().__init__(text, variant)
        self.g = variant.g or default_g(text.n, text.sigma, variant.k)
        if special is None:
            special = build_wildcard_tree(text, prefix_items(text, self.g), 1, self.k + self.o,
                                          variant.guard, strict=None)
        self.special = special
        self.fallback = ArtIndex(text, IndexVariant.art(self.k, self.o, variant.chi), tree)

    @property
    def o(self) -> int:
        return self.variant.k if self.variant.o is None else self.variant.o

    @property
    def branching(self) -> int:
        return 1

    def route(self, pattern: GapPattern) -> str:
        return SPECIAL if pattern.m + pattern.B <= self.g else FALLBACK

    def _search(self, pattern, stats, route):
        chosen = route.upper() if route else self.route(pattern)
        if chosen not in (SPECIAL, FALLBACK):
            raise ValueError(f"unknown route {route!r}")
        stats.routed_to = chosen
        if chosen == FALLBACK:
            return [_Tagged(self.fallback.tree, loc)
                    for loc in self.fallback._search(pattern, stats, None)]
        trie = self.special.trie
        return [_Tagged(trie, st) if isinstance(st, Location) else st
                for st in gapped_search(pattern, Location(trie.root),
                                        lambda st, sub: self._special_match(st, sub, stats),
                                        lambda st: self._special_step(st, stats), stats)]

    def _truncated(self, v: int) -> bool:
        trie = self.special.trie
        return v in trie.labels and trie.lend[v] <= self.text.n

    def _cursors(self, v: int, stats: QueryStats) -> list[TextCursor]:
        trie = self.special.trie
        stats.text_extensions += 1
        return [TextCursor(o, trie.depth[v]) for o in trie.labels[v]]

    def _special_match(self, st, sub, stats: QueryStats) -> list:
        stats.lcp_queries += 1
        codes = self.text.codes
        if isinstance(st, TextCursor):
            pos = st.origin + st.consumed
            if tuple(codes[pos - 1:pos - 1 + len(sub)]) == tuple(sub) and pos + len(sub) <= self.text.n + 1:
                return [TextCursor(st.origin, st.consumed + len(sub))]
            return []
        trie = self.special.trie
        end, got = descend(trie, st, sub)
        if got == len(sub):
            return [end]
        if not (end.explicit and self._truncated(end.vertex)):
            return []
        rest = list(sub[got:])
        return [r for c in self._cursors(end.vertex, stats)
                for r in self._special_match(c, rest, stats)]

    def _special_step(self, st, stats: QueryStats) -> list:
        if isinstance(st, TextCursor):
            pos = st.origin + st.consumed
            return [TextCursor(st.origin, st.consumed + 1)] if pos <= self.text.n else []
        trie = self.special.trie
        if st.explicit and self._truncated(st.vertex):
            return [r for c in self._cursors(st.vertex, stats) for r in self._special_step(c, stats)]
        out = wildcard_step(trie, st)
        if st.explicit:
            # a light leaf one real symbol below has an empty suffix, which no
            # STAR level stores; the wildcard ends on the leaf itself
            out += [Location(c) for c in trie.children[st.vertex].values()
                    if not trie.heavy[c] and trie.edge_len(c) == 1 and self._truncated(c)]
        return out

    def summary(self):
        return {**super().summary(), "g": self.g, "chi": self.fallback.chi,
                "vertex_count": self.special.vertex_count + len(self.fallback.tree),
                "stored_strings": self.special.stored_strings + self.text.n + 1,
                "special_strings": self.special.stored_strings,
                "level_tries": len(self.special.level_roots)}

    def tries(self):
        return [self.special.trie, self.fallback.tree]


def build_index(text: str | IndexedText, variant: IndexVariant, strict: bool = True) -> Index:
    """Build the index described by ``variant``.

    ``strict=False`` lets ``TRADEOFF`` take ``beta >= sigma`` with a warning
    instead of an error (used by the benchmark sweep).
    """
    if isinstance(text, str):
        text = IndexedText(text)
    if variant.k < 0 or (variant.o is not None and variant.o < 0):
        raise ValueError("k and o must be non-negative")
    if variant.kind == Variant.SIMPLE:
        return SimpleIndex(text, variant)
    if variant.kind == Variant.ART_LINEAR:
        return ArtIndex(text, variant)
    if variant.kind == Variant.TRADEOFF:
        if variant.beta is None or variant.beta < 1:
            raise ValueError("TRADEOFF needs beta >= 1")
        return TradeoffIndex(text, variant, strict=strict)
    if variant.kind == Variant.LINEAR_TIME:
        return LinearTimeIndex(text, variant)
    raise ValueError(f"unknown variant {variant.kind!r}")


__all__ = ["ArtIndex", "BudgetError", "FALLBACK", "GapSchedule", "Index", "IndexVariant",
           "LinearTimeIndex",
           "OccurrenceSet", "SPECIAL", "SimpleIndex", "TextCursor", "TradeoffIndex", "Variant",
           "build_index", "default_chi", "default_g", "suffix_tree_step", "vlg_expand"]
