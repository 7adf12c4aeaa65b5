"""Wildcard trees: level tries joined by STAR edges.

At height 0 the tree is the compressed trie of the input strings.  For height
``i > 0`` every internal vertex ``v`` of the level-0 trie is decomposed with a
heavy ``(beta - 1)``-tree decomposition; the suffixes (from the second symbol
on) of the strings below the light children of ``v`` get their own wildcard
tree of height ``i - 1``, hung under ``v`` by a STAR edge.
"""
from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .decomposition import heavy_alpha_decompose
from .errors import BudgetError, ResourceError
from .search import QueryStats, gapped_search
from .text import SENTINEL, GapPattern, IndexedText
from .trie import CompressedTrie, Item, Location, TrieView, descend, lightstrings_suffixes


def default_guard(source_size: int, k: int) -> int:
    """Cap on stored strings: a generous multiple of the worst-case growth."""
    per_level = 1 + math.ceil(math.log2(max(2, source_size)))
    return 64 * source_size * per_level ** k


@dataclass
class WildcardTree:
    trie: CompressedTrie
    beta: int
    k: int
    source_size: int
    level_roots: list[int] = field(default_factory=list)
    strings_per_height: Counter = field(default_factory=Counter)
    lightheights: dict[int, int] = field(default_factory=dict)
    guard: int = 0

    @property
    def stored_strings(self) -> int:
        return sum(self.strings_per_height.values())

    @property
    def vertex_count(self) -> int:
        return len(self.trie)

    @property
    def max_lightheight(self) -> int:
        return max(self.lightheights.values(), default=0)

    def size_bound(self, lightheight: int | None = None) -> int:
        """``|C'| * sum_{i<=k} H^i`` with ``H`` the largest light height used."""
        h = self.max_lightheight if lightheight is None else lightheight
        return self.source_size * sum(h ** i for i in range(self.k + 1))


def build_wildcard_tree(source: IndexedText, items: Iterable[Item], beta: int, k: int,
                        guard: int | None = None, strict: bool | None = True) -> WildcardTree:
    """Build the wildcard tree of height ``k`` with heavy ``(beta - 1)``-decompositions.

    ``beta >= sigma`` is an error when ``strict``, a warning when ``False``
    and not checked at all when ``None``.  Raises :class:`ResourceError` once
    more than ``guard`` strings are stored.
    """
    if beta < 1:
        raise ValueError("beta must be at least 1")
    if k < 0:
        raise ValueError("k must be non-negative")
    if strict is not None and beta >= source.sigma:
        msg = f"beta={beta} is not below the alphabet size {source.sigma}"
        if strict:
            raise ValueError(msg)
        warnings.warn(msg, stacklevel=2)
    trie = CompressedTrie(source)
    items = list(items)
    root = trie.add_level(items)
    size = trie.weight[root]
    if guard is None:
        guard = default_guard(size, k)
    wt = WildcardTree(trie, beta, k, size, guard=guard)
    _register_level(wt, root, 0)
    pending = [(root, k)]
    while pending:
        r, height = pending.pop()
        if height == 0:
            continue
        dec = heavy_alpha_decompose(TrieView(trie, r), beta - 1)
        wt.lightheights[r] = dec.lightheight
        for v in dec.heavy:
            trie.heavy[v] = True
        for v in list(trie.level_vertices(r)):
            if not trie.children[v]:
                continue
            sub = lightstrings_suffixes(trie, v)
            if not sub:
                continue
            child = trie.add_level(sub, trie.depth[v] + 1, trie.wheight[v] + 1, v)
            _register_level(wt, child, trie.wheight[v] + 1)
            pending.append((child, height - 1))
    return wt


def _register_level(wt: WildcardTree, root: int, height: int) -> None:
    wt.level_roots.append(root)
    wt.strings_per_height[height] += wt.trie.weight[root]
    if wt.stored_strings > wt.guard:
        raise ResourceError(
            f"wildcard tree exceeds the guard of {wt.guard} stored strings", wt.stored_strings)


def wildcard_step(trie: CompressedTrie, loc: Location) -> list[Location]:
    """Locations reached by matching one wildcard in a wildcard tree."""
    if loc.offset:
        if trie.next_symbol(loc) == SENTINEL:
            return []
        return [trie.step(loc.vertex, loc.offset + 1)]
    v = loc.vertex
    out = []
    if trie.star[v] >= 0:
        out.append(Location(trie.star[v]))
    for c in trie.children[v].values():
        if trie.heavy[c] and trie.first_symbol(c) != SENTINEL:
            out.append(trie.step(c, 1))
    return out


def descend_match(trie: CompressedTrie):
    def match(loc: Location, sub) -> list[Location]:
        end, got = descend(trie, loc, sub)
        return [end] if got == len(sub) else []
    return match


def check_wildcard_budget(pattern: GapPattern, k: int, extra: int = 0) -> None:
    """At most ``k`` gaps and ``k`` normal wildcards; at most ``extra`` optional ones."""
    a, opt = pattern.A, pattern.B - pattern.A
    if pattern.j > k or a > k or opt > extra:
        raise BudgetError(
            f"pattern over budget: j={pattern.j}, A={a}, B-A={opt} but the index has "
            f"k={k}, o={extra}")


def wildcard_tree_search(wt: WildcardTree, pattern: GapPattern) -> tuple[list[Location], QueryStats]:
    """Search a pattern whose gaps are all fixed length, by plain descent."""
    if any(a != b for a, b in pattern.gaps):
        raise ValueError("wildcard tree search takes fixed-length gaps only")
    check_wildcard_budget(pattern, wt.k)
    stats = QueryStats()
    trie = wt.trie
    locs = gapped_search(pattern, Location(trie.root), descend_match(trie),
                         lambda loc: wildcard_step(trie, loc), stats)
    return locs, stats


def wildcard_tree_from_trie(trie: CompressedTrie, beta: int, k: int,
                            guard: int | None = None) -> WildcardTree:
    """Recover the bookkeeping of a wildcard tree whose trie was loaded from disk.

    Heavy flags are recomputed; the decomposition is deterministic, so they
    come out exactly as at build time.
    """
    size = trie.weight[trie.root]
    wt = WildcardTree(trie, beta, k, size,
                      guard=default_guard(size, k) if guard is None else guard)
    for r in range(len(trie)):
        if trie.level_root[r] != r:
            continue
        wt.level_roots.append(r)
        wt.strings_per_height[trie.wheight[r]] += trie.weight[r]
        if trie.wheight[r] < k:
            dec = heavy_alpha_decompose(TrieView(trie, r), beta - 1)
            wt.lightheights[r] = dec.lightheight
            for v in dec.heavy:
                trie.heavy[v] = True
    return wt
