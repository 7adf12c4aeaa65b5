"""Compressed tries over substrings of an indexed text.

A :class:`CompressedTrie` keeps its vertices in parallel lists.  Edge labels
are 1-indexed inclusive ``(start, end)`` references into ``trie.source``.  A
single trie object can hold several *level tries* joined by STAR edges (the
layout used by wildcard trees); every level trie is a plain compressed trie
once STAR edges are ignored.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

from .text import SENTINEL, IndexedText, encode

ROOT, SUB, STAR = 0, 1, 2


class Item(NamedTuple):
    """A labeled string ``source[start..end]`` (1-indexed, inclusive)."""

    start: int
    end: int
    labels: Sequence[int]


@dataclass(frozen=True, slots=True)
class Location:
    """``offset == 0``: explicit vertex.  Otherwise ``offset`` symbols of the
    edge entering ``vertex`` have been consumed (0 < offset < edge length)."""

    vertex: int
    offset: int = 0

    @property
    def explicit(self) -> bool:
        return self.offset == 0


class SuffixOracle:
    """Suffix array, inverse ranks and O(1) LCP between any two suffixes."""

    def __init__(self, codes: Sequence[int]):
        n = len(codes)
        rank = list(codes)
        sa = list(range(n))
        k = 1
        while True:
            key = [(rank[i], rank[i + k] if i + k < n else -1) for i in range(n)]
            sa.sort(key=key.__getitem__)
            new = [0] * n
            for a, b in zip(sa, sa[1:]):
                new[b] = new[a] + (key[a] != key[b])
            rank = new
            if rank[sa[-1]] == n - 1:
                break
            k *= 2
        self.sa = sa
        self.rank = rank
        lcp = [0] * n
        h = 0
        for i in range(n):
            r = rank[i]
            if r == 0:
                h = 0
                continue
            j = sa[r - 1]
            while i + h < n and j + h < n and codes[i + h] == codes[j + h]:
                h += 1
            lcp[r] = h
            if h:
                h -= 1
        table = [lcp]
        span = 1
        while 2 * span <= n:
            prev = table[-1]
            table.append([min(prev[i], prev[i + span]) for i in range(n - 2 * span + 1)])
            span *= 2
        self._table = table
        self._n = n

    def lcp(self, i: int, j: int) -> int:
        """LCP of the suffixes at 1-indexed positions ``i`` and ``j``."""
        if i == j:
            return self._n - i + 1
        a, b = self.rank[i - 1], self.rank[j - 1]
        if a > b:
            a, b = b, a
        lo, hi = a + 1, b
        lvl = (hi - lo + 1).bit_length() - 1
        row = self._table[lvl]
        return min(row[lo], row[hi - (1 << lvl) + 1])

    def order_key(self, pos: int) -> int:
        return self.rank[pos - 1]


def suffix_oracle(text: IndexedText) -> SuffixOracle:
    cached = text.__dict__.get("_suffix_oracle")
    if cached is None:
        cached = text.__dict__["_suffix_oracle"] = SuffixOracle(text.codes)
    return cached


class CompressedTrie:
    """Array-backed compressed trie, possibly layered with STAR edges."""

    def __init__(self, source: IndexedText | Sequence[int]):
        if isinstance(source, IndexedText):
            self.text: IndexedText | None = source
            self.source: Sequence[int] = source.codes
        else:
            self.text = None
            self.source = tuple(source)
        self.parent: list[int] = []
        self.kind: list[int] = []
        self.lstart: list[int] = []
        self.lend: list[int] = []
        self.depth: list[int] = []
        self.ldepth: list[int] = []
        self.level_root: list[int] = []
        self.wheight: list[int] = []
        self.rep: list[int] = []
        self.weight: list[int] = []
        self.heavy: list[bool] = []
        self.children: list[dict[int, int]] = []
        self.star: list[int] = []
        self.labels: dict[int, list[int]] = {}
        self.root = 0

    # -- construction -----------------------------------------------------

    def _new(self, parent: int, kind: int, lstart: int, lend: int, depth: int,
             ldepth: int, level_root: int, wheight: int, rep: int) -> int:
        v = len(self.parent)
        self.parent.append(parent)
        self.kind.append(kind)
        self.lstart.append(lstart)
        self.lend.append(lend)
        self.depth.append(depth)
        self.ldepth.append(ldepth)
        self.level_root.append(v if level_root < 0 else level_root)
        self.wheight.append(wheight)
        self.rep.append(rep)
        self.weight.append(0)
        self.heavy.append(False)
        self.children.append({})
        self.star.append(-1)
        return v

    def _sorted_items(self, items: Iterable[Item]) -> tuple[list[Item], list[int]]:
        """Sort by content, merge equal strings, return adjacent LCPs."""
        src = self.source
        items = list(items)
        for it in items:
            if it.end < it.start:
                raise ValueError("trie strings must be non-empty")
        if self.text is not None:
            oracle = suffix_oracle(self.text)
            rank = oracle.rank
            ordered = sorted(items, key=lambda it: rank[it.start - 1])

            def lcp(x: Item, y: Item) -> int:
                return min(oracle.lcp(x.start, y.start), x.end - x.start + 1, y.end - y.start + 1)
        else:
            ordered = sorted(items, key=lambda it: tuple(src[it.start - 1:it.end]))

            def lcp(x: Item, y: Item) -> int:
                h = 0
                lim = min(x.end - x.start, y.end - y.start) + 1
                while h < lim and src[x.start - 1 + h] == src[y.start - 1 + h]:
                    h += 1
                return h
        merged: list[Item] = []
        lcps: list[int] = []
        for it in ordered:
            if merged:
                prev = merged[-1]
                h = lcp(prev, it)
                lp, lc = prev.end - prev.start + 1, it.end - it.start + 1
                if h == lp == lc:
                    merged[-1] = Item(prev.start, prev.end, [*prev.labels, *it.labels])
                    continue
                if h == lp or h == lc:
                    raise ValueError("string set is not prefix-free")
                lcps.append(h)
            else:
                lcps.append(0)
            merged.append(Item(it.start, it.end, list(it.labels)))
        return merged, lcps

    def add_level(self, items: Iterable[Item], base_depth: int = 0, wheight: int = 0,
                  star_parent: int = -1) -> int:
        """Append the compressed trie of ``items`` and return its root."""
        merged, lcps = self._sorted_items(items)
        if not merged:
            raise ValueError("cannot build a trie over an empty string set")
        src = self.source
        kind = ROOT if star_parent < 0 else STAR
        root = self._new(star_parent, kind, 1, 0, base_depth, 0, -1, wheight, merged[0].start)
        if star_parent >= 0:
            self.star[star_parent] = root
        ldepth, lstart, lend = self.ldepth, self.lstart, self.lend
        stack = [root]
        for it, h in zip(merged, lcps):
            last = -1
            while ldepth[stack[-1]] > h:
                last = stack.pop()
            top = stack[-1]
            if ldepth[top] < h:
                cut = lstart[last] + (h - ldepth[top])
                mid = self._new(top, SUB, lstart[last], cut - 1, base_depth + h, h, root,
                                wheight, self.rep[last])
                self.children[top][src[lstart[last] - 1]] = mid
                self.parent[last] = mid
                lstart[last] = cut
                self.children[mid][src[cut - 1]] = last
                stack.append(mid)
                top = mid
            length = it.end - it.start + 1
            s = it.start + ldepth[top]
            leaf = self._new(top, SUB, s, it.end, base_depth + length, length, root,
                             wheight, it.start)
            self.children[top][src[s - 1]] = leaf
            self.labels[leaf] = list(it.labels)
            stack.append(leaf)
        self._weigh(root)
        return root

    def _weigh(self, root: int) -> None:
        # split vertices get larger ids than their children, so walk the tree
        weight, children = self.weight, self.children
        for v in reversed(list(self.level_vertices(root))):
            kids = children[v]
            weight[v] = sum(weight[c] for c in kids.values()) if kids else 1

    # -- accessors --------------------------------------------------------

    def __len__(self) -> int:
        return len(self.parent)

    def edge_len(self, v: int) -> int:
        return self.lend[v] - self.lstart[v] + 1

    def first_symbol(self, v: int) -> int:
        return self.source[self.lstart[v] - 1]

    def is_leaf(self, v: int) -> bool:
        return v in self.labels

    def location_depth(self, loc: Location) -> int:
        """Total string depth (STAR edges count one symbol each)."""
        if loc.offset == 0:
            return self.depth[loc.vertex]
        return self.depth[self.parent[loc.vertex]] + loc.offset

    def location_ldepth(self, loc: Location) -> int:
        """String depth inside the level trie that holds ``loc``."""
        if loc.offset == 0:
            return self.ldepth[loc.vertex]
        return self.ldepth[self.parent[loc.vertex]] + loc.offset

    def step(self, v: int, offset: int) -> Location:
        """Normalise ``offset`` symbols consumed on the edge into ``v``."""
        return Location(v, 0 if offset >= self.edge_len(v) else offset)

    def next_symbol(self, loc: Location) -> int:
        """Symbol following an implicit location."""
        return self.source[self.lstart[loc.vertex] + loc.offset - 1]

    def level_vertices(self, root: int) -> Iterator[int]:
        """Preorder over the level trie rooted at ``root`` (STAR edges skipped)."""
        stack = [root]
        children = self.children
        while stack:
            v = stack.pop()
            yield v
            kids = children[v]
            if kids:
                stack.extend(reversed(kids.values()))

    def leaves_below(self, v: int) -> Iterator[int]:
        labels = self.labels
        for u in self.level_vertices(v):
            if u in labels:
                yield u

    def path_string(self, v: int) -> tuple[int, ...]:
        """Symbols from the level root down to ``v``."""
        start = self.rep[v]
        return tuple(self.source[start - 1:start - 1 + self.ldepth[v]])

    def level_strings(self, root: int = 0) -> list[tuple[tuple[int, ...], list[int]]]:
        """``(string, labels)`` for every leaf of one level trie, sorted."""
        return sorted((self.path_string(v), sorted(self.labels[v]))
                      for v in self.leaves_below(root))


class TrieView:
    """A level trie, optionally with some subtrees cut away.

    Used wherever a rooted tree interface is needed: decompositions, LCP
    registration, statistics.
    """

    def __init__(self, trie: CompressedTrie, root: int | None = None, cut: Iterable[int] = ()):
        self.trie = trie
        self.root = trie.root if root is None else root
        self.cut = frozenset(cut)

    def children(self, v: int) -> list[int]:
        kids = self.trie.children[v].values()
        if self.cut:
            return [c for c in kids if c not in self.cut]
        return list(kids)

    def first_symbol(self, v: int) -> int:
        return self.trie.first_symbol(v)

    def vertices(self) -> list[int]:
        out = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(reversed(self.children(v)))
        return out

    @cached_property
    def members(self) -> frozenset[int]:
        return frozenset(self.vertices())

    def contains(self, loc: Location) -> bool:
        v = loc.vertex
        if v not in self.members:
            return False
        if loc.offset and self.trie.kind[v] != SUB:
            return False
        return True

    @cached_property
    def weights(self) -> dict[int, int]:
        w: dict[int, int] = {}
        for v in reversed(self.vertices()):
            kids = self.children(v)
            w[v] = sum(w[c] for c in kids) if kids else 1
        return w

    @property
    def leaf_count(self) -> int:
        return self.weights[self.root]


def build_trie(source: IndexedText | Sequence[int], items: Iterable[Item]) -> CompressedTrie:
    trie = CompressedTrie(source)
    trie.add_level(items)
    return trie


def build_trie_from_strings(pairs: Iterable[tuple[str, int]]) -> CompressedTrie:
    """Convenience builder over literal strings; a trailing ``$`` is the sentinel.

    Strings without a trailing ``$`` get one appended.
    """
    codes: list[int] = []
    items = []
    for s, label in pairs:
        body = s[:-1] if s.endswith("$") else s
        start = len(codes) + 1
        codes.extend(encode(body))
        codes.append(SENTINEL)
        items.append(Item(start, len(codes), [label]))
    return build_trie(codes, items)


def build_suffix_tree(t: IndexedText) -> CompressedTrie:
    """Compressed trie over all suffixes of ``t$``; leaf labels are start positions."""
    last = t.n + 1
    return build_trie(t, [Item(i, last, [i]) for i in range(1, last + 1)])


def prefix_items(t: IndexedText, length: int) -> list[Item]:
    """``pref_length(suff(t$))`` as labeled items."""
    last = t.n + 1
    return [Item(i, min(i + length - 1, last), [i]) for i in range(1, last + 1)]


def descend(trie: CompressedTrie, loc: Location, s: Sequence[int]) -> tuple[Location, int]:
    """Walk ``s`` symbol by symbol from ``loc``; STAR edges are never taken."""
    v, off = loc.vertex, loc.offset
    src, lstart, lend, children = trie.source, trie.lstart, trie.lend, trie.children
    i, n = 0, len(s)
    while i < n:
        if off == 0:
            c = children[v].get(s[i])
            if c is None:
                break
            v, off = c, 1
            i += 1
        else:
            if src[lstart[v] + off - 1] != s[i]:
                break
            off += 1
            i += 1
        if off and lstart[v] + off > lend[v]:
            off = 0
    return Location(v, off), i


def collect_occurrences(trie: CompressedTrie, loc: Location) -> list[int]:
    """Sorted distinct leaf labels in the level subtree below ``loc``."""
    labels = trie.labels
    found: set[int] = set()
    for u in trie.level_vertices(loc.vertex):
        lab = labels.get(u)
        if lab:
            found.update(lab)
    return sorted(found)


def lightstrings_suffixes(trie: CompressedTrie, v: int, heavy: Iterable[int] | None = None) -> list[Item]:
    """``suff_2(lightstrings(v))`` with inherited labels.

    ``heavy`` is the set of heavy children of ``v``; by default the trie's own
    heavy flags are used.  Strings that become empty are dropped.
    """
    if heavy is None:
        light = [c for c in trie.children[v].values() if not trie.heavy[c]]
    else:
        hs = set(heavy)
        light = [c for c in trie.children[v].values() if c not in hs]
    shift = trie.ldepth[v] + 1
    out = []
    rep, lend, labels = trie.rep, trie.lend, trie.labels
    for c in light:
        for leaf in trie.leaves_below(c):
            start = rep[leaf] + shift
            if start <= lend[leaf]:
                out.append(Item(start, lend[leaf], labels[leaf]))
    return out


@dataclass(frozen=True)
class TrieStats:
    leaf_count: int
    vertex_count: int
    height: int
    max_string_depth: int


def trie_stats(view: TrieView) -> TrieStats:
    """Height is counted in edges; ``max_string_depth`` in symbols."""
    trie = view.trie
    edges = {view.root: 0}
    height = 0
    deepest = 0
    leaves = 0
    for v in view.vertices():
        kids = view.children(v)
        if not kids:
            leaves += 1
            height = max(height, edges[v])
            deepest = max(deepest, trie.ldepth[v] - trie.ldepth[view.root])
        for c in kids:
            edges[c] = edges[v] + 1
    return TrieStats(leaves, len(view.members), height, deepest)
