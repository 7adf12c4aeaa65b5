"""LCP queries over a collection of tries whose strings are substrings of t.

Each registered trie gets a heavy path decomposition.  A query follows heavy
paths: the distance the pattern runs along a path is one LCP between the
pattern suffix and a text suffix, answered with an NCA query in the suffix
tree of ``t$``.  Leaving a path costs one light-edge lookup; only the final
path may need a predecessor search over its explicit depths.
"""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Sequence

from .decomposition import NcaStructure, heavy_alpha_decompose
from .text import IndexedText
from .trie import CompressedTrie, Location, TrieView, build_suffix_tree, descend

FULL = "FULL"
LIGHT = "LIGHT"


@dataclass
class PreprocessedPattern:
    """Anchors of every suffix of ``x`` in the suffix tree of ``t$``.

    ``anchors[s]`` is where the search for ``x[s:]`` stops from the root and
    ``matched[s]`` how many symbols it consumed.
    """

    x: tuple[int, ...]
    anchors: list[Location]
    matched: list[int]


@dataclass
class LcpAnswer:
    location: Location
    matched: int
    hops: int
    used_predecessor: bool


@dataclass
class _HeavyPath:
    vertices: list[int]
    depths: list[int]
    at_depth: dict[int, int]


@dataclass
class _Registered:
    view: TrieView
    mode: str
    head: dict[int, int]
    paths: dict[int, _HeavyPath]
    heavy_child: dict[int, int]
    jump: dict[int, dict[int, int]] = field(default_factory=dict)

    @property
    def leaf_count(self) -> int:
        return self.view.leaf_count

    @property
    def hop_bound(self) -> int:
        return math.ceil(math.log2(self.leaf_count)) + 1 if self.leaf_count > 1 else 1


class LcpStructure:
    def __init__(self, text: IndexedText, reference: CompressedTrie | None = None):
        self.text = text
        self.reference = reference if reference is not None else build_suffix_tree(text)
        ref = self.reference
        self._nca = NcaStructure(TrieView(ref), ref.depth)
        self._leaf_of = {pos: leaf for leaf, labs in ref.labels.items() for pos in labs}
        self.tries: list[_Registered] = []

    def register_trie(self, trie: CompressedTrie, mode: str = LIGHT, root: int | None = None,
                      cut: Sequence[int] = ()) -> int:
        """Index one trie (or the part of it below ``root`` minus ``cut``)."""
        if mode not in (FULL, LIGHT):
            raise ValueError(f"unknown LCP mode {mode!r}")
        if trie.text is None or trie.text != self.text:
            raise ValueError("trie strings are not substrings of the indexed text")
        view = TrieView(trie, root, cut)
        dec = heavy_alpha_decompose(view, 1)
        head: dict[int, int] = {}
        paths: dict[int, _HeavyPath] = {}
        heavy_child: dict[int, int] = {}
        ldepth = trie.ldepth
        for v in view.vertices():
            if v == view.root or v not in dec.heavy:
                head[v] = v
                paths[v] = _HeavyPath([], [], {})
            else:
                head[v] = head[trie.parent[v]]
            path = paths[head[v]]
            path.vertices.append(v)
            path.depths.append(ldepth[v])
            path.at_depth[ldepth[v]] = v
            for c in dec.heavy_children.get(v, ()):
                heavy_child[v] = c
        reg = _Registered(view, mode, head, paths, heavy_child)
        if mode == FULL:
            for v in view.vertices():
                hc = heavy_child.get(v)
                reg.jump[v] = {trie.first_symbol(c): c for c in view.children(v) if c != hc}
        self.tries.append(reg)
        return len(self.tries) - 1

    def preprocess_pattern(self, x: Sequence[int]) -> PreprocessedPattern:
        x = tuple(x)
        ref = self.reference
        anchors, matched = [], []
        for s in range(len(x) + 1):
            loc, h = descend(ref, Location(ref.root), x[s:])
            anchors.append(loc)
            matched.append(h)
        return PreprocessedPattern(x, anchors, matched)

    def text_lcp(self, pp: PreprocessedPattern, s: int, pos: int) -> int:
        """Length of the common prefix of ``x[s:]`` and ``t$[pos..]``."""
        dy = pp.matched[s]
        if dy == 0:
            return 0
        w = pp.anchors[s].vertex
        return min(dy, self.reference.depth[self._nca.nca(w, self._leaf_of[pos])])

    def lcp_query(self, pp: PreprocessedPattern, suffix_start: int, trie_id: int,
                  loc: Location) -> LcpAnswer:
        """Where the search for ``x[suffix_start:]`` stops when started at ``loc``."""
        if not 0 <= trie_id < len(self.tries):
            raise ValueError(f"trie {trie_id} is not registered")
        reg = self.tries[trie_id]
        if not reg.view.contains(loc):
            raise ValueError(f"{loc} is not a location of trie {trie_id}")
        x = pp.x
        if not 0 <= suffix_start <= len(x):
            raise ValueError("suffix start out of range")
        trie = reg.view.trie
        ldepth, parent = trie.ldepth, trie.parent
        s = suffix_start
        consumed = 0
        hops = 0
        cur = loc
        while s < len(x):
            hops += 1
            path = reg.paths[reg.head[cur.vertex]]
            z = path.vertices[-1]
            d = trie.location_ldepth(cur)
            room = ldepth[z] - d
            h = min(self.text_lcp(pp, s, trie.rep[z] + d), room) if room else 0
            s += h
            consumed += h
            target = d + h
            u = path.at_depth.get(target)
            if u is None:
                i = bisect_right(path.depths, target) - 1
                if i < 0:
                    hd = path.vertices[0]
                    stop = Location(hd, target - ldepth[parent[hd]])
                else:
                    stop = Location(path.vertices[i + 1], target - path.depths[i])
                return LcpAnswer(stop, consumed, hops, True)
            if s == len(x):
                return LcpAnswer(Location(u), consumed, hops, False)
            if reg.mode == FULL:
                c = reg.jump[u].get(x[s])
            else:
                c = trie.children[u].get(x[s])
                if c is not None and c not in reg.view.members:
                    c = None
            if c is None:
                return LcpAnswer(Location(u), consumed, hops, False)
            assert c != reg.heavy_child.get(u), "heavy continuation missed by text LCP"
            cur = trie.step(c, 1)
            s += 1
            consumed += 1
        return LcpAnswer(cur, consumed, hops, False)
