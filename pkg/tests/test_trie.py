from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from wcindex.decomposition import heavy_alpha_decompose
from wcindex.text import SENTINEL, IndexedText, decode, encode
from wcindex.trie import (STAR, Item, Location, TrieView, build_suffix_tree, build_trie,
                          build_trie_from_strings, collect_occurrences, descend,
                          lightstrings_suffixes, prefix_items, trie_stats)

from conftest import random_text


def root_symbols(trie):
    return [decode([trie.first_symbol(c)]) for c in trie.children[trie.root].values()]


def stored_pairs(trie, root=0):
    return sorted((decode(s), labs) for s, labs in trie.level_strings(root))


def test_suffix_tree_bananas():
    tree = build_suffix_tree(IndexedText("bananas"))
    assert len(tree.labels) == 8
    assert root_symbols(tree) == ["a", "b", "n", "s", "$"]
    expected = sorted(("bananas$"[i - 1:], [i]) for i in range(1, 9))
    assert stored_pairs(tree) == expected


def test_suffix_tree_single_symbol():
    tree = build_suffix_tree(IndexedText("a"))
    assert stored_pairs(tree) == [("$", [2]), ("a$", [1])]


def test_suffix_tree_unary_text():
    tree = build_suffix_tree(IndexedText("aaa"))
    internal = sorted(tree.ldepth[v] for v in range(len(tree))
                      if v != tree.root and tree.children[v])
    assert internal == [1, 2]
    assert sorted(l for labs in tree.labels.values() for l in labs) == [1, 2, 3, 4]


def test_two_string_trie():
    trie = build_trie_from_strings([("ab$", 1), ("ac$", 2)])
    (a,) = trie.children[trie.root].values()
    assert trie.edge_len(a) == 1
    assert sorted(decode([trie.first_symbol(c)]) for c in trie.children[a].values()) == ["b", "c"]


def test_duplicates_merge_labels():
    trie = build_trie_from_strings([("a$", 1), ("a$", 3)])
    assert list(trie.labels.values()) == [[1, 3]]


def test_prefix_trie_carries_all_positions():
    t = IndexedText("banana")
    trie = build_trie(t, prefix_items(t, 3))
    expected: dict[str, list[int]] = {}
    s = "banana$"
    for i in range(1, 8):
        expected.setdefault(s[i - 1:i + 2], []).append(i)
    assert dict(stored_pairs(trie)) == expected


def test_rejects_non_prefix_free_and_empty():
    t = IndexedText("abab")
    with pytest.raises(ValueError):
        build_trie(t, [Item(1, 2, [1]), Item(1, 3, [1])])
    with pytest.raises(ValueError):
        build_trie(t, [])
    with pytest.raises(ValueError):
        build_trie(t, [Item(3, 2, [1])])


def test_descend_examples():
    tree = build_suffix_tree(IndexedText("bananas"))
    root = Location(tree.root)
    loc, got = descend(tree, root, encode("ana"))
    assert got == 3
    assert tree.location_depth(loc) == 3
    assert decode(tree.path_string(loc.vertex))[:3] == "ana"
    assert descend(tree, root, ()) == (root, 0)
    assert descend(tree, root, encode("z")) == (root, 0)


def test_collect_examples():
    t = IndexedText("bananas")
    tree = build_suffix_tree(t)
    loc, _ = descend(tree, Location(tree.root), encode("ana"))
    assert collect_occurrences(tree, loc) == [2, 4]
    assert collect_occurrences(tree, Location(tree.root)) == list(range(1, 9))
    leaf = next(v for v, labs in tree.labels.items() if labs == [5])
    assert collect_occurrences(tree, Location(leaf)) == [5]


def test_lightstrings_single_leaf_children():
    trie = build_trie_from_strings([("ax$", 5), ("ay$", 7), ("ab$", 1), ("ab$", 2), ("abc$", 3)])
    a = trie.children[trie.root][ord("a")]
    b = trie.children[a][ord("b")]
    items = lightstrings_suffixes(trie, a, heavy=[b])
    strings = sorted((decode(trie.source[i.start - 1:i.end]), list(i.labels)) for i in items)
    assert strings == [("$", [5]), ("$", [7])]
    merged = build_trie(trie.source, items)
    assert list(merged.labels.values()) == [[5, 7]]


def test_lightstrings_without_light_edges():
    trie = build_trie_from_strings([("ab$", 1), ("ac$", 2)])
    a = trie.children[trie.root][ord("a")]
    assert lightstrings_suffixes(trie, a, heavy=list(trie.children[a].values())) == []


def test_lightstrings_bananas_root():
    t = IndexedText("bananas")
    tree = build_suffix_tree(t)
    dec = heavy_alpha_decompose(TrieView(tree), 1)
    (heavy,) = dec.heavy_children[tree.root]
    assert tree.first_symbol(heavy) == ord("a")
    items = lightstrings_suffixes(tree, tree.root, dec.heavy_children[tree.root])
    got = sorted((decode(t.codes[i.start - 1:i.end]), list(i.labels)) for i in items)
    s = "bananas$"
    expected = sorted((s[i:], [i]) for i in range(1, 9) if s[i - 1] != "a" and s[i:])
    assert got == expected


def brute_longest_prefix(strings, x):
    best = 0
    for s in strings:
        h = 0
        while h < min(len(s), len(x)) and s[h] == x[h]:
            h += 1
        best = max(best, h)
    return best


@settings(max_examples=60, deadline=None)
@given(st.text(alphabet="abc", min_size=1, max_size=25), st.text(alphabet="abcd", max_size=8))
def test_descend_matches_longest_prefix(text, x):
    t = IndexedText(text)
    tree = build_suffix_tree(t)
    suffixes = [t.codes[i:] for i in range(t.n + 1)]
    loc, got = descend(tree, Location(tree.root), encode(x))
    assert got == brute_longest_prefix(suffixes, encode(x))
    assert tree.location_depth(loc) == got


@settings(max_examples=60, deadline=None)
@given(st.text(alphabet="abc", min_size=1, max_size=30))
def test_suffix_tree_structure(text):
    t = IndexedText(text)
    tree = build_suffix_tree(t)
    assert len(tree.labels) == t.n + 1
    internal = [v for v in range(len(tree)) if tree.children[v]]
    assert len(internal) <= t.n
    for v in internal:
        if v != tree.root:
            assert len(tree.children[v]) >= 2
        kids = list(tree.children[v].values())
        assert tree.weight[v] == sum(tree.weight[c] for c in kids)
        firsts = [tree.first_symbol(c) for c in kids]
        assert firsts == sorted(firsts)
    assert tree.weight[tree.root] == t.n + 1


def test_random_trie_stores_its_input(rng):
    for _ in range(40):
        text = random_text(rng, rng.randint(1, 40), rng.choice([2, 3]))
        t = IndexedText(text)
        length = rng.randint(1, 6)
        trie = build_trie(t, prefix_items(t, length))
        s = text + "$"
        expected: dict[str, list[int]] = {}
        for i in range(1, t.n + 2):
            expected.setdefault(s[i - 1:i - 1 + length], []).append(i)
        assert dict(stored_pairs(trie)) == expected
        assert trie.weight[trie.root] == len(expected)


def test_trie_stats():
    tree = build_suffix_tree(IndexedText("aaa"))
    stats = trie_stats(TrieView(tree))
    assert stats.leaf_count == 4
    assert stats.height == 3
    assert stats.max_string_depth == 4
    assert stats.vertex_count == len(tree)


def test_sentinel_edge_is_last():
    tree = build_suffix_tree(IndexedText("abcab"))
    kids = list(tree.children[tree.root].values())
    assert tree.first_symbol(kids[-1]) == SENTINEL
    assert all(tree.kind[v] != STAR for v in range(len(tree)))


def test_trie_view_cut():
    tree = build_suffix_tree(IndexedText("bananas"))
    a = tree.children[tree.root][ord("a")]
    view = TrieView(tree, cut=[a])
    assert a not in view.members
    assert view.leaf_count == 8 - tree.weight[a]
    assert not view.contains(Location(a))
    sub = TrieView(tree, a)
    assert sub.leaf_count == tree.weight[a] == 3
