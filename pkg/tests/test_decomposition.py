from __future__ import annotations

import math
import random

import pytest

from wcindex.decomposition import (NcaStructure, RootedTree, art_decompose, heavy_alpha_decompose,
                                   preorder, subtree_weights)
from wcindex.text import IndexedText, encode
from wcindex.trie import Location, TrieView, build_suffix_tree, build_trie, descend, prefix_items

from conftest import random_text

# Two heavy 2-tree decompositions of one 38-leaf tree, with light heights 3
# and 2.  Each vertex is H or L (the kind of the edge from its parent; the
# root is written H), followed by its children in parentheses.
EXAMPLE_DEPTH_3 = ("H(H(H(H(HH)HL)H(H(HHLL)H)LL(H(HHL)H))H(HH(H(H(HHL)LLH(HH))LH(HH))L)"
                  "L(L(HH(HHL))H(HHLL)H(LHH(HH))))")
EXAMPLE_DEPTH_2 = ("H(H(L(H(HH)LH)H(H(HLLH)H)LH(H(HLH)H))L(LH(H(H(HLH)LLH(HH))LH(HH))H)"
                  "H(H(HH(HLH))H(LHHL)L(HLH(HH))))")


def parse_marked_tree(code: str) -> RootedTree:
    def node(i):
        flag = code[i]
        i += 1
        kids = []
        if i < len(code) and code[i] == "(":
            i += 1
            while code[i] != ")":
                child, i = node(i)
                kids.append(child)
            i += 1
        return (flag, tuple(kids)), i

    nested, end = node(0)
    assert end == len(code)
    return RootedTree.from_nested(nested)


def light_depths(tree: RootedTree) -> dict[int, int]:
    depth = {tree.root: 0}
    for v in preorder(tree):
        for c in tree.children(v):
            depth[c] = depth[v] + (tree.payload[c] == "L")
    return depth


def is_valid_heavy_decomposition(tree: RootedTree, alpha: int) -> bool:
    """Heavy children are at most ``alpha`` and no lighter than any light sibling."""
    w = subtree_weights(tree)
    for v in preorder(tree):
        kids = tree.children(v)
        heavy = [w[c] for c in kids if tree.payload[c] == "H"]
        light = [w[c] for c in kids if tree.payload[c] == "L"]
        if len(heavy) != min(alpha, len(kids)):
            return False
        if heavy and light and min(heavy) < max(light):
            return False
    return True


@pytest.mark.parametrize("code, depth", [(EXAMPLE_DEPTH_3, 3), (EXAMPLE_DEPTH_2, 2)])
def test_example_tree_decompositions(code, depth):
    tree = parse_marked_tree(code)
    w = subtree_weights(tree)
    assert w[tree.root] == 38
    assert is_valid_heavy_decomposition(tree, 2)
    assert max(light_depths(tree).values()) == depth
    assert depth <= math.floor(math.log(38, 3))


@pytest.mark.parametrize("code", [EXAMPLE_DEPTH_3, EXAMPLE_DEPTH_2])
def test_example_tree_decomposed_by_library(code):
    tree = parse_marked_tree(code)
    dec = heavy_alpha_decompose(tree, 2)
    assert dec.lightheight <= 3
    for v in preorder(tree):
        assert len(dec.heavy_children.get(v, [])) <= 2


def random_tries(rng, count):
    for _ in range(count):
        text = random_text(rng, rng.randint(1, 80), rng.choice([2, 3, 4]))
        t = IndexedText(text)
        if rng.random() < 0.5:
            yield TrieView(build_suffix_tree(t))
        else:
            yield TrieView(build_trie(t, prefix_items(t, rng.randint(1, 8))))


def test_lightdepth_bound(rng):
    for view in random_tries(rng, 100):
        leaves = view.leaf_count
        for alpha in (1, 2, 3):
            dec = heavy_alpha_decompose(view, alpha)
            limit = math.log(leaves, alpha + 1) if leaves > 1 else 0
            assert all(d <= limit + 1e-9 for d in dec.lightdepth.values())


def test_heavy_children_are_heaviest(rng):
    for view in random_tries(rng, 40):
        for alpha in (1, 2):
            dec = heavy_alpha_decompose(view, alpha)
            w = dec.weight
            for v in view.vertices():
                kids = view.children(v)
                heavy = [w[c] for c in kids if c in dec.heavy]
                light = [w[c] for c in kids if c not in dec.heavy]
                assert len(heavy) == min(alpha, len(kids))
                if heavy and light:
                    assert min(heavy) >= max(light)


def test_alpha_zero_is_all_light():
    view = TrieView(build_suffix_tree(IndexedText("abracadabra")))
    dec = heavy_alpha_decompose(view, 0)
    assert not dec.heavy
    depth = {view.root: 0}
    for v in view.vertices():
        for c in view.children(v):
            depth[c] = depth[v] + 1
    assert dec.lightheight == max(depth.values())


def test_large_alpha_is_all_heavy():
    view = TrieView(build_suffix_tree(IndexedText("abracadabra")))
    fanout = max(len(view.children(v)) for v in view.vertices())
    dec = heavy_alpha_decompose(view, fanout)
    assert dec.lightheight == 0


def test_tie_break_prefers_smaller_symbol():
    view = TrieView(build_suffix_tree(IndexedText("ab")))
    dec = heavy_alpha_decompose(view, 1)
    (heavy,) = dec.heavy_children[view.root]
    assert view.first_symbol(heavy) == ord("a")


def test_art_small_trie_is_one_bottom_tree():
    view = TrieView(build_suffix_tree(IndexedText("abc")))
    art = art_decompose(view, 4)
    assert art.bottom_roots == [view.root]
    assert not art.top
    assert art.top_leaves == []


def test_art_star_tree():
    tree = RootedTree([[1, 2, 3, 4, 5, 6], [], [], [], [], [], []])
    art = art_decompose(tree, 1)
    assert sorted(art.bottom_roots) == [1, 2, 3, 4, 5, 6]
    assert art.top == {0}
    assert len(art.top_leaves) == 1 <= 6 / 2


def test_art_top_leaf_bound_and_minimality(rng):
    for _ in range(100):
        text = random_text(rng, rng.randint(2, 200), rng.choice([2, 4, 8]))
        view = TrieView(build_suffix_tree(IndexedText(text)))
        leaves = view.leaf_count
        chi = max(1, math.ceil(math.log2(len(text))))
        art = art_decompose(view, chi)
        w = view.weights
        assert len(art.top_leaves) <= leaves / (chi + 1)
        covered = []
        for b in art.bottom_roots:
            assert w[b] <= chi
            if b != view.root:
                assert w[view.trie.parent[b]] > chi
            covered.extend(u for u in view.trie.leaves_below(b))
        assert sorted(covered) == sorted(view.trie.labels)


def brute_nca(parent, u, v):
    seen = set()
    while u != -1:
        seen.add(u)
        u = parent[u]
    while v not in seen:
        v = parent[v]
    return v


def test_nca_examples():
    tree = build_suffix_tree(IndexedText("bananas"))
    view = TrieView(tree)
    nca = NcaStructure(view, tree.depth)
    leaf = {labs[0]: v for v, labs in tree.labels.items()}
    w = nca.nca(leaf[2], leaf[4])
    assert tree.depth[w] == 3
    loc, _ = descend(tree, Location(tree.root), encode("ana"))
    assert w == loc.vertex
    assert nca.nca(w, w) == w
    assert nca.nca(tree.root, leaf[5]) == tree.root
    assert nca.depth(w) == 3


def test_nca_matches_brute_force(rng):
    for _ in range(20):
        tree = build_suffix_tree(IndexedText(random_text(rng, rng.randint(1, 60), 3)))
        nca = NcaStructure(TrieView(tree))
        vs = list(range(len(tree)))
        for _ in range(100):
            u, v = rng.choice(vs), rng.choice(vs)
            assert nca.nca(u, v) == brute_nca(tree.parent, u, v)


def test_nca_rejects_foreign_vertex():
    tree = build_suffix_tree(IndexedText("abc"))
    a = tree.children[tree.root][ord("a")]
    nca = NcaStructure(TrieView(tree, a))
    with pytest.raises(ValueError):
        nca.nca(a, tree.root)
