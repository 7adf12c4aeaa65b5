"""Heavy alpha-tree decomposition, ART decomposition and NCA queries.

All functions take a *tree*: any object with ``root``, ``children(v)`` and
``first_symbol(v)``.  :class:`~wcindex.trie.TrieView` is the usual one;
:class:`RootedTree` covers plain unlabeled trees.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Protocol, Sequence


class Tree(Protocol):
    root: int

    def children(self, v: int) -> Sequence[int]: ...

    def first_symbol(self, v: int) -> int: ...


class RootedTree:
    """An unlabeled tree given by child lists; child order stands in for symbols."""

    def __init__(self, kids: Sequence[Sequence[int]], root: int = 0):
        self.kids = [list(k) for k in kids]
        self.root = root
        self._order = {c: i for k in self.kids for i, c in enumerate(k)}

    @classmethod
    def from_nested(cls, nested) -> "RootedTree":
        """Build from ``(payload, (child, child, ...))`` tuples; returns the tree.

        Payloads are kept in ``tree.payload`` by vertex id.
        """
        kids: list[list[int]] = []
        payload: list = []
        stack = [(nested, -1)]
        while stack:
            (data, sub), parent = stack.pop()
            v = len(kids)
            kids.append([])
            payload.append(data)
            if parent >= 0:
                kids[parent].append(v)
            stack.extend((c, v) for c in reversed(sub))
        tree = cls(kids)
        tree.payload = payload
        return tree

    def children(self, v: int) -> list[int]:
        return self.kids[v]

    def first_symbol(self, v: int) -> int:
        return self._order.get(v, 0)


def preorder(tree: Tree) -> list[int]:
    out = []
    stack = [tree.root]
    while stack:
        v = stack.pop()
        out.append(v)
        stack.extend(reversed(tree.children(v)))
    return out


def subtree_weights(tree: Tree) -> dict[int, int]:
    """Leaf count below every vertex."""
    cached = getattr(tree, "weights", None)
    if isinstance(cached, dict):
        return cached
    w: dict[int, int] = {}
    for v in reversed(preorder(tree)):
        kids = tree.children(v)
        w[v] = sum(w[c] for c in kids) if kids else 1
    return w


@dataclass
class HeavyAlphaDecomposition:
    alpha: int
    heavy: frozenset[int]          # vertices whose parent edge is heavy
    lightdepth: dict[int, int]
    weight: dict[int, int] = field(repr=False)
    heavy_children: dict[int, list[int]] = field(repr=False)

    @property
    def lightheight(self) -> int:
        return max(self.lightdepth.values())

    def is_heavy(self, v: int) -> bool:
        return v in self.heavy


def heavy_alpha_decompose(tree: Tree, alpha: int) -> HeavyAlphaDecomposition:
    """Mark edges to the ``alpha`` heaviest children of each vertex heavy.

    Ties go to the child with the smaller first symbol.
    """
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    weight = subtree_weights(tree)
    heavy: set[int] = set()
    heavy_children: dict[int, list[int]] = {}
    lightdepth = {tree.root: 0}
    order = preorder(tree)
    for v in order:
        kids = tree.children(v)
        if not kids:
            continue
        if alpha:
            ranked = sorted(kids, key=lambda c: (-weight[c], tree.first_symbol(c)))
            top = ranked[:alpha]
        else:
            top = []
        heavy.update(top)
        heavy_children[v] = top
        top_set = set(top)
        d = lightdepth[v]
        for c in kids:
            lightdepth[c] = d if c in top_set else d + 1
    return HeavyAlphaDecomposition(alpha, frozenset(heavy), lightdepth, weight, heavy_children)


def lightdepth_bound(alpha: int, leaves: int) -> float:
    """``log_{alpha+1}`` of the root weight (alpha >= 1)."""
    return math.log(leaves, alpha + 1) if leaves > 1 else 0.0


@dataclass
class ARTDecomposition:
    chi: int
    bottom_roots: list[int]
    top: frozenset[int]
    top_leaves: list[int]          # top vertices with no child in the top tree
    bottom_of: dict[int, int] = field(repr=False)
    leaf_count: int = 0


def art_decompose(tree: Tree, chi: int) -> ARTDecomposition:
    """Split into bottom trees of at most ``chi`` leaves and a residual top tree."""
    if chi < 1:
        raise ValueError("chi must be at least 1")
    weight = subtree_weights(tree)
    bottom_roots: list[int] = []
    bottom_of: dict[int, int] = {}
    top: set[int] = set()
    top_leaves: list[int] = []
    stack = [(tree.root, -1)]
    while stack:
        v, owner = stack.pop()
        if owner < 0 and weight[v] <= chi:
            owner = v
            bottom_roots.append(v)
        if owner >= 0:
            bottom_of[v] = owner
        else:
            top.add(v)
            if all(weight[c] <= chi for c in tree.children(v)):
                top_leaves.append(v)
        stack.extend((c, owner) for c in reversed(tree.children(v)))
    return ARTDecomposition(chi, bottom_roots, frozenset(top), sorted(top_leaves), bottom_of,
                            weight[tree.root])


class NcaStructure:
    """Euler tour plus a sparse table of range minima over tour depths."""

    def __init__(self, tree: Tree, string_depth: Sequence[int] | dict[int, int] | None = None):
        self.tree = tree
        self.string_depth = string_depth
        euler: list[int] = []
        level: list[int] = []
        first: dict[int, int] = {}
        stack = [(tree.root, 0, 0)]
        while stack:
            v, d, i = stack.pop()
            if i == 0:
                first[v] = len(euler)
            euler.append(v)
            level.append(d)
            kids = tree.children(v)
            if i < len(kids):
                stack.append((v, d, i + 1))
                stack.append((kids[i], d + 1, 0))
        self._euler = euler
        self._first = first
        n = len(euler)
        table = [list(range(n))]
        span = 1
        while 2 * span <= n:
            prev = table[-1]
            row = []
            for i in range(n - 2 * span + 1):
                a, b = prev[i], prev[i + span]
                row.append(a if level[a] <= level[b] else b)
            table.append(row)
            span *= 2
        self._table = table
        self._level = level

    def __contains__(self, v: int) -> bool:
        return v in self._first

    def nca(self, u: int, v: int) -> int:
        first = self._first
        if u not in first or v not in first:
            raise ValueError(f"vertex {u if u not in first else v} is not in this tree")
        a, b = first[u], first[v]
        if a > b:
            a, b = b, a
        lvl = (b - a + 1).bit_length() - 1
        row = self._table[lvl]
        x, y = row[a], row[b - (1 << lvl) + 1]
        level = self._level
        return self._euler[x if level[x] <= level[y] else y]

    def depth(self, v: int) -> int:
        if self.string_depth is None:
            raise ValueError("no string depths attached")
        return self.string_depth[v]
